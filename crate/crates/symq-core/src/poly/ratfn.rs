//! Rational functions as (numerator, denominator factor list) pairs.
//!
//! No polynomial gcd is computed: size control comes from integer-content
//! removal and cancellation of syntactically identical factors, and
//! equality is decided exactly by cross-multiplication.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::mpoly::MPoly;
use super::vartable::{VarId, VarTable};

fn poly_cmp(a: &MPoly, b: &MPoly) -> Ordering {
    let mut ia = a.terms();
    let mut ib = b.terms();
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((ma, ca)), Some((mb, cb))) => {
                let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                if o != Ordering::Equal {
                    return o;
                }
            }
        }
    }
}

/// Quotient of polynomials, normalized by integer content with the
/// denominator kept as a list of sign-normalized factors with positive
/// leading coefficient. `p/q == r/s` is decided by `p*s == r*q` exactly.
#[derive(Debug, Clone)]
pub struct RatFn {
    num: MPoly,
    den_scale: BigInt,
    den: Vec<(MPoly, u32)>,
}

impl RatFn {
    pub fn from_poly(num: MPoly) -> Self {
        assert!(num.trunc().is_none(), "rational values must be uncapped");
        RatFn {
            num,
            den_scale: BigInt::one(),
            den: Vec::new(),
        }
    }

    pub fn from_int(table: &Arc<VarTable>, n: impl Into<BigInt>) -> Self {
        Self::from_poly(MPoly::constant(table, n))
    }

    pub fn zero(table: &Arc<VarTable>) -> Self {
        Self::from_int(table, 0)
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::from_int(table, 1)
    }

    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFn {
            num,
            den_scale: BigInt::one(),
            den: vec![(den, 1)],
        };
        r.normalize();
        r
    }

    /// Build from a numerator and an explicit factor list.
    pub fn from_factors(num: MPoly, den: Vec<(MPoly, u32)>) -> Self {
        let mut r = RatFn {
            num,
            den_scale: BigInt::one(),
            den,
        };
        r.normalize();
        r
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(MPoly, u32)] {
        &self.den
    }

    pub fn den_scale(&self) -> &BigInt {
        &self.den_scale
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.num.table()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn den_expanded(&self) -> MPoly {
        let mut d = MPoly::constant(self.num.table(), self.den_scale.clone());
        for (f, e) in &self.den {
            d = d.mul(&f.pow(*e));
        }
        d
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            self.den_scale = BigInt::one();
            return;
        }
        // flatten each factor: strip content and sign, drop constants
        let mut flat: Vec<(MPoly, u32)> = Vec::new();
        for (f, e) in std::mem::take(&mut self.den) {
            assert!(!f.is_zero(), "zero denominator factor");
            if e == 0 {
                continue;
            }
            let mut f = f;
            let c = f.content();
            if !c.is_one() {
                f = f.div_scalar_exact(&c);
                self.den_scale *= c.pow(e);
            }
            if f.leading_coeff().is_negative() {
                f = f.neg();
                if e % 2 == 1 {
                    self.num = self.num.neg();
                }
            }
            if f.is_one() {
                continue;
            }
            flat.push((f, e));
        }
        // merge identical factors
        flat.sort_by(|(a, _), (b, _)| poly_cmp(a, b));
        let mut merged: Vec<(MPoly, u32)> = Vec::new();
        for (f, e) in flat {
            match merged.last_mut() {
                Some((g, ge)) if poly_cmp(g, &f) == Ordering::Equal => *ge += e,
                _ => merged.push((f, e)),
            }
        }
        // cancel factors that divide the numerator exactly
        for (f, e) in &mut merged {
            while *e > 0 {
                match self.num.try_exact_div(f) {
                    Ok(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        merged.retain(|(_, e)| *e > 0);
        self.den = merged;
        // integer content vs the scale; keep the scale positive
        if self.den_scale.is_negative() {
            self.den_scale = -self.den_scale.clone();
            self.num = self.num.neg();
        }
        let g = self.num.content().gcd(&self.den_scale);
        if !g.is_one() && !g.is_zero() {
            self.num = self.num.div_scalar_exact(&g);
            self.den_scale = &self.den_scale / &g;
        }
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den_scale: self.den_scale.clone(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        let mut den = self.den.clone();
        den.extend(other.den.iter().cloned());
        let mut r = RatFn {
            num: self.num.mul(&other.num),
            den_scale: &self.den_scale * &other.den_scale,
            den,
        };
        r.normalize();
        r
    }

    pub fn mul_poly(&self, p: &MPoly) -> RatFn {
        let mut r = RatFn {
            num: self.num.mul(p),
            den_scale: self.den_scale.clone(),
            den: self.den.clone(),
        };
        r.normalize();
        r
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // union of factor multisets
        let mut union: Vec<(MPoly, u32)> = Vec::new();
        let find = |u: &Vec<(MPoly, u32)>, f: &MPoly| {
            u.iter().position(|(g, _)| poly_cmp(g, f) == Ordering::Equal)
        };
        for (f, e) in self.den.iter().chain(other.den.iter()) {
            match find(&union, f) {
                Some(i) => union[i].1 = union[i].1.max(*e),
                None => union.push((f.clone(), *e)),
            }
        }
        let scale_lcm = self.den_scale.lcm(&other.den_scale);
        let lift = |r: &RatFn| {
            let mut n = r.num.scale(&(&scale_lcm / &r.den_scale));
            for (f, e) in &union {
                let have = find(&r.den, f).map(|i| r.den[i].1).unwrap_or(0);
                if *e > have {
                    n = n.mul(&f.pow(e - have));
                }
            }
            n
        };
        let num = lift(self).add(&lift(other));
        let mut r = RatFn {
            num,
            den_scale: scale_lcm,
            den: union,
        };
        r.normalize();
        r
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn inverse(&self) -> RatFn {
        assert!(!self.is_zero(), "inverse of zero");
        let num = MPoly::constant(self.num.table(), self.den_scale.clone());
        let mut r = RatFn {
            num: self
                .den
                .iter()
                .fold(num, |acc, (f, e)| acc.mul(&f.pow(*e))),
            den_scale: BigInt::one(),
            den: vec![(self.num.clone(), 1)],
        };
        r.normalize();
        r
    }

    pub fn div(&self, other: &RatFn) -> RatFn {
        self.mul(&other.inverse())
    }

    /// Exact equality by cross-multiplication.
    pub fn eq_cross(&self, other: &RatFn) -> bool {
        if self.den_scale == other.den_scale && self.den.len() == other.den.len() {
            let same = self
                .den
                .iter()
                .zip(&other.den)
                .all(|((f, e), (g, d))| e == d && poly_cmp(f, g) == Ordering::Equal);
            if same {
                return self.num == other.num;
            }
        }
        self.num.mul(&other.den_expanded()) == other.num.mul(&self.den_expanded())
    }

    /// Clears the denominator; errors if the value is not a polynomial.
    pub fn to_poly(&self) -> Result<MPoly> {
        let mut p = self.num.clone();
        for (f, e) in &self.den {
            for _ in 0..*e {
                p = p.try_exact_div(f)?;
            }
        }
        if !self.den_scale.is_one() {
            let c = p.content();
            let (_, r) = c.div_rem(&self.den_scale);
            if !r.is_zero() {
                return Err(Error::NotPolynomial);
            }
            p = p.div_scalar_exact(&self.den_scale);
        }
        Ok(p)
    }

    /// Substitute variables in numerator and denominator factors.
    pub fn substitute(&self, assignments: &[(VarId, MPoly)]) -> RatFn {
        let num = self.num.substitute(assignments, None);
        let den: Vec<(MPoly, u32)> = self
            .den
            .iter()
            .map(|(f, e)| (f.substitute(assignments, None), *e))
            .collect();
        for (f, _) in &den {
            assert!(!f.is_zero(), "substitution produced a zero denominator factor");
        }
        let mut scaled = RatFn {
            num,
            den_scale: self.den_scale.clone(),
            den,
        };
        scaled.normalize();
        scaled
    }

    /// Transplant into another table matching variables by name (each
    /// variable actually used must exist in the target).
    pub fn transplant_by_name(&self, target: &Arc<VarTable>) -> RatFn {
        let num = self.num.transplant_by_name(target);
        let den: Vec<(MPoly, u32)> = self
            .den
            .iter()
            .map(|(g, e)| (g.transplant_by_name(target), *e))
            .collect();
        let mut out = RatFn {
            num,
            den_scale: self.den_scale.clone(),
            den,
        };
        out.normalize();
        out
    }

    /// Transplant into another table through per-variable images.
    pub fn compose(&self, target: &Arc<VarTable>, f: impl Fn(VarId) -> MPoly + Copy) -> RatFn {
        let num = self.num.compose(target, f);
        let den: Vec<(MPoly, u32)> = self
            .den
            .iter()
            .map(|(g, e)| (g.compose(target, f), *e))
            .collect();
        for (g, _) in &den {
            assert!(!g.is_zero(), "composition produced a zero denominator factor");
        }
        let mut out = RatFn {
            num,
            den_scale: self.den_scale.clone(),
            den,
        };
        out.normalize();
        out
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        self.eq_cross(other)
    }
}

impl Eq for RatFn {}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() && self.den_scale.is_one() {
            return write!(f, "{}", self.num.render());
        }
        let mut den = String::new();
        if !self.den_scale.is_one() {
            den.push_str(&self.den_scale.to_string());
        }
        for (g, e) in &self.den {
            if !den.is_empty() {
                den.push('*');
            }
            if *e == 1 {
                den.push_str(&format!("({})", g.render()));
            } else {
                den.push_str(&format!("({})^{}", g.render(), e));
            }
        }
        write!(f, "({})/{}", self.num.render(), den)
    }
}
