//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients and an optional truncation cap carried on the value.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::vartable::{Mono, TruncSpec, VarId, VarTable};

/// Sparse polynomial: exponent vector -> nonzero coefficient.
///
/// No explicit zeros are stored. If a truncation cap is set, every stored
/// monomial satisfies it and every arithmetic operation re-applies it;
/// mixing values with different caps panics (precision mixing is a bug,
/// not a runtime condition).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    table: Arc<VarTable>,
    trunc: Option<TruncSpec>,
    terms: BTreeMap<Mono, BigInt>,
}

impl MPoly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        MPoly {
            table: table.clone(),
            trunc: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, BigInt::one())
    }

    pub fn constant(table: &Arc<VarTable>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(Mono::unit(table.len()), c);
        }
        p
    }

    pub fn var(table: &Arc<VarTable>, v: VarId) -> Self {
        Self::monomial(table, Mono::var(table.len(), v), BigInt::one())
    }

    /// Named variable, e.g. `MPoly::named(&t, "s")`.
    pub fn named(table: &Arc<VarTable>, name: &str) -> Self {
        Self::var(table, table.var(name))
    }

    pub fn monomial(table: &Arc<VarTable>, m: Mono, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn trunc(&self) -> Option<&TruncSpec> {
        self.trunc.as_ref()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_unit() && c.is_one())
                .unwrap_or(false)
    }

    /// The single (monomial, coefficient) term, if there is exactly one.
    pub fn as_single_term(&self) -> Option<(&Mono, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn coeff(&self, m: &Mono) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn masked_degree(&self, mask: u64) -> u32 {
        self.terms.keys().map(|m| m.masked_degree(mask)).max().unwrap_or(0)
    }

    /// Attach (or clear) a truncation cap, dropping violating terms.
    pub fn with_trunc(mut self, trunc: Option<TruncSpec>) -> Self {
        if let Some(t) = &trunc {
            self.terms.retain(|m, _| t.admits(m));
        }
        self.trunc = trunc;
        self
    }

    fn check_compatible(&self, other: &MPoly) -> Option<TruncSpec> {
        assert!(
            Arc::ptr_eq(&self.table, &other.table) || self.table == other.table,
            "variable table mismatch"
        );
        match (&self.trunc, &other.trunc) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "truncation cap mismatch");
                Some(a.clone())
            }
        }
    }

    fn insert_term(terms: &mut BTreeMap<Mono, BigInt>, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let trunc = self.check_compatible(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), c.clone());
        }
        MPoly {
            table: self.table.clone(),
            trunc,
            terms,
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -(c.clone());
        }
        p
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly {
                table: self.table.clone(),
                trunc: self.trunc.clone(),
                terms: BTreeMap::new(),
            };
        }
        let mut p = self.clone();
        for v in p.terms.values_mut() {
            *v *= c;
        }
        p
    }

    /// Product, truncated under the (common) cap.
    pub fn mul(&self, other: &MPoly) -> MPoly {
        let trunc = self.check_compatible(other);
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut terms = BTreeMap::new();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                if let Some(t) = &trunc {
                    if !t.admits(&m) {
                        continue;
                    }
                }
                Self::insert_term(&mut terms, m, ca * cb);
            }
        }
        MPoly {
            table: self.table.clone(),
            trunc,
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(&self.table).with_trunc(self.trunc.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Geometric series `sum_{k>=0} self^k` of a single-term polynomial,
    /// truncated by `trunc`. Exact: `(1 - self) * result = 1` modulo the
    /// cap. Errors if no constraint caps powers of the monomial.
    pub fn geometric_inverse(&self, trunc: &TruncSpec) -> Result<MPoly> {
        let (m, c) = self
            .as_single_term()
            .ok_or_else(|| Error::Precondition("geometric inverse needs a single monomial".into()))?;
        if !trunc.caps_powers_of(m) {
            return Err(Error::NonTerminatingSeries);
        }
        let mut terms = BTreeMap::new();
        let mut mk = Mono::unit(self.table.len());
        let mut ck = BigInt::one();
        while trunc.admits(&mk) {
            terms.insert(mk.clone(), ck.clone());
            mk = mk.mul(m);
            ck *= c;
        }
        Ok(MPoly {
            table: self.table.clone(),
            trunc: Some(trunc.clone()),
            terms,
        })
    }

    /// Simultaneous substitution `v -> assignments[v]`; unassigned
    /// variables map to themselves. The result is re-truncated under
    /// `trunc`.
    pub fn substitute(&self, assignments: &[(VarId, MPoly)], trunc: Option<TruncSpec>) -> MPoly {
        let n = self.table.len();
        let mut map: Vec<Option<&MPoly>> = vec![None; n];
        for (v, p) in assignments {
            assert!(
                Arc::ptr_eq(&self.table, p.table()) || self.table == *p.table(),
                "substitution target in a different table"
            );
            map[*v] = Some(p);
        }
        self.compose(&self.table.clone(), |v| match map[v] {
            Some(p) => p.clone().with_trunc(None),
            None => MPoly::var(&self.table, v),
        })
        .with_trunc(trunc)
    }

    /// Map every variable through `f` into `target` (used to transplant a
    /// memoized kernel into an identity context, e.g. `T -> s^2`).
    pub fn compose(&self, target: &Arc<VarTable>, f: impl Fn(VarId) -> MPoly) -> MPoly {
        let images: Vec<MPoly> = (0..self.table.len()).map(&f).collect();
        for img in &images {
            assert!(
                Arc::ptr_eq(target, img.table()) || *target == *img.table(),
                "composition image in a different table"
            );
        }
        // Fast path: every image is a single term.
        if images.iter().all(|p| p.as_single_term().is_some()) {
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                let mut mono = Mono::unit(target.len());
                let mut coeff = c.clone();
                for (v, &e) in m.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let (im, ic) = images[v].as_single_term().unwrap();
                    mono = mono.mul(&im.pow(e as u32));
                    if !ic.is_one() {
                        coeff *= ic.pow(e as u32);
                    }
                }
                Self::insert_term(&mut terms, mono, coeff);
            }
            return MPoly {
                table: target.clone(),
                trunc: None,
                terms,
            };
        }
        // General path with per-variable power caches.
        let mut pow_cache: Vec<Vec<MPoly>> = images
            .iter()
            .map(|p| vec![MPoly::one(target), p.clone()])
            .collect();
        let mut acc = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut pow_cache[v];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&cache[1]);
                    cache.push(next);
                }
                term = term.mul(&cache[e as usize]);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Transplant into another table matching variables by name; every
    /// variable occurring in the polynomial must exist in the target.
    pub fn transplant_by_name(&self, target: &Arc<VarTable>) -> MPoly {
        self.compose(target, |v| {
            let name = self.table.name(v);
            match target.find(name) {
                Some(tv) => MPoly::var(target, tv),
                None => {
                    assert_eq!(
                        self.masked_degree(self.table.mask_of(v)),
                        0,
                        "variable {name} missing from target table"
                    );
                    MPoly::one(target)
                }
            }
        })
    }

    /// Evaluate at integer points (one value per variable).
    pub fn eval_bigint(&self, values: &[BigInt]) -> BigInt {
        assert_eq!(values.len(), self.table.len());
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= values[v].pow(e as u32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division; errors on a nonzero remainder. Both operands must
    /// be uncapped (division under truncation is not well defined).
    pub fn try_exact_div(&self, divisor: &MPoly) -> Result<MPoly> {
        assert!(self.trunc.is_none() && divisor.trunc.is_none(), "division requires uncapped operands");
        assert!(
            Arc::ptr_eq(&self.table, &divisor.table) || self.table == divisor.table,
            "variable table mismatch"
        );
        let (dm, dc) = match divisor.terms.iter().next_back() {
            Some(t) => t,
            None => panic!("division by zero polynomial"),
        };
        let mut rem = self.terms.clone();
        let mut quo = BTreeMap::new();
        while let Some((lm, lc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&lm) {
                return Err(Error::InexactDivision);
            }
            let (q, r) = lc.div_rem(dc);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let qm = dm.div(&lm);
            for (m, c) in &divisor.terms {
                Self::insert_term(&mut rem, m.mul(&qm), -(c * &q));
            }
            Self::insert_term(&mut quo, qm, q);
        }
        Ok(MPoly {
            table: self.table.clone(),
            trunc: None,
            terms: quo,
        })
    }

    pub fn exact_div(&self, divisor: &MPoly) -> MPoly {
        self.try_exact_div(divisor)
            .expect("exact division left a remainder")
    }

    /// Positive gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide all coefficients by `d` (must divide exactly).
    pub fn div_scalar_exact(&self, d: &BigInt) -> MPoly {
        assert!(!d.is_zero());
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            let (q, r) = c.div_rem(d);
            assert!(r.is_zero(), "scalar division left a remainder");
            *c = q;
        }
        p
    }

    /// Leading coefficient under graded-lex.
    pub fn leading_coeff(&self) -> BigInt {
        self.terms
            .iter()
            .next_back()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    /// Accumulate `self + (-1)^negate * sigma(other)`, where `sigma`
    /// permutes the first `sigma.len()` variables (the rest stay put).
    pub fn add_permuted(&self, other: &MPoly, sigma: &[usize], negate: bool) -> MPoly {
        assert!(
            Arc::ptr_eq(&self.table, &other.table) || self.table == other.table,
            "variable table mismatch"
        );
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let mut e = m.clone();
            for (i, &dest) in sigma.iter().enumerate() {
                e.0[dest] = m.0[i];
            }
            let c = if negate { -c.clone() } else { c.clone() };
            Self::insert_term(&mut terms, e, c);
        }
        MPoly {
            table: self.table.clone(),
            trunc: self.trunc.clone(),
            terms,
        }
    }

    /// Swap two variables.
    pub fn swap_vars(&self, a: VarId, b: VarId) -> MPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.clone();
            e.0.swap(a, b);
            terms.insert(e, c.clone());
        }
        MPoly {
            table: self.table.clone(),
            trunc: self.trunc.clone(),
            terms,
        }
    }

    /// Split a monomial into its series part and parameter part.
    fn split_mono(&self, m: &Mono) -> (Mono, Mono) {
        let mut xs = Mono::unit(self.table.len());
        let mut ps = Mono::unit(self.table.len());
        for (v, &e) in m.0.iter().enumerate() {
            if self.table.is_series(v) {
                xs.0[v] = e;
            } else {
                ps.0[v] = e;
            }
        }
        (xs, ps)
    }

    /// Group terms by their series-variable monomial; each value is the
    /// parameter-polynomial coefficient.
    pub fn series_groups(&self) -> BTreeMap<Mono, MPoly> {
        let mut out: BTreeMap<Mono, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (xs, ps) = self.split_mono(m);
            let entry = out.entry(xs).or_insert_with(|| MPoly::zero(&self.table));
            Self::insert_term(&mut entry.terms, ps, c.clone());
        }
        out
    }

    /// Parameter-polynomial coefficient of a given series monomial.
    pub fn series_coeff(&self, xs: &Mono) -> MPoly {
        let mut out = MPoly::zero(&self.table);
        for (m, c) in &self.terms {
            let (x, p) = self.split_mono(m);
            if x == *xs {
                Self::insert_term(&mut out.terms, p, c.clone());
            }
        }
        out
    }

    fn render_mono(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (v, &e) in m.0.iter().enumerate() {
            if e == 1 {
                parts.push(self.table.name(v).to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.table.name(v), e));
            }
        }
        parts.join("*")
    }

    /// Render sorted by (total degree ascending, then x1-dominant first).
    fn sorted_for_display(terms: &BTreeMap<Mono, BigInt>) -> Vec<(&Mono, &BigInt)> {
        let mut v: Vec<_> = terms.iter().collect();
        v.sort_by(|(ma, _), (mb, _)| {
            ma.total_degree()
                .cmp(&mb.total_degree())
                .then_with(|| mb.0.cmp(&ma.0))
        });
        v
    }

    /// Compact rendering (no spaces), used for parenthesized coefficients.
    fn render_compact(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in Self::sorted_for_display(&self.terms).iter().enumerate() {
            let mono = self.render_mono(m);
            let abs = c.abs();
            let mag = if abs.is_one() && !mono.is_empty() {
                mono
            } else if mono.is_empty() {
                abs.to_string()
            } else {
                format!("{abs}*{mono}")
            };
            if c.is_negative() {
                s.push('-');
            } else if i > 0 {
                s.push('+');
            }
            s.push_str(&mag);
        }
        s
    }

    /// Canonical text rendering: terms in graded order, parameter
    /// coefficients grouped per series monomial, e.g.
    /// `1 + (1+s^2)*x1*x2 + s^2*x1^2*x2^2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        // (series mono, coefficient poly) pairs in display order
        let groups = self.series_groups();
        let mut entries: Vec<(Mono, MPoly)> = groups.into_iter().collect();
        entries.sort_by(|(ma, _), (mb, _)| {
            ma.total_degree()
                .cmp(&mb.total_degree())
                .then_with(|| mb.0.cmp(&ma.0))
        });

        // (is_negative, magnitude string) outer terms
        let mut outer: Vec<(bool, String)> = Vec::new();
        for (xm, coeff) in entries {
            let xstr = self.render_mono(&xm);
            if xstr.is_empty() {
                for (m, c) in Self::sorted_for_display(&coeff.terms) {
                    let mono = self.render_mono(m);
                    let abs = c.abs();
                    let mag = if mono.is_empty() {
                        abs.to_string()
                    } else if abs.is_one() {
                        mono
                    } else {
                        format!("{abs}*{mono}")
                    };
                    outer.push((c.is_negative(), mag));
                }
            } else if let Some((pm, pc)) = coeff.as_single_term() {
                let pstr = coeff.render_mono(pm);
                let abs = pc.abs();
                let mut mag = String::new();
                if !abs.is_one() {
                    mag.push_str(&format!("{abs}*"));
                }
                if !pstr.is_empty() {
                    mag.push_str(&pstr);
                    mag.push('*');
                }
                mag.push_str(&xstr);
                outer.push((pc.is_negative(), mag));
            } else {
                outer.push((false, format!("({})*{}", coeff.render_compact(), xstr)));
            }
        }

        let mut s = String::new();
        for (i, (neg, mag)) in outer.iter().enumerate() {
            if i == 0 {
                if *neg {
                    s.push('-');
                }
            } else if *neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            s.push_str(mag);
        }
        s
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
