//! Restricted lambda-ring layer: power-sum expansion of symmetric
//! polynomials, evaluation on alphabets of the form
//! `+/- (finite monomial set) / (1 - t)`, the modified skew functions
//! `Q'_{lambda/mu}[A;t] = Q_{lambda/mu}[A/(1-t);t]` and the two-letter
//! sum `B_lambda`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::hall;
use crate::partition::Partition;
use crate::poly::{MPoly, Mono, RatFn, VarId, VarTable};
use crate::qseries;
use crate::symfunc::{self, Basis, SymExpansion};

/// One atom of an alphabet expression: a signed finite set of monomial
/// letters, optionally dilated by `1/(1-t)`.
#[derive(Debug, Clone)]
pub struct Atom {
    pub negative: bool,
    pub letters: Vec<MPoly>,
    pub over_one_minus_t: bool,
}

/// A formal sum of atoms, the only alphabet shape the lambda-ring layer
/// supports: `p_r` evaluation is additive over atoms.
#[derive(Debug, Clone, Default)]
pub struct AlphabetExpr {
    pub atoms: Vec<Atom>,
}

impl AlphabetExpr {
    /// The alphabet `-{letters}`.
    pub fn negated(letters: &[MPoly]) -> Self {
        AlphabetExpr {
            atoms: vec![Atom {
                negative: true,
                letters: letters.to_vec(),
                over_one_minus_t: false,
            }],
        }
    }

    /// The alphabet `{letters}/(1-t)`.
    pub fn over_one_minus_t(letters: &[MPoly]) -> Self {
        AlphabetExpr {
            atoms: vec![Atom {
                negative: false,
                letters: letters.to_vec(),
                over_one_minus_t: true,
            }],
        }
    }

    /// The alphabet `-{letters}/(1-t)`.
    pub fn negated_over_one_minus_t(letters: &[MPoly]) -> Self {
        AlphabetExpr {
            atoms: vec![Atom {
                negative: true,
                letters: letters.to_vec(),
                over_one_minus_t: true,
            }],
        }
    }

    /// Disjoint union of alphabets.
    pub fn plus(mut self, other: &AlphabetExpr) -> Self {
        self.atoms.extend(other.atoms.iter().cloned());
        self
    }

    /// `p_r` of this alphabet: `sum_atoms sign * (sum_l l^r) * [1/(1-t^r)]`,
    /// with `t` given by `t_expr`.
    pub fn power_sum(&self, r: u32, t_expr: &MPoly) -> RatFn {
        assert!(r >= 1);
        let table = t_expr.table().clone();
        let one = MPoly::one(&table);
        let mut acc = RatFn::zero(&table);
        for atom in &self.atoms {
            let mut num = MPoly::zero(&table);
            for l in &atom.letters {
                num = num.add(&l.pow(r));
            }
            if atom.negative {
                num = num.neg();
            }
            let term = if atom.over_one_minus_t {
                RatFn::from_factors(num, vec![(one.sub(&t_expr.pow(r)), 1)])
            } else {
                RatFn::from_poly(num)
            };
            acc = acc.add(&term);
        }
        acc
    }
}

/// Expand a symmetric polynomial in the power-sum basis by greedy
/// dominance pivoting from the minimal shapes: `p_lambda = u_lambda
/// m_lambda + (dominance-higher terms)` with `u_lambda = prod_i m_i!`, so
/// subtracting from the bottom terminates. Coefficients are exact
/// rationals in the parameters.
pub fn powersum_expand(
    f: &MPoly,
    table: &Arc<VarTable>,
    xs: &[VarId],
) -> Result<SymExpansion<RatFn>> {
    symfunc::check_symmetric(f, xs)?;
    let xmask: u64 = xs.iter().map(|&v| 1u64 << v).sum();
    let mut out = SymExpansion::new(Basis::PowerSum);
    // f tracked as rem / den with an integer denominator
    let mut rem = f.clone();
    let mut den = BigInt::one();
    while !rem.is_zero() {
        // dominance-minimal shape among the lowest-degree terms
        let low = rem
            .terms()
            .map(|(m, _)| m.masked_degree(xmask))
            .min()
            .unwrap();
        let mut shapes: Vec<Partition> = Vec::new();
        for (m, _) in rem.terms() {
            if m.masked_degree(xmask) == low {
                let sh = Partition::new(xs.iter().map(|&v| m.0[v] as u32).collect());
                if !shapes.contains(&sh) {
                    shapes.push(sh);
                }
            }
        }
        let mut pivot = shapes[0].clone();
        for sh in &shapes[1..] {
            if Partition::dominance_leq(sh, &pivot).unwrap_or(false) {
                pivot = sh.clone();
            }
        }
        if pivot.is_empty() {
            // constant term: p_0-coefficient
            let mut mono = Mono::unit(table.len());
            for &v in xs {
                mono.0[v] = 0;
            }
            let c = rem.series_coeff(&mono);
            out.coeffs.insert(
                Partition::zero(),
                RatFn::from_factors(c.clone(), vec![(MPoly::constant(table, den.clone()), 1)]),
            );
            rem = rem.sub(&c);
            continue;
        }
        let mut u = BigInt::one();
        for i in 1..=pivot.first() {
            for j in 1..=pivot.multiplicity(i) {
                let _ = j;
                u *= BigInt::from(pivot.multiplicity(i));
                break;
            }
            // factorial of the multiplicity
            let m = pivot.multiplicity(i);
            let mut fac = BigInt::one();
            for j in 2..=m {
                fac *= BigInt::from(j);
            }
            u = &u / BigInt::from(m.max(1)) * fac;
        }
        let mut mono = Mono::unit(table.len());
        for (i, &p) in pivot.parts().iter().enumerate() {
            mono.0[xs[i]] = p as u16;
        }
        let c = rem.series_coeff(&mono);
        // coefficient of p_pivot is c / (den * u)
        out.coeffs.insert(
            pivot.clone(),
            RatFn::from_factors(
                c.clone(),
                vec![(MPoly::constant(table, &den * &u), 1)],
            ),
        );
        // rem/den - (c/(den u)) p_pivot = (u rem - c p_pivot) / (den u)
        let mut p_poly = MPoly::one(table);
        for &part in pivot.parts() {
            p_poly = p_poly.mul(&symfunc::power_sum(part, table, xs));
        }
        rem = rem.scale(&u).sub(&c.mul(&p_poly));
        den *= &u;
        let g = rem.content().gcd(&den);
        if !g.is_one() && !g.is_zero() {
            rem = rem.div_scalar_exact(&g);
            den = &den / &g;
        }
    }
    Ok(out)
}

/// Evaluate a power-sum expansion on an alphabet:
/// `p_lambda[A] = prod_j p_{lambda_j}[A]`.
pub fn eval_alphabet(f: &SymExpansion<RatFn>, alphabet: &AlphabetExpr, t_expr: &MPoly) -> RatFn {
    assert_eq!(f.basis, Basis::PowerSum);
    let table = t_expr.table().clone();
    let mut acc = RatFn::zero(&table);
    for (lam, c) in &f.coeffs {
        let mut term = c.transplant_by_name(&table);
        for &part in lam.parts() {
            term = term.mul(&alphabet.power_sum(part, t_expr));
        }
        acc = acc.add(&term);
    }
    acc
}

#[allow(clippy::type_complexity)]
static P_EXPANSIONS: Lazy<Mutex<HashMap<Partition, Arc<Vec<(Partition, RatFn)>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Power-sum expansion of `P_nu(.; T)`, memoized; coefficients are
/// rational in `T` over [`hall::t_table`] extended with nothing else.
fn p_expansion_of_hl(nu: &Partition) -> Arc<Vec<(Partition, RatFn)>> {
    if let Some(v) = P_EXPANSIONS.lock().unwrap().get(nu) {
        return v.clone();
    }
    let n = nu.weight().max(1) as usize;
    let table = hall::kernel_table(n);
    let xs = table.block_vars("x");
    let kernel = hall::hl_kernel(nu, n);
    let exp = powersum_expand(&kernel, &table, &xs).expect("kernel is symmetric");
    // move coefficients onto the T-only table
    let tt = hall::t_table();
    let tv = table.var("T");
    let moved: Vec<(Partition, RatFn)> = exp
        .coeffs
        .into_iter()
        .map(|(rho, c)| {
            let m = c.compose(&tt, |v| {
                if v == tv {
                    MPoly::named(&tt, "T")
                } else {
                    MPoly::one(&tt)
                }
            });
            (rho, m)
        })
        .collect();
    let arc = Arc::new(moved);
    P_EXPANSIONS.lock().unwrap().insert(nu.clone(), arc.clone());
    arc
}

/// `Q'_{lambda/mu}[A; t] = Q_{lambda/mu}[A/(1-t); t]`: the skew function
/// expanded through the structure constants, its parts converted to the
/// power-sum basis and evaluated on the dilated alphabet.
pub fn qprime_skew(
    lam: &Partition,
    mu: &Partition,
    alphabet: &AlphabetExpr,
    t_expr: &MPoly,
) -> Result<RatFn> {
    let table = t_expr.table().clone();
    if !lam.contains(mu) {
        return Ok(RatFn::zero(&table));
    }
    if lam == mu {
        return Ok(RatFn::one(&table));
    }
    // dilate the alphabet by 1/(1-t)
    let dilated = AlphabetExpr {
        atoms: alphabet
            .atoms
            .iter()
            .map(|a| {
                assert!(
                    !a.over_one_minus_t,
                    "alphabet is already dilated by 1/(1-t)"
                );
                Atom {
                    negative: a.negative,
                    letters: a.letters.clone(),
                    over_one_minus_t: true,
                }
            })
            .collect(),
    };
    let w = lam.weight() - mu.weight();
    let tt = hall::t_table();
    let ttv = tt.var("T");
    let mut acc = RatFn::zero(&table);
    for nu in crate::partition::enumerate_partitions(w, w as usize, None) {
        if nu.weight() != w {
            continue;
        }
        let consts = hall::struct_const(mu, &nu, mu.len() + nu.len())?;
        let f = match consts.get(lam) {
            Some(f) if !f.is_zero() => f,
            _ => continue,
        };
        // move f onto the target table
        let f_here = f.compose(&table, |v| {
            debug_assert_eq!(v, ttv);
            t_expr.clone()
        });
        let b_nu = hall::b_lambda_t(&nu, t_expr);
        // P_nu in the p-basis, coefficients T -> t_expr
        let mut term = RatFn::zero(&table);
        for (rho, c) in p_expansion_of_hl(&nu).iter() {
            let c_here = c.compose(&table, |v| {
                debug_assert_eq!(v, ttv);
                t_expr.clone()
            });
            let mut prod = c_here;
            for &part in rho.parts() {
                prod = prod.mul(&dilated.power_sum(part, t_expr));
            }
            term = term.add(&prod);
        }
        acc = acc.add(&term.mul_poly(&f_here).mul_poly(&b_nu));
    }
    Ok(acc)
}

/// `B_lambda(a, b; t) = sum_{mu even, mu inside lambda} Q'_{lambda/mu}[-{a,b}; t]`,
/// cleared to a polynomial (the sum always clears; failing to do so is an
/// error).
pub fn b_lambda_sum(lam: &Partition, a: &MPoly, b: &MPoly, t_expr: &MPoly) -> Result<MPoly> {
    let table = t_expr.table().clone();
    let alphabet = AlphabetExpr::negated(&[a.clone(), b.clone()]);
    let mut acc = RatFn::zero(&table);
    for mu in lam.sub_partitions() {
        if !mu.is_even() {
            continue;
        }
        acc = acc.add(&qprime_skew(lam, &mu, &alphabet, t_expr)?);
    }
    acc.to_poly().map_err(|_| Error::NotPolynomial)
}

/// The closed form `B_lambda = (-a)^{l(lambda_o)} h_{lambda_e}(ab;t)
/// h_{lambda_o}(b/a;t)`, homogenized so no division by `a` occurs.
pub fn b_lambda_closed(lam: &Partition, a: &MPoly, b: &MPoly, t_expr: &MPoly) -> MPoly {
    let (even, odd) = lam.even_odd_split();
    let ab = a.mul(b);
    let mut acc = qseries::h_lambda(&even, &ab, t_expr);
    acc = acc.mul(&qseries::h_lambda_homog(&odd, a, b, t_expr));
    if odd.len() % 2 == 1 {
        acc = acc.neg();
    }
    acc
}
