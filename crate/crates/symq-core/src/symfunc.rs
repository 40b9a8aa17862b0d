//! Symmetric polynomials in explicit bases: monomial symmetric functions,
//! elementary/complete generators, a Jacobi-Trudi oracle for Schur
//! polynomials, conversion into the Hall-Littlewood P basis by dominance
//! pivoting, and the involution omega on Schur expansions.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hall::HLContext;
use crate::partition::{distinct_rearrangements, enumerate_partitions, Partition};
use crate::poly::{determinant, MPoly, Mono, VarId, VarTable};

/// Basis tag for symmetric-function expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Monomial,
    HallLittlewoodP,
    PowerSum,
}

/// A graded map from partitions to coefficients in a declared basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymExpansion<C> {
    pub basis: Basis,
    pub coeffs: BTreeMap<Partition, C>,
}

impl<C> SymExpansion<C> {
    pub fn new(basis: Basis) -> Self {
        SymExpansion {
            basis,
            coeffs: BTreeMap::new(),
        }
    }
}

/// Monomial symmetric polynomial `m_lambda` over the given variables;
/// zero when `l(lambda)` exceeds the variable count.
pub fn monomial_sym(lam: &Partition, table: &Arc<VarTable>, xs: &[VarId]) -> MPoly {
    if lam.len() > xs.len() {
        return MPoly::zero(table);
    }
    let mut exps: Vec<u32> = lam.parts().to_vec();
    exps.resize(xs.len(), 0);
    let mut acc = MPoly::zero(table);
    for beta in distinct_rearrangements(&exps) {
        let mut mono = Mono::unit(table.len());
        for (i, &e) in beta.iter().enumerate() {
            mono.0[xs[i]] = e as u16;
        }
        acc = acc.add(&MPoly::monomial(table, mono, 1));
    }
    acc
}

/// Elementary symmetric polynomial `e_r`, the coefficient of `z^r` in
/// `prod_i (1 + z x_i)`.
pub fn elementary_e(r: u32, table: &Arc<VarTable>, xs: &[VarId]) -> MPoly {
    if r == 0 {
        return MPoly::one(table);
    }
    monomial_sym(&Partition::new(vec![1; r as usize]), table, xs)
}

/// Complete homogeneous symmetric polynomial `h_r`, the coefficient of
/// `z^r` in `prod_i 1/(1 - z x_i)`.
pub fn complete_h(r: u32, table: &Arc<VarTable>, xs: &[VarId]) -> MPoly {
    let mut acc = MPoly::zero(table);
    if r == 0 {
        return MPoly::one(table);
    }
    for lam in enumerate_partitions(r, xs.len(), None) {
        if lam.weight() == r {
            acc = acc.add(&monomial_sym(&lam, table, xs));
        }
    }
    acc
}

/// Power sum `p_r = sum_i x_i^r` (`p_0 = 1` by convention here).
pub fn power_sum(r: u32, table: &Arc<VarTable>, xs: &[VarId]) -> MPoly {
    if r == 0 {
        return MPoly::one(table);
    }
    let mut acc = MPoly::zero(table);
    for &x in xs {
        acc = acc.add(&MPoly::var(table, x).pow(r));
    }
    acc
}

/// Schur polynomial via the Jacobi-Trudi determinant
/// `det(h_{lambda_i - i + j})`, an oracle independent of the
/// Hall-Littlewood route `P_lambda(x;0)`.
pub fn schur_jacobi_trudi(lam: &Partition, table: &Arc<VarTable>, xs: &[VarId]) -> MPoly {
    let l = lam.len();
    if l == 0 {
        return MPoly::one(table);
    }
    let mut rows = Vec::with_capacity(l);
    for i in 1..=l {
        let mut row = Vec::with_capacity(l);
        for j in 1..=l {
            let d = lam.part(i) as i64 - i as i64 + j as i64;
            row.push(if d < 0 {
                MPoly::zero(table)
            } else {
                complete_h(d as u32, table, xs)
            });
        }
        rows.push(row);
    }
    determinant(&rows)
}

/// Check symmetry by applying every adjacent transposition once; exact
/// for polynomials since adjacent transpositions generate the full
/// symmetric group.
pub fn check_symmetric(f: &MPoly, xs: &[VarId]) -> Result<()> {
    for w in xs.windows(2) {
        if f.swap_vars(w[0], w[1]) != *f {
            return Err(Error::NotSymmetric(w[0], w[1]));
        }
    }
    Ok(())
}

fn x_shape(m: &Mono, xs: &[VarId]) -> Partition {
    Partition::new(xs.iter().map(|&v| m.0[v] as u32).collect())
}

/// Expand a symmetric polynomial in the Hall-Littlewood P basis of the
/// context by greedy dominance pivoting: repeatedly subtract
/// `c_lambda P_lambda` for a dominance-maximal remaining shape. Since
/// `P_lambda = m_lambda + (dominance-lower terms)`, the loop terminates
/// with each partition pivoted at most once.
pub fn to_p_basis(f: &MPoly, ctx: &HLContext) -> Result<BTreeMap<Partition, MPoly>> {
    check_symmetric(f, &ctx.xs)?;
    let mut rem = f.clone();
    let mut out = BTreeMap::new();
    while !rem.is_zero() {
        // shapes present at the maximal retained x-degree
        let xmask: u64 = ctx.xs.iter().map(|&v| 1u64 << v).sum();
        let top = rem.masked_degree(xmask);
        let mut shapes: Vec<Partition> = Vec::new();
        for (m, _) in rem.terms() {
            if m.masked_degree(xmask) == top {
                let sh = x_shape(m, &ctx.xs);
                if !shapes.contains(&sh) {
                    shapes.push(sh);
                }
            }
        }
        // a dominance-maximal shape among those present
        let mut pivot = shapes[0].clone();
        for sh in &shapes[1..] {
            if Partition::dominance_leq(&pivot, sh).unwrap_or(false) {
                pivot = sh.clone();
            }
        }
        for sh in &shapes {
            debug_assert!(
                !(Partition::dominance_leq(&pivot, sh).unwrap_or(false) && *sh != pivot),
                "pivot {pivot} is dominated by {sh}"
            );
        }
        // coefficient of the monomial x^pivot
        let mut mono = Mono::unit(ctx.table.len());
        for (i, &p) in pivot.parts().iter().enumerate() {
            mono.0[ctx.xs[i]] = p as u16;
        }
        let c = rem.series_coeff(&mono);
        debug_assert!(!c.is_zero());
        rem = rem.sub(&c.mul(&ctx.hl_p(&pivot)));
        let slot = out.entry(pivot).or_insert_with(|| MPoly::zero(&ctx.table));
        *slot = slot.add(&c);
    }
    out.retain(|_, c: &mut MPoly| !c.is_zero());
    Ok(out)
}

/// Expand a P-basis map back into a polynomial (the inverse of
/// [`to_p_basis`]).
pub fn from_p_basis(coeffs: &BTreeMap<Partition, MPoly>, ctx: &HLContext) -> MPoly {
    let mut acc = MPoly::zero(&ctx.table).with_trunc(ctx.trunc.clone());
    for (lam, c) in coeffs {
        acc = acc.add(&c.clone().with_trunc(ctx.trunc.clone()).mul(&ctx.hl_p(lam)));
    }
    acc
}

/// The involution omega on a Schur expansion: `s_lambda -> s_lambda'`
/// coefficient-wise. The expansion must fit inside `n_target` variables
/// (`|lambda| <= n_target`), else conjugate shapes would be annihilated.
pub fn omega_on_schur(
    f: &SymExpansion<MPoly>,
    n_target: usize,
) -> Result<SymExpansion<MPoly>> {
    let mut out = SymExpansion::new(f.basis);
    for (lam, c) in &f.coeffs {
        if lam.weight() as usize > n_target {
            return Err(Error::CapExceedsVariables {
                cap: lam.weight(),
                nvars: n_target,
            });
        }
        out.coeffs.insert(lam.conjugate(), c.clone());
    }
    Ok(out)
}
