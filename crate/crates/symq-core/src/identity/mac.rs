//! The Macdonald-polynomial identities with exact rational (q,t)
//! coefficients: arm/leg-weighted sums against q-Pochhammer products
//! expanded through the q-binomial theorem.

use std::sync::Arc;

use crate::error::Result;
use crate::macdonald::{
    b_family, binomial_series, gauss_coeff, mac_p, q_param, qt_table, t_param, BFamily, CSeries,
};
use crate::partition::enumerate_partitions;
use crate::poly::{MPoly, Mono, RatFn, TruncSpec, VarTable};
use crate::qseries::pochhammer;

use super::{Case, Mismatch, Mode, Params};

fn mac_table(n: usize) -> Arc<VarTable> {
    VarTable::with_x(n, &["a"])
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum MacId {
    Pb,
    Pc,
    P349,
}

fn lhs(which: MacId, n: usize, d: u32, table: &Arc<VarTable>, trunc: &TruncSpec) -> CSeries {
    let q = q_param();
    let t = t_param();
    let av = table.var("a");
    let mut acc = CSeries::zero(table, Some(trunc.clone()));
    for lam in enumerate_partitions(d, d as usize, None) {
        let (coeff, a_pow) = match which {
            MacId::Pc => {
                let (_, odd_cols) = lam.conjugate().even_odd_split();
                (
                    b_family(&lam, BFamily::EvenLeg, &q, &t),
                    odd_cols.len() as u32,
                )
            }
            MacId::Pb => {
                let (_, odd) = lam.even_odd_split();
                (b_family(&lam, BFamily::OddArm, &q, &t), odd.len() as u32)
            }
            MacId::P349 => {
                if !lam.conjugate().is_even() {
                    continue;
                }
                (b_family(&lam, BFamily::EvenLeg, &q, &t), 0)
            }
        };
        let mut a_mono = Mono::unit(table.len());
        a_mono.0[av] = a_pow as u16;
        let term = mac_p(&lam, table, Some(trunc.clone()))
            .scale_ref(&coeff)
            .mul(&CSeries::term(
                table,
                Some(trunc.clone()),
                a_mono,
                RatFn::one(&qt_table()),
            ));
        acc = acc.add(&term);
        let _ = n;
    }
    acc
}

/// `prod_{i<j} (t x_i x_j; q)_inf / (x_i x_j; q)_inf` via the q-binomial
/// theorem: each factor is `sum_k (t;q)_k/(q;q)_k (x_i x_j)^k` with exact
/// rational coefficients.
fn pair_products(n: usize, table: &Arc<VarTable>, trunc: &TruncSpec) -> CSeries {
    let mut acc = CSeries::one(table, Some(trunc.clone()));
    for i in 1..=n {
        for j in i + 1..=n {
            let mut y = Mono::unit(table.len());
            y.0[table.var(&format!("x{i}"))] = 1;
            y.0[table.var(&format!("x{j}"))] = 1;
            acc = acc.mul(&binomial_series(table, trunc, &y, gauss_coeff));
        }
    }
    acc
}

fn rhs(which: MacId, n: usize, table: &Arc<VarTable>, trunc: &TruncSpec) -> CSeries {
    let q = q_param();
    let t = t_param();
    let qt = qt_table();
    let one = MPoly::one(&qt);
    let mut acc = pair_products(n, table, trunc);
    match which {
        MacId::P349 => {}
        MacId::Pc => {
            // prod_i (a t x_i; q)_inf / (a x_i; q)_inf
            for i in 1..=n {
                let mut y = Mono::unit(table.len());
                y.0[table.var(&format!("x{i}"))] = 1;
                y.0[table.var("a")] = 1;
                acc = acc.mul(&binomial_series(table, trunc, &y, gauss_coeff));
            }
        }
        MacId::Pb => {
            // prod_i (1 + a x_i) (q t x_i^2; q^2)_inf / (x_i^2; q^2)_inf
            let coeff_q2 = |k: u32| {
                let num = pochhammer(&q.mul(&t), &q.pow(2), k);
                let den = (1..=k).map(|j| (one.sub(&q.pow(2 * j)), 1)).collect();
                RatFn::from_factors(num, den)
            };
            for i in 1..=n {
                let xv = table.var(&format!("x{i}"));
                let mut lin = CSeries::one(table, Some(trunc.clone()));
                let mut ax = Mono::unit(table.len());
                ax.0[xv] = 1;
                ax.0[table.var("a")] = 1;
                lin = lin.add(&CSeries::term(
                    table,
                    Some(trunc.clone()),
                    ax,
                    RatFn::one(&qt),
                ));
                let mut y = Mono::unit(table.len());
                y.0[xv] = 2;
                acc = acc.mul(&lin).mul(&binomial_series(table, trunc, &y, coeff_q2));
            }
        }
    }
    acc
}

fn run(which: MacId, params: &Params) -> Result<Vec<Mismatch>> {
    let n = params.n;
    let d = params.d;
    let table = mac_table(n);
    let trunc = TruncSpec::degree_cap(table.mask("x"), d);
    let l = lhs(which, n, d, &table, &trunc);
    let r = rhs(which, n, &table, &trunc);
    Ok(l.mismatches(&r)
        .into_iter()
        .map(|(monomial, lhs, rhs)| Mismatch { monomial, lhs, rhs })
        .collect())
}

pub(super) fn register(cases: &mut Vec<Case>) {
    cases.push(Case {
        id: "mac.pb",
        anchor: "odd-arm weighted Macdonald sum equals prod (1+a x_i)(q t x_i^2;q^2)_inf/(x_i^2;q^2)_inf * prod (t x_i x_j;q)_inf/(x_i x_j;q)_inf",
        mode: Mode::Series,
        runner: |p| run(MacId::Pb, p),
        smoke: vec![Params::new(2, 3)],
        full: vec![Params::new(3, 4)],
    });
    cases.push(Case {
        id: "mac.pc",
        anchor: "even-leg weighted Macdonald sum equals prod (a t x_i;q)_inf/(a x_i;q)_inf * prod (t x_i x_j;q)_inf/(x_i x_j;q)_inf",
        mode: Mode::Series,
        runner: |p| run(MacId::Pc, p),
        smoke: vec![Params::new(2, 3)],
        full: vec![Params::new(3, 4)],
    });
    cases.push(Case {
        id: "mac.p349",
        anchor: "the a = 0 case: even-leg weighted sum over even-conjugate partitions equals prod (t x_i x_j;q)_inf/(x_i x_j;q)_inf",
        mode: Mode::Series,
        runner: |p| run(MacId::P349, p),
        smoke: vec![Params::new(2, 3)],
        full: vec![Params::new(3, 4)],
    });
}
