//! The lambda-ring identities: the closed form for the two-letter sum
//! `B_lambda` and the kernel identity pairing it with `P_lambda(x;t)`.

use crate::error::Result;
use crate::hall::{self, HLContext};
use crate::partition::enumerate_partitions;
use crate::plethysm::{b_lambda_closed, b_lambda_sum};
use crate::poly::{MPoly, TruncSpec, VarTable};

use super::{labelled_mismatch, mpoly_mismatches, Case, Mismatch, Mode, Params};

/// `B_lambda` as the even-sub-partition skew sum equals the closed form
/// `(-a)^{l(odd)} h_even(ab;t) h_odd(b/a;t)` (homogenized), clearing to a
/// polynomial along the way.
fn run_thm_closed_form(params: &Params) -> Result<Vec<Mismatch>> {
    let table = VarTable::builder().param("s").param("a").param("b").build();
    let s = MPoly::named(&table, "s");
    let t = s.pow(2);
    let a = MPoly::named(&table, "a");
    let b = MPoly::named(&table, "b");
    let mut out = Vec::new();
    for lam in enumerate_partitions(params.d, params.d as usize, None) {
        let got = b_lambda_sum(&lam, &a, &b, &t)?;
        let want = b_lambda_closed(&lam, &a, &b, &t);
        if let Some(m) = labelled_mismatch(&format!("B[{lam}]"), &got, &want) {
            out.push(m);
        }
    }
    Ok(out)
}

/// `sum_lambda P_lambda(x;t) B_lambda(a,b;t)` equals
/// `prod_i (1 - a x_i)(1 - b x_i)/(1 - x_i^2) * prod_{i<j}
/// (1 - t x_i x_j)/(1 - x_i x_j)`.
fn run_kernel_identity(params: &Params) -> Result<Vec<Mismatch>> {
    let n = params.n;
    let d = params.d;
    let table = VarTable::with_x(n, &["s", "a", "b"]);
    let s = MPoly::named(&table, "s");
    let t = s.pow(2);
    let a = MPoly::named(&table, "a");
    let b = MPoly::named(&table, "b");
    let one = MPoly::one(&table);
    let cap = TruncSpec::degree_cap(table.mask("x"), d);
    let ctx = HLContext::new(&table, "x", t.clone(), Some(cap.clone()));
    let mut err = None;
    let lhs = hall::hl_sum(&ctx, d, |p| match b_lambda_sum(p, &a, &b, &t) {
        Ok(c) => Some(c),
        Err(e) => {
            err = Some(e);
            None
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut rhs = MPoly::one(&table).with_trunc(Some(cap.clone()));
    for i in 1..=n {
        let xi = MPoly::named(&table, &format!("x{i}"));
        rhs = rhs.mul(&one.sub(&xi.mul(&a)).with_trunc(Some(cap.clone())));
        rhs = rhs.mul(&one.sub(&xi.mul(&b)).with_trunc(Some(cap.clone())));
        rhs = rhs.mul(&xi.pow(2).geometric_inverse(&cap).unwrap());
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let xx = MPoly::named(&table, &format!("x{i}")).mul(&MPoly::named(&table, &format!("x{j}")));
            rhs = rhs.mul(&one.sub(&t.mul(&xx)).with_trunc(Some(cap.clone())));
            rhs = rhs.mul(&xx.geometric_inverse(&cap).unwrap());
        }
    }
    Ok(mpoly_mismatches(&lhs, &rhs))
}

pub(super) fn register(cases: &mut Vec<Case>) {
    cases.push(Case {
        id: "plethysm.thm42",
        anchor: "the even-sub-partition skew sum B_lambda clears to a polynomial and equals (-a)^{l(odd)} h_even(ab;t) h_odd(b/a;t)",
        mode: Mode::Series,
        runner: run_thm_closed_form,
        smoke: vec![Params::new(0, 3)],
        full: vec![Params::new(0, 6)],
    });
    cases.push(Case {
        id: "plethysm.ehxy",
        anchor: "kernel identity: sum of P_lambda(x;t) B_lambda(a,b;t) equals prod (1-a x_i)(1-b x_i)/(1-x_i^2) * prod (1-t x_i x_j)/(1-x_i x_j)",
        mode: Mode::Series,
        runner: run_kernel_identity,
        smoke: vec![Params::new(2, 3)],
        full: vec![Params::new(2, 4)],
    });
}
