//! The bounded sum over `lambda_1 <= k` as a fold over sign vectors
//! (an exact rational identity), and its principal-specialization
//! q-series consequences, including the Rogers-Ramanujan-type identity.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hall::HLContext;
use crate::partition::{enumerate_partitions, Partition};
use crate::poly::{MPoly, RatFn, TruncSpec, VarTable};
use crate::qseries;

use super::{Case, Mismatch, Mode, Params};

fn prop1_table(n: usize) -> Arc<VarTable> {
    VarTable::with_x(n, &["s", "a"])
}

/// `sum_{lambda_1 <= k} h_{lambda;k}(a;t) P_lambda(x;t)` -- a finite sum,
/// exact (no truncation).
fn prop1_lhs(n: usize, k: u32, table: &Arc<VarTable>) -> MPoly {
    let s = MPoly::named(table, "s");
    let a = MPoly::named(table, "a");
    let t = s.pow(2);
    let ctx = HLContext::new(table, "x", t.clone(), None);
    let mut acc = MPoly::zero(table);
    for lam in enumerate_partitions(k * n as u32, n, Some(k)) {
        acc = acc.add(&qseries::h_lambda_bounded(&lam, k, &a, &t).mul(&ctx.hl_p(&lam)));
    }
    acc
}

/// One sign-vector term of the folded side, assembled directly as a
/// rational function: negative powers are cleared eagerly
/// (`1/(1 - 1/x) = -x/(1-x)` and so on), so exponents stay nonnegative.
fn prop1_term(n: usize, k: u32, eps: &[bool], table: &Arc<VarTable>) -> RatFn {
    let one = MPoly::one(table);
    let s = MPoly::named(table, "s");
    let a = MPoly::named(table, "a");
    let t = s.pow(2);
    let x = |i: usize| MPoly::named(table, &format!("x{i}"));
    let mut num = one.clone();
    let mut den: Vec<(MPoly, u32)> = Vec::new();
    for i in 1..=n {
        if eps[i - 1] {
            num = num.mul(&one.add(&a.mul(&x(i))));
        } else {
            num = num.mul(&x(i).add(&a).mul(&x(i).pow(k)).neg());
        }
        den.push((one.sub(&x(i)), 1));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let (xi, xj) = (x(i), x(j));
            match (eps[i - 1], eps[j - 1]) {
                (true, true) => {
                    num = num.mul(&one.sub(&t.mul(&xi).mul(&xj)));
                    den.push((one.sub(&xi.mul(&xj)), 1));
                }
                (true, false) => {
                    num = num.mul(&xj.sub(&t.mul(&xi)));
                    den.push((xj.sub(&xi), 1));
                }
                (false, true) => {
                    num = num.mul(&xi.sub(&t.mul(&xj)));
                    den.push((xi.sub(&xj), 1));
                }
                (false, false) => {
                    num = num.mul(&xi.mul(&xj).sub(&t));
                    den.push((xi.mul(&xj).sub(&one), 1));
                }
            }
        }
    }
    RatFn::from_factors(num, den)
}

fn prop1_rhs(n: usize, k: u32, table: &Arc<VarTable>) -> RatFn {
    let mut acc = RatFn::zero(table);
    for mask in 0..(1u32 << n) {
        let eps: Vec<bool> = (0..n).map(|i| mask & (1 << i) == 0).collect();
        acc = acc.add(&prop1_term(n, k, &eps, table));
    }
    acc
}

fn ratfn_mismatches(lhs: &RatFn, rhs: &RatFn) -> Vec<Mismatch> {
    if lhs.eq_cross(rhs) {
        return Vec::new();
    }
    let l = lhs.num().mul(&rhs.den_expanded());
    let r = rhs.num().mul(&lhs.den_expanded());
    super::mpoly_mismatches(&l, &r)
}

fn run_prop1(params: &Params) -> Result<Vec<Mismatch>> {
    let n = params.n;
    let k = params
        .k
        .ok_or_else(|| Error::InvalidParams("prop1 requires k".into()))?;
    let table = prop1_table(n);
    let lhs = RatFn::from_poly(prop1_lhs(n, k, &table));
    let rhs = prop1_rhs(n, k, &table);
    Ok(ratfn_mismatches(&lhs, &rhs))
}

fn run_prop1_k1(params: &Params) -> Result<Vec<Mismatch>> {
    // at k = 1 the folded side collapses to prod (1 + x_i), independent
    // of both a and t
    let n = params.n;
    let table = prop1_table(n);
    let rhs = prop1_rhs(n, 1, &table);
    let one = MPoly::one(&table);
    let mut prod = one.clone();
    for i in 1..=n {
        prod = prod.mul(&one.add(&MPoly::named(&table, &format!("x{i}"))));
    }
    Ok(ratfn_mismatches(&RatFn::from_poly(prod), &rhs))
}

fn run_prop1_sampled(params: &Params) -> Result<Vec<Mismatch>> {
    // soundness-biased spot check at integer points: distinct primes for
    // the x_i, random small integers for a and s, exact rational equality
    let n = params.n;
    let k = params.k.unwrap_or(2);
    let seed: u64 = params
        .subs
        .get("seed")
        .and_then(|s| s.parse().ok())
        .unwrap_or(20260809);
    let table = prop1_table(n);
    let lhs = prop1_lhs(n, k, &table);
    let primes = [2i64, 3, 5, 7, 11, 13];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for trial in 0..3 {
        let mut values = vec![BigInt::from(0); table.len()];
        for (i, p) in primes.iter().take(n).enumerate() {
            values[table.var(&format!("x{}", i + 1))] = BigInt::from(*p);
        }
        values[table.var("s")] = BigInt::from(rng.gen_range(2..=9));
        values[table.var("a")] = BigInt::from(rng.gen_range(2..=11));
        let lhs_val = BigRational::from(lhs.eval_bigint(&values));
        let mut rhs_val = BigRational::from(BigInt::from(0));
        for mask in 0..(1u32 << n) {
            let eps: Vec<bool> = (0..n).map(|i| mask & (1 << i) == 0).collect();
            let term = prop1_term(n, k, &eps, &table);
            let num = term.num().eval_bigint(&values);
            let den = term.den_expanded().eval_bigint(&values);
            assert!(den != BigInt::from(0), "degenerate sample point");
            rhs_val += BigRational::new(num, den);
        }
        if lhs_val != rhs_val {
            out.push(Mismatch {
                monomial: format!("sample trial {trial}"),
                lhs: lhs_val.to_string(),
                rhs: rhs_val.to_string(),
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------
// principal specialization: series in q (and z) with a, b exact
// ---------------------------------------------------------------------

struct QCtx {
    table: Arc<VarTable>,
    trunc: TruncSpec,
    one: MPoly,
    q: MPoly,
}

impl QCtx {
    fn new(vars: &[&str], caps: &[(&str, u32)]) -> Self {
        let mut b = VarTable::builder();
        for v in vars {
            b = b.param(v);
        }
        let table = b.build();
        let mut trunc: Option<TruncSpec> = None;
        for (v, cap) in caps {
            let mask = table.mask_of(table.var(v));
            trunc = Some(match trunc {
                None => TruncSpec::degree_cap(mask, *cap),
                Some(t) => t.and(mask, *cap),
            });
        }
        let trunc = trunc.unwrap();
        QCtx {
            one: MPoly::one(&table).with_trunc(Some(trunc.clone())),
            q: MPoly::named(&table, "q"),
            trunc,
            table,
        }
    }

    fn var(&self, name: &str) -> MPoly {
        MPoly::named(&self.table, name)
    }

    fn geom(&self, m: &MPoly) -> MPoly {
        m.geometric_inverse(&self.trunc).unwrap()
    }

    /// `1/(base; q)_inf` expanded: one geometric inverse per factor that
    /// the cap can still see.
    fn inv_poch_inf(&self, base: &MPoly) -> MPoly {
        let mut acc = self.one.clone();
        let mut shift = base.clone();
        loop {
            match shift.as_single_term() {
                Some((m, _)) if self.trunc.admits(m) => {
                    acc = acc.mul(&self.geom(&shift));
                    shift = shift.mul(&self.q);
                }
                _ => break,
            }
        }
        acc
    }

    fn poch_inf(&self, base: &MPoly) -> MPoly {
        qseries::pochhammer_inf(base, &self.q, &self.trunc).unwrap()
    }

    /// `1/prod_i (q;q)_{m_i(lambda)}` as a truncated series.
    fn inv_qfac_of_multiplicities(&self, lam: &Partition) -> MPoly {
        let mut acc = self.one.clone();
        for i in 1..=lam.first() {
            for j in 1..=lam.multiplicity(i) {
                acc = acc.mul(&self.geom(&self.q.pow(j)));
            }
        }
        acc
    }
}

fn binom2(r: u32) -> u32 {
    if r < 2 {
        0
    } else {
        r * (r - 1) / 2
    }
}

/// The two-parameter bounded principal specialization. The left side uses
/// `P_lambda(1,q,q^2,...;q) = q^{n(lambda)} / prod_i (q;q)_{m_i}` (the
/// variable `x_i = z q^{i-1}` only contributes q-degree >= i-1, so the
/// infinite alphabet is exact below any cap; see
/// [`crate::hall::hl_principal_spec`] for the degree argument), and
/// `(b;q^{-1})_{l} q^{n(lambda)} = q^{n(lambda)-binom(l,2)}
/// prod_{i<l}(q^i - b)`, nonnegative since `n(lambda) >= binom(l,2)`.
fn run_prop2_general(params: &Params) -> Result<Vec<Mismatch>> {
    let k = params
        .k
        .ok_or_else(|| Error::InvalidParams("prop2 requires k".into()))?;
    let q_cap = params.q_cap.unwrap_or(12);
    let z_cap = q_cap;
    let c = QCtx::new(&["z", "q", "a", "b"], &[("q", q_cap), ("z", z_cap)]);
    let (z, a, b) = (c.var("z"), c.var("a"), c.var("b"));

    // LHS over lambda with lambda_1 <= k, |lambda| = z-degree <= z_cap
    let mut lhs = MPoly::zero(&c.table).with_trunc(Some(c.trunc.clone()));
    for lam in enumerate_partitions(z_cap, z_cap as usize, Some(k)) {
        let l = lam.len() as u32;
        let shift = lam.n_stat() - binom2(l);
        if shift > q_cap {
            continue;
        }
        let mut term = z.pow(lam.weight()).mul(&c.q.pow(shift)).with_trunc(Some(c.trunc.clone()));
        for i in 0..l {
            term = term.mul(&c.capped_poly(&c.q.pow(i).sub(&b)));
        }
        term = term.mul(&c.capped_poly(&qseries::h_lambda_bounded(&lam, k, &a, &c.q)));
        term = term.mul(&c.inv_qfac_of_multiplicities(&lam));
        lhs = lhs.add(&term);
    }

    // RHS prefactor (bz^2, -z, -az; q)_inf / (z^2, -bz, -abz; q)_inf
    let mut rhs = c.poch_inf(&b.mul(&z.pow(2)));
    rhs = rhs.mul(&c.poch_inf(&z.neg()));
    rhs = rhs.mul(&c.poch_inf(&a.mul(&z).neg()));
    rhs = rhs.mul(&c.inv_poch_inf(&z.pow(2)));
    rhs = rhs.mul(&c.inv_poch_inf(&b.mul(&z).neg()));
    rhs = rhs.mul(&c.inv_poch_inf(&a.mul(&b).mul(&z).neg()));

    // the r-sum, cleared of negative powers:
    // term_r = (-1)^r z^{kr} q^{k binom(r,2)} (1 - z^2 q^{2r-1})
    //          (z^2;q)_{r-1} prod_{i<r}(q^i - b) prod_{i<r}(a + z q^i)
    //          / ((q;q)_r (-az;q)_r (bz^2;q)_r)
    let mut rsum = c.one.clone();
    for r in 1..=z_cap {
        if k * r > z_cap || k * binom2(r) > q_cap {
            break;
        }
        let mut term = z.pow(k * r).mul(&c.q.pow(k * binom2(r))).with_trunc(Some(c.trunc.clone()));
        if r % 2 == 1 {
            term = term.neg();
        }
        term = term.mul(&c.capped_poly(&MPoly::one(&c.table).sub(&z.pow(2).mul(&c.q.pow(2 * r - 1)))));
        term = term.mul(&c.capped_poly(&qseries::pochhammer(&z.pow(2), &c.q, r - 1)));
        for i in 0..r {
            term = term.mul(&c.capped_poly(&c.q.pow(i).sub(&b)));
            term = term.mul(&c.capped_poly(&a.add(&z.mul(&c.q.pow(i)))));
        }
        for j in 1..=r {
            term = term.mul(&c.geom(&c.q.pow(j)));
        }
        for i in 0..r {
            term = term.mul(&c.geom(&a.mul(&z).mul(&c.q.pow(i)).neg()));
            term = term.mul(&c.geom(&b.mul(&z.pow(2)).mul(&c.q.pow(i))));
        }
        rsum = rsum.add(&term);
    }
    rhs = rhs.mul(&rsum);
    Ok(super::mpoly_mismatches(&lhs, &rhs))
}

impl QCtx {
    fn capped_poly(&self, p: &MPoly) -> MPoly {
        p.clone().with_trunc(Some(self.trunc.clone()))
    }
}

/// The bilateral form at `b = 0`, `z = q`.
fn run_prop2_b0(params: &Params) -> Result<Vec<Mismatch>> {
    let k = params
        .k
        .ok_or_else(|| Error::InvalidParams("prop2 requires k".into()))?;
    let q_cap = params.q_cap.unwrap_or(12);
    let c = QCtx::new(&["q", "a"], &[("q", q_cap)]);
    let a = c.var("a");

    // LHS: z = q, so each lambda-term has minimal q-degree
    // |lambda| + n(lambda)
    let mut lhs = MPoly::zero(&c.table).with_trunc(Some(c.trunc.clone()));
    for lam in enumerate_partitions(q_cap, q_cap as usize, Some(k)) {
        if lam.weight() + lam.n_stat() > q_cap {
            continue;
        }
        let mut term = c.q.pow(lam.weight() + lam.n_stat()).with_trunc(Some(c.trunc.clone()));
        term = term.mul(&c.capped_poly(&qseries::h_lambda_bounded(&lam, k, &a, &c.q)));
        term = term.mul(&c.inv_qfac_of_multiplicities(&lam));
        lhs = lhs.add(&term);
    }

    // RHS: (-z,-az;q)_inf/(q;q)_inf * bilateral sum, z = q
    let mut rhs = c.poch_inf(&c.q.neg());
    rhs = rhs.mul(&c.poch_inf(&a.mul(&c.q).neg()));
    rhs = rhs.mul(&c.inv_poch_inf(&c.q.clone()));
    let mut bsum = c.one.clone();
    // r >= 1: (-1)^r q^{kr + (k+1) binom(r,2)} prod_{i=1..r} (a + q^i)/(1 + a q^i)
    for r in 1..=q_cap {
        let e = k * r + (k + 1) * binom2(r);
        if e > q_cap {
            break;
        }
        let mut term = c.q.pow(e).with_trunc(Some(c.trunc.clone()));
        if r % 2 == 1 {
            term = term.neg();
        }
        for i in 1..=r {
            term = term.mul(&c.capped_poly(&a.add(&c.q.pow(i))));
            term = term.mul(&c.geom(&a.mul(&c.q.pow(i)).neg()));
        }
        bsum = bsum.add(&term);
    }
    // r = -m: (-1)^m q^{(k+1) m(m+1)/2 - km} prod_{j=2..m} (a + q^{j-1})/(1 + a q^{j-1})
    for m in 1..=q_cap {
        let e = (k + 1) * m * (m + 1) / 2 - k * m;
        if e > q_cap {
            break;
        }
        let mut term = c.q.pow(e).with_trunc(Some(c.trunc.clone()));
        if m % 2 == 1 {
            term = term.neg();
        }
        for j in 2..=m {
            term = term.mul(&c.capped_poly(&a.add(&c.q.pow(j - 1))));
            term = term.mul(&c.geom(&a.mul(&c.q.pow(j - 1)).neg()));
        }
        bsum = bsum.add(&term);
    }
    rhs = rhs.mul(&bsum);
    Ok(super::mpoly_mismatches(&lhs, &rhs))
}

/// The Rogers-Ramanujan-type identity at `z = q`, `a = 1`, against a
/// Jacobi-triple-product series oracle for the right-hand side.
fn run_prop2_rr(params: &Params) -> Result<Vec<Mismatch>> {
    let k = params
        .k
        .ok_or_else(|| Error::InvalidParams("prop2.rr requires k".into()))?;
    let q_cap = params.q_cap.unwrap_or(20);
    let c = QCtx::new(&["q"], &[("q", q_cap)]);
    let one_plain = MPoly::one(&c.table);

    let mut lhs = MPoly::zero(&c.table).with_trunc(Some(c.trunc.clone()));
    for lam in enumerate_partitions(q_cap, q_cap as usize, Some(k)) {
        if lam.weight() + lam.n_stat() > q_cap {
            continue;
        }
        let mut term = c.q.pow(lam.weight() + lam.n_stat()).with_trunc(Some(c.trunc.clone()));
        term = term.mul(&c.capped_poly(&qseries::h_lambda_bounded(&lam, k, &one_plain, &c.q)));
        term = term.mul(&c.inv_qfac_of_multiplicities(&lam));
        lhs = lhs.add(&term);
    }

    // (-q;q)_inf^2 (q, q^k, q^{k+1}; q^{k+1})_inf / (q;q)_inf with the
    // triple product replaced by its series sum_{r in Z} (-1)^r
    // q^{(k+1) binom(r,2) + kr}
    let mut rhs = c.poch_inf(&c.q.neg());
    rhs = rhs.mul(&c.poch_inf(&c.q.neg()));
    rhs = rhs.mul(&c.inv_poch_inf(&c.q.clone()));
    let mut jtp = MPoly::zero(&c.table).with_trunc(Some(c.trunc.clone()));
    for r in -(q_cap as i64)..=(q_cap as i64) {
        let e = (k as i64 + 1) * r * (r - 1) / 2 + k as i64 * r;
        if e < 0 || e > q_cap as i64 {
            continue;
        }
        let mut term = c.q.pow(e as u32).with_trunc(Some(c.trunc.clone()));
        if r.rem_euclid(2) == 1 {
            term = term.neg();
        }
        jtp = jtp.add(&term);
    }
    rhs = rhs.mul(&jtp);
    Ok(super::mpoly_mismatches(&lhs, &rhs))
}

pub(super) fn register(cases: &mut Vec<Case>) {
    cases.push(Case {
        id: "prop1",
        anchor: "bounded sum over lambda_1 <= k equals the fold of Phi(x;a,t) over sign vectors, as an exact rational identity (z read as a)",
        mode: Mode::Rational,
        runner: run_prop1,
        smoke: vec![Params::new(2, 0).with_k(1)],
        full: vec![
            Params::new(2, 0).with_k(1),
            Params::new(2, 0).with_k(2),
            Params::new(2, 0).with_k(3),
            Params::new(3, 0).with_k(1),
            Params::new(3, 0).with_k(2),
        ],
    });
    cases.push(Case {
        id: "prop1.k1",
        anchor: "the k = 1 collapse: the sign-vector fold equals prod (1 + x_i), independent of a and t",
        mode: Mode::Rational,
        runner: run_prop1_k1,
        smoke: vec![Params::new(2, 0)],
        full: vec![Params::new(3, 0)],
    });
    cases.push(Case {
        id: "prop1.sampled",
        anchor: "sampled integer-point check of the bounded-sum fold at n = 4 (exact rational arithmetic at fixed random points)",
        mode: Mode::Rational,
        runner: run_prop1_sampled,
        smoke: vec![Params::new(3, 0)
            .with_k(2)
            .with_note("mode", "sampled-integer-points")
            .with_note("seed", "20260809")],
        full: vec![Params::new(4, 0)
            .with_k(2)
            .with_note("mode", "sampled-integer-points")
            .with_note("seed", "20260809")],
    });
    cases.push(Case {
        id: "prop2.general",
        anchor: "two-parameter principal specialization: bounded sum in z, q with exact a, b coefficients against the product-times-sum form (stated without proof in the source of the construction; verified here at truncation scale)",
        mode: Mode::Series,
        runner: run_prop2_general,
        smoke: vec![Params::new(0, 0)
            .with_k(1)
            .with_q_cap(6)
            .with_note("note", "stated-without-proof")
            .with_note("z_cap", "= q_cap")],
        full: (1..=3)
            .map(|k| {
                Params::new(0, 0)
                    .with_k(k)
                    .with_q_cap(12)
                    .with_note("note", "stated-without-proof")
                    .with_note("z_cap", "= q_cap")
            })
            .collect(),
    });
    cases.push(Case {
        id: "prop2.b0-simplified",
        anchor: "the b = 0, z = q case: bounded sum equals (-z,-az;q)_inf/(q;q)_inf times a bilateral theta-like sum",
        mode: Mode::Series,
        runner: run_prop2_b0,
        smoke: vec![Params::new(0, 0).with_k(1).with_q_cap(8)],
        full: (1..=3).map(|k| Params::new(0, 0).with_k(k).with_q_cap(12)).collect(),
    });
    cases.push(Case {
        id: "prop2.rr",
        anchor: "Rogers-Ramanujan-type: bounded sum at z = q, a = 1 equals (-q;q)_inf^2 (q,q^k,q^{k+1};q^{k+1})_inf/(q;q)_inf via the Jacobi-triple-product series oracle",
        mode: Mode::Series,
        runner: run_prop2_rr,
        smoke: vec![Params::new(0, 0).with_k(2).with_q_cap(10)],
        full: (1..=3).map(|k| Params::new(0, 0).with_k(k).with_q_cap(20)).collect(),
    });
}
