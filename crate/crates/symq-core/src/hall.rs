//! Hall-Littlewood polynomials P and Q, Pieri coefficients, structure
//! constants, skew functions and principal specializations.
//!
//! `P_lambda(x_1..x_n; t)` is evaluated from its definition as a sum of
//! rational terms over the distinct rearrangements of the exponent vector:
//! the terms are accumulated over the common denominator (the factors
//! `x_u - x_v` tracked explicitly) and the final exact division doubles as
//! a self-test that the denominator clears.
//!
//! Kernels are computed once per `(lambda, n)` over an internal table
//! `x1..xn, T` and transplanted into caller contexts (`T -> s^2`,
//! `T -> q`, ...).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::partition::{distinct_rearrangements, enumerate_partitions, Partition};
use crate::poly::{MPoly, Mono, TruncSpec, VarId, VarTable};
use crate::qseries::t_factorial;
use crate::symfunc;

static KERNEL_TABLES: Lazy<Mutex<HashMap<usize, Arc<VarTable>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));
static SKEW_TABLES: Lazy<Mutex<HashMap<usize, Arc<VarTable>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));
static KERNELS: Lazy<Mutex<HashMap<(Partition, usize), Arc<MPoly>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));
#[allow(clippy::type_complexity)]
static STRUCTS: Lazy<Mutex<HashMap<(Partition, Partition, usize), Arc<BTreeMap<Partition, MPoly>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Internal table `x1..xn, T` housing memoized kernels.
pub fn kernel_table(n: usize) -> Arc<VarTable> {
    let mut cache = KERNEL_TABLES.lock().unwrap();
    cache
        .entry(n)
        .or_insert_with(|| VarTable::builder().block("x", n).param("T").build())
        .clone()
}

/// Internal table `y1..ym, T` for skew functions.
pub fn skew_table(m: usize) -> Arc<VarTable> {
    let mut cache = SKEW_TABLES.lock().unwrap();
    cache
        .entry(m)
        .or_insert_with(|| VarTable::builder().block("y", m).param("T").build())
        .clone()
}

/// Single-parameter table `T` for structure constants.
pub fn t_table() -> Arc<VarTable> {
    static T: Lazy<Arc<VarTable>> = Lazy::new(|| VarTable::builder().param("T").build());
    T.clone()
}

/// `P_lambda(x_1..x_n; T)` over [`kernel_table`]`(n)`; zero when
/// `l(lambda) > n`. Memoized.
pub fn hl_kernel(lam: &Partition, n: usize) -> Arc<MPoly> {
    if let Some(k) = KERNELS.lock().unwrap().get(&(lam.clone(), n)) {
        return k.clone();
    }
    let table = kernel_table(n);
    let result = Arc::new(compute_kernel(lam, n, &table));
    KERNELS
        .lock()
        .unwrap()
        .insert((lam.clone(), n), result.clone());
    result
}

fn compute_kernel(lam: &Partition, n: usize, table: &Arc<VarTable>) -> MPoly {
    if lam.len() > n {
        return MPoly::zero(table);
    }
    let mut exps: Vec<u32> = lam.parts().to_vec();
    exps.resize(n, 0);
    let t = MPoly::named(table, "T");
    let xs: Vec<MPoly> = (0..n).map(|i| MPoly::var(table, i)).collect();

    let distinct_values = {
        let mut v = exps.clone();
        v.dedup();
        v.len()
    };
    if distinct_values <= 1 {
        // a single orbit term with an empty denominator: x^lambda
        let mut mono = Mono::unit(table.len());
        for (i, &e) in exps.iter().enumerate() {
            mono.0[i] = e as u16;
        }
        return MPoly::monomial(table, mono, 1);
    }

    // The orbit term for the sorted exponent vector, scaled to the common
    // denominator prod_{u<v} (x_u - x_v):
    //   x^lambda prod_{lam_u > lam_v} (x_u - T x_v)
    //            prod_{u<v, lam_u = lam_v} (x_u - x_v).
    // Every other orbit term is a signed variable-permuted copy: with the
    // permutation chosen order-preserving inside equal-value blocks, the
    // equal-pair factors keep their orientation and the only sign is
    // (-1)^{inversions(beta)} from normalizing the denominator.
    let mut sorted_num = {
        let mut mono = Mono::unit(table.len());
        for (i, &e) in exps.iter().enumerate() {
            mono.0[i] = e as u16;
        }
        MPoly::monomial(table, mono, 1)
    };
    for u in 0..n {
        for v in 0..n {
            if u != v && exps[u] > exps[v] {
                sorted_num = sorted_num.mul(&xs[u].sub(&t.mul(&xs[v])));
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if exps[u] == exps[v] {
                sorted_num = sorted_num.mul(&xs[u].sub(&xs[v]));
            }
        }
    }
    let mut total = MPoly::zero(table);
    for beta in distinct_rearrangements(&exps) {
        // sigma(i) = destination of sorted position i, filling the
        // positions of each value in ascending order
        let mut sigma = vec![0usize; n];
        for (i, &value) in exps.iter().enumerate() {
            let mut count_before = 0;
            for &w in &exps[..i] {
                if w == value {
                    count_before += 1;
                }
            }
            sigma[i] = beta
                .iter()
                .enumerate()
                .filter(|(_, &b)| b == value)
                .map(|(p, _)| p)
                .nth(count_before)
                .unwrap();
        }
        let mut inversions = 0u32;
        for u in 0..n {
            for v in u + 1..n {
                if beta[u] < beta[v] {
                    inversions += 1;
                }
            }
        }
        total = total.add_permuted(&sorted_num, &sigma, inversions % 2 == 1);
    }
    // clear the common denominator; a remainder would mean the coset sum
    // failed to produce a polynomial
    for u in 0..n {
        for v in u + 1..n {
            total = total
                .try_exact_div(&xs[u].sub(&xs[v]))
                .expect("Hall-Littlewood denominator failed to clear");
        }
    }
    total
}

/// Evaluation context: which table, which series variables and what the
/// Hall-Littlewood parameter `t` is (`s^2` by default, `q` for the
/// q-series specializations).
#[derive(Clone)]
pub struct HLContext {
    pub table: Arc<VarTable>,
    pub xs: Vec<VarId>,
    pub t_expr: MPoly,
    pub trunc: Option<TruncSpec>,
}

impl HLContext {
    pub fn new(
        table: &Arc<VarTable>,
        x_prefix: &str,
        t_expr: MPoly,
        trunc: Option<TruncSpec>,
    ) -> Self {
        let xs = table.block_vars(x_prefix);
        assert!(!xs.is_empty(), "no series block {x_prefix:?} in table");
        HLContext {
            table: table.clone(),
            xs,
            t_expr,
            trunc,
        }
    }

    /// Standard context: `x1..xn, s, a, b` with `t = s^2` and cap
    /// `deg_x <= d`.
    pub fn standard(n: usize, d: u32) -> Self {
        let table = VarTable::with_x(n, &["s", "a", "b"]);
        let s = MPoly::named(&table, "s");
        let trunc = TruncSpec::degree_cap(table.mask("x"), d);
        HLContext::new(&table, "x", s.pow(2), Some(trunc))
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    /// Transplant a kernel-table polynomial into this context.
    pub fn from_kernel(&self, p: &MPoly, n: usize) -> MPoly {
        let kt = kernel_table(n);
        debug_assert_eq!(p.table(), &kt);
        let tv = kt.var("T");
        let out = p.compose(&self.table, |v| {
            if v == tv {
                self.t_expr.clone()
            } else {
                MPoly::var(&self.table, self.xs[v])
            }
        });
        out.with_trunc(self.trunc.clone())
    }

    /// `P_lambda(x; t)` in this context.
    pub fn hl_p(&self, lam: &Partition) -> MPoly {
        self.from_kernel(&hl_kernel(lam, self.n()), self.n())
    }

    /// `b_lambda(t) = prod_i (t;t)_{m_i(lambda)}`.
    pub fn b_lambda(&self, lam: &Partition) -> MPoly {
        b_lambda_t(lam, &self.t_expr).with_trunc(self.trunc.clone())
    }

    /// `Q_lambda = b_lambda(t) P_lambda`.
    pub fn hl_q(&self, lam: &Partition) -> MPoly {
        self.hl_p(lam).mul(&self.b_lambda(lam))
    }

    /// Schur polynomial `s_lambda = P_lambda(x; 0)`.
    pub fn schur(&self, lam: &Partition) -> MPoly {
        let zero_ctx = HLContext {
            t_expr: MPoly::zero(&self.table),
            ..self.clone()
        };
        zero_ctx.hl_p(lam)
    }
}

/// `b_lambda(t) = prod_{i>=1} (t;t)_{m_i(lambda)}`.
pub fn b_lambda_t(lam: &Partition, t: &MPoly) -> MPoly {
    let mut acc = MPoly::one(t.table());
    for i in 1..=lam.first() {
        acc = acc.mul(&t_factorial(t, lam.multiplicity(i)));
    }
    acc
}

/// Pieri coefficient `f_{mu (1^r)}^lambda(t) =
/// prod_i [ lambda'_i - lambda'_{i+1} ; lambda'_i - mu'_i ]_t`.
/// The t-binomials vanish outside `mu inside lambda` with `lambda - mu` a
/// vertical strip, so the support condition is automatic.
pub fn pieri_coeff(lam: &Partition, mu: &Partition, t: &MPoly) -> MPoly {
    let lc = lam.conjugate();
    let mc = mu.conjugate();
    let mut acc = MPoly::one(t.table());
    // run far enough to catch mu'_i > lambda'_i = 0 (then the binomial
    // vanishes and kills the whole product)
    for i in 1..=lam.first().max(mu.first()) {
        let top = lc.part(i as usize) as i64 - lc.part(i as usize + 1) as i64;
        let bot = lc.part(i as usize) as i64 - mc.part(i as usize) as i64;
        acc = acc.mul(&crate::qseries::tbinom(top, bot, t));
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Structure constants `f_{mu nu}^lambda(t)` with
/// `P_mu P_nu = sum_lambda f_{mu nu}^lambda P_lambda`, as a map keyed by
/// `lambda` with coefficients over [`t_table`]. Requires
/// `n >= l(mu) + l(nu)` so no expansion term is annihilated.
pub fn struct_const(
    mu: &Partition,
    nu: &Partition,
    n: usize,
) -> Result<Arc<BTreeMap<Partition, MPoly>>> {
    let needed = mu.len() + nu.len();
    if n < needed {
        return Err(Error::InsufficientVariables { needed, got: n });
    }
    let key = (mu.clone(), nu.clone(), n);
    if let Some(m) = STRUCTS.lock().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let table = kernel_table(n);
    let ctx = HLContext::new(&table, "x", MPoly::named(&table, "T"), None);
    let product = hl_kernel(mu, n).mul(&hl_kernel(nu, n));
    let raw = symfunc::to_p_basis(&product, &ctx)?;
    // move the coefficients (pure T-polynomials) onto the T-only table
    let tt = t_table();
    let tv = table.var("T");
    let mut out = BTreeMap::new();
    for (lam, coeff) in raw {
        let moved = coeff.compose(&tt, |v| {
            if v == tv {
                MPoly::named(&tt, "T")
            } else {
                debug_assert_eq!(coeff.masked_degree(table.mask_of(v)), 0);
                MPoly::one(&tt)
            }
        });
        out.insert(lam, moved);
    }
    let out = Arc::new(out);
    STRUCTS.lock().unwrap().insert(key, out.clone());
    Ok(out)
}

/// Skew function `Q_{lambda/mu}(y_1..y_m; T) = sum_nu f_{mu nu}^lambda(T)
/// Q_nu(y; T)` over [`skew_table`]`(m)`.
pub fn skew_q(lam: &Partition, mu: &Partition, m: usize) -> Result<MPoly> {
    let table = skew_table(m);
    let t = MPoly::named(&table, "T");
    if !lam.contains(mu) {
        return Ok(MPoly::zero(&table));
    }
    if lam == mu {
        return Ok(MPoly::one(&table));
    }
    let w = lam.weight() - mu.weight();
    let ctx = HLContext::new(&table, "y", t.clone(), None);
    let mut acc = MPoly::zero(&table);
    for nu in enumerate_partitions(w, m, None) {
        if nu.weight() != w {
            continue;
        }
        let consts = struct_const(mu, &nu, mu.len() + nu.len())?;
        let f = match consts.get(lam) {
            Some(f) if !f.is_zero() => f,
            _ => continue,
        };
        let tt = t_table();
        let f_here = f.compose(&table, |_| t.clone());
        debug_assert_eq!(tt.len(), 1);
        let q_nu = ctx.hl_q(&nu);
        acc = acc.add(&f_here.mul(&q_nu));
    }
    Ok(acc)
}

/// `C_lambda(y;t) = sum_{mu inside lambda, mu' even} c_mu(t) Q_{lambda/mu}(y;t)`
/// evaluated on an explicit alphabet (one polynomial per letter), with the
/// Hall-Littlewood parameter given by `t_expr`.
pub fn c_lambda_sum(lam: &Partition, alphabet: &[MPoly], t_expr: &MPoly) -> Result<MPoly> {
    let target = t_expr.table().clone();
    let m = alphabet.len();
    let stable = skew_table(m);
    let tv = stable.var("T");
    let mut acc = MPoly::zero(&target);
    for mu in lam.sub_partitions() {
        if !mu.conjugate().is_even() {
            continue;
        }
        let c = crate::qseries::c_lambda(&mu, t_expr)?;
        let skew = skew_q(lam, &mu, m)?;
        let skew_eval = skew.compose(&target, |v| {
            if v == tv {
                t_expr.clone()
            } else {
                alphabet[v].clone()
            }
        });
        acc = acc.add(&c.mul(&skew_eval));
    }
    Ok(acc)
}

/// Infinite principal specialization
/// `P_lambda(1, q, q^2, ...; q) = q^{n(lambda)} / prod_i (q;q)_{m_i(lambda)}`
/// as a truncated series.
///
/// Sufficiency of the closed form below any q-cap: with N variables
/// `x_i = q^{i-1}` the specialization is
/// `q^{n(lambda)} (q;q)_N / ((q;q)_{N-l} prod_i (q;q)_{m_i})`, and
/// `(q;q)_N/(q;q)_{N-l} = prod_{j=N-l+1}^{N} (1-q^j) = 1 mod q^{N-l+1}`,
/// so for `N >= cap + l(lambda)` the finite and infinite forms agree below
/// the cap. Equivalently: the variable `x_i` only contributes q-degree
/// `>= i-1`, so `N = cap + 1` variables already determine every retained
/// coefficient. (Both routes are cross-checked in the tests against the
/// orbit-sum evaluation.)
pub fn hl_principal_spec(lam: &Partition, q: &MPoly, trunc: &TruncSpec) -> Result<MPoly> {
    let table = q.table().clone();
    let mut acc = MPoly::monomial(&table, Mono::unit(table.len()), 1)
        .with_trunc(Some(trunc.clone()))
        .mul(&q.pow(lam.n_stat()).with_trunc(Some(trunc.clone())));
    for i in 1..=lam.first() {
        for j in 1..=lam.multiplicity(i) {
            acc = acc.mul(&q.pow(j).geometric_inverse(trunc)?);
        }
    }
    Ok(acc)
}

/// Evaluate whole-orbit data for tests and oracles: the sum defining
/// `P_lambda` specialized at `x_i = q^{i-1}`, `t = q`, as an exact
/// rational function (numerator, denominator).
pub fn principal_spec_orbit_sum(lam: &Partition, n: usize, q: &MPoly) -> (MPoly, MPoly) {
    use crate::poly::RatFn;
    let table = q.table().clone();
    assert!(lam.len() <= n);
    let mut exps: Vec<u32> = lam.parts().to_vec();
    exps.resize(n, 0);
    let xpow = |i: usize| q.pow(i as u32 - 1); // x_i = q^{i-1}, 1-based
    let mut acc = RatFn::zero(&table);
    for beta in distinct_rearrangements(&exps) {
        let mut num = MPoly::one(&table);
        let mut den = MPoly::one(&table);
        for (u, &bu) in beta.iter().enumerate() {
            num = num.mul(&xpow(u + 1).pow(bu));
            for (v, &bv) in beta.iter().enumerate() {
                if bu > bv {
                    // (x_u - t x_v) / (x_u - x_v) at the specialization
                    num = num.mul(&xpow(u + 1).sub(&q.mul(&xpow(v + 1))));
                    den = den.mul(&xpow(u + 1).sub(&xpow(v + 1)));
                }
            }
        }
        acc = acc.add(&RatFn::new(num, den));
    }
    (acc.num().clone(), acc.den_expanded())
}

/// Expand `sum_{lambda} coeff(lambda) * P_lambda` over all partitions with
/// `|lambda| <= cap` and `l(lambda) <= n`; homogeneity of `P_lambda` makes
/// the truncation exact for every retained monomial.
pub fn hl_sum(
    ctx: &HLContext,
    cap: u32,
    mut coeff: impl FnMut(&Partition) -> Option<MPoly>,
) -> MPoly {
    let mut acc = MPoly::zero(&ctx.table).with_trunc(ctx.trunc.clone());
    for lam in enumerate_partitions(cap, ctx.n(), None) {
        if let Some(c) = coeff(&lam) {
            if !c.is_zero() {
                acc = acc.add(&c.with_trunc(ctx.trunc.clone()).mul(&ctx.hl_p(&lam)));
            }
        }
    }
    acc
}

/// Drop kernels cached for tests (memo bookkeeping is not part of the
/// semantics; this is only used to measure cold timings in benches).
pub fn clear_caches() {
    KERNELS.lock().unwrap().clear();
    STRUCTS.lock().unwrap().clear();
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use crate::symfunc;
    use std::str::FromStr;

    fn lam(s: &str) -> Partition {
        Partition::from_str(s).unwrap()
    }

    #[test]
    fn kernel_small_cases() {
        // P_(2,1) at n=2 is t-free: x1^2 x2 + x1 x2^2
        let p = hl_kernel(&lam("2,1"), 2);
        let table = kernel_table(2);
        let x1 = MPoly::named(&table, "x1");
        let x2 = MPoly::named(&table, "x2");
        assert_eq!(*p, x1.pow(2).mul(&x2).add(&x1.mul(&x2.pow(2))));
        // P_(2) at n=2: m_(2) + (1-T) m_(1,1)
        let p = hl_kernel(&lam("2"), 2);
        let t = MPoly::named(&table, "T");
        let want = x1
            .pow(2)
            .add(&x2.pow(2))
            .add(&MPoly::one(&table).sub(&t).mul(&x1.mul(&x2)));
        assert_eq!(*p, want);
        // l(lambda) > n vanishes
        assert!(hl_kernel(&lam("1,1,1"), 2).is_zero());
    }

    #[test]
    fn elementary_rows() {
        // P_{(1^r)} = e_r for n = 3, r <= 3
        let table = kernel_table(3);
        let xs = table.block_vars("x");
        for r in 1..=3u32 {
            let p = hl_kernel(&Partition::new(vec![1; r as usize]), 3);
            let e = symfunc::elementary_e(r, &table, &xs);
            assert_eq!(*p, e, "r={r}");
        }
    }

    #[test]
    fn schur_at_t_zero_matches_jacobi_trudi() {
        for n in 2..=3usize {
            let table = kernel_table(n);
            let xs = table.block_vars("x");
            let ctx = HLContext::new(&table, "x", MPoly::zero(&table), None);
            for p in enumerate_partitions(5, n, None) {
                let schur = ctx.hl_p(&p);
                let jt = symfunc::schur_jacobi_trudi(&p, &table, &xs);
                assert_eq!(schur, jt, "lambda={p} n={n}");
            }
        }
    }

    #[test]
    fn monomial_at_t_one() {
        let n = 3;
        let table = kernel_table(n);
        let xs = table.block_vars("x");
        let ctx = HLContext::new(&table, "x", MPoly::one(&table), None);
        for p in enumerate_partitions(5, n, None) {
            assert_eq!(ctx.hl_p(&p), symfunc::monomial_sym(&p, &table, &xs), "lambda={p}");
        }
    }

    #[test]
    fn homogeneity_and_stability() {
        for n in 2..=4usize {
            let table = kernel_table(n);
            for p in enumerate_partitions(5, n, None) {
                let k = hl_kernel(&p, n);
                let xmask = table.mask("x");
                for (m, _) in k.terms() {
                    assert_eq!(m.masked_degree(xmask), p.weight(), "lambda={p} n={n}");
                }
                // stability: set x_{n+1} = 0 in the (n+1)-variable kernel
                let big = hl_kernel(&p, n + 1);
                let bt = kernel_table(n + 1);
                let tv = bt.var("T");
                let shrunk = big.compose(&table, |v| {
                    if v == tv {
                        MPoly::named(&table, "T")
                    } else if v == n {
                        MPoly::zero(&table)
                    } else {
                        MPoly::var(&table, v)
                    }
                });
                assert_eq!(shrunk, *k, "stability lambda={p} n={n}");
            }
        }
    }

    #[test]
    fn b_and_q() {
        let table = t_table();
        let t = MPoly::named(&table, "T");
        let one = MPoly::one(&table);
        assert_eq!(b_lambda_t(&lam("2"), &t), one.sub(&t));
        assert_eq!(b_lambda_t(&lam("1,1"), &t), t_factorial(&t, 2));
        // Q_0 = 1
        let kt = kernel_table(2);
        let ctx = HLContext::new(&kt, "x", MPoly::named(&kt, "T"), None);
        assert!(ctx.hl_q(&Partition::zero()).is_one());
    }

    #[test]
    fn pieri_coeff_examples() {
        let table = t_table();
        let t = MPoly::named(&table, "T");
        assert!(pieri_coeff(&lam("2,1"), &lam("1,1"), &t).is_one());
        assert!(pieri_coeff(&lam("1"), &Partition::zero(), &t).is_one());
        // (2)/0 is not a vertical 2-strip
        assert!(pieri_coeff(&lam("2"), &Partition::zero(), &t).is_zero());
    }

    #[test]
    fn pieri_formula_small() {
        // P_mu e_r = sum_lambda f_{mu (1^r)}^lambda P_lambda at n = 3
        let n = 3;
        let table = kernel_table(n);
        let xs = table.block_vars("x");
        let t = MPoly::named(&table, "T");
        for mu in enumerate_partitions(3, n, None) {
            for r in 1..=2u32 {
                let lhs = hl_kernel(&mu, n).mul(&symfunc::elementary_e(r, &table, &xs));
                let mut rhs = MPoly::zero(&table);
                for lamp in enumerate_partitions(mu.weight() + r, n, None) {
                    if lamp.weight() != mu.weight() + r {
                        continue;
                    }
                    rhs = rhs.add(&pieri_coeff(&lamp, &mu, &t).mul(&hl_kernel(&lamp, n)));
                }
                assert_eq!(lhs, rhs, "mu={mu} r={r}");
            }
        }
    }

    #[test]
    fn struct_const_examples() {
        // P_(1) P_(1) = P_(2) + (1+t) P_(1,1)
        let c = struct_const(&lam("1"), &lam("1"), 4).unwrap();
        let tt = t_table();
        let t = MPoly::named(&tt, "T");
        let one = MPoly::one(&tt);
        assert_eq!(c.len(), 2);
        assert_eq!(c[&lam("2")], one);
        assert_eq!(c[&lam("1,1")], one.add(&t));
        // mu = 0 gives the delta expansion
        let c = struct_const(&Partition::zero(), &lam("2,1"), 3).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[&lam("2,1")].is_one());
        // refuses too few variables
        assert!(matches!(
            struct_const(&lam("1,1"), &lam("1,1"), 3),
            Err(Error::InsufficientVariables { needed: 4, got: 3 })
        ));
        // grading: every key has |lambda| = |mu| + |nu|
        let c = struct_const(&lam("2"), &lam("1,1"), 4).unwrap();
        for k in c.keys() {
            assert_eq!(k.weight(), 4);
        }
    }

    #[test]
    fn skew_examples() {
        let table = skew_table(1);
        let t = MPoly::named(&table, "T");
        let y1 = MPoly::named(&table, "y1");
        let one = MPoly::one(&table);
        // mu = lambda gives 1, mu = 0 gives Q_lambda
        assert!(skew_q(&lam("2,1"), &lam("2,1"), 1).unwrap().is_one());
        let q = skew_q(&lam("1"), &Partition::zero(), 1).unwrap();
        assert_eq!(q, one.sub(&t).mul(&y1));
        // two-variable skew of a full partition
        let ctx = HLContext::new(&skew_table(2), "y", MPoly::named(&skew_table(2), "T"), None);
        let direct = ctx.hl_q(&lam("2,1"));
        assert_eq!(skew_q(&lam("2,1"), &Partition::zero(), 2).unwrap(), direct);
    }

    #[test]
    fn c_lambda_sum_examples() {
        let table = VarTable::builder().param("s").param("a").param("b").build();
        let s = MPoly::named(&table, "s");
        let t = s.pow(2);
        let a = MPoly::named(&table, "a");
        let one = MPoly::one(&table);
        // C_0 = 1
        assert!(c_lambda_sum(&Partition::zero(), &[a.clone()], &t).unwrap().is_one());
        // C_(1) on the single letter a: (1-t) a, matching a^{l((lambda')_o)} d_lambda
        let got = c_lambda_sum(&lam("1"), &[a.clone()], &t).unwrap();
        assert_eq!(got, one.sub(&t).mul(&a));
        let d = crate::qseries::d_lambda(&lam("1"), &t);
        assert_eq!(got, a.mul(&d));
        // C_(2) on two letters computes without error (no factorization claimed)
        let b = MPoly::named(&table, "b");
        let _ = c_lambda_sum(&lam("2"), &[a, b], &t).unwrap();
    }

    #[test]
    fn principal_specialization_routes() {
        // Route A (oracle): orbit sum evaluated at x_i = q^{i-1}, t = q.
        // Route B: the finite t-multinomial form
        //   q^{n(lam)} (q;q)_N / ((q;q)_{N-l} prod_i (q;q)_{m_i}).
        // Route C: the infinite form from hl_principal_spec.
        let table = VarTable::builder().param("q").build();
        let q = MPoly::named(&table, "q");
        for n in 2..=5usize {
            for p in enumerate_partitions(4, n, None) {
                let (num, den) = principal_spec_orbit_sum(&p, n, &q);
                let mut closed_num = q.pow(p.n_stat()).mul(&t_factorial(&q, n as u32));
                let mut closed_den = t_factorial(&q, (n - p.len()) as u32);
                for i in 1..=p.first() {
                    closed_den = closed_den.mul(&t_factorial(&q, p.multiplicity(i)));
                }
                // cross-multiplied equality of the two exact rationals
                assert_eq!(num.mul(&closed_den), closed_num.mul(&den), "lambda={p} n={n}");
                // the infinite form agrees below cap q^{n - l(lambda)}
                if n > p.len() {
                    let cap_to = (n - p.len()) as u32;
                    let cap = TruncSpec::degree_cap(table.mask_of(0), cap_to);
                    let inf = hl_principal_spec(&p, &q, &cap).unwrap();
                    // finite form as a series: numerator * geometric inverses
                    let mut fin = closed_num.clone().with_trunc(Some(cap.clone()));
                    // divide den: (q;q)_{N-l} * prod (q;q)_{m_i}, all factors (1-q^j)
                    for j in 1..=(n - p.len()) as u32 {
                        fin = fin.mul(&q.pow(j).geometric_inverse(&cap).unwrap());
                    }
                    for i in 1..=p.first() {
                        for j in 1..=p.multiplicity(i) {
                            fin = fin.mul(&q.pow(j).geometric_inverse(&cap).unwrap());
                        }
                    }
                    closed_num = closed_num.with_trunc(Some(cap.clone()));
                    let _ = closed_num;
                    assert_eq!(inf, fin, "lambda={p} n={n}");
                }
            }
        }
    }

    #[test]
    fn coefficients_polynomial_in_t() {
        // kernel coefficients are honest polynomials in T with integer
        // coefficients: after t = s^2 only even s-powers appear
        let table = VarTable::with_x(3, &["s"]);
        let s = MPoly::named(&table, "s");
        let ctx = HLContext::new(&table, "x", s.pow(2), None);
        let smask = table.mask_of(table.var("s"));
        for p in enumerate_partitions(5, 3, None) {
            let poly = ctx.hl_p(&p);
            for (m, _) in poly.terms() {
                assert_eq!(m.masked_degree(smask) % 2, 0, "lambda={p}");
            }
        }
    }

    #[test]
    fn cauchy_identity_small() {
        // sum_lambda P_lambda(x) Q_lambda(y) = prod (1 - t x_i y_j)/(1 - x_i y_j)
        // at n = m = 2, caps 3/3
        let table = VarTable::builder().block("x", 2).block("y", 2).param("s").build();
        let s = MPoly::named(&table, "s");
        let t = s.pow(2);
        let trunc = TruncSpec::degree_cap(table.mask("x"), 3).and(table.mask("y"), 3);
        let xctx = HLContext::new(&table, "x", t.clone(), Some(trunc.clone()));
        let yctx = HLContext::new(&table, "y", t.clone(), Some(trunc.clone()));
        let mut lhs = MPoly::zero(&table).with_trunc(Some(trunc.clone()));
        for p in enumerate_partitions(3, 2, None) {
            lhs = lhs.add(&xctx.hl_p(&p).mul(&yctx.hl_q(&p)));
        }
        let one = MPoly::one(&table).with_trunc(Some(trunc.clone()));
        let mut rhs = one.clone();
        for i in 1..=2 {
            for j in 1..=2 {
                let xy = MPoly::named(&table, &format!("x{i}")).mul(&MPoly::named(&table, &format!("y{j}")));
                rhs = rhs.mul(&one.sub(&t.mul(&xy).with_trunc(Some(trunc.clone()))));
                rhs = rhs.mul(&xy.geometric_inverse(&trunc).unwrap());
            }
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn principal_spec_is_partition_generating_function() {
        // sum over all partitions of P_lambda(1,q,..;q) * q^{|lambda|}
        // restricted to lambda_1 <= 1: sum_r q^{r(r+1)/2}/(q;q)_r, whose
        // q-expansion counts partitions into distinct parts
        let table = VarTable::builder().param("q").build();
        let q = MPoly::named(&table, "q");
        let cap = TruncSpec::degree_cap(table.mask_of(0), 8);
        let mut acc = MPoly::zero(&table).with_trunc(Some(cap.clone()));
        for r in 0..=8usize {
            let col = Partition::new(vec![1; r]);
            let term = hl_principal_spec(&col, &q, &cap)
                .unwrap()
                .mul(&q.pow(r as u32).with_trunc(Some(cap.clone())));
            acc = acc.add(&term);
        }
        // (-q;q)_inf = 1 + q + q^2 + 2q^3 + 2q^4 + 3q^5 + 4q^6 + 5q^7 + 6q^8
        let want = [1i64, 1, 1, 2, 2, 3, 4, 5, 6];
        for (d, w) in want.iter().enumerate() {
            let mut mono = Mono::unit(table.len());
            mono.0[0] = d as u16;
            assert_eq!(acc.coeff(&mono), BigInt::from(*w), "degree {d}");
        }
    }
}
