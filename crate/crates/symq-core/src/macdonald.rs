//! Macdonald polynomials `P_lambda(x; q, t)` and the arm/leg rational
//! statistics, with all (q,t)-coefficients kept as exact rational
//! functions over the parameter table `q, s` (`t = s^2`).
//!
//! The polynomials are built once per weight by Gram-Schmidt
//! orthogonalization of the monomial basis against the standard (q,t)
//! power-sum scalar product `<p_lam, p_mu> = delta z_lam prod_i
//! (1-q^{lam_i})/(1-t^{lam_i})`, processing partitions in a linear
//! extension of dominance so the result is unitriangular.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::Result;
use crate::partition::{enumerate_partitions, Cell, Partition};
use crate::poly::{MPoly, Mono, RatFn, TruncSpec, VarTable};
use crate::qseries::pochhammer;
use crate::symfunc;

/// Parameter table `q, s` shared by all (q,t)-coefficients.
pub fn qt_table() -> Arc<VarTable> {
    static T: Lazy<Arc<VarTable>> =
        Lazy::new(|| VarTable::builder().param("q").param("s").build());
    T.clone()
}

pub fn q_param() -> MPoly {
    MPoly::named(&qt_table(), "q")
}

/// `t = s^2` on the parameter table.
pub fn t_param() -> MPoly {
    MPoly::named(&qt_table(), "s").pow(2)
}

/// The cell weight `b_lambda(s; q, t) = (1 - q^{a(s)} t^{l(s)+1}) /
/// (1 - q^{a(s)+1} t^{l(s)})`, with `q_expr`/`t_expr` substituted for the
/// two bases (swapping them realizes `b(t, q)`).
pub fn b_square(lam: &Partition, s: Cell, q_expr: &MPoly, t_expr: &MPoly) -> Result<RatFn> {
    let (arm, _, leg, _) = lam.arm_leg(s)?;
    let table = q_expr.table().clone();
    let one = MPoly::one(&table);
    let num = one.sub(&q_expr.pow(arm).mul(&t_expr.pow(leg + 1)));
    let den = one.sub(&q_expr.pow(arm + 1).mul(&t_expr.pow(leg)));
    Ok(RatFn::new(num, den))
}

/// Which cells a [`b_family`] product runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BFamily {
    /// leg length even
    EvenLeg,
    /// arm length odd
    OddArm,
    /// leg length odd
    OddLeg,
    /// arm length even
    EvenArm,
    /// every cell
    Total,
}

/// Product of [`b_square`] over the selected cells of the diagram.
pub fn b_family(lam: &Partition, which: BFamily, q_expr: &MPoly, t_expr: &MPoly) -> RatFn {
    let table = q_expr.table().clone();
    let mut acc = RatFn::one(&table);
    for cell in lam.cells() {
        let (arm, _, leg, _) = lam.arm_leg(cell).unwrap();
        let keep = match which {
            BFamily::EvenLeg => leg % 2 == 0,
            BFamily::OddArm => arm % 2 == 1,
            BFamily::OddLeg => leg % 2 == 1,
            BFamily::EvenArm => arm % 2 == 0,
            BFamily::Total => true,
        };
        if keep {
            acc = acc.mul(&b_square(lam, cell, q_expr, t_expr).unwrap());
        }
    }
    acc
}

/// `z_lambda = prod_i i^{m_i} m_i!`.
fn z_lambda(lam: &Partition) -> BigInt {
    let mut z = BigInt::one();
    for i in 1..=lam.first() {
        let m = lam.multiplicity(i);
        for j in 1..=m {
            z *= BigInt::from(i) * BigInt::from(j);
        }
    }
    z
}

/// Sparse series in the table's series variables with exact rational
/// (q,t)-coefficients over [`qt_table`].
#[derive(Debug, Clone)]
pub struct CSeries {
    table: Arc<VarTable>,
    trunc: Option<TruncSpec>,
    terms: BTreeMap<Mono, RatFn>,
}

impl CSeries {
    pub fn zero(table: &Arc<VarTable>, trunc: Option<TruncSpec>) -> Self {
        CSeries {
            table: table.clone(),
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<VarTable>, trunc: Option<TruncSpec>) -> Self {
        let mut s = Self::zero(table, trunc);
        s.terms
            .insert(Mono::unit(table.len()), RatFn::one(&qt_table()));
        s
    }

    pub fn term(table: &Arc<VarTable>, trunc: Option<TruncSpec>, m: Mono, c: RatFn) -> Self {
        let mut s = Self::zero(table, trunc);
        if !c.is_zero() {
            if let Some(t) = &s.trunc {
                if !t.admits(&m) {
                    return s;
                }
            }
            s.terms.insert(m, c);
        }
        s
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &RatFn)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> RatFn {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| RatFn::zero(&qt_table()))
    }

    fn merged_trunc(&self, other: &CSeries) -> Option<TruncSpec> {
        assert_eq!(self.table, other.table, "variable table mismatch");
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

    fn insert(terms: &mut BTreeMap<Mono, RatFn>, m: Mono, c: RatFn) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &CSeries) -> CSeries {
        let trunc = self.merged_trunc(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert(&mut terms, m.clone(), c.clone());
        }
        CSeries {
            table: self.table.clone(),
            trunc,
            terms,
        }
    }

    pub fn sub(&self, other: &CSeries) -> CSeries {
        self.add(&other.scale_ref(&RatFn::from_int(&qt_table(), -1)))
    }

    pub fn scale_ref(&self, c: &RatFn) -> CSeries {
        let mut out = CSeries {
            table: self.table.clone(),
            trunc: self.trunc.clone(),
            terms: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &CSeries) -> CSeries {
        let trunc = self.merged_trunc(other);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if let Some(t) = &trunc {
                    if !t.admits(&m) {
                        continue;
                    }
                }
                Self::insert(&mut terms, m, ca.mul(cb));
            }
        }
        CSeries {
            table: self.table.clone(),
            trunc,
            terms,
        }
    }

    /// Lift an integer-coefficient polynomial into the series ring.
    pub fn from_mpoly(p: &MPoly, trunc: Option<TruncSpec>) -> CSeries {
        let mut s = CSeries::zero(p.table(), trunc);
        for (m, c) in p.terms() {
            if let Some(t) = &s.trunc {
                if !t.admits(m) {
                    continue;
                }
            }
            s.terms
                .insert(m.clone(), RatFn::from_int(&qt_table(), c.clone()));
        }
        s
    }

    /// Monomials where the two series differ, with both coefficients
    /// rendered (empty iff equal).
    pub fn mismatches(&self, other: &CSeries) -> Vec<(String, String, String)> {
        let mut monos: Vec<Mono> = self.terms.keys().cloned().collect();
        for m in other.terms.keys() {
            if !self.terms.contains_key(m) {
                monos.push(m.clone());
            }
        }
        monos.sort();
        let mut out = Vec::new();
        for m in monos {
            let l = self.coeff(&m);
            let r = other.coeff(&m);
            if !l.eq_cross(&r) {
                out.push((
                    MPoly::monomial(&self.table, m, 1).render(),
                    l.to_string(),
                    r.to_string(),
                ));
            }
        }
        out
    }
}

/// Monomial-basis coordinates of an abstract symmetric function of one
/// weight: partition -> rational (q,t) coefficient.
pub type MCoords = BTreeMap<Partition, RatFn>;

/// Everything the weight-`d` Gram-Schmidt produces: the partitions of `d`
/// in a dominance-compatible order, the m-to-p transition, the scalar
/// product weights and the orthogonal family in both coordinate systems.
pub struct MacWeightData {
    /// partitions of `d` in ascending lexicographic order (a linear
    /// extension of dominance, smallest first)
    pub parts: Vec<Partition>,
    /// `m_mu = sum_nu mrows[mu][nu] p_nu`
    pub mrows: Vec<Vec<RatFn>>,
    /// `p_nu = sum_mu pm[nu][mu] m_mu` (integer transition)
    pub pm: Vec<Vec<BigRational>>,
    /// scalar-product weights `w_nu = z_nu prod (1-q^{nu_i})/(1-t^{nu_i})`
    pub weights: Vec<RatFn>,
    /// power-sum coordinates of the `P_lambda`, indexed like `parts`
    pub pcoords: Vec<Vec<RatFn>>,
    /// cached norms `<P_lambda, P_lambda>`
    pub norms: Vec<RatFn>,
}

impl MacWeightData {
    /// `<f, g>` for elements given in p-coordinates.
    pub fn scalar_p(&self, f: &[RatFn], g: &[RatFn]) -> RatFn {
        let mut acc = RatFn::zero(&qt_table());
        for nu in 0..self.parts.len() {
            if !f[nu].is_zero() && !g[nu].is_zero() {
                acc = acc.add(&f[nu].mul(&g[nu]).mul(&self.weights[nu]));
            }
        }
        acc
    }

    /// p-coordinates of `m_mu`.
    pub fn m_row(&self, mu: &Partition) -> &[RatFn] {
        let i = self.parts.iter().position(|p| p == mu).unwrap();
        &self.mrows[i]
    }
}

fn lex_ascending(d: u32) -> Vec<Partition> {
    let mut parts: Vec<Partition> = enumerate_partitions(d, d as usize, None)
        .into_iter()
        .filter(|p| p.weight() == d)
        .collect();
    parts.sort_by(|a, b| a.parts().cmp(b.parts()));
    parts
}

fn weight_space(d: u32) -> MacWeightData {
    let parts = lex_ascending(d);
    let k = parts.len();
    // concrete work ring with d variables is faithful for weight d
    let wt = VarTable::builder().block("y", d.max(1) as usize).build();
    let ys = wt.block_vars("y");
    // pm[nu][mu]: coefficient of m_mu in p_nu (integer)
    let mut pm = vec![vec![BigRational::zero(); k]; k];
    for (i, nu) in parts.iter().enumerate() {
        let mut p = MPoly::one(&wt);
        for &part in nu.parts() {
            p = p.mul(&symfunc::power_sum(part, &wt, &ys));
        }
        for (j, mu) in parts.iter().enumerate() {
            let mut mono = Mono::unit(wt.len());
            for (pos, &e) in mu.parts().iter().enumerate() {
                mono.0[ys[pos]] = e as u16;
            }
            pm[i][j] = BigRational::from(p.coeff(&mono));
        }
    }
    // p = PM m, so m = PM^{-1} p
    let minv = invert_rational(&pm);
    let mrows: Vec<Vec<RatFn>> = minv
        .iter()
        .map(|row| row.iter().map(rational_to_ratfn).collect())
        .collect();
    // weights w_nu = z_nu prod_i (1-q^{nu_i})/(1-t^{nu_i})
    let qt = qt_table();
    let q = q_param();
    let t = t_param();
    let one = MPoly::one(&qt);
    let weights = parts
        .iter()
        .map(|nu| {
            let mut num = MPoly::constant(&qt, z_lambda(nu));
            let mut den = Vec::new();
            for &part in nu.parts() {
                num = num.mul(&one.sub(&q.pow(part)));
                den.push((one.sub(&t.pow(part)), 1));
            }
            RatFn::from_factors(num, den)
        })
        .collect();
    MacWeightData {
        parts,
        mrows,
        pm,
        weights,
        pcoords: Vec::new(),
        norms: Vec::new(),
    }
}

fn invert_rational(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("transition matrix is singular");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let av = a[col][j].clone();
                    let iv = inv[col][j].clone();
                    a[r][j] -= f.clone() * av;
                    inv[r][j] -= f.clone() * iv;
                }
            }
        }
    }
    inv
}

fn rational_to_ratfn(r: &BigRational) -> RatFn {
    let qt = qt_table();
    RatFn::from_factors(
        MPoly::constant(&qt, r.numer().clone()),
        vec![(MPoly::constant(&qt, r.denom().clone()), 1)],
    )
}

static MAC_DATA: Lazy<Mutex<HashMap<u32, Arc<MacWeightData>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Gram-Schmidt data for weight `d`, memoized. The orthogonalization runs
/// in power-sum coordinates (where the scalar product is diagonal),
/// processing the partitions dominance-minimal first.
///
/// Dividing by `<P_mu, P_mu>` would push large irreducible sums into the
/// denominators; instead the reciprocal norm is taken in the factored form
/// `b_mu(q,t)` (a product of atomic cell factors), which keeps every
/// denominator in the computation a product of `(1 - q^i t^j)` factors.
/// The norm identity `<P_mu, P_mu> b_mu = 1` is not assumed: it is
/// asserted against the scalar product for every mu, and the
/// orthogonality residuals are checked independently in the tests.
pub fn mac_weight_data(d: u32) -> Arc<MacWeightData> {
    if let Some(v) = MAC_DATA.lock().unwrap().get(&d) {
        return v.clone();
    }
    let q = q_param();
    let t = t_param();
    let mut space = weight_space(d);
    let k = space.parts.len();
    for li in 0..k {
        let recip_norms: Vec<RatFn> = (0..li)
            .map(|mi| b_family(&space.parts[mi], BFamily::Total, &q, &t))
            .collect();
        let mut pc = space.mrows[li].clone();
        for mi in 0..li {
            // <m_lam, P_mu> * b_mu
            let ip = space.scalar_p(&space.mrows[li], &space.pcoords[mi]);
            if ip.is_zero() {
                continue;
            }
            let c = ip.mul(&recip_norms[mi]);
            for nu in 0..k {
                if !space.pcoords[mi][nu].is_zero() {
                    pc[nu] = pc[nu].sub(&c.mul(&space.pcoords[mi][nu]));
                }
            }
        }
        let norm = space.scalar_p(&pc, &pc);
        let b_here = b_family(&space.parts[li], BFamily::Total, &q, &t);
        assert!(
            norm.mul(&b_here).eq_cross(&RatFn::one(&qt_table())),
            "<P,P> b != 1 for {}",
            space.parts[li]
        );
        space.pcoords.push(pc);
        space.norms.push(norm);
    }
    let arc = Arc::new(space);
    MAC_DATA.lock().unwrap().insert(d, arc.clone());
    arc
}

/// Monomial-basis coordinates of every `P_lambda(x; q, t)` of weight `d`,
/// unitriangular with respect to dominance: `P_lam = m_lam +
/// sum_{mu < lam} u_{lam mu} m_mu`.
pub fn mac_p_coords(d: u32) -> Vec<(Partition, MCoords)> {
    let data = mac_weight_data(d);
    let k = data.parts.len();
    let mut out = Vec::with_capacity(k);
    for (li, lam) in data.parts.iter().enumerate() {
        let mut coords: MCoords = BTreeMap::new();
        // convert back: m-coordinate of mu is sum_nu pc_nu * pm[nu][mu]
        for (mi, mu) in data.parts.iter().enumerate() {
            let mut acc = RatFn::zero(&qt_table());
            for nu in 0..k {
                let w = &data.pm[nu][mi];
                if !data.pcoords[li][nu].is_zero() && !w.is_zero() {
                    acc = acc.add(&data.pcoords[li][nu].mul(&rational_to_ratfn(w)));
                }
            }
            if !acc.is_zero() {
                coords.insert(mu.clone(), acc);
            }
        }
        // unitriangularity self-check: support inside the dominance ideal,
        // leading coefficient 1
        debug_assert!(coords[lam].eq_cross(&RatFn::one(&qt_table())));
        for mu in coords.keys() {
            debug_assert!(
                Partition::dominance_leq(mu, lam).unwrap_or(false),
                "non-dominated support {mu} in P_{lam}"
            );
        }
        out.push((lam.clone(), coords));
    }
    out
}

/// `P_lambda(x_1..x_n; q, t)` expanded over the series table's `x` block.
pub fn mac_p(lam: &Partition, table: &Arc<VarTable>, trunc: Option<TruncSpec>) -> CSeries {
    let xs = table.block_vars("x");
    let mut acc = CSeries::zero(table, trunc.clone());
    if lam.is_empty() {
        return CSeries::one(table, trunc);
    }
    for (l, coords) in mac_p_coords(lam.weight()) {
        if l == *lam {
            for (mu, c) in &coords {
                let m = symfunc::monomial_sym(mu, table, &xs);
                acc = acc.add(&CSeries::from_mpoly(&m, trunc.clone()).scale_ref(c));
            }
            return acc;
        }
    }
    unreachable!("weight table misses {lam}")
}

/// One-variable-block series `sum_k coeff(k) y^k` truncated under the cap
/// (`y` a series monomial); the building block for the q-binomial-theorem
/// product expansions.
pub fn binomial_series(
    table: &Arc<VarTable>,
    trunc: &TruncSpec,
    y: &Mono,
    coeff: impl Fn(u32) -> RatFn,
) -> CSeries {
    let mut acc = CSeries::zero(table, Some(trunc.clone()));
    let mut m = Mono::unit(table.len());
    let mut k = 0u32;
    while trunc.admits(&m) {
        let c = coeff(k);
        if !c.is_zero() {
            CSeries::insert(&mut acc.terms, m.clone(), c);
        }
        m = m.mul(y);
        k += 1;
        if y.is_unit() {
            break;
        }
    }
    acc
}

/// `(t;q)_k / (q;q)_k`, the coefficient of `y^k` in
/// `(t y;q)_inf/(y;q)_inf` by the q-binomial theorem.
pub fn gauss_coeff(k: u32) -> RatFn {
    let q = q_param();
    let t = t_param();
    let one = MPoly::one(&qt_table());
    let num = pochhammer(&t, &q, k);
    let den = (1..=k).map(|j| (one.sub(&q.pow(j)), 1)).collect();
    RatFn::from_factors(num, den)
}

/// `g_r(x; q, t)`: coefficient of `a^r` in
/// `prod_i (a t x_i; q)_inf / (a x_i; q)_inf`, i.e. the degree-r part of
/// the product of the per-variable q-binomial series.
pub fn g_r(r: u32, table: &Arc<VarTable>, trunc: Option<TruncSpec>) -> CSeries {
    let xs = table.block_vars("x");
    let mut acc = CSeries::zero(table, trunc.clone());
    // compositions of r over the variables
    fn rec(
        xs: &[usize],
        rem: u32,
        idx: usize,
        mono: Mono,
        coeff: RatFn,
        acc: &mut Vec<(Mono, RatFn)>,
    ) {
        if idx == xs.len() {
            if rem == 0 {
                acc.push((mono, coeff));
            }
            return;
        }
        for k in 0..=rem {
            let mut m = mono.clone();
            m.0[xs[idx]] += k as u16;
            rec(xs, rem - k, idx + 1, m, coeff.mul(&gauss_coeff(k)), acc);
        }
    }
    let mut terms = Vec::new();
    rec(
        &xs,
        r,
        0,
        Mono::unit(table.len()),
        RatFn::one(&qt_table()),
        &mut terms,
    );
    for (m, c) in terms {
        if let Some(t) = &trunc {
            if !t.admits(&m) {
                continue;
            }
        }
        CSeries::insert(&mut acc.terms, m, c);
    }
    acc
}

/// Specialize a coefficient at `q = value` (used for the q=0 and q=t
/// cross-checks).
pub fn qt_substitute(c: &RatFn, q_to: &MPoly) -> RatFn {
    let qv = qt_table().var("q");
    c.substitute(&[(qv, q_to.clone())])
}
