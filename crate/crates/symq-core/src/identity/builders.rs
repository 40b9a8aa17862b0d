//! LHS/RHS builders for the Schur and Hall-Littlewood summation
//! identities, and the specialization lattice connecting them.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hall::{self, HLContext};
use crate::partition::enumerate_partitions;
use crate::poly::{determinant, MPoly, TruncSpec, VarTable};
use crate::qseries;
use crate::symfunc;

use super::{labelled_mismatch, mpoly_mismatches, Case, Mismatch, Mode, Params};

/// Shared context for series-mode identities: table `x1..xn, s, a, b`
/// with `t = s^2` and the x-degree cap.
pub struct SeriesCtx {
    pub table: Arc<VarTable>,
    pub trunc: TruncSpec,
    pub n: usize,
    pub d: u32,
    pub one: MPoly,
    pub s: MPoly,
    pub t: MPoly,
    pub a: MPoly,
    pub b: MPoly,
    pub hl: HLContext,
    pub schur: HLContext,
}

impl SeriesCtx {
    pub fn new(n: usize, d: u32) -> Self {
        let table = VarTable::with_x(n, &["s", "a", "b"]);
        let trunc = TruncSpec::degree_cap(table.mask("x"), d);
        let s = MPoly::named(&table, "s");
        let t = s.pow(2);
        let hl = HLContext::new(&table, "x", t.clone(), Some(trunc.clone()));
        let schur = HLContext::new(&table, "x", MPoly::zero(&table), Some(trunc.clone()));
        SeriesCtx {
            one: MPoly::one(&table).with_trunc(Some(trunc.clone())),
            a: MPoly::named(&table, "a"),
            b: MPoly::named(&table, "b"),
            s,
            t,
            n,
            d,
            trunc,
            hl,
            schur,
            table,
        }
    }

    pub fn x(&self, i: usize) -> MPoly {
        MPoly::named(&self.table, &format!("x{i}"))
    }

    pub fn capped(&self, p: &MPoly) -> MPoly {
        p.clone().with_trunc(Some(self.trunc.clone()))
    }

    /// `1/(1 - m)` as a truncated geometric series.
    pub fn inv1m(&self, m: &MPoly) -> MPoly {
        m.geometric_inverse(&self.trunc).unwrap()
    }

    /// `prod_{i<j} (1 - t x_i x_j)/(1 - x_i x_j)`.
    pub fn hl_pair_factor(&self) -> MPoly {
        let mut acc = self.one.clone();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                let xx = self.x(i).mul(&self.x(j));
                acc = acc.mul(&self.capped(&self.one.sub(&self.t.mul(&xx))));
                acc = acc.mul(&self.inv1m(&xx));
            }
        }
        acc
    }

    /// `prod_{i<j} 1/(1 - x_i x_j)`.
    pub fn schur_pair_factor(&self) -> MPoly {
        let mut acc = self.one.clone();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                acc = acc.mul(&self.inv1m(&self.x(i).mul(&self.x(j))));
            }
        }
        acc
    }
}

/// The series identities with a (parent, substitution) derivation
/// structure; `build` returns exact truncated LHS and RHS.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumId {
    Bn,
    Cn,
    Dn,
    Iw,
    Jz,
    I1,
    I2,
    I3,
    I4,
    I5,
    I6,
    Master,
    MasterT1,
    Cor1,
    Cor2,
    Seventh,
    Lw2,
    Lw1,
}

pub fn build(which: SumId, ctx: &SeriesCtx) -> (MPoly, MPoly) {
    let lhs = build_lhs(which, ctx);
    let rhs = build_rhs(which, ctx);
    (lhs, rhs)
}

fn build_lhs(which: SumId, ctx: &SeriesCtx) -> MPoly {
    let d = ctx.d;
    match which {
        SumId::Bn => hall::hl_sum(&ctx.schur, d, |_| Some(ctx.one.clone())),
        SumId::Cn => hall::hl_sum(&ctx.schur, d, |l| l.is_even().then(|| ctx.one.clone())),
        SumId::Dn => hall::hl_sum(&ctx.schur, d, |l| {
            l.conjugate().is_even().then(|| ctx.one.clone())
        }),
        SumId::Iw => hall::hl_sum(&ctx.schur, d, |l| {
            Some(qseries::f_two_param(l, &ctx.a, &ctx.b))
        }),
        SumId::Jz => hall::hl_sum(&ctx.schur, d, |l| {
            Some(qseries::f_two_param(&l.conjugate(), &ctx.a, &ctx.b))
        }),
        SumId::I1 => hall::hl_sum(&ctx.hl, d, |_| Some(ctx.one.clone())),
        SumId::I2 => hall::hl_sum(&ctx.hl, d, |l| l.is_even().then(|| ctx.one.clone())),
        SumId::I3 => hall::hl_sum(&ctx.hl, d, |l| {
            l.conjugate()
                .is_even()
                .then(|| qseries::c_lambda(l, &ctx.t).unwrap())
        }),
        SumId::I4 => hall::hl_sum(&ctx.hl, d, |l| Some(qseries::d_lambda(l, &ctx.t))),
        SumId::I5 => hall::hl_sum(&ctx.hl, d, |l| Some(qseries::e_lambda(l, &ctx.s))),
        SumId::I6 => hall::hl_sum(&ctx.hl, d, |l| {
            let (_, odd) = l.even_odd_split();
            odd.conjugate()
                .is_even()
                .then(|| qseries::f_kawanaka(l, &ctx.s).unwrap())
        }),
        SumId::Master => hall::hl_sum(&ctx.hl, d, |l| {
            let (even, odd) = l.even_odd_split();
            let ab = ctx.a.mul(&ctx.b);
            Some(
                qseries::h_lambda(&even, &ab, &ctx.t)
                    .mul(&qseries::h_lambda_homog(&odd, &ctx.a, &ctx.b, &ctx.t)),
            )
        }),
        SumId::MasterT1 => {
            // sum (1+ab)^{l(lambda_e)} (a+b)^{l(lambda_o)} m_lambda
            let xs = ctx.table.block_vars("x");
            let mut acc = MPoly::zero(&ctx.table).with_trunc(Some(ctx.trunc.clone()));
            let ab1 = MPoly::one(&ctx.table).add(&ctx.a.mul(&ctx.b));
            let apb = ctx.a.add(&ctx.b);
            for lam in enumerate_partitions(ctx.d, ctx.n, None) {
                let (even, odd) = lam.even_odd_split();
                let c = ab1.pow(even.len() as u32).mul(&apb.pow(odd.len() as u32));
                let m = symfunc::monomial_sym(&lam, &ctx.table, &xs);
                acc = acc.add(&ctx.capped(&c).mul(&ctx.capped(&m)));
            }
            acc
        }
        SumId::Cor1 => hall::hl_sum(&ctx.hl, d, |l| {
            Some(qseries::h_lambda(l, &ctx.a, &ctx.t))
        }),
        SumId::Cor2 => hall::hl_sum(&ctx.hl, d, |l| {
            let (even, odd) = l.even_odd_split();
            if !odd.conjugate().is_even() {
                return None;
            }
            let mut c = ctx.a.pow(odd.len() as u32 / 2);
            c = c.mul(&qseries::h_lambda(&even, &ctx.a.neg(), &ctx.t));
            for i in 1..=odd.first() {
                c = c.mul(&qseries::t_odd_factorial(&ctx.t, odd.multiplicity(i) / 2));
            }
            Some(c)
        }),
        SumId::Seventh => hall::hl_sum(&ctx.hl, d, |l| {
            let (_, odd) = l.even_odd_split();
            odd.conjugate()
                .is_even()
                .then(|| qseries::k_lambda(l, &ctx.s).unwrap())
        }),
        SumId::Lw2 => hall::hl_sum(&ctx.hl, d, |l| {
            let (_, odd) = l.even_odd_split();
            Some(ctx.a.pow(odd.len() as u32))
        }),
        SumId::Lw1 => hall::hl_sum(&ctx.hl, d, |l| {
            let (_, odd_cols) = l.conjugate().even_odd_split();
            Some(
                ctx.a
                    .pow(odd_cols.len() as u32)
                    .mul(&qseries::d_lambda(l, &ctx.t)),
            )
        }),
    }
}

fn build_rhs(which: SumId, ctx: &SeriesCtx) -> MPoly {
    let one = &ctx.one;
    let per_var = |f: &dyn Fn(usize) -> MPoly| {
        let mut acc = one.clone();
        for i in 1..=ctx.n {
            acc = acc.mul(&f(i));
        }
        acc
    };
    match which {
        SumId::Bn => per_var(&|i| ctx.inv1m(&ctx.x(i))).mul(&ctx.schur_pair_factor()),
        SumId::Cn => per_var(&|i| ctx.inv1m(&ctx.x(i).pow(2))).mul(&ctx.schur_pair_factor()),
        SumId::Dn => ctx.schur_pair_factor(),
        SumId::Iw => per_var(&|i| {
            ctx.inv1m(&ctx.a.mul(&ctx.x(i)))
                .mul(&ctx.inv1m(&ctx.b.mul(&ctx.x(i))))
        })
        .mul(&ctx.schur_pair_factor()),
        SumId::Jz => per_var(&|i| {
            ctx.capped(&one.add(&ctx.a.mul(&ctx.x(i))))
                .mul(&ctx.capped(&one.add(&ctx.b.mul(&ctx.x(i)))))
                .mul(&ctx.inv1m(&ctx.x(i).pow(2)))
        })
        .mul(&ctx.schur_pair_factor()),
        SumId::I1 => per_var(&|i| ctx.inv1m(&ctx.x(i))).mul(&ctx.hl_pair_factor()),
        SumId::I2 => per_var(&|i| ctx.inv1m(&ctx.x(i).pow(2))).mul(&ctx.hl_pair_factor()),
        SumId::I3 => ctx.hl_pair_factor(),
        SumId::I4 => per_var(&|i| {
            ctx.capped(&one.sub(&ctx.t.mul(&ctx.x(i)))).mul(&ctx.inv1m(&ctx.x(i)))
        })
        .mul(&ctx.hl_pair_factor()),
        SumId::I5 => per_var(&|i| {
            ctx.capped(&one.add(&ctx.s.mul(&ctx.x(i)))).mul(&ctx.inv1m(&ctx.x(i)))
        })
        .mul(&ctx.hl_pair_factor()),
        SumId::I6 => per_var(&|i| {
            ctx.capped(&one.sub(&ctx.t.mul(&ctx.x(i).pow(2))))
                .mul(&ctx.inv1m(&ctx.x(i).pow(2)))
        })
        .mul(&ctx.hl_pair_factor()),
        SumId::Master => master_rhs(ctx),
        SumId::MasterT1 => per_var(&|i| {
            ctx.capped(&one.add(&ctx.a.mul(&ctx.x(i))))
                .mul(&ctx.capped(&one.add(&ctx.b.mul(&ctx.x(i)))))
                .mul(&ctx.inv1m(&ctx.x(i).pow(2)))
        }),
        SumId::Cor1 => per_var(&|i| {
            ctx.capped(&one.add(&ctx.a.mul(&ctx.x(i)))).mul(&ctx.inv1m(&ctx.x(i)))
        })
        .mul(&ctx.hl_pair_factor()),
        SumId::Cor2 => per_var(&|i| {
            ctx.capped(&one.sub(&ctx.a.mul(&ctx.x(i).pow(2))))
                .mul(&ctx.inv1m(&ctx.x(i).pow(2)))
        })
        .mul(&ctx.hl_pair_factor()),
        SumId::Seventh => per_var(&|i| {
            ctx.capped(&one.add(&ctx.s.mul(&ctx.x(i).pow(2))))
                .mul(&ctx.inv1m(&ctx.x(i).pow(2)))
        })
        .mul(&ctx.hl_pair_factor()),
        SumId::Lw2 => per_var(&|i| {
            ctx.capped(&one.add(&ctx.a.mul(&ctx.x(i)))).mul(&ctx.inv1m(&ctx.x(i).pow(2)))
        })
        .mul(&ctx.hl_pair_factor()),
        SumId::Lw1 => per_var(&|i| {
            ctx.capped(&one.sub(&ctx.a.mul(&ctx.t).mul(&ctx.x(i))))
                .mul(&ctx.inv1m(&ctx.a.mul(&ctx.x(i))))
        })
        .mul(&ctx.hl_pair_factor()),
    }
}

fn series_case(which: SumId) -> fn(&Params) -> Result<Vec<Mismatch>> {
    // one monomorphized runner per id
    match which {
        SumId::Bn => |p| Ok(run_sum(SumId::Bn, p)),
        SumId::Cn => |p| Ok(run_sum(SumId::Cn, p)),
        SumId::Dn => |p| Ok(run_sum(SumId::Dn, p)),
        SumId::Iw => |p| Ok(run_sum(SumId::Iw, p)),
        SumId::Jz => |p| Ok(run_sum(SumId::Jz, p)),
        SumId::I1 => |p| Ok(run_sum(SumId::I1, p)),
        SumId::I2 => |p| Ok(run_sum(SumId::I2, p)),
        SumId::I3 => |p| Ok(run_sum(SumId::I3, p)),
        SumId::I4 => |p| Ok(run_sum(SumId::I4, p)),
        SumId::I5 => |p| Ok(run_sum(SumId::I5, p)),
        SumId::I6 => |p| Ok(run_sum(SumId::I6, p)),
        SumId::Master => |p| Ok(run_sum(SumId::Master, p)),
        SumId::MasterT1 => |p| Ok(run_sum(SumId::MasterT1, p)),
        SumId::Cor1 => |p| Ok(run_sum(SumId::Cor1, p)),
        SumId::Cor2 => |p| Ok(run_sum(SumId::Cor2, p)),
        SumId::Seventh => |p| Ok(run_sum(SumId::Seventh, p)),
        SumId::Lw2 => |p| Ok(run_sum(SumId::Lw2, p)),
        SumId::Lw1 => |p| Ok(run_sum(SumId::Lw1, p)),
    }
}

fn run_sum(which: SumId, params: &Params) -> Vec<Mismatch> {
    let ctx = SeriesCtx::new(params.n, params.d);
    let (lhs, rhs) = build(which, &ctx);
    mpoly_mismatches(&lhs, &rhs)
}

/// Master RHS (shared with the symmetry and lattice checks).
fn master_rhs(ctx: &SeriesCtx) -> MPoly {
    let one = &ctx.one;
    let mut acc = ctx.hl_pair_factor();
    for i in 1..=ctx.n {
        acc = acc
            .mul(&ctx.capped(&one.add(&ctx.a.mul(&ctx.x(i)))))
            .mul(&ctx.capped(&one.add(&ctx.b.mul(&ctx.x(i)))))
            .mul(&ctx.inv1m(&ctx.x(i).pow(2)));
    }
    acc
}

fn run_master(params: &Params) -> Result<Vec<Mismatch>> {
    let ctx = SeriesCtx::new(params.n, params.d);
    let lhs = build_lhs(SumId::Master, &ctx);
    Ok(mpoly_mismatches(&lhs, &master_rhs(&ctx)))
}

fn run_master_ab_symmetry(params: &Params) -> Result<Vec<Mismatch>> {
    let ctx = SeriesCtx::new(params.n, params.d);
    let lhs = build_lhs(SumId::Master, &ctx);
    let av = ctx.table.var("a");
    let bv = ctx.table.var("b");
    let swapped = lhs.substitute(
        &[(av, ctx.b.clone()), (bv, ctx.a.clone())],
        Some(ctx.trunc.clone()),
    );
    Ok(mpoly_mismatches(&lhs, &swapped))
}

/// The derivation lattice: each derived identity's builders coincide,
/// monomial for monomial, with the parent's builders under the stated
/// substitution.
fn run_lattice(params: &Params) -> Result<Vec<Mismatch>> {
    let ctx = SeriesCtx::new(params.n, params.d);
    let av = ctx.table.var("a");
    let bv = ctx.table.var("b");
    let sv = ctx.table.var("s");
    let zero = MPoly::zero(&ctx.table);
    let one1 = MPoly::one(&ctx.table);
    let a = ctx.a.clone();
    let s = ctx.s.clone();
    let t = ctx.t.clone();

    // (label, parent, parent subs, child, child subs)
    type Subs = Vec<(usize, MPoly)>;
    let pairs: Vec<(&str, SumId, Subs, SumId, Subs)> = vec![
        ("master->cor1", SumId::Master, vec![(av, one1.clone()), (bv, a.clone())], SumId::Cor1, vec![]),
        ("cor1->i1", SumId::Cor1, vec![(av, zero.clone())], SumId::I1, vec![]),
        ("cor1->i3", SumId::Cor1, vec![(av, one1.neg())], SumId::I3, vec![]),
        ("cor1->i4", SumId::Cor1, vec![(av, t.neg())], SumId::I4, vec![]),
        ("cor1->i5", SumId::Cor1, vec![(av, s.clone())], SumId::I5, vec![]),
        ("master->cor2", SumId::Master, vec![(bv, a.neg())], SumId::Cor2, vec![(av, a.pow(2))]),
        ("cor2->i2", SumId::Cor2, vec![(av, zero.clone())], SumId::I2, vec![]),
        ("cor2->i3", SumId::Cor2, vec![(av, one1.clone())], SumId::I3, vec![]),
        ("cor2->i6", SumId::Cor2, vec![(av, t.clone())], SumId::I6, vec![]),
        ("cor2->seventh", SumId::Cor2, vec![(av, s.neg())], SumId::Seventh, vec![]),
        ("master->lw2", SumId::Master, vec![(bv, zero.clone())], SumId::Lw2, vec![]),
        ("master->jz", SumId::Master, vec![(sv, zero.clone())], SumId::Jz, vec![]),
    ];

    let mut out = Vec::new();
    for (label, parent, psubs, child, csubs) in pairs {
        let (pl, pr) = build(parent, &ctx);
        let (cl, cr) = build(child, &ctx);
        let apply = |p: &MPoly, subs: &Subs| {
            if subs.is_empty() {
                p.clone()
            } else {
                p.substitute(subs, Some(ctx.trunc.clone()))
            }
        };
        if let Some(m) = labelled_mismatch(
            &format!("{label} lhs"),
            &apply(&pl, &psubs),
            &apply(&cl, &csubs),
        ) {
            out.push(m);
        }
        if let Some(m) = labelled_mismatch(
            &format!("{label} rhs"),
            &apply(&pr, &psubs),
            &apply(&cr, &csubs),
        ) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Bounded sum vs determinant: cross-multiplied rational identity.
fn run_bfin(params: &Params) -> Result<Vec<Mismatch>> {
    let n = params.n;
    let k = params
        .k
        .ok_or_else(|| Error::InvalidParams("bfin requires k".into()))? as usize;
    let table = VarTable::with_x(n, &[]);
    let one = MPoly::one(&table);
    let ctx = HLContext::new(&table, "x", MPoly::zero(&table), None);
    // LHS: finite sum over lambda inside the k x n box
    let mut lhs = MPoly::zero(&table);
    for lam in enumerate_partitions((n * k) as u32, n, Some(k as u32)) {
        lhs = lhs.add(&ctx.hl_p(&lam));
    }
    // determinant of x_i^{j-1} - x_i^{2n+k-j}
    let mut rows = Vec::new();
    for i in 1..=n {
        let xi = MPoly::named(&table, &format!("x{i}"));
        let mut row = Vec::new();
        for j in 1..=n {
            row.push(xi.pow((j - 1) as u32).sub(&xi.pow((2 * n + k - j) as u32)));
        }
        rows.push(row);
    }
    let det = determinant(&rows);
    // denominator: prod (1-x_i) prod_{i<j} (x_j-x_i)(1-x_i x_j);
    // the Vandermonde is ordered to match det(x_i^{j-1}) = prod_{i<j}
    // (x_j - x_i), which is the orientation the determinant above carries
    let mut den = MPoly::one(&table);
    for i in 1..=n {
        den = den.mul(&one.sub(&MPoly::named(&table, &format!("x{i}"))));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let xi = MPoly::named(&table, &format!("x{i}"));
            let xj = MPoly::named(&table, &format!("x{j}"));
            den = den.mul(&xj.sub(&xi)).mul(&one.sub(&xi.mul(&xj)));
        }
    }
    Ok(mpoly_mismatches(&lhs.mul(&den), &det))
}

/// Extract Schur coefficients of both two-parameter product sides and
/// check that conjugating partitions maps one family onto the other (the
/// involution omega at work), besides matching the closed coefficient
/// formulas.
fn run_omega_link(params: &Params) -> Result<Vec<Mismatch>> {
    let d = params.d;
    let n = params.n;
    if (d as usize) > n {
        return Err(Error::CapExceedsVariables { cap: d, nvars: n });
    }
    let ctx = SeriesCtx::new(n, d);
    let rhs_iw = build_rhs(SumId::Iw, &ctx);
    let rhs_jz = build_rhs(SumId::Jz, &ctx);
    let c_iw = symfunc::to_p_basis(&rhs_iw, &ctx.schur)?;
    let c_jz = symfunc::to_p_basis(&rhs_jz, &ctx.schur)?;
    let mut out = Vec::new();
    for lam in enumerate_partitions(d, n, None) {
        let zero = MPoly::zero(&ctx.table);
        let iw = c_iw.get(&lam).unwrap_or(&zero);
        let jz = c_jz.get(&lam.conjugate()).unwrap_or(&zero);
        // omega sends s_lambda to s_lambda', so the coefficient of
        // s_lambda on the one side equals that of s_lambda' on the other
        if let Some(m) = labelled_mismatch(&format!("omega lambda={lam}"), iw, jz) {
            out.push(m);
        }
        // and both match the closed formula
        let closed = qseries::f_two_param(&lam, &ctx.a, &ctx.b);
        if let Some(m) = labelled_mismatch(&format!("closed lambda={lam}"), iw, &closed) {
            out.push(m);
        }
    }
    // omega is an involution on the extracted data
    let mut exp = symfunc::SymExpansion::new(symfunc::Basis::HallLittlewoodP);
    exp.coeffs = c_iw.clone().into_iter().collect::<BTreeMap<_, _>>();
    let twice = symfunc::omega_on_schur(&symfunc::omega_on_schur(&exp, n)?, n)?;
    if twice.coeffs != exp.coeffs {
        out.push(Mismatch {
            monomial: "omega involution".into(),
            lhs: "omega^2 applied".into(),
            rhs: "identity".into(),
        });
    }
    Ok(out)
}

/// Pointwise check of the single-letter skew sum against the closed
/// coefficient of the one-parameter product identity.
fn run_lw1_via_c(params: &Params) -> Result<Vec<Mismatch>> {
    let ctx = SeriesCtx::new(1.max(params.n), params.d);
    let mut out = Vec::new();
    for lam in enumerate_partitions(params.d, params.d as usize, None) {
        let via_c = hall::c_lambda_sum(&lam, &[ctx.a.clone()], &ctx.t)?;
        let (_, odd_cols) = lam.conjugate().even_odd_split();
        let closed = ctx
            .a
            .pow(odd_cols.len() as u32)
            .mul(&qseries::d_lambda(&lam, &ctx.t));
        if let Some(m) = labelled_mismatch(&format!("lambda={lam}"), &via_c, &closed) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Cauchy kernel at n = m: `sum_lambda P_lambda(x) Q_lambda(y)` against
/// the double product.
fn run_cauchy(params: &Params) -> Result<Vec<Mismatch>> {
    let n = params.n;
    let d = params.d;
    let table = VarTable::builder()
        .block("x", n)
        .block("y", n)
        .param("s")
        .build();
    let s = MPoly::named(&table, "s");
    let t = s.pow(2);
    let trunc = TruncSpec::degree_cap(table.mask("x"), d).and(table.mask("y"), d);
    let xctx = HLContext::new(&table, "x", t.clone(), Some(trunc.clone()));
    let yctx = HLContext::new(&table, "y", t.clone(), Some(trunc.clone()));
    let mut lhs = MPoly::zero(&table).with_trunc(Some(trunc.clone()));
    for lam in enumerate_partitions(d, n, None) {
        lhs = lhs.add(&xctx.hl_p(&lam).mul(&yctx.hl_q(&lam)));
    }
    let one = MPoly::one(&table).with_trunc(Some(trunc.clone()));
    let mut rhs = one.clone();
    for i in 1..=n {
        for j in 1..=n {
            let xy = MPoly::named(&table, &format!("x{i}")).mul(&MPoly::named(&table, &format!("y{j}")));
            rhs = rhs.mul(&one.sub(&t.mul(&xy).with_trunc(Some(trunc.clone()))));
            rhs = rhs.mul(&xy.geometric_inverse(&trunc).unwrap());
        }
    }
    Ok(mpoly_mismatches(&lhs, &rhs))
}

/// Self-test runner: the first Hall-Littlewood sum with one RHS monomial
/// deliberately perturbed; must report FAIL.
pub(super) fn run_mutated_i1(params: &Params) -> Result<Vec<Mismatch>> {
    let ctx = SeriesCtx::new(params.n, params.d);
    let (lhs, rhs) = build(SumId::I1, &ctx);
    let perturbed = rhs.add(&ctx.capped(&ctx.x(1)));
    Ok(mpoly_mismatches(&lhs, &perturbed))
}

pub(super) fn register(cases: &mut Vec<Case>) {
    let series = |id, anchor, which, smoke: Vec<Params>, full: Vec<Params>| Case {
        id,
        anchor,
        mode: Mode::Series,
        runner: series_case(which),
        smoke,
        full,
    };
    cases.push(series(
        "schur.bn",
        "sum of Schur functions over all partitions equals 1/prod(1-x_i) * 1/prod(1-x_i x_j)",
        SumId::Bn,
        vec![Params::new(2, 3)],
        vec![Params::new(4, 8)],
    ));
    cases.push(series(
        "schur.cn",
        "sum of Schur functions over even partitions equals 1/prod(1-x_i^2) * 1/prod(1-x_i x_j)",
        SumId::Cn,
        vec![Params::new(2, 3)],
        vec![Params::new(4, 8)],
    ));
    cases.push(series(
        "schur.dn",
        "sum of Schur functions over even-conjugate partitions equals 1/prod(1-x_i x_j)",
        SumId::Dn,
        vec![Params::new(2, 3)],
        vec![Params::new(4, 8)],
    ));
    cases.push(Case {
        id: "schur.bfin",
        anchor: "bounded Schur sum (lambda_1 <= k) as a determinant over its Weyl denominator, compared after cross-multiplication",
        mode: Mode::Rational,
        runner: run_bfin,
        smoke: vec![Params::new(1, 0).with_k(1), Params::new(2, 0).with_k(1)],
        full: (1..=3)
            .flat_map(|n| (1..=3).map(move |k| Params::new(n, 0).with_k(k)))
            .collect(),
    });
    cases.push(series(
        "schur.iw",
        "Bressoud-Ishikawa-Wakayama: two-parameter weighted Schur sum equals 1/prod((1-a x_i)(1-b x_i)) * 1/prod(1-x_i x_j)",
        SumId::Iw,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 6)],
    ));
    cases.push(series(
        "schur.jz",
        "Jouhet-Zeng: conjugate-weighted Schur sum equals prod (1+a x_i)(1+b x_i)/((1-x_i)(1+x_i)) * 1/prod(1-x_i x_j)",
        SumId::Jz,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 6)],
    ));
    cases.push(Case {
        id: "schur.omega-link",
        anchor: "the involution omega (s_lambda -> s_lambda') maps the Bressoud-Ishikawa-Wakayama expansion onto Jouhet-Zeng",
        mode: Mode::Series,
        runner: run_omega_link,
        smoke: vec![Params::new(3, 3)],
        full: vec![Params::new(5, 5)],
    });
    cases.push(series(
        "hl.macdonald.i1",
        "Macdonald: sum of P_lambda(x;t) equals 1/prod(1-x_i) * prod (1-t x_i x_j)/(1-x_i x_j)",
        SumId::I1,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 6)],
    ));
    cases.push(series(
        "hl.macdonald.i2",
        "Macdonald: sum of P_lambda over even partitions equals 1/prod(1-x_i^2) * prod (1-t x_i x_j)/(1-x_i x_j)",
        SumId::I2,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 6)],
    ));
    cases.push(series(
        "hl.macdonald.i3",
        "Macdonald: c_lambda(t)-weighted sum over even-conjugate partitions equals prod (1-t x_i x_j)/(1-x_i x_j)",
        SumId::I3,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 6)],
    ));
    cases.push(series(
        "hl.macdonald.i4",
        "Macdonald: d_lambda(t)-weighted sum equals prod (1-t x_i)/(1-x_i) * prod (1-t x_i x_j)/(1-x_i x_j)",
        SumId::I4,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 6)],
    ));
    cases.push(series(
        "hl.kawanaka.i5",
        "Kawanaka: e_lambda(t)-weighted sum equals prod (1+t^(1/2) x_i)/(1-x_i) * prod (1-t x_i x_j)/(1-x_i x_j)",
        SumId::I5,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 6)],
    ));
    cases.push(series(
        "hl.kawanaka.i6",
        "Kawanaka: f_lambda(t)-weighted sum over even-odd-column partitions equals prod (1-t x_i^2)/(1-x_i^2) * prod (1-t x_i x_j)/(1-x_i x_j)",
        SumId::I6,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 6)],
    ));
    cases.push(Case {
        id: "master",
        anchor: "Rogers-Szego master sum: a^{l(odd)} h_even(ab;t) h_odd(b/a;t) P_lambda summed equals prod (1+a x_i)(1+b x_i)/((1-x_i)(1+x_i)) * prod (1-t x_i x_j)/(1-x_i x_j)",
        mode: Mode::Series,
        runner: run_master,
        smoke: vec![Params::new(2, 3)],
        full: vec![Params::new(3, 5)],
    });
    cases.push(Case {
        id: "master.ab-symmetry",
        anchor: "the master sum's left-hand side is invariant under swapping a and b",
        mode: Mode::Series,
        runner: run_master_ab_symmetry,
        smoke: vec![Params::new(2, 3)],
        full: vec![Params::new(3, 5)],
    });
    cases.push(series(
        "master.t1",
        "t = 1 collapse: (1+ab)^{l(even)} (a+b)^{l(odd)} weighted monomial sum equals prod (1+a x_i)(1+b x_i)/(1-x_i^2)",
        SumId::MasterT1,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 5)],
    ));
    cases.push(Case {
        id: "master.lattice",
        anchor: "derivation lattice: every corollary's builders agree monomial-for-monomial with the parent under the stated substitution",
        mode: Mode::Series,
        runner: run_lattice,
        smoke: vec![Params::new(2, 3)],
        full: vec![Params::new(3, 5)],
    });
    cases.push(series(
        "cor1",
        "one-parameter corollary: h_lambda(a;t)-weighted sum equals prod (1+a x_i)/(1-x_i) * prod (1-t x_i x_j)/(1-x_i x_j)",
        SumId::Cor1,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 5)],
    ));
    cases.push(series(
        "cor2",
        "b = -a corollary with (t;t^2) factors over partitions with even odd-part multiplicities",
        SumId::Cor2,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 5)],
    ));
    cases.push(series(
        "seventh",
        "the a = -t^(1/2) case: k_lambda(t)-weighted sum equals prod (1+t^(1/2) x_i^2)/(1-x_i^2) * prod (1-t x_i x_j)/(1-x_i x_j)",
        SumId::Seventh,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 5)],
    ));
    cases.push(series(
        "lw2",
        "b = 0 case: a^{l(odd)}-weighted sum equals prod (1+a x_i)/(1-x_i^2) * prod (1-t x_i x_j)/(1-x_i x_j)",
        SumId::Lw2,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 5)],
    ));
    cases.push(series(
        "lw1",
        "odd-column weighted sum: a^{l((lambda')_odd)} d_lambda(t) P_lambda equals prod (1-a t x_i)/(1-a x_i) * prod (1-t x_i x_j)/(1-x_i x_j)",
        SumId::Lw1,
        vec![Params::new(2, 3)],
        vec![Params::new(3, 5)],
    ));
    cases.push(Case {
        id: "lw1.via-C",
        anchor: "cross-check: the single-letter skew sum C_lambda((a);t) reproduces the odd-column weighted coefficients",
        mode: Mode::Series,
        runner: run_lw1_via_c,
        smoke: vec![Params::new(1, 3)],
        full: vec![Params::new(1, 5)],
    });
    cases.push(Case {
        id: "cauchy",
        anchor: "Cauchy kernel: sum of P_lambda(x;t) Q_lambda(y;t) equals prod (1-t x_i y_j)/(1-x_i y_j)",
        mode: Mode::Series,
        runner: run_cauchy,
        smoke: vec![Params::new(2, 3)],
        full: vec![Params::new(3, 5)],
    });
}
