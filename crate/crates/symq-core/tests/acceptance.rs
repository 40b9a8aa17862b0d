//! Acceptance suite: every criterion at its stated scale, all arithmetic
//! exact (tolerance zero). Each test prints one `[PASS]`/`[FAIL]` line
//! (visible with `--nocapture`).

use std::time::Instant;

use symq_core::hall::{self, HLContext};
use symq_core::identity::{self, Params, Status};
use symq_core::macdonald::{b_family, q_param, t_param, BFamily};
use symq_core::partition::{enumerate_partitions, Partition};
use symq_core::plethysm::{self, AlphabetExpr};
use symq_core::poly::{MPoly, RatFn, VarTable};
use symq_core::qseries;
use symq_core::symfunc;

/// Run one registered identity and panic with its mismatches on failure.
fn check(id: &str, params: Params) {
    let report = identity::verify(id, &params).unwrap_or_else(|e| panic!("{id}: {e}"));
    assert_eq!(
        report.status,
        Status::Pass,
        "{id} {:?} failed: {:?} {:?}",
        report.params,
        report.error,
        report.mismatches.iter().take(5).collect::<Vec<_>>()
    );
}

fn announce(criterion: &str, start: Instant) {
    println!("[PASS] {criterion} ({} ms)", start.elapsed().as_millis());
}

#[test]
fn criterion_01_schur_suite() {
    let t0 = Instant::now();
    for id in ["schur.bn", "schur.cn", "schur.dn"] {
        check(id, Params::new(4, 8));
    }
    for id in ["schur.iw", "schur.jz"] {
        check(id, Params::new(3, 6));
    }
    for n in 1..=3 {
        for k in 1..=3 {
            check("schur.bfin", Params::new(n, 0).with_k(k));
        }
    }
    announce(
        "criterion 1: Schur sums at n=4 D=8, two-parameter sums at n=3 D=6, bounded determinant form over n,k in {1,2,3}",
        t0,
    );
}

#[test]
fn criterion_02_hall_littlewood_six() {
    let t0 = Instant::now();
    for id in [
        "hl.macdonald.i1",
        "hl.macdonald.i2",
        "hl.macdonald.i3",
        "hl.macdonald.i4",
        "hl.kawanaka.i5",
        "hl.kawanaka.i6",
    ] {
        check(id, Params::new(3, 6));
    }
    announce(
        "criterion 2: the six Hall-Littlewood sums at n=3 D=6 over Z[s] (t = s^2)",
        t0,
    );
}

#[test]
fn criterion_03_master_family() {
    let t0 = Instant::now();
    check("master", Params::new(3, 5));
    check("master.ab-symmetry", Params::new(3, 5));
    check("master.t1", Params::new(3, 5));
    // the derivation lattice, monomial for monomial
    check("master.lattice", Params::new(3, 5));
    // the remaining corollaries hold directly at the same scale
    for id in ["cor1", "cor2", "seventh", "lw2", "lw1"] {
        check(id, Params::new(3, 5));
    }
    check("lw1.via-C", Params::new(1, 5));
    announce(
        "criterion 3: master sum, a<->b symmetry, t=1 collapse and the specialization lattice at n=3 D=5",
        t0,
    );
}

#[test]
fn criterion_04_cauchy() {
    let t0 = Instant::now();
    check("cauchy", Params::new(3, 5));
    announce("criterion 4: Cauchy kernel at n=m=3, degree caps 5/5", t0);
}

#[test]
fn criterion_05_pieri_suite() {
    let t0 = Instant::now();
    // P_mu e_r = sum_lambda f_{mu (1^r)}^lambda P_lambda at n = 4
    let n = 4;
    let table = hall::kernel_table(n);
    let xs = table.block_vars("x");
    let t = MPoly::named(&table, "T");
    for mu in enumerate_partitions(4, n, None) {
        for r in 1..=3u32 {
            let lhs = hall::hl_kernel(&mu, n).mul(&symfunc::elementary_e(r, &table, &xs));
            let mut rhs = MPoly::zero(&table);
            for l in enumerate_partitions(mu.weight() + r, n, None) {
                if l.weight() != mu.weight() + r {
                    continue;
                }
                rhs = rhs.add(&hall::pieri_coeff(&l, &mu, &t).mul(&hall::hl_kernel(&l, n)));
            }
            assert_eq!(lhs, rhs, "Pieri product mu={mu} r={r}");
        }
    }
    // oracle equivalence: struct_const with nu = (1^r) equals pieri_coeff
    let tt = hall::t_table();
    let t_only = MPoly::named(&tt, "T");
    for mu in enumerate_partitions(4, 4, None) {
        for r in 1..=3u32 {
            let nu = Partition::new(vec![1; r as usize]);
            let consts = hall::struct_const(&mu, &nu, mu.len() + r as usize).unwrap();
            for l in enumerate_partitions(mu.weight() + r, mu.len() + r as usize, None) {
                if l.weight() != mu.weight() + r {
                    continue;
                }
                let from_struct = consts.get(&l).cloned().unwrap_or_else(|| MPoly::zero(&tt));
                let from_pieri = hall::pieri_coeff(&l, &mu, &t_only);
                assert_eq!(from_struct, from_pieri, "mu={mu} r={r} lambda={l}");
            }
        }
    }
    announce(
        "criterion 5: Pieri expansion matches the explicit t-binomial coefficients for |mu| <= 4, r <= 3 at n=4, and the structure constants agree on the same range",
        t0,
    );
}

#[test]
fn criterion_06_bounded_rational_identity() {
    let t0 = Instant::now();
    for (n, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        check("prop1", Params::new(n, 0).with_k(k));
    }
    check("prop1.k1", Params::new(3, 0));
    check(
        "prop1.sampled",
        Params::new(4, 0)
            .with_k(2)
            .with_note("mode", "sampled-integer-points")
            .with_note("seed", "20260809"),
    );
    announce(
        "criterion 6: bounded sum vs sign-vector fold as exact rational identity at (n,k) in {(2,1),(2,2),(2,3),(3,1),(3,2)}, k=1 collapse at n=3, sampled integer points at n=4 k=2",
        t0,
    );
}

#[test]
fn criterion_07_q_series() {
    let t0 = Instant::now();
    for k in 1..=3 {
        check(
            "prop2.general",
            Params::new(0, 0)
                .with_k(k)
                .with_q_cap(12)
                .with_note("z_cap", "= q_cap"),
        );
    }
    for k in 1..=3 {
        check("prop2.b0-simplified", Params::new(0, 0).with_k(k).with_q_cap(12));
    }
    for k in 1..=3 {
        check("prop2.rr", Params::new(0, 0).with_k(k).with_q_cap(20));
    }
    announce(
        "criterion 7: principal-specialization q-series at q-cap 12 with z, a, b exact, and the Rogers-Ramanujan-type identity at q-cap 20 against the triple-product oracle",
        t0,
    );
}

#[test]
fn criterion_08_macdonald_identities() {
    let t0 = Instant::now();
    for id in ["mac.pb", "mac.pc", "mac.p349"] {
        check(id, Params::new(3, 4));
    }
    announce(
        "criterion 8: Macdonald-polynomial sums at n=3, weight cap 4, exact rational (q,t) coefficients",
        t0,
    );
}

#[test]
fn criterion_09_lambda_ring_layer() {
    let t0 = Instant::now();
    check("plethysm.thm42", Params::new(0, 6));
    check("plethysm.ehxy", Params::new(2, 4));
    // Euler sum h_r[a/(1-t)] = a^r/(t;t)_r and the Rogers-Szego
    // realization (t;t)_r h_r[{a,b}/(1-t)] = a^r H_r(b/a;t), r <= 4
    let pt = VarTable::builder().param("s").param("a").param("b").build();
    let s = MPoly::named(&pt, "s");
    let t = s.pow(2);
    let a = MPoly::named(&pt, "a");
    let b = MPoly::named(&pt, "b");
    for r in 1..=4u32 {
        let table = VarTable::builder()
            .block("y", r as usize)
            .param("s")
            .param("a")
            .param("b")
            .build();
        let ys = table.block_vars("y");
        let hr = symfunc::complete_h(r, &table, &ys);
        let exp = plethysm::powersum_expand(&hr, &table, &ys).unwrap();
        let euler = plethysm::eval_alphabet(&exp, &AlphabetExpr::over_one_minus_t(&[a.clone()]), &t);
        let want = RatFn::from_factors(a.pow(r), vec![(qseries::t_factorial(&t, r), 1)]);
        assert_eq!(euler, want, "Euler sum r={r}");
        let rs = plethysm::eval_alphabet(
            &exp,
            &AlphabetExpr::over_one_minus_t(&[a.clone(), b.clone()]),
            &t,
        )
        .mul_poly(&qseries::t_factorial(&t, r));
        assert_eq!(
            rs.to_poly().unwrap(),
            qseries::rogers_szego_homog(r, &a, &b, &t),
            "Rogers-Szego realization r={r}"
        );
    }
    announce(
        "criterion 9: B_lambda sum equals its closed form for |lambda| <= 6 (clearing to polynomials), the kernel identity at n=2 D=4, and the Euler/convolution checks for r <= 4",
        t0,
    );
}

#[test]
fn criterion_10_engine_properties() {
    let t0 = Instant::now();
    // homogeneity, stability and Z[t]-coefficients for |lambda| <= 6, n <= 4
    for n in 2..=4usize {
        let table = hall::kernel_table(n);
        let xmask = table.mask("x");
        let tv = table.var("T");
        let small = hall::kernel_table(n - 1);
        for p in enumerate_partitions(6, n, None) {
            let k = hall::hl_kernel(&p, n);
            for (m, _) in k.terms() {
                assert_eq!(m.masked_degree(xmask), p.weight(), "homogeneity {p} n={n}");
            }
            let shrunk = k.compose(&small, |v| {
                if v == tv {
                    MPoly::named(&small, "T")
                } else if v == n - 1 {
                    MPoly::zero(&small)
                } else {
                    MPoly::var(&small, v)
                }
            });
            assert_eq!(shrunk, *hall::hl_kernel(&p, n - 1), "stability {p} n={n}");
        }
        // Z[t]: only even s-powers after t = s^2
        let st = VarTable::with_x(n, &["s"]);
        let s = MPoly::named(&st, "s");
        let ctx = HLContext::new(&st, "x", s.pow(2), None);
        let smask = st.mask_of(st.var("s"));
        for p in enumerate_partitions(6, n, None) {
            for (m, _) in ctx.hl_p(&p).terms() {
                assert_eq!(m.masked_degree(smask) % 2, 0, "Z[t] {p} n={n}");
            }
        }
    }
    // two independent constructions of the Schur and monomial limits
    for n in 2..=4usize {
        let table = hall::kernel_table(n);
        let xs = table.block_vars("x");
        let schur_ctx = HLContext::new(&table, "x", MPoly::zero(&table), None);
        let mono_ctx = HLContext::new(&table, "x", MPoly::one(&table), None);
        for p in enumerate_partitions(6, n, None) {
            assert_eq!(
                schur_ctx.hl_p(&p),
                symfunc::schur_jacobi_trudi(&p, &table, &xs),
                "t=0 {p} n={n}"
            );
            assert_eq!(
                mono_ctx.hl_p(&p),
                symfunc::monomial_sym(&p, &table, &xs),
                "t=1 {p} n={n}"
            );
        }
    }
    // the arm/leg product factorizations and conjugation inversions
    let q = q_param();
    let t = t_param();
    let one = RatFn::one(q.table());
    for p in enumerate_partitions(6, 6, None) {
        let el = b_family(&p, BFamily::EvenLeg, &q, &t);
        let ol = b_family(&p, BFamily::OddLeg, &q, &t);
        let ea = b_family(&p, BFamily::EvenArm, &q, &t);
        let oa = b_family(&p, BFamily::OddArm, &q, &t);
        let total = b_family(&p, BFamily::Total, &q, &t);
        assert_eq!(el.mul(&ol), total, "b factorization {p}");
        assert_eq!(ea.mul(&oa), total, "b factorization {p}");
        let conj = p.conjugate();
        assert_eq!(
            b_family(&conj, BFamily::EvenLeg, &q, &t).mul(&b_family(&p, BFamily::EvenArm, &t, &q)),
            one,
            "b inversion el/ea {p}"
        );
        assert_eq!(
            b_family(&conj, BFamily::OddLeg, &q, &t).mul(&b_family(&p, BFamily::OddArm, &t, &q)),
            one,
            "b inversion ol/oa {p}"
        );
    }
    // the four Rogers-Szego specializations for m <= 8
    let pt = VarTable::builder().param("s").build();
    let s = MPoly::named(&pt, "s");
    let ts = s.pow(2);
    let one_p = MPoly::one(&pt);
    let zero_p = MPoly::zero(&pt);
    for m in 0..=8u32 {
        assert_eq!(qseries::rogers_szego(m, &zero_p, &ts), one_p, "H_m(0) m={m}");
        let at_m1 = qseries::rogers_szego(m, &one_p.neg(), &ts);
        if m % 2 == 0 {
            assert_eq!(at_m1, qseries::t_odd_factorial(&ts, m / 2), "H_m(-1) m={m}");
        } else {
            assert!(at_m1.is_zero(), "H_m(-1) m={m}");
        }
        assert_eq!(
            qseries::rogers_szego(m, &ts.neg(), &ts),
            qseries::t_factorial(&ts, m).exact_div(&qseries::t_factorial(&ts.pow(2), m / 2)),
            "H_m(-t) m={m}"
        );
        assert_eq!(
            qseries::rogers_szego(m, &s, &ts),
            qseries::pochhammer(&s.neg(), &s, m),
            "H_m(t^(1/2)) m={m}"
        );
    }
    // mutation sensitivity: the deliberately perturbed case flips to FAIL
    let mutated = identity::verify("selftest.mutation", &Params::new(2, 3)).unwrap();
    assert_eq!(mutated.status, Status::Fail, "mutated case must FAIL");
    assert!(!mutated.mismatches.is_empty());
    announce(
        "criterion 10: homogeneity/stability/Z[t] for |lambda| <= 6 n <= 4, Jacobi-Trudi and monomial limits, arm/leg product laws, the four Rogers-Szego specializations (m <= 8), and the PASS->FAIL mutation flip",
        t0,
    );
}
