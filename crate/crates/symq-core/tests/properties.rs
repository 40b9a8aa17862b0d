//! Property tests for the exact-arithmetic substrate.

use proptest::prelude::*;
use std::sync::Arc;

use symq_core::poly::{MPoly, Mono, TruncSpec, VarTable};

fn table() -> Arc<VarTable> {
    VarTable::with_x(2, &["s"])
}

/// Strategy: sparse polynomials with up to 20 terms, exponents <= 3,
/// single-digit coefficients.
fn small_poly() -> impl Strategy<Value = MPoly> {
    proptest::collection::vec(((0u16..=3, 0u16..=3, 0u16..=3), -9i64..=9), 0..20).prop_map(|terms| {
        let t = table();
        let mut acc = MPoly::zero(&t);
        for ((e1, e2, e3), c) in terms {
            let mut m = Mono::unit(t.len());
            m.0[0] = e1;
            m.0[1] = e2;
            m.0[2] = e3;
            acc = acc.add(&MPoly::monomial(&t, m, c));
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn truncated_ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        let t = table();
        let cap = Some(TruncSpec::degree_cap(t.mask("x"), 4));
        let (a, b, c) = (
            a.with_trunc(cap.clone()),
            b.with_trunc(cap.clone()),
            c.with_trunc(cap.clone()),
        );
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn geometric_inverse_identity(e1 in 0u16..=2, e2 in 0u16..=2, coef in -3i64..=3) {
        prop_assume!(e1 + e2 > 0 && coef != 0);
        let t = table();
        let mut m = Mono::unit(t.len());
        m.0[0] = e1;
        m.0[1] = e2;
        let mono = MPoly::monomial(&t, m, coef);
        let cap = TruncSpec::degree_cap(t.mask("x"), 6);
        let g = mono.geometric_inverse(&cap).unwrap();
        let one = MPoly::one(&t).with_trunc(Some(cap.clone()));
        prop_assert_eq!(one.sub(&mono.with_trunc(Some(cap.clone()))).mul(&g), one);
    }

    #[test]
    fn ratfn_equivalence_with_injected_factors(
        p in small_poly(),
        q in small_poly(),
        r in small_poly(),
        s in small_poly(),
    ) {
        use symq_core::poly::RatFn;
        prop_assume!(!q.is_zero() && !r.is_zero() && !s.is_zero());
        // p/q == (p r)/(q r): reflexivity through injected factors
        let base = RatFn::new(p.clone(), q.clone());
        let lifted = RatFn::new(p.mul(&r), q.mul(&r));
        prop_assert!(base.eq_cross(&lifted));
        // symmetry & transitivity across two different injections
        let lifted2 = RatFn::new(p.mul(&s), q.mul(&s));
        prop_assert!(lifted.eq_cross(&base));
        prop_assert!(lifted.eq_cross(&lifted2));
        // and inequality is detected: (p+1)/q differs unless it doesn't
        let bumped = RatFn::new(p.add(&MPoly::one(p.table())), q.clone());
        prop_assert_eq!(base.eq_cross(&bumped), false);
    }
}
