//! q/t-Pochhammer symbols, t-binomial coefficients, Rogers-Szego
//! polynomials and the coefficient families (c, d, e, f, k and the
//! two-parameter f) that weight the identity sums.
//!
//! The base of every symbol is passed explicitly as a polynomial, so the
//! same code runs with `t = s^2` (the default; `t^{1/2} = s` stays
//! polynomial) and with `t = q` for the q-series specializations.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poly::{MPoly, TruncSpec};

/// Finite Pochhammer `(base; step)_n = prod_{i=0}^{n-1} (1 - base*step^i)`.
pub fn pochhammer(base: &MPoly, step: &MPoly, n: u32) -> MPoly {
    let table = base.table().clone();
    let mut acc = MPoly::one(&table);
    let mut shift = base.clone();
    for _ in 0..n {
        acc = acc.mul(&MPoly::one(&table).sub(&shift));
        shift = shift.mul(step);
    }
    acc
}

/// Infinite Pochhammer truncated under `trunc`: factors are multiplied
/// while `base*step^i` is still admitted by the cap; later factors are
/// congruent to 1 modulo the truncation ideal. Both `base` and `step`
/// must be single monomials and `step` must raise a capped degree.
pub fn pochhammer_inf(base: &MPoly, step: &MPoly, trunc: &TruncSpec) -> Result<MPoly> {
    let table = base.table().clone();
    let (bm, _) = base
        .as_single_term()
        .ok_or_else(|| Error::Precondition("pochhammer base must be a monomial".into()))?;
    let (sm, _) = step
        .as_single_term()
        .ok_or_else(|| Error::Precondition("pochhammer step must be a monomial".into()))?;
    if !trunc.caps_powers_of(sm) && trunc.admits(bm) {
        return Err(Error::InfiniteWithoutCap);
    }
    let one = MPoly::one(&table).with_trunc(Some(trunc.clone()));
    let mut acc = one.clone();
    let mut shift = base.clone();
    loop {
        match shift.as_single_term() {
            Some((m, _)) if trunc.admits(m) => {
                acc = acc.mul(&one.sub(&shift.clone().with_trunc(Some(trunc.clone()))));
                shift = shift.mul(step);
            }
            _ => break,
        }
    }
    Ok(acc)
}

/// `(t;t)_n` for a given `t` expression.
pub fn t_factorial(t: &MPoly, n: u32) -> MPoly {
    pochhammer(t, t, n)
}

/// t-binomial coefficient `[n; m]_t = (t^{n-m+1}; t)_m / (t;t)_m`,
/// 0 for `m < 0` or `m > n`. The division is exact by construction; a
/// remainder signals an internal bug.
pub fn tbinom(n: i64, m: i64, t: &MPoly) -> MPoly {
    let table = t.table().clone();
    if m < 0 || m > n {
        return MPoly::zero(&table);
    }
    let m = m as u32;
    let n = n as u32;
    let base = t.pow(n - m + 1);
    let num = pochhammer(&base, t, m);
    num.exact_div(&t_factorial(t, m))
}

/// Rogers-Szego polynomial `H_m(z;t) = sum_{i=0}^m z^i [m;i]_t`.
pub fn rogers_szego(m: u32, z: &MPoly, t: &MPoly) -> MPoly {
    let table = t.table().clone();
    let mut acc = MPoly::zero(&table);
    for i in 0..=m {
        acc = acc.add(&z.pow(i).mul(&tbinom(m as i64, i as i64, t)));
    }
    acc
}

/// Homogenized Rogers-Szego polynomial
/// `a^m H_m(b/a;t) = sum_{i=0}^m a^{m-i} b^i [m;i]_t`,
/// symmetric in `a` and `b`.
pub fn rogers_szego_homog(m: u32, a: &MPoly, b: &MPoly, t: &MPoly) -> MPoly {
    let table = t.table().clone();
    let mut acc = MPoly::zero(&table);
    for i in 0..=m {
        acc = acc.add(&a.pow(m - i).mul(&b.pow(i)).mul(&tbinom(m as i64, i as i64, t)));
    }
    acc
}

/// `h_lambda(z;t) = prod_i H_{m_i(lambda)}(z;t)`.
pub fn h_lambda(lam: &Partition, z: &MPoly, t: &MPoly) -> MPoly {
    let table = t.table().clone();
    let mut acc = MPoly::one(&table);
    for i in 1..=lam.first() {
        let m = lam.multiplicity(i);
        if m > 0 {
            acc = acc.mul(&rogers_szego(m, z, t));
        }
    }
    acc
}

/// Bounded variant `h_{lambda;k}(z;t) = prod_{i=1}^{k-1} H_{m_i(lambda)}(z;t)`.
pub fn h_lambda_bounded(lam: &Partition, k: u32, z: &MPoly, t: &MPoly) -> MPoly {
    let table = t.table().clone();
    let mut acc = MPoly::one(&table);
    for i in 1..k {
        let m = lam.multiplicity(i);
        if m > 0 {
            acc = acc.mul(&rogers_szego(m, z, t));
        }
    }
    acc
}

/// Homogenized `a^{l(lambda)} h_lambda(b/a;t) = prod_i a^{m_i} H_{m_i}(b/a;t)`.
pub fn h_lambda_homog(lam: &Partition, a: &MPoly, b: &MPoly, t: &MPoly) -> MPoly {
    let table = t.table().clone();
    let mut acc = MPoly::one(&table);
    for i in 1..=lam.first() {
        let m = lam.multiplicity(i);
        if m > 0 {
            acc = acc.mul(&rogers_szego_homog(m, a, b, t));
        }
    }
    acc
}

/// `(t;t^2)_j = (1-t)(1-t^3)...(1-t^{2j-1})`.
pub fn t_odd_factorial(t: &MPoly, j: u32) -> MPoly {
    pochhammer(t, &t.pow(2), j)
}

/// `c_lambda(t) = prod_i (t;t^2)_{m_i/2}`; requires `lambda'` even.
pub fn c_lambda(lam: &Partition, t: &MPoly) -> Result<MPoly> {
    let table = t.table().clone();
    let mut acc = MPoly::one(&table);
    for i in 1..=lam.first() {
        let m = lam.multiplicity(i);
        if m % 2 != 0 {
            return Err(Error::Precondition(format!(
                "c requires lambda' even; part {i} of {lam} has odd multiplicity"
            )));
        }
        acc = acc.mul(&t_odd_factorial(t, m / 2));
    }
    Ok(acc)
}

/// `d_lambda(t) = prod_i (t;t^2)_{ceil(m_i/2)}`.
pub fn d_lambda(lam: &Partition, t: &MPoly) -> MPoly {
    let table = t.table().clone();
    let mut acc = MPoly::one(&table);
    for i in 1..=lam.first() {
        let m = lam.multiplicity(i);
        acc = acc.mul(&t_odd_factorial(t, (m + 1) / 2));
    }
    acc
}

/// `e_lambda(t) = prod_i (-t^{1/2}; t^{1/2})_{m_i} = prod_i prod_{j=1}^{m_i} (1 + s^j)`.
pub fn e_lambda(lam: &Partition, s: &MPoly) -> MPoly {
    let table = s.table().clone();
    let mut acc = MPoly::one(&table);
    for i in 1..=lam.first() {
        acc = acc.mul(&pochhammer(&s.neg(), s, lam.multiplicity(i)));
    }
    acc
}

/// `f_lambda(t) = t^{l(lambda_o)/2} d_lambda(t)`; requires `(lambda_o)'` even.
pub fn f_kawanaka(lam: &Partition, s: &MPoly) -> Result<MPoly> {
    let (_, odd) = lam.even_odd_split();
    if !odd.conjugate().is_even() {
        return Err(Error::Precondition(format!(
            "f requires (lambda_o)' even, got lambda = {lam}"
        )));
    }
    Ok(s.pow(odd.len() as u32).mul(&d_lambda(lam, &s.pow(2))))
}

/// `k_lambda(t) = (-t^{1/2})^{l(lambda_o)/2}
///   prod_i (-t^{1/2};t^{1/2})_{m_i(lambda_e)} (t;t^2)_{m_i(lambda_o)/2}`;
/// requires `(lambda_o)'` even.
pub fn k_lambda(lam: &Partition, s: &MPoly) -> Result<MPoly> {
    let (even, odd) = lam.even_odd_split();
    if !odd.conjugate().is_even() {
        return Err(Error::Precondition(format!(
            "k requires (lambda_o)' even, got lambda = {lam}"
        )));
    }
    let half = odd.len() as u32 / 2;
    let mut acc = s.neg().pow(half);
    for i in 1..=even.first() {
        acc = acc.mul(&pochhammer(&s.neg(), s, even.multiplicity(i)));
    }
    for i in 1..=odd.first() {
        acc = acc.mul(&t_odd_factorial(&s.pow(2), odd.multiplicity(i) / 2));
    }
    Ok(acc)
}

/// Complete homogeneous sum in two letters: `sum_{i=0}^m a^i b^{m-i}`
/// (the odd-column factor `(a^{m+1}-b^{m+1})/(a-b)` expanded).
fn two_letter_h(m: u32, a: &MPoly, b: &MPoly) -> MPoly {
    let table = a.table().clone();
    let mut acc = MPoly::zero(&table);
    for i in 0..=m {
        acc = acc.add(&a.pow(i).mul(&b.pow(m - i)));
    }
    acc
}

/// Geometric sum `sum_{i=0}^m x^i` (the even-column factor
/// `(1-(ab)^{m+1})/(1-ab)` expanded).
fn geom_sum(m: u32, x: &MPoly) -> MPoly {
    let table = x.table().clone();
    let mut acc = MPoly::zero(&table);
    for i in 0..=m {
        acc = acc.add(&x.pow(i));
    }
    acc
}

/// Two-parameter family
/// `f_lambda(a,b) = prod_{j odd} (a^{m_j(lambda')+1}-b^{m_j(lambda')+1})/(a-b)
///                  prod_{j even} (1-(ab)^{m_j(lambda')+1})/(1-ab)`,
/// expanded as polynomials.
pub fn f_two_param(lam: &Partition, a: &MPoly, b: &MPoly) -> MPoly {
    let table = a.table().clone();
    let conj = lam.conjugate();
    let ab = a.mul(b);
    let mut acc = MPoly::one(&table);
    for j in 1..=conj.first() {
        let m = conj.multiplicity(j);
        if m == 0 {
            continue;
        }
        if j % 2 == 1 {
            acc = acc.mul(&two_letter_h(m, a, b));
        } else {
            acc = acc.mul(&geom_sum(m, &ab));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarTable;
    use std::str::FromStr;
    use std::sync::Arc;

    struct Ctx {
        s: MPoly,
        t: MPoly,
        a: MPoly,
        b: MPoly,
        z: MPoly,
        one: MPoly,
        table: Arc<VarTable>,
    }

    fn ctx() -> Ctx {
        let table = VarTable::builder()
            .param("s")
            .param("a")
            .param("b")
            .param("z")
            .build();
        let s = MPoly::named(&table, "s");
        Ctx {
            t: s.pow(2),
            s,
            a: MPoly::named(&table, "a"),
            b: MPoly::named(&table, "b"),
            z: MPoly::named(&table, "z"),
            one: MPoly::one(&table),
            table,
        }
    }

    fn lam(s: &str) -> Partition {
        Partition::from_str(s).unwrap()
    }

    #[test]
    fn pochhammer_examples() {
        let c = ctx();
        // (t;t)_2 = (1-s^2)(1-s^4)
        let got = t_factorial(&c.t, 2);
        let want = c.one.sub(&c.s.pow(2)).mul(&c.one.sub(&c.s.pow(4)));
        assert_eq!(got, want);
        // (t;t^2)_1 = 1 - s^2
        assert_eq!(pochhammer(&c.t, &c.s.pow(4), 1), c.one.sub(&c.s.pow(2)));
    }

    #[test]
    fn pochhammer_inf_truncation() {
        let table = VarTable::builder().param("z").param("q").build();
        let z = MPoly::named(&table, "z");
        let q = MPoly::named(&table, "q");
        let one = MPoly::one(&table);
        let cap = TruncSpec::degree_cap(table.mask_of(table.var("q")), 2);
        // (-z;q)_inf at q-cap 2: exactly the factors (1+z)(1+zq)(1+zq^2)
        let got = pochhammer_inf(&z.neg(), &q, &cap).unwrap();
        let want = one
            .add(&z)
            .mul(&one.add(&z.mul(&q)))
            .mul(&one.add(&z.mul(&q.pow(2))))
            .with_trunc(Some(cap.clone()));
        assert_eq!(got, want);
        // base not capped, step without capped degree -> error
        let zcap = TruncSpec::degree_cap(table.mask_of(table.var("z")), 2);
        assert!(matches!(
            pochhammer_inf(&q.neg(), &q, &zcap),
            Err(Error::InfiniteWithoutCap)
        ));
    }

    #[test]
    fn tbinom_examples() {
        let c = ctx();
        // [2;1]_t = 1 + t
        assert_eq!(tbinom(2, 1, &c.t), c.one.add(&c.t));
        // [m;0]_t = 1
        for m in 0..6 {
            assert_eq!(tbinom(m, 0, &c.t), c.one);
        }
        // out of range -> 0
        assert!(tbinom(1, 2, &c.t).is_zero());
        assert!(tbinom(3, -1, &c.t).is_zero());
    }

    #[test]
    fn tbinom_pascal_recurrence() {
        // [n;m] = [n-1;m] + t^{n-m} [n-1;m-1], the independent oracle for
        // the quotient-of-Pochhammers definition
        let c = ctx();
        for n in 1..=8i64 {
            for m in 0..=n {
                let lhs = tbinom(n, m, &c.t);
                let rhs = tbinom(n - 1, m, &c.t)
                    .add(&c.t.pow((n - m) as u32).mul(&tbinom(n - 1, m - 1, &c.t)));
                assert_eq!(lhs, rhs, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn rogers_szego_examples() {
        let c = ctx();
        // H_2(z;t) = 1 + (1+t)z + z^2
        let got = rogers_szego(2, &c.z, &c.t);
        let want = c.one.add(&c.one.add(&c.t).mul(&c.z)).add(&c.z.pow(2));
        assert_eq!(got, want);
        // H_m(0;t) = 1
        let zero = MPoly::zero(&c.table);
        for m in 0..=8 {
            assert_eq!(rogers_szego(m, &zero, &c.t), c.one);
        }
        // H_2(-1;t) = 1 - s^2
        assert_eq!(rogers_szego(2, &c.one.neg(), &c.t), c.one.sub(&c.s.pow(2)));
    }

    #[test]
    fn rogers_szego_specializations() {
        let c = ctx();
        for m in 0..=8u32 {
            // H_m(-1;t) = (t;t^2)_{m/2} for even m, 0 for odd m
            let h = rogers_szego(m, &c.one.neg(), &c.t);
            if m % 2 == 0 {
                assert_eq!(h, pochhammer(&c.t, &c.t.pow(2), m / 2), "m={m}");
            } else {
                assert!(h.is_zero(), "m={m}");
            }
            // H_m(-t;t) = (t;t)_m / (t^2;t^2)_{floor(m/2)}
            let h = rogers_szego(m, &c.t.neg(), &c.t);
            let want = t_factorial(&c.t, m).exact_div(&t_factorial(&c.t.pow(2), m / 2));
            assert_eq!(h, want, "m={m}");
            // H_m(t^{1/2};t) = (-t^{1/2};t^{1/2})_m
            let h = rogers_szego(m, &c.s, &c.t);
            assert_eq!(h, pochhammer(&c.s.neg(), &c.s, m), "m={m}");
        }
    }

    #[test]
    fn rogers_szego_homog_examples() {
        let c = ctx();
        // m=1: a + b
        assert_eq!(rogers_szego_homog(1, &c.a, &c.b, &c.t), c.a.add(&c.b));
        // m=2 at a=b=1: H_2(1;t) = 3 + t
        let got = rogers_szego_homog(2, &c.one, &c.one, &c.t);
        assert_eq!(got, MPoly::constant(&c.table, 3).add(&c.t));
        // symmetry under a <-> b (reciprocity z^m H_m(1/z;t) = H_m(z;t))
        for m in 0..=6 {
            let ab = rogers_szego_homog(m, &c.a, &c.b, &c.t);
            let ba = rogers_szego_homog(m, &c.b, &c.a, &c.t);
            assert_eq!(ab, ba, "m={m}");
        }
        // with polynomial arguments
        let pa = c.one.add(&c.s);
        let pb = c.t.sub(&c.one);
        for m in 0..=5 {
            assert_eq!(
                rogers_szego_homog(m, &pa, &pb, &c.t),
                rogers_szego_homog(m, &pb, &pa, &c.t)
            );
        }
    }

    #[test]
    fn h_lambda_examples() {
        let c = ctx();
        // h_{(3,2,2,1)} = H_1^2 H_2
        let p = lam("3,2,2,1");
        let want = rogers_szego(1, &c.z, &c.t)
            .pow(2)
            .mul(&rogers_szego(2, &c.z, &c.t));
        assert_eq!(h_lambda(&p, &c.z, &c.t), want);
        // bounded at k=2 keeps only H_{m_1} = H_1
        assert_eq!(
            h_lambda_bounded(&p, 2, &c.z, &c.t),
            rogers_szego(1, &c.z, &c.t)
        );
        assert_eq!(h_lambda_bounded(&p, 1, &c.z, &c.t), c.one);
        assert_eq!(
            h_lambda_bounded(&p, 3, &c.z, &c.t),
            rogers_szego(1, &c.z, &c.t).mul(&rogers_szego(2, &c.z, &c.t))
        );
        // empty partition
        assert_eq!(h_lambda(&Partition::zero(), &c.z, &c.t), c.one);
    }

    #[test]
    fn h_lambda_at_t_one() {
        // h_lambda(z;1) = (1+z)^{l(lambda)}
        let c = ctx();
        let s_var = c.table.var("s");
        for p in crate::partition::enumerate_partitions(6, 6, None) {
            let h = h_lambda(&p, &c.z, &c.t);
            let at1 = h.substitute(&[(s_var, c.one.clone())], None);
            assert_eq!(at1, c.one.add(&c.z).pow(p.len() as u32), "lambda={p}");
        }
    }

    #[test]
    fn coefficient_families() {
        let c = ctx();
        // d_{(1)} = 1 - t
        assert_eq!(d_lambda(&lam("1"), &c.t), c.one.sub(&c.t));
        // c_{(2,2)} = 1 - t
        assert_eq!(c_lambda(&lam("2,2"), &c.t).unwrap(), c.one.sub(&c.t));
        // e_{(1)} = 1 + s
        assert_eq!(e_lambda(&lam("1"), &c.s), c.one.add(&c.s));
        // two-parameter f at lambda = 0
        assert_eq!(f_two_param(&Partition::zero(), &c.a, &c.b), c.one);
        // f_{(1)}(a,b) = a + b (one column of height 1)
        assert_eq!(f_two_param(&lam("1"), &c.a, &c.b), c.a.add(&c.b));
        // f_{(2)}(a,b): two columns of height 1, m_1(lambda') = 2, giving
        // (a^3-b^3)/(a-b); matches the coefficient of x^2 in the n = 1
        // instance 1/((1-ax)(1-bx))
        let want = c.a.pow(2).add(&c.a.mul(&c.b)).add(&c.b.pow(2));
        assert_eq!(f_two_param(&lam("2"), &c.a, &c.b), want);
        // f_{(1,1)}(a,b) = 1 + ab (one column of height 2)
        assert_eq!(
            f_two_param(&lam("1,1"), &c.a, &c.b),
            c.one.add(&c.a.mul(&c.b))
        );
        // preconditions
        assert!(c_lambda(&lam("2,1"), &c.t).is_err());
        assert!(f_kawanaka(&lam("1"), &c.s).is_err());
        assert!(k_lambda(&lam("1"), &c.s).is_err());
        // f_kawanaka on a valid shape: t^{l(odd)/2} d_lambda
        let p = lam("3,3,2");
        assert_eq!(
            f_kawanaka(&p, &c.s).unwrap(),
            c.s.pow(2).mul(&d_lambda(&p, &c.t))
        );
    }

    #[test]
    fn d_equals_h_at_minus_t() {
        // d_lambda(t) = h_lambda(-t;t)
        let c = ctx();
        for p in crate::partition::enumerate_partitions(8, 8, None) {
            assert_eq!(
                d_lambda(&p, &c.t),
                h_lambda(&p, &c.t.neg(), &c.t),
                "lambda={p}"
            );
        }
    }
}
