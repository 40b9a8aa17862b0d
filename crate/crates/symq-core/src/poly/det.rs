//! Exact determinants of small polynomial matrices by cofactor expansion
//! with column-subset memoization.

use std::collections::HashMap;

use super::mpoly::MPoly;

/// Determinant of a square matrix of polynomials (size <= 6).
pub fn determinant(m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    assert!(n <= 6, "determinant implemented for size <= 6");
    if n == 0 {
        panic!("empty matrix");
    }
    let table = m[0][0].table().clone();
    // minors[mask] = det of rows (n - popcount(mask))..n restricted to the
    // columns in mask, built bottom-up from single rows
    let mut memo: HashMap<u32, MPoly> = HashMap::new();
    memo.insert(0, MPoly::one(&table));
    fn minor(m: &[Vec<MPoly>], n: usize, mask: u32, memo: &mut HashMap<u32, MPoly>) -> MPoly {
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let k = mask.count_ones() as usize;
        let row = n - k;
        let table = m[0][0].table().clone();
        let mut acc = MPoly::zero(&table);
        let mut sign = 1i32;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let sub = minor(m, n, mask & !(1 << j), memo);
            let term = m[row][j].mul(&sub);
            acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
            sign = -sign;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    minor(m, n, (1u32 << n) - 1, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarTable;
    use num_bigint::BigInt;

    #[test]
    fn small_examples() {
        let t = VarTable::with_x(2, &[]);
        let one = MPoly::one(&t);
        let x1 = MPoly::named(&t, "x1");
        let x2 = MPoly::named(&t, "x2");
        assert_eq!(determinant(&[vec![one.clone()]]), one);
        let d = determinant(&[vec![one.clone(), one.clone()], vec![x1.clone(), x2.clone()]]);
        assert_eq!(d, x2.sub(&x1));
        // 1x1 instance of the bounded-sum kernel: 1 - x1^2
        let m = vec![vec![one.sub(&x1.mul(&x1))]];
        assert_eq!(determinant(&m), one.sub(&x1.mul(&x1)));
    }

    /// Brute-force permutation expansion for independent verification.
    fn det_brute(m: &[Vec<MPoly>]) -> MPoly {
        let n = m.len();
        let table = m[0][0].table().clone();
        let mut idx: Vec<usize> = (0..n).collect();
        let mut acc = MPoly::zero(&table);
        permute(&mut idx, 0, &mut |perm| {
            let mut sign = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if perm[i] > perm[j] {
                        sign += 1;
                    }
                }
            }
            let mut term = MPoly::one(&table);
            for (i, &j) in perm.iter().enumerate() {
                term = term.mul(&m[i][j]);
            }
            acc = if sign % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        });
        acc
    }

    fn permute(idx: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == idx.len() {
            f(idx);
            return;
        }
        for i in k..idx.len() {
            idx.swap(k, i);
            permute(idx, k + 1, f);
            idx.swap(k, i);
        }
    }

    #[test]
    fn agrees_with_permutation_expansion() {
        // deterministic pseudo-random single-digit entries
        let t = VarTable::with_x(3, &[]);
        let mut state = 1u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 19) as i64 - 9
        };
        for n in 2..=3 {
            for _ in 0..5 {
                let m: Vec<Vec<MPoly>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                let c = MPoly::constant(&t, BigInt::from(next()));
                                let v = MPoly::var(&t, (next().unsigned_abs() as usize) % 3);
                                c.add(&v.scale(&BigInt::from(next())))
                            })
                            .collect()
                    })
                    .collect();
                assert_eq!(determinant(&m), det_brute(&m));
            }
        }
    }
}
