//! Integer partitions, their diagrams and the statistics used throughout:
//! conjugation, multiplicities, even/odd part splits, arm/leg lengths,
//! horizontal and vertical strips, dominance order and bounded enumeration.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A square `(i, j)` of a Young diagram, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        Cell { row, col }
    }
}

/// A partition: weakly decreasing sequence of positive integers.
///
/// Values are canonical on construction: parts are sorted descending and
/// zeros stripped, so the empty sequence is the unique partition of 0
/// (printed as `0`). Partitions are immutable value objects and the index
/// key of every symmetric-function expansion in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Canonicalize `parts`: sort descending, strip zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The zero partition.
    pub fn zero() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `lambda_i`, 1-based; 0 beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    /// Weight `|lambda|`.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Length `l(lambda)`: number of (nonzero) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// First (largest) part; 0 for the zero partition.
    pub fn first(&self) -> u32 {
        self.part(1)
    }

    /// `n(lambda) = sum_i (i-1) * lambda_i`.
    pub fn n_stat(&self) -> u32 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u32 * p)
            .sum()
    }

    /// The conjugate partition: `lambda'_i = #{ j : lambda_j >= i }`.
    pub fn conjugate(&self) -> Partition {
        let mut cols = Vec::new();
        let max = self.first();
        for i in 1..=max {
            cols.push(self.parts.iter().filter(|&&p| p >= i).count() as u32);
        }
        Partition { parts: cols }
    }

    /// Multiplicity `m_i(lambda)` of the part `i >= 1`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        debug_assert!(i >= 1);
        self.parts.iter().filter(|&&p| p == i).count() as u32
    }

    /// Split into the sub-partitions of even and odd parts.
    pub fn even_odd_split(&self) -> (Partition, Partition) {
        let even: Vec<u32> = self.parts.iter().copied().filter(|p| p % 2 == 0).collect();
        let odd: Vec<u32> = self.parts.iter().copied().filter(|p| p % 2 == 1).collect();
        (Partition { parts: even }, Partition { parts: odd })
    }

    /// All parts even?
    pub fn is_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    /// Arm length, arm colength, leg length, leg colength of a cell.
    pub fn arm_leg(&self, s: Cell) -> Result<(u32, u32, u32, u32)> {
        if s.row < 1 || s.col < 1 || s.col > self.part(s.row as usize) {
            return Err(Error::CellOutsideDiagram(s.row, s.col));
        }
        let conj = self.conjugate();
        let arm = self.part(s.row as usize) - s.col;
        let arm_co = s.col - 1;
        let leg = conj.part(s.col as usize) - s.row;
        let leg_co = s.row - 1;
        Ok((arm, arm_co, leg, leg_co))
    }

    /// Iterator over the cells of the diagram, row by row.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| Cell::new(i as u32 + 1, j)))
    }

    /// Containment of diagrams: `mu inside self`.
    pub fn contains(&self, mu: &Partition) -> bool {
        (1..=mu.len()).all(|i| self.part(i) >= mu.part(i))
    }

    /// `lambda - mu` has at most one cell in each column.
    pub fn is_horizontal_strip(&self, mu: &Partition) -> bool {
        if !self.contains(mu) {
            return false;
        }
        let lc = self.conjugate();
        let mc = mu.conjugate();
        (1..=lc.len()).all(|i| lc.part(i) - mc.part(i) <= 1)
    }

    /// `lambda - mu` has at most one cell in each row.
    pub fn is_vertical_strip(&self, mu: &Partition) -> bool {
        if !self.contains(mu) {
            return false;
        }
        (1..=self.len()).all(|i| self.part(i) - mu.part(i) <= 1)
    }

    /// Dominance order `mu <= lambda` (requires equal weights).
    pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool> {
        if mu.weight() != lambda.weight() {
            return Err(Error::WeightMismatch(mu.weight(), lambda.weight()));
        }
        let k = mu.len().max(lambda.len());
        let mut sm = 0u64;
        let mut sl = 0u64;
        for i in 1..=k {
            sm += mu.part(i) as u64;
            sl += lambda.part(i) as u64;
            if sm > sl {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All sub-partitions `mu inside self` (diagram containment).
    pub fn sub_partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = Vec::new();
        fn rec(lambda: &[u32], i: usize, prev: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i == lambda.len() {
                out.push(Partition::new(cur.clone()));
                return;
            }
            let hi = lambda[i].min(prev);
            for v in (0..=hi).rev() {
                cur.push(v);
                rec(lambda, i + 1, v, cur, out);
                cur.pop();
            }
        }
        rec(&self.parts, 0, u32::MAX, &mut cur, &mut out);
        out.sort_by(|a, b| a.cmp(b));
        out.dedup();
        out
    }
}

/// Enumeration / map-key order: weight ascending, then reverse
/// lexicographic within a weight (so `(2)` comes before `(1,1)`).
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the CLI text format: comma-separated parts, `0` for the
    /// zero partition, e.g. `4,3,3,2,1,1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Partition::zero());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let v: u32 = tok
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParams(format!("bad partition part {tok:?}")))?;
            if v == 0 {
                return Err(Error::InvalidParams("partition parts must be positive".into()));
            }
            parts.push(v);
        }
        Ok(Partition::new(parts))
    }
}

/// All partitions with `|lambda| <= max_weight`, `l(lambda) <= max_length`
/// and `lambda_1 <= max_part` (`None` = unbounded), each exactly once, in
/// (weight ascending, reverse-lexicographic) order.
pub fn enumerate_partitions(
    max_weight: u32,
    max_length: usize,
    max_part: Option<u32>,
) -> Vec<Partition> {
    let mut out = Vec::new();
    for w in 0..=max_weight {
        let cap = max_part.unwrap_or(w).min(w);
        let mut cur = Vec::new();
        gen_of_weight(w, cap, max_length, &mut cur, &mut out);
    }
    out
}

/// All distinct rearrangements of `values` (a multiset), each exactly once.
pub fn distinct_rearrangements(values: &[u32]) -> Vec<Vec<u32>> {
    let mut pool: Vec<(u32, usize)> = Vec::new();
    for &v in values {
        match pool.iter_mut().find(|(w, _)| *w == v) {
            Some((_, c)) => *c += 1,
            None => pool.push((v, 1)),
        }
    }
    pool.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(values.len());
    fn rec(pool: &mut Vec<(u32, usize)>, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 0..pool.len() {
            if pool[i].1 == 0 {
                continue;
            }
            pool[i].1 -= 1;
            cur.push(pool[i].0);
            rec(pool, len, cur, out);
            cur.pop();
            pool[i].1 += 1;
        }
    }
    rec(&mut pool, values.len(), &mut cur, &mut out);
    out
}

fn gen_of_weight(rem: u32, max_part: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    if max_len == 0 || max_part == 0 {
        return;
    }
    for p in (1..=max_part.min(rem)).rev() {
        cur.push(p);
        gen_of_weight(rem - p, p, max_len - 1, cur, out);
        cur.pop();
    }
}
