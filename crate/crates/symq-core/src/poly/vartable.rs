//! Variable tables, exponent vectors and truncation caps.
//!
//! A [`VarTable`] fixes an ordered set of named indeterminates, split into
//! "series" blocks (typically `x1..xn`, whose degrees are truncated) and
//! scalar parameters (`s`, `q`, `a`, `b`, `z`, ...). The parameter `t` is
//! represented as `s^2` everywhere so that half-integer powers of `t`
//! stay polynomial.

use std::cmp::Ordering;
use std::sync::Arc;

use smallvec::SmallVec;

pub type VarId = usize;

/// Ordered, named indeterminates. At most 64 variables (truncation masks
/// are bitsets).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    /// Marks series variables (members of some named block such as `x` or
    /// `y`); parameters are unmarked. Used for rendering and default caps.
    series: Vec<bool>,
}

impl VarTable {
    pub fn builder() -> VarTableBuilder {
        VarTableBuilder::default()
    }

    /// Convenience: `x1..xn` plus the given parameters.
    pub fn with_x(n: usize, params: &[&str]) -> Arc<VarTable> {
        let mut b = VarTable::builder().block("x", n);
        for p in params {
            b = b.param(p);
        }
        b.build()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v]
    }

    pub fn find(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name)
    }

    /// Id of the named variable; panics if absent.
    pub fn var(&self, name: &str) -> VarId {
        self.find(name)
            .unwrap_or_else(|| panic!("no variable named {name:?} in table"))
    }

    pub fn is_series(&self, v: VarId) -> bool {
        self.series[v]
    }

    /// Bitmask of all variables whose name is `prefix` followed by digits
    /// (e.g. `mask("x")` covers `x1..xn`).
    pub fn mask(&self, prefix: &str) -> u64 {
        let mut m = 0u64;
        for (i, n) in self.names.iter().enumerate() {
            if let Some(rest) = n.strip_prefix(prefix) {
                if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                    m |= 1 << i;
                }
            }
        }
        m
    }

    /// Bitmask of a single variable.
    pub fn mask_of(&self, v: VarId) -> u64 {
        1 << v
    }

    /// Ids in a named block, in order: `x1`, `x2`, ...
    pub fn block_vars(&self, prefix: &str) -> Vec<VarId> {
        let mut out = Vec::new();
        for i in 1.. {
            match self.find(&format!("{prefix}{i}")) {
                Some(v) => out.push(v),
                None => break,
            }
        }
        out
    }
}

#[derive(Default)]
pub struct VarTableBuilder {
    names: Vec<String>,
    series: Vec<bool>,
}

impl VarTableBuilder {
    /// Append a series block `prefix1..prefixN`.
    pub fn block(mut self, prefix: &str, n: usize) -> Self {
        for i in 1..=n {
            self.names.push(format!("{prefix}{i}"));
            self.series.push(true);
        }
        self
    }

    /// Append a scalar parameter.
    pub fn param(mut self, name: &str) -> Self {
        self.names.push(name.to_string());
        self.series.push(false);
        self
    }

    pub fn build(self) -> Arc<VarTable> {
        assert!(self.names.len() <= 64, "at most 64 variables per table");
        let mut seen = self.names.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), self.names.len(), "variable names must be unique");
        Arc::new(VarTable {
            names: self.names,
            series: self.series,
        })
    }
}

/// Exponent vector, one entry per table variable, graded-lex ordered.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub SmallVec<[u16; 8]>);

impl Mono {
    pub fn unit(nvars: usize) -> Self {
        Mono(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, v: VarId) -> Self {
        let mut m = Self::unit(nvars);
        m.0[v] = 1;
        m
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Degree restricted to the masked variables.
    pub fn masked_degree(&self, mask: u64) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e as u32)
            .sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.0.len(), other.0.len());
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Mono {
        Mono(self.0.iter().map(|&e| e * k as u16).collect())
    }

    /// Component-wise divisibility.
    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div(&self, other: &Mono) -> Mono {
        debug_assert!(self.divides(other));
        Mono(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Graded lexicographic: total degree first, then exponents left to right
/// (a larger exponent on an earlier variable wins).
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A truncation cap: a set of constraints `deg_mask(m) <= bound`, each over
/// a bitmask of variables. Monomials violating any constraint are dropped.
/// The cap is part of the value; binary operations require equal caps (or
/// one side uncapped).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSpec {
    cons: SmallVec<[(u64, u32); 2]>,
}

impl TruncSpec {
    /// Single constraint: total degree over `mask` at most `bound`.
    pub fn degree_cap(mask: u64, bound: u32) -> Self {
        TruncSpec {
            cons: SmallVec::from_slice(&[(mask, bound)]),
        }
    }

    /// Add a further constraint.
    pub fn and(mut self, mask: u64, bound: u32) -> Self {
        self.cons.push((mask, bound));
        self.cons.sort_unstable();
        self
    }

    pub fn admits(&self, m: &Mono) -> bool {
        self.cons
            .iter()
            .all(|&(mask, bound)| m.masked_degree(mask) <= bound)
    }

    /// True if repeated powers of `m` eventually violate some constraint.
    pub fn caps_powers_of(&self, m: &Mono) -> bool {
        self.cons.iter().any(|&(mask, _)| m.masked_degree(mask) > 0)
    }

    pub fn constraints(&self) -> &[(u64, u32)] {
        &self.cons
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_and_masks() {
        let t = VarTable::builder().block("x", 3).param("s").param("a").build();
        assert_eq!(t.len(), 5);
        assert_eq!(t.name(0), "x1");
        assert_eq!(t.var("s"), 3);
        assert_eq!(t.mask("x"), 0b111);
        assert!(t.is_series(2));
        assert!(!t.is_series(3));
        assert_eq!(t.block_vars("x"), vec![0, 1, 2]);
    }

    #[test]
    fn graded_lex_order() {
        // x1^2*x2 > x1*x2^2 > x1^2 (degree first, then lex)
        let a = Mono(SmallVec::from_slice(&[2, 1]));
        let b = Mono(SmallVec::from_slice(&[1, 2]));
        let c = Mono(SmallVec::from_slice(&[2, 0]));
        assert!(a > b);
        assert!(b > c);
    }

    #[test]
    fn truncation_constraints() {
        let spec = TruncSpec::degree_cap(0b011, 2).and(0b100, 1);
        assert!(spec.admits(&Mono(SmallVec::from_slice(&[1, 1, 1]))));
        assert!(!spec.admits(&Mono(SmallVec::from_slice(&[2, 1, 0]))));
        assert!(!spec.admits(&Mono(SmallVec::from_slice(&[0, 0, 2]))));
        assert!(spec.caps_powers_of(&Mono(SmallVec::from_slice(&[0, 0, 1]))));
        assert!(!spec.caps_powers_of(&Mono(SmallVec::from_slice(&[0, 0, 0]))));
    }
}
