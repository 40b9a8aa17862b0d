//! Exact computer algebra for Hall-Littlewood and Macdonald symmetric
//! functions, Rogers-Szego polynomials, partition statistics and the
//! verification of the symmetric-function / q-series identities built
//! from them.
//!
//! All arithmetic is exact: sparse multivariate polynomials over
//! arbitrary-precision integers, truncated power series with the cap
//! carried on the value, and rational functions compared by
//! cross-multiplication. No floating point anywhere.

pub mod error;
pub mod partition;
pub mod poly;
pub mod qseries;
pub mod symfunc;
pub mod hall;
pub mod macdonald;
pub mod plethysm;
pub mod identity;

pub use error::Error;
pub use partition::{Cell, Partition};
pub use poly::{MPoly, Mono, RatFn, TruncSpec, VarId, VarTable};
