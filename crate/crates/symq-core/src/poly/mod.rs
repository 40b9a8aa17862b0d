//! Exact sparse multivariate polynomial, truncated-series and rational
//! function arithmetic over arbitrary-precision integers.

mod vartable;
mod mpoly;
mod ratfn;
mod det;

pub use det::determinant;
pub use mpoly::MPoly;
pub use ratfn::RatFn;
pub use vartable::{Mono, TruncSpec, VarId, VarTable, VarTableBuilder};
