//! Exact-arithmetic kernel: rationals, cyclotomics, multivariate Laurent
//! polynomials and rational functions in named formal symbols, and
//! closed-form geometric summation.

pub mod cyclo;
pub mod poly;
pub mod ratfun;

pub use cyclo::Cyclo;
pub use poly::{Poly, SymbolId, SymbolRegistry, Q_SYMBOL};
pub use ratfun::{geometric_sum, ratfun_eq, zeta_f, SumRange, SymbolField};
