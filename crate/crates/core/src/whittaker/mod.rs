//! Ordinary and spherical sections of principal series of GL_n (n <= 3),
//! exact Whittaker values by finite lattice sums, U_p eigenvalues, the
//! level-l pairing, the GL(3) x GL(2) zeta closed form, essential-vector
//! data with the modified adjoint factor, and the rank-one splitting and
//! functional-equation checks.
//!
//! All values are SymbolField elements: Laurent data in the character
//! symbols and Q with cyclotomic coefficients. Lattice sums derive their
//! per-coordinate truncation levels from the section's exact right
//! invariance, so the finite sum equals the integral.

pub mod bline;
pub mod pairing;
pub mod sections;

pub use pairing::{ord_pairing_closed, ord_pairing_oracle_rank2};
pub use sections::{
    ord_section_eval, spherical_section_eval, up_eigenvalue, whittaker_value,
    whittaker_value_auto, LatticeOptions, PrincipalSeries, SectionKind,
};
