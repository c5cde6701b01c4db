//! Exact scalars and the row-reduction kernel shared by every exact engine.

pub mod field;
pub mod subspace;

pub use field::{rat, rational_mod_p, Field, PrimeField, Rational, Rationals};
pub use subspace::{nullspace, quotient_dim, rank, span_reduce, Subspace};
