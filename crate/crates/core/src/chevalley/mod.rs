//! Chevalley basis, brackets, invariant form and subalgebra computations.

mod algebra;
mod constants;
mod subalgebra;

pub use algebra::{Algebra, BasisSymbol, Component, LieElement};
pub(crate) use algebra::rat_scalar;
pub use constants::StructureConstants;
pub use subalgebra::Subalgebra;
