//! Unramified `p`-adic arithmetic, cyclic division algebras over unramified
//! fields and standard Dieudonné modules.

mod algebra;
mod carrier;
mod dieudonne;

pub use algebra::{brauer_invariant, CyclicAlgebra, CyclicElement};
pub use carrier::{
    det_leibniz, elementary_divisors, mat_add, mat_eq, mat_identity, mat_inverse, mat_mul, mat_scalar, mat_sigma_pow,
    Coeffs, KsElem, KsMatrix, UnramifiedContext,
};
pub use dieudonne::DieudonneModule;
