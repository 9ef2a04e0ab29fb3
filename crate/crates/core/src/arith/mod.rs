mod linalg;
mod matrix;
mod poly;
mod ring;
mod scalar;

pub use linalg::{nullspace, rank, rref, solve_linear, Echelon, LinearSystem};
pub use matrix::{mat_mul, DenseMatrix};
pub use poly::{charpoly, Polynomial, MAX_ROOT_SEARCH_MODULUS};
pub use ring::{is_prime, RingSpec, MAX_MODULUS};
pub use scalar::Scalar;
