//! Exact scalar, polynomial, rational-function, matrix and integer-lattice
//! arithmetic. Everything is over the rationals; there is no floating point
//! anywhere in the crate.

pub mod lattice;
pub mod matrix;
pub mod param;
pub mod poly;
pub mod rat;
pub mod ratfun;

pub use lattice::{factor_rational, lattice_min_multiple, ExponentVector};
pub use matrix::Matrix;
pub use param::{ParamExp, ParamScalar};
pub use poly::Poly;
pub use rat::{parse_rat, rat, rat_int, rat_to_string, Rat};
pub use ratfun::{PmFactored, RatFun};
