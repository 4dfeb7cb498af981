//! Exact symbolic algebra for the formal super-disk of type (2n|a,b): the
//! graded polynomial algebra, its Poisson superalgebra structure, the
//! Moyal-Weyl-Clifford star product, presentation-based Weyl/Clifford
//! algebras with normal ordering, the supergroup Sp(2n|a,b), and the affine
//! jet/flatness machinery. All coefficients are arbitrary-precision
//! rationals; every identity is checked exactly.

pub mod algebra;
pub mod check;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod poisson;
pub mod sample;
pub mod star;
pub mod symplectic;
pub mod weyl;

pub use algebra::{
    Coeff, Monomial, Parity, Signature, SuperPolynomial, TruncationPolicy, VarKind, Variable,
};
pub use error::{Error, Result};
pub use poisson::PoissonContext;
pub use star::StarContext;
