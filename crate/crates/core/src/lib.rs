//! Holomorphic Cliffordian function theory over R_{0,2m+1}.
//!
//! A function `f` of the paravector variable `x = x_0 + Σ x_i e_i` is
//! holomorphic Cliffordian when `D Δ^m f = 0`, with `D = Σ e_i ∂_i` acting
//! from the left. The crate provides
//!
//! * exact Clifford arithmetic ([`algebra`]) over rationals or floats,
//! * exact differential operators on multivector-valued polynomials and
//!   rational functions ([`calculus`]),
//! * the polynomial solutions `P_α` and singular solutions `S_β`
//!   ([`solutions`]),
//! * numerical reproduction of the Cauchy-type integral representation on
//!   balls ([`cauchy`]),
//! * Taylor, Laurent and Neumann expansions ([`series`]),
//! * the Cliffordian Weierstrass zeta function with certified truncation
//!   ([`elliptic`]).

pub mod acceptance;
pub mod algebra;
pub mod calculus;
pub mod cli;
pub mod cauchy;
pub mod elliptic;
pub mod error;
pub mod linalg;
pub mod sampling;
mod numeric;
pub mod scalar;
pub mod series;
pub mod solutions;

pub use algebra::{blade_product, Blade, Multivector, Paravector};
pub use calculus::{MvPolynomial, RationalMvFunction};
pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
