//! Exact scalars, dense rational matrices and polynomials.

mod bipoly;
mod matrix;
mod poly;
mod rational;

pub use bipoly::{bipoly_equal, BivariatePolynomial};
pub use matrix::RationalMatrix;
pub use poly::Polynomial;
pub use rational::{format_rational, parse_rational, rat, rat_int, rational_to_f64, Rational};
