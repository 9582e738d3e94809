//! Exact-arithmetic engine for multiple orthogonal polynomials.
//!
//! Type II polynomials `P_n`, type I vectors `(A_{n,1}, .., A_{n,r})` and the
//! nearest-neighbor recurrence coefficients `a_{n,j}`, `b_{n,j}` are computed
//! from mixed moment matrices over exact rationals. Closed forms for the
//! multiple Hermite, Charlier, Laguerre (both kinds) and Jacobi-Piñeiro
//! families are provided alongside, and the compatibility equations and the
//! Christoffel-Darboux formula are verified as exact polynomial identities.
//!
//! All moments are *reduced*: every measure is rescaled by a positive constant
//! so that its zeroth moment is 1 and all moments are rational. Type II
//! polynomials and recurrence coefficients are invariant under that rescaling;
//! type I vectors are those of the reduced measures.

pub mod cd;
pub mod cli;
pub mod error;
pub mod exact;
pub mod families;
pub mod lattice;
pub mod moments;
pub mod mop;
pub mod recurrence;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use exact::{BivariatePolynomial, Polynomial, Rational, RationalMatrix};
pub use lattice::{Direction, LatticePath, MultiIndex};
pub use moments::{Family, FamilySpec, MomentTable};
pub use mop::{MomentOracle, MonicPolynomial, NnCoefficients, TypeOneVector};
pub use recurrence::CoefficientField;
pub use verify::VerificationReport;
