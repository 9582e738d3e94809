//! Christoffel-Darboux identity along monotone lattice paths.
//!
//! With `Q_m(y) = sum_j A_{m,j}(y) w_j(y)` and the weights linearly
//! independent over polynomials, the identity splits into one bivariate
//! polynomial identity per weight `j`:
//!
//! ```text
//! (x - y) sum_i P_{n_i}(x) A_{n_{i+1},j}(y)
//!     = P_n(x) A_{n,j}(y) - sum_k a_{n,k} P_{n-e_k}(x) A_{n+e_k,j}(y)
//! ```
//!
//! Everything here uses reduced measures `mu_j / m_j` with `m_j` the mass of
//! `mu_j`. Against the unreduced measures, `P_n` and `a_{n,k}` are unchanged
//! and `A_{n,j}` becomes `A_{n,j} / m_j`. The products `A_{n,j} w_j` are the
//! same in both systems, so the kernel values agree.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, BivariatePolynomial, Rational};
use crate::lattice::{LatticePath, MultiIndex};
use crate::mop::MomentOracle;
use crate::weights::WeightEvaluator;

/// Both sides of the identity for one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdSides {
    pub lhs: BivariatePolynomial,
    pub rhs: BivariatePolynomial,
}

fn check_path(n: &MultiIndex, path: &LatticePath) -> Result<()> {
    if path.endpoint() != *n {
        return Err(Error::Precondition(format!(
            "path ends at {} instead of {n}",
            path.endpoint()
        )));
    }
    Ok(())
}

/// `sum_i P_{n_i}(x) A_{n_{i+1},j}(y)` for every weight `j`.
pub fn cd_kernel_sums(oracle: &MomentOracle<'_>, n: &MultiIndex, path: &LatticePath) -> Result<Vec<BivariatePolynomial>> {
    check_path(n, path)?;
    let mut sums = vec![BivariatePolynomial::zero(); n.r()];
    let nodes = path.nodes();
    for pair in nodes.windows(2) {
        let p = oracle.type2(&pair[0])?;
        let q = oracle.type1(&pair[1])?;
        for (j, s) in sums.iter_mut().enumerate() {
            *s = &*s + &BivariatePolynomial::outer(p.as_poly(), q.component(j));
        }
    }
    Ok(sums)
}

/// Right-hand sides of the identity; they do not depend on a path.
pub fn cd_rhs(oracle: &MomentOracle<'_>, n: &MultiIndex) -> Result<Vec<BivariatePolynomial>> {
    let pn = oracle.type2(n)?;
    let qn = oracle.type1_or_zero(n)?;
    let c = oracle.coefficients(n)?;
    let mut out: Vec<BivariatePolynomial> = (0..n.r())
        .map(|j| BivariatePolynomial::outer(pn.as_poly(), qn.component(j)))
        .collect();
    for k in n.directions() {
        let Ok(low) = n.step_down(k) else { continue };
        let a = &c.a[k.position()];
        if a.is_zero() {
            continue;
        }
        let p = oracle.type2(&low)?;
        let q = oracle.type1(&n.step_up(k))?;
        for (j, rhs) in out.iter_mut().enumerate() {
            let term = BivariatePolynomial::outer(p.as_poly(), q.component(j)).scale(a);
            *rhs = &*rhs - &term;
        }
    }
    Ok(out)
}

/// Both sides of the identity for each weight.
pub fn cd_sides(oracle: &MomentOracle<'_>, n: &MultiIndex, path: &LatticePath) -> Result<Vec<CdSides>> {
    let sums = cd_kernel_sums(oracle, n, path)?;
    let rhs = cd_rhs(oracle, n)?;
    Ok(sums
        .into_iter()
        .zip(rhs)
        .map(|(s, rhs)| CdSides {
            lhs: s.mul_x_minus_y(),
            rhs,
        })
        .collect())
}

/// True when every per-weight identity holds exactly.
pub fn cd_identity_check(oracle: &MomentOracle<'_>, n: &MultiIndex, path: &LatticePath) -> Result<bool> {
    Ok(cd_sides(oracle, n, path)?.iter().all(|s| s.lhs == s.rhs))
}

fn exact(v: f64) -> Result<Rational> {
    Rational::from_float(v).ok_or_else(|| Error::DomainError(format!("{v} is not finite")))
}

/// Kernel `sum_i P_{n_i}(x) Q_{n_{i+1}}(y)` in double precision.
///
/// The polynomial part is evaluated exactly at the (exactly represented)
/// float arguments: from the path sum when `x = y`, otherwise as the
/// right-hand side divided by `x - y`. Weights are applied last.
pub fn cd_kernel_eval(
    oracle: &MomentOracle<'_>,
    weights: &WeightEvaluator,
    n: &MultiIndex,
    path: &LatticePath,
    x: f64,
    y: f64,
) -> Result<f64> {
    check_path(n, path)?;
    if weights.r() != n.r() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for index {n}",
            weights.r()
        )));
    }
    let w = weights.eval_all(y)?;
    let (xr, yr) = (exact(x)?, exact(y)?);
    let parts: Vec<Rational> = if x == y {
        cd_kernel_sums(oracle, n, path)?
            .iter()
            .map(|s| s.eval(&xr, &yr))
            .collect()
    } else {
        let d = &xr - &yr;
        cd_rhs(oracle, n)?.iter().map(|s| s.eval(&xr, &yr) / &d).collect()
    };
    Ok(parts.iter().zip(&w).map(|(p, wj)| rational_to_f64(p) * wj).sum())
}
