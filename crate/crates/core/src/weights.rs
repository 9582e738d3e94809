//! Reduced weight functions in double precision, for numeric kernel values.
//!
//! Each weight is divided by the same constant as its moments, so it has
//! unit mass. Charlier weights are point masses at the non-negative integers.

use statrs::function::beta::ln_beta;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::exact::rational_to_f64;
use crate::moments::FamilySpec;

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Hermite { c: Vec<f64> },
    Charlier { a: Vec<f64> },
    Laguerre1 { alpha: Vec<f64> },
    Laguerre2 { alpha: f64, c: Vec<f64> },
    JacobiPineiro { alpha: Vec<f64>, beta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightEvaluator {
    kind: Kind,
}

fn floats(v: &[crate::exact::Rational]) -> Vec<f64> {
    v.iter().map(rational_to_f64).collect()
}

fn outside(family: &str, y: f64) -> Error {
    Error::DomainError(format!("y = {y} is outside the support of the {family} weight"))
}

/// `x^p` in log form, with `0^0 = 1` handled by the caller.
fn log_power(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        p * x.ln()
    }
}

impl WeightEvaluator {
    pub fn new(spec: &FamilySpec) -> Result<Self> {
        spec.validate()?;
        let kind = match spec {
            FamilySpec::Hermite { c } => Kind::Hermite { c: floats(c) },
            FamilySpec::Charlier { a } => Kind::Charlier { a: floats(a) },
            FamilySpec::Laguerre1 { alpha } => Kind::Laguerre1 { alpha: floats(alpha) },
            FamilySpec::Laguerre2 { alpha, c } => Kind::Laguerre2 {
                alpha: rational_to_f64(alpha),
                c: floats(c),
            },
            FamilySpec::JacobiPineiro { alpha, beta } => Kind::JacobiPineiro {
                alpha: floats(alpha),
                beta: rational_to_f64(beta),
            },
            FamilySpec::Custom(_) => return Err(Error::UnsupportedFamily("custom".into())),
        };
        Ok(WeightEvaluator { kind })
    }

    pub fn r(&self) -> usize {
        match &self.kind {
            Kind::Hermite { c } => c.len(),
            Kind::Charlier { a } => a.len(),
            Kind::Laguerre1 { alpha } => alpha.len(),
            Kind::Laguerre2 { c, .. } => c.len(),
            Kind::JacobiPineiro { alpha, .. } => alpha.len(),
        }
    }

    /// Reduced weight `w_j(y)` for the measure at position `pos`.
    pub fn eval(&self, pos: usize, y: f64) -> Result<f64> {
        if !y.is_finite() {
            return Err(Error::DomainError(format!("y = {y} is not finite")));
        }
        match &self.kind {
            Kind::Hermite { c } => {
                let c = c[pos];
                // e^{-y^2 + c y} / (sqrt(pi) e^{c^2/4}) = e^{-(y - c/2)^2} / sqrt(pi)
                let t = y - c / 2.0;
                Ok((-t * t).exp() / std::f64::consts::PI.sqrt())
            }
            Kind::Charlier { a } => {
                if y < 0.0 || y.fract() != 0.0 {
                    return Err(outside("charlier", y));
                }
                let a = a[pos];
                Ok((-a + y * a.ln() - ln_gamma(y + 1.0)).exp())
            }
            Kind::Laguerre1 { alpha } => {
                let alpha = alpha[pos];
                if y < 0.0 || (y == 0.0 && alpha < 0.0) {
                    return Err(outside("laguerre1", y));
                }
                if y == 0.0 {
                    return Ok(if alpha == 0.0 { 1.0 } else { 0.0 });
                }
                Ok((log_power(y, alpha) - y - ln_gamma(alpha + 1.0)).exp())
            }
            Kind::Laguerre2 { alpha, c } => {
                let (alpha, c) = (*alpha, c[pos]);
                if y < 0.0 || (y == 0.0 && alpha < 0.0) {
                    return Err(outside("laguerre2", y));
                }
                if y == 0.0 {
                    return Ok(if alpha == 0.0 { c } else { 0.0 });
                }
                Ok((log_power(y, alpha) - c * y + (alpha + 1.0) * c.ln() - ln_gamma(alpha + 1.0)).exp())
            }
            Kind::JacobiPineiro { alpha, beta } => {
                let (alpha, beta) = (alpha[pos], *beta);
                let edge = (y == 0.0 && alpha < 0.0) || (y == 1.0 && beta < 0.0);
                if !(0.0..=1.0).contains(&y) || edge {
                    return Err(outside("jacobi-pineiro", y));
                }
                let norm = ln_beta(alpha + 1.0, beta + 1.0);
                let at_edge = |p: f64| if p == 0.0 { 1.0 } else { 0.0 };
                if y == 0.0 {
                    return Ok(at_edge(alpha) / norm.exp());
                }
                if y == 1.0 {
                    return Ok(at_edge(beta) / norm.exp());
                }
                Ok((log_power(y, alpha) + log_power(1.0 - y, beta) - norm).exp())
            }
        }
    }

    pub fn eval_all(&self, y: f64) -> Result<Vec<f64>> {
        (0..self.r()).map(|pos| self.eval(pos, y)).collect()
    }
}
