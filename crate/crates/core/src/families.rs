//! Closed-form recurrence coefficients for the classical families, and the
//! auxiliary identities that come with the Laguerre (first kind) and
//! Jacobi-Piñeiro formulas.
//!
//! The identities return their right-hand sides only; comparing against
//! coefficient sums is left to [`crate::verify`].

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Polynomial, Rational};
use crate::lattice::MultiIndex;
use crate::moments::FamilySpec;
use crate::mop::NnCoefficients;

fn int(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// `q_r(x) = prod_j (x - alpha_j)` and `Q_{r,n}(x) = prod_j (x - n_j - alpha_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxPolynomials {
    pub q: Polynomial,
    pub big_q: Polynomial,
    alpha: Vec<Rational>,
    n: MultiIndex,
}

impl AuxPolynomials {
    pub fn new(alpha: &[Rational], n: &MultiIndex) -> Result<Self> {
        if alpha.len() != n.r() {
            return Err(Error::DimensionMismatch(format!(
                "{} alpha parameters for index {n}",
                alpha.len()
            )));
        }
        let shifted: Vec<Rational> = alpha.iter().zip(n.entries()).map(|(a, &nj)| a + int(nj)).collect();
        Ok(AuxPolynomials {
            q: Polynomial::from_roots(alpha),
            big_q: Polynomial::from_roots(&shifted),
            alpha: alpha.to_vec(),
            n: n.clone(),
        })
    }

    /// The roots `n_j + alpha_j` of `Q_{r,n}`.
    pub fn shifted_root(&self, pos: usize) -> Rational {
        &self.alpha[pos] + int(self.n.entries()[pos])
    }

    /// `q_r / Q_{r,n}` at `z`; the factors with `n_j = 0` cancel identically
    /// and are skipped.
    pub fn ratio(&self, z: &Rational) -> Result<Rational> {
        let mut acc = Rational::one();
        for (a, &nj) in self.alpha.iter().zip(self.n.entries()) {
            if nj == 0 {
                continue;
            }
            let den = z - a - int(nj);
            if den.is_zero() {
                return Err(Error::EvaluationPole(format!(
                    "z = {z} is a root of Q_(r,n) for n = {}",
                    self.n
                )));
            }
            acc *= (z - a) / den;
        }
        Ok(acc)
    }

    /// `q_r(n_j + alpha_j) / Q'_{r,n}(n_j + alpha_j)`: the residue of
    /// `q_r / Q_{r,n}` at its `j`-th pole.
    pub fn residue(&self, pos: usize) -> Result<Rational> {
        let z = self.shifted_root(pos);
        let dq = self.big_q.derivative().eval(&z);
        if dq.is_zero() {
            return Err(Error::EvaluationPole(format!(
                "Q_(r,n) has a repeated root at {z}"
            )));
        }
        Ok(self.q.eval(&z) / dq)
    }
}

/// Product of `num` over product of `den` after cancelling equal factors, so
/// that removable `0/0` pairs do not raise a pole.
fn cancelled_ratio(mut num: Vec<Rational>, mut den: Vec<Rational>, what: &str) -> Result<Rational> {
    let mut i = 0;
    while i < den.len() {
        if let Some(k) = num.iter().position(|v| *v == den[i]) {
            num.swap_remove(k);
            den.swap_remove(i);
        } else {
            i += 1;
        }
    }
    let d = den.iter().fold(Rational::one(), |acc, v| acc * v);
    if d.is_zero() {
        return Err(Error::EvaluationPole(what.to_string()));
    }
    Ok(num.iter().fold(Rational::one(), |acc, v| acc * v) / d)
}

fn alpha_product(alpha: &[Rational], n: &MultiIndex, j: usize) -> (Vec<Rational>, Vec<Rational>) {
    let e = n.entries();
    let mut num = Vec::new();
    let mut den = Vec::new();
    for i in 0..alpha.len() {
        if i == j {
            continue;
        }
        num.push(int(e[j]) + &alpha[j] - &alpha[i]);
        den.push(int(e[j]) - int(e[i]) + &alpha[j] - &alpha[i]);
    }
    (num, den)
}

/// Closed-form `a_{n,j}`, `b_{n,j}` for a built-in family.
pub fn closed_form_coefficients(spec: &FamilySpec, n: &MultiIndex) -> Result<NnCoefficients> {
    spec.validate()?;
    if spec.r() != n.r() {
        return Err(Error::DimensionMismatch(format!(
            "index {n} for a family with r = {}",
            spec.r()
        )));
    }
    let e = n.entries();
    let size = int(n.size());
    match spec {
        FamilySpec::Hermite { c } => Ok(NnCoefficients {
            a: e.iter().map(|&nj| int(nj) * half()).collect(),
            b: c.iter().map(|cj| cj * half()).collect(),
        }),
        FamilySpec::Charlier { a } => Ok(NnCoefficients {
            a: e.iter().zip(a).map(|(&nj, aj)| int(nj) * aj).collect(),
            b: a.iter().map(|aj| &size + aj).collect(),
        }),
        FamilySpec::Laguerre1 { alpha } => {
            let mut a = Vec::with_capacity(e.len());
            for j in 0..e.len() {
                if e[j] == 0 {
                    a.push(Rational::zero());
                    continue;
                }
                let (mut num, den) = alpha_product(alpha, n, j);
                num.push(int(e[j]));
                num.push(int(e[j]) + &alpha[j]);
                a.push(cancelled_ratio(num, den, "laguerre1 a-coefficient")?);
            }
            let b = (0..e.len())
                .map(|k| &size + int(e[k]) + &alpha[k] + Rational::one())
                .collect();
            Ok(NnCoefficients { a, b })
        }
        FamilySpec::Laguerre2 { alpha, c } => {
            let one = Rational::one();
            let tail = e
                .iter()
                .zip(c)
                .fold(Rational::zero(), |acc, (&nj, cj)| acc + int(nj) / cj);
            Ok(NnCoefficients {
                a: e
                    .iter()
                    .zip(c)
                    .map(|(&nj, cj)| (&size + alpha) * int(nj) / (cj * cj))
                    .collect(),
                b: c.iter().map(|ck| (&size + alpha + &one) / ck + &tail).collect(),
            })
        }
        FamilySpec::JacobiPineiro { alpha, beta } => {
            let a = (0..e.len())
                .map(|j| jp_a(alpha, beta, n, j))
                .collect::<Result<Vec<_>>>()?;
            let delta = jp_delta(spec, n)?;
            let b = n
                .directions()
                .map(|k| Ok(&delta - jp_delta(spec, &n.step_up(k))?))
                .collect::<Result<Vec<_>>>()?;
            Ok(NnCoefficients { a, b })
        }
        FamilySpec::Custom(_) => Err(Error::UnsupportedFamily("custom".into())),
    }
}

fn jp_a(alpha: &[Rational], beta: &Rational, n: &MultiIndex, j: usize) -> Result<Rational> {
    let e = n.entries();
    if e[j] == 0 {
        return Ok(Rational::zero());
    }
    let size = int(n.size());
    let one = Rational::one();
    let (mut num, mut den) = alpha_product(alpha, n, j);
    for i in 0..alpha.len() {
        num.push(&size + &alpha[i] + beta);
        den.push(&size + int(e[i]) + &alpha[i] + beta);
    }
    let top = &size + int(e[j]) + &alpha[j] + beta;
    num.push(int(e[j]));
    num.push(int(e[j]) + &alpha[j]);
    num.push(&size + beta);
    den.push(&top + &one);
    den.push(top.clone());
    den.push(&top - &one);
    cancelled_ratio(num, den, "jacobi-pineiro a-coefficient")
}

fn jp_params(spec: &FamilySpec) -> Result<(&[Rational], &Rational)> {
    match spec {
        FamilySpec::JacobiPineiro { alpha, beta } => Ok((alpha, beta)),
        other => Err(Error::InvalidParameters(format!(
            "expected a jacobi-pineiro family, got {}",
            other.family()
        ))),
    }
}

/// Subleading coefficient of the Jacobi-Piñeiro polynomial:
/// `delta_n = -(|n| + beta) q_r(-|n|-beta) / Q_{r,n}(-|n|-beta) + beta`.
pub fn jp_delta(spec: &FamilySpec, n: &MultiIndex) -> Result<Rational> {
    spec.validate()?;
    let (alpha, beta) = jp_params(spec)?;
    let aux = AuxPolynomials::new(alpha, n)?;
    let s = int(n.size()) + beta;
    Ok(-(&s) * aux.ratio(&-&s)? + beta)
}

/// The same `delta_n` from the partial-fraction expansion of `q_r / Q_{r,n}`:
/// `-sum_j (n_j + alpha_j) res_j / (|n| + n_j + alpha_j + beta)`.
pub fn jp_delta_partial_fraction(spec: &FamilySpec, n: &MultiIndex) -> Result<Rational> {
    spec.validate()?;
    let (alpha, beta) = jp_params(spec)?;
    let aux = AuxPolynomials::new(alpha, n)?;
    let size = int(n.size());
    let mut acc = Rational::zero();
    for (j, &nj) in n.entries().iter().enumerate() {
        if nj == 0 {
            continue;
        }
        let z = aux.shifted_root(j);
        let den = &size + &z + beta;
        if den.is_zero() {
            return Err(Error::EvaluationPole(format!("|n| + n_{} + alpha_{} + beta = 0", j + 1, j + 1)));
        }
        acc -= &z * aux.residue(j)? / den;
    }
    Ok(acc)
}

/// `sum_j q_r(n_j + alpha_j) / Q'_{r,n}(n_j + alpha_j)`, which equals `|n|`.
pub fn residue_sum(alpha: &[Rational], n: &MultiIndex) -> Result<Rational> {
    let aux = AuxPolynomials::new(alpha, n)?;
    (0..n.r()).try_fold(Rational::zero(), |acc, j| Ok(acc + aux.residue(j)?))
}

/// Right-hand side of the Laguerre (first kind) sum rule
/// `sum_j a_{n,j} = sum_j n_j alpha_j + (|n|^2 + sum_j n_j^2) / 2`.
pub fn laguerre1_sum_identity(spec: &FamilySpec, n: &MultiIndex) -> Result<Rational> {
    spec.validate()?;
    let FamilySpec::Laguerre1 { alpha } = spec else {
        return Err(Error::InvalidParameters(format!(
            "expected a laguerre1 family, got {}",
            spec.family()
        )));
    };
    if alpha.len() != n.r() {
        return Err(Error::DimensionMismatch(format!("{} alphas for index {n}", alpha.len())));
    }
    let e = n.entries();
    let linear = e.iter().zip(alpha).fold(Rational::zero(), |acc, (&nj, a)| acc + int(nj) * a);
    let size = n.size();
    let squares: usize = e.iter().map(|&nj| nj * nj).sum();
    Ok(linear + int(size * size + squares) * half())
}

/// Closed form of `sum_j a_{n,j}` for Jacobi-Piñeiro:
/// `s R(-s) * (-1/2) [g(-s+1) - 2 g(-s) + g(-s-1)]` with `s = |n| + beta`,
/// `R = q_r / Q_{r,n}` and `g(z) = z R(z)`.
pub fn jp_sum_identity(spec: &FamilySpec, n: &MultiIndex) -> Result<Rational> {
    spec.validate()?;
    let (alpha, beta) = jp_params(spec)?;
    let aux = AuxPolynomials::new(alpha, n)?;
    let one = Rational::one();
    let s = int(n.size()) + beta;
    let z0 = -&s;
    let g = |z: &Rational| -> Result<Rational> { Ok(z * aux.ratio(z)?) };
    let second_difference = g(&(&z0 + &one))? - int(2) * g(&z0)? + g(&(&z0 - &one))?;
    Ok(&s * aux.ratio(&z0)? * (-half()) * second_difference)
}
