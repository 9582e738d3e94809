use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Polynomial, Rational};

/// Sparse polynomial in `(x, y)` keyed by `(deg_x, deg_y)`; zero coefficients
/// are never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(usize, usize), Rational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), Rational)>) -> Self {
        let mut out = Self::zero();
        for (k, v) in terms {
            out.add_term(k, v);
        }
        out
    }

    /// `p(x) * q(y)`
    pub fn outer(p: &Polynomial, q: &Polynomial) -> Self {
        let mut out = Self::zero();
        for (i, a) in p.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in q.coeffs().iter().enumerate() {
                out.add_term((i, j), a * b);
            }
        }
        out
    }

    /// `x - y`
    pub fn x_minus_y() -> Self {
        Self::from_terms([((1, 0), Rational::one()), ((0, 1), -Rational::one())])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, dx: usize, dy: usize) -> Rational {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * s)))
    }

    /// `(x - y) * self`
    pub fn mul_x_minus_y(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term((i + 1, j), v.clone());
            out.add_term((i, j + 1), -v);
        }
        out
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), v) in &self.terms {
            acc += v * num_traits::pow(x.clone(), i) * num_traits::pow(y.clone(), j);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), v)| super::rational_to_f64(v) * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }

    fn add_term(&mut self, key: (usize, usize), v: Rational) {
        if v.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += v;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }
}

/// Exact coefficientwise comparison.
pub fn bipoly_equal(p: &BivariatePolynomial, q: &BivariatePolynomial) -> bool {
    p == q
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, -v);
        }
        out
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), v)| format!("({v})x^{i}y^{j}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn x() -> BivariatePolynomial {
        BivariatePolynomial::from_terms([((1, 0), rat_int(1))])
    }

    fn y() -> BivariatePolynomial {
        BivariatePolynomial::from_terms([((0, 1), rat_int(1))])
    }

    #[test]
    fn equality_examples() {
        assert!(bipoly_equal(&(&x() * &y()), &(&y() * &x())));
        assert!(bipoly_equal(&(&x() - &y()), &-&(&y() - &x())));
        let with_zero = BivariatePolynomial::from_terms([((1, 0), rat_int(1)), ((0, 1), rat_int(0))]);
        assert!(bipoly_equal(&x(), &with_zero));
        assert!(!bipoly_equal(&x(), &y()));
    }

    #[test]
    fn x_minus_y_product() {
        let p = Polynomial::new(vec![rat_int(1), rat_int(2)]);
        let q = Polynomial::new(vec![rat(1, 2)]);
        let outer = BivariatePolynomial::outer(&p, &q);
        let direct = &BivariatePolynomial::x_minus_y() * &outer;
        assert_eq!(outer.mul_x_minus_y(), direct);
        assert_eq!(direct.degree_x(), Some(2));
        assert_eq!(direct.degree_y(), Some(1));
        assert!((direct.eval_f64(2.0, 1.0) - 2.5).abs() < 1e-15);
        assert_eq!(direct.eval(&rat_int(2), &rat_int(1)), rat(5, 2));
    }

    #[test]
    fn cancellation_prunes() {
        let p = &(&x() + &y()) - &y();
        assert_eq!(p, x());
        assert!((&p - &p).is_zero());
    }
}
