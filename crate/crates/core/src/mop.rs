//! Type II polynomials, type I vectors and nearest-neighbor recurrence
//! coefficients computed directly from a moment table.
//!
//! Every integral against `mu_j` is a finite moment sum: a polynomial
//! `sum_k p_k x^k` integrates to `sum_k p_k nu^{(j)}_k`. Nothing here is
//! approximate.

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Polynomial, Rational, RationalMatrix};
use crate::lattice::{enumerate_box, Direction, MultiIndex};
use crate::moments::MomentTable;

/// Monic polynomial `P_n(x) = x^N + delta x^{N-1} + ..`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicPolynomial(Polynomial);

impl MonicPolynomial {
    /// Errors unless the leading coefficient is exactly 1.
    pub fn new(p: Polynomial) -> Result<Self> {
        match p.coeffs().last() {
            Some(c) if c.is_one() => Ok(MonicPolynomial(p)),
            _ => Err(Error::Precondition(format!("{p} is not monic"))),
        }
    }

    pub fn one() -> Self {
        MonicPolynomial(Polynomial::one())
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap_or(0)
    }

    /// Coefficient of `x^{N-1}`; zero for the constant polynomial.
    pub fn subleading(&self) -> Rational {
        match self.degree() {
            0 => Rational::zero(),
            d => self.0.coeff(d - 1),
        }
    }

    pub fn as_poly(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_poly(self) -> Polynomial {
        self.0
    }

    pub fn coeffs(&self) -> &[Rational] {
        self.0.coeffs()
    }

    /// JSON array of rational strings, lowest degree first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(format_rational).collect()
    }
}

/// Type I vector `(A_{n,1}, .., A_{n,r})` with `deg A_{n,j} <= n_j - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeOneVector {
    polys: Vec<Polynomial>,
}

impl TypeOneVector {
    pub fn new(polys: Vec<Polynomial>) -> Self {
        TypeOneVector { polys }
    }

    /// The vector of `Q_0 = 0`.
    pub fn zero(r: usize) -> Self {
        TypeOneVector {
            polys: vec![Polynomial::zero(); r],
        }
    }

    pub fn r(&self) -> usize {
        self.polys.len()
    }

    pub fn component(&self, pos: usize) -> &Polynomial {
        &self.polys[pos]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.polys
    }

    /// Per-weight coefficient arrays; padding with zeros up to `n_j` entries.
    pub fn to_strings(&self, n: &MultiIndex) -> Vec<Vec<String>> {
        self.polys
            .iter()
            .zip(n.entries())
            .map(|(p, &nj)| (0..nj).map(|k| format_rational(&p.coeff(k))).collect())
            .collect()
    }
}

/// Nearest-neighbor coefficients `a_{n,1..r}`, `b_{n,1..r}` at one index.
///
/// For `r = 2` the classical names are `a_{n,m} = a[0]`, `b_{n,m} = a[1]`,
/// `c_{n,m} = b[0]`, `d_{n,m} = b[1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NnCoefficients {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl NnCoefficients {
    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn a_sum(&self) -> Rational {
        self.a.iter().fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn to_json(&self) -> NnCoefficientsJson {
        NnCoefficientsJson {
            a: self.a.iter().map(format_rational).collect(),
            b: self.b.iter().map(format_rational).collect(),
        }
    }

    pub fn from_json(j: &NnCoefficientsJson) -> Result<Self> {
        if j.a.len() != j.b.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} a-coefficients but {} b-coefficients",
                j.a.len(),
                j.b.len()
            )));
        }
        Ok(NnCoefficients {
            a: j.a.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
            b: j.b.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NnCoefficientsJson {
    pub a: Vec<String>,
    pub b: Vec<String>,
}

/// Mixed moment matrix `M_n`: `|n| x |n|`, block `j` has `n_j` columns and
/// column `i` of block `j` is `(nu^{(j)}_i, .., nu^{(j)}_{i+|n|-1})^T`.
pub fn moment_matrix(table: &MomentTable, n: &MultiIndex) -> Result<RationalMatrix> {
    check_r(table, n)?;
    let size = n.size();
    if size == 0 {
        return Ok(RationalMatrix::zeros(0, 0));
    }
    table.require_degree(size + n.max_entry() - 2)?;
    let columns = block_columns(n);
    Ok(RationalMatrix::from_fn(size, size, |row, col| {
        let (j, i) = columns[col];
        table.measure(j)[i + row].clone()
    }))
}

/// `(measure, power)` for each column of `M_n`, blocks in measure order.
fn block_columns(n: &MultiIndex) -> Vec<(usize, usize)> {
    n.entries()
        .iter()
        .enumerate()
        .flat_map(|(j, &nj)| (0..nj).map(move |i| (j, i)))
        .collect()
}

fn check_r(table: &MomentTable, n: &MultiIndex) -> Result<()> {
    if table.r() != n.r() {
        return Err(Error::DimensionMismatch(format!(
            "index {n} has r = {} but the moment table has r = {}",
            n.r(),
            table.r()
        )));
    }
    Ok(())
}

/// `M_n` with its last row replaced by row `|n|` (moments shifted by `|n|`).
fn hat_moment_matrix(table: &MomentTable, n: &MultiIndex) -> Result<RationalMatrix> {
    let size = n.size();
    table.require_degree(size + n.max_entry() - 1)?;
    let columns = block_columns(n);
    Ok(RationalMatrix::from_fn(size, size, |row, col| {
        let (j, i) = columns[col];
        let shift = if row + 1 == size { size } else { row };
        table.measure(j)[i + shift].clone()
    }))
}

/// Monic type II polynomial of degree `|n|` orthogonal to `x^l`, `l < n_j`,
/// against every `mu_j`.
pub fn type2_polynomial(table: &MomentTable, n: &MultiIndex) -> Result<MonicPolynomial> {
    check_r(table, n)?;
    let size = n.size();
    if size == 0 {
        return Ok(MonicPolynomial::one());
    }
    table.require_degree(size + n.max_entry() - 1)?;
    let rows = block_columns(n);
    let m = RationalMatrix::from_fn(size, size, |row, k| {
        let (j, l) = rows[row];
        table.measure(j)[k + l].clone()
    });
    let rhs: Vec<Rational> = rows
        .iter()
        .map(|&(j, l)| -table.measure(j)[size + l].clone())
        .collect();
    let mut coeffs = m.solve(&rhs).map_err(|e| non_normal(e, n))?;
    coeffs.push(Rational::one());
    Ok(MonicPolynomial(Polynomial::new(coeffs)))
}

/// Type I vector normalized so that `sum_j int x^{|n|-1} A_{n,j} dmu_j = 1`
/// and the lower powers integrate to zero.
pub fn type1_vector(table: &MomentTable, n: &MultiIndex) -> Result<TypeOneVector> {
    check_r(table, n)?;
    let size = n.size();
    if size == 0 {
        return Err(Error::EmptyIndex);
    }
    let m = moment_matrix(table, n)?;
    let mut rhs = vec![Rational::zero(); size];
    rhs[size - 1] = Rational::one();
    let x = m.solve(&rhs).map_err(|e| non_normal(e, n))?;
    let mut it = x.into_iter();
    let polys = n
        .entries()
        .iter()
        .map(|&nj| Polynomial::new(it.by_ref().take(nj).collect()))
        .collect();
    Ok(TypeOneVector { polys })
}

fn non_normal(e: Error, n: &MultiIndex) -> Error {
    match e {
        Error::SingularMatrix => Error::NonNormalIndex(n.clone()),
        other => other,
    }
}

/// `int p(x) Q_m(x) dmu(x) = sum_j sum_{k,l} A_{m,j,k} p_l nu^{(j)}_{k+l}`.
pub fn pair_with_type1(table: &MomentTable, q: &TypeOneVector, p: &Polynomial) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (j, a) in q.components().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let prod = a * p;
        let need = prod.degree().unwrap_or(0);
        table.require_degree(need)?;
        acc += prod.pair_with(table.measure(j), 0);
    }
    Ok(acc)
}

/// Recurrence coefficients from moments: `a_{n,j}` as the ratio of
/// `int x^{n_j} P_n dmu_j` and `int x^{n_j - 1} P_{n-e_j} dmu_j`, and
/// `b_{n,j} = delta_n - delta_{n+e_j}`.
pub fn oracle_coefficients(table: &MomentTable, n: &MultiIndex) -> Result<NnCoefficients> {
    MomentOracle::new(table).coefficients(n)
}

/// Output of the determinant route for `r = 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminantCoefficients {
    pub coefficients: NnCoefficients,
    /// `d_{n,m} - c_{n,m}` from the four-determinant ratio.
    pub d_minus_c: Rational,
}

/// Coefficients for `r = 2` from determinants of moment matrices only.
///
/// `a_{n,m} = det M_{n+1,m} det M_{n-1,m} / det M_{n,m}^2` (zero when
/// `n = 0`), the second `a` likewise in `m`, `c` and `d` from differences of
/// `-det M^_{n,m} / det M_{n,m}`, and
/// `d - c = det M_{n,m} det M_{n+1,m+1} / (det M_{n+1,m} det M_{n,m+1})`.
pub fn determinant_coefficients_r2(table: &MomentTable, n: &MultiIndex) -> Result<DeterminantCoefficients> {
    if n.r() != 2 {
        return Err(Error::NotBivariate(n.r()));
    }
    check_r(table, n)?;
    let e1 = Direction::new(1);
    let e2 = Direction::new(2);
    let det = |idx: &MultiIndex| -> Result<Rational> {
        let d = moment_matrix(table, idx)?.determinant()?;
        if d.is_zero() {
            return Err(Error::NonNormalIndex(idx.clone()));
        }
        Ok(d)
    };
    let base = det(n)?;
    let base_sq = &base * &base;
    let up1 = det(&n.step_up(e1))?;
    let up2 = det(&n.step_up(e2))?;
    let up12 = det(&n.step_up(e1).step_up(e2))?;

    let a1 = match n.step_down(e1) {
        Ok(low) => &up1 * det(&low)? / &base_sq,
        Err(_) => Rational::zero(),
    };
    let a2 = match n.step_down(e2) {
        Ok(low) => &up2 * det(&low)? / &base_sq,
        Err(_) => Rational::zero(),
    };
    let s0 = second_coefficient_matrix(table, n)?;
    let c = &s0 - second_coefficient_matrix(table, &n.step_up(e1))?;
    let d = &s0 - second_coefficient_matrix(table, &n.step_up(e2))?;
    let d_minus_c = &base * &up12 / (&up1 * &up2);
    Ok(DeterminantCoefficients {
        coefficients: NnCoefficients {
            a: vec![a1, a2],
            b: vec![c, d],
        },
        d_minus_c,
    })
}

/// Subleading coefficient of `P_n` as `-det M^_n / det M_n`, where `M^_n` is
/// `M_n` with its last row replaced by the next moment row.
pub fn second_coefficient_matrix(table: &MomentTable, n: &MultiIndex) -> Result<Rational> {
    check_r(table, n)?;
    if n.size() == 0 {
        return Ok(Rational::zero());
    }
    let d = moment_matrix(table, n)?.determinant()?;
    if d.is_zero() {
        return Err(Error::NonNormalIndex(n.clone()));
    }
    let hat = hat_moment_matrix(table, n)?.determinant()?;
    Ok(-hat / d)
}

/// Memoizing front end over one moment table.
///
/// Caches type II polynomials and type I vectors by index behind read-write
/// locks; results do not depend on the order in which threads fill the cache.
pub struct MomentOracle<'a> {
    table: &'a MomentTable,
    type2: RwLock<HashMap<MultiIndex, MonicPolynomial>>,
    type1: RwLock<HashMap<MultiIndex, TypeOneVector>>,
}

impl<'a> MomentOracle<'a> {
    pub fn new(table: &'a MomentTable) -> Self {
        MomentOracle {
            table,
            type2: RwLock::new(HashMap::new()),
            type1: RwLock::new(HashMap::new()),
        }
    }

    pub fn table(&self) -> &MomentTable {
        self.table
    }

    pub fn r(&self) -> usize {
        self.table.r()
    }

    pub fn type2(&self, n: &MultiIndex) -> Result<MonicPolynomial> {
        if let Some(p) = self.type2.read().expect("cache poisoned").get(n) {
            return Ok(p.clone());
        }
        let p = type2_polynomial(self.table, n)?;
        self.type2
            .write()
            .expect("cache poisoned")
            .entry(n.clone())
            .or_insert(p.clone());
        Ok(p)
    }

    /// Type I vector; the zero vector at the origin (`Q_0 = 0`).
    pub fn type1_or_zero(&self, n: &MultiIndex) -> Result<TypeOneVector> {
        if n.is_zero() {
            return Ok(TypeOneVector::zero(n.r()));
        }
        self.type1(n)
    }

    pub fn type1(&self, n: &MultiIndex) -> Result<TypeOneVector> {
        if let Some(q) = self.type1.read().expect("cache poisoned").get(n) {
            return Ok(q.clone());
        }
        let q = type1_vector(self.table, n)?;
        self.type1
            .write()
            .expect("cache poisoned")
            .entry(n.clone())
            .or_insert(q.clone());
        Ok(q)
    }

    pub fn delta(&self, n: &MultiIndex) -> Result<Rational> {
        Ok(self.type2(n)?.subleading())
    }

    pub fn coefficients(&self, n: &MultiIndex) -> Result<NnCoefficients> {
        check_r(self.table, n)?;
        let p = self.type2(n)?;
        let delta = p.subleading();
        let mut a = Vec::with_capacity(n.r());
        let mut b = Vec::with_capacity(n.r());
        for j in n.directions() {
            let pos = j.position();
            let nj = n.entry(j);
            let moments = self.table.measure(pos);
            let aj = match n.step_down(j) {
                Err(_) => Rational::zero(),
                Ok(low) => {
                    let q = self.type2(&low)?;
                    self.table.require_degree(n.size() + nj)?;
                    let num = p.as_poly().pair_with(moments, nj);
                    let den = q.as_poly().pair_with(moments, nj - 1);
                    if den.is_zero() {
                        return Err(Error::NonNormalIndex(n.clone()));
                    }
                    num / den
                }
            };
            a.push(aj);
            b.push(&delta - self.delta(&n.step_up(j))?);
        }
        Ok(NnCoefficients { a, b })
    }

    /// `b_{n,j} = int x P_n(x) Q_{n+e_j}(x) dmu(x)` through the type I vector.
    pub fn b_from_pairing(&self, n: &MultiIndex, j: Direction) -> Result<Rational> {
        let xp = self.type2(n)?.as_poly().shift();
        pair_with_type1(self.table, &self.type1(&n.step_up(j))?, &xp)
    }

    /// `int P_n Q_m dmu`.
    pub fn biorthogonality_pairing(&self, n: &MultiIndex, m: &MultiIndex) -> Result<Rational> {
        let p = self.type2(n)?;
        let q = self.type1_or_zero(m)?;
        pair_with_type1(self.table, &q, p.as_poly())
    }

    /// Coefficients at every index of the box.
    pub fn field(&self, limits: &[usize]) -> Result<Vec<(MultiIndex, NnCoefficients)>> {
        enumerate_box(limits)
            .into_iter()
            .map(|n| self.coefficients(&n).map(|c| (n, c)))
            .collect()
    }
}
