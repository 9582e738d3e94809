//! Coefficient fields and the recurrences they drive: type II generation
//! over a box, the three-neighbor relation and the type I recurrence.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Polynomial, Rational};
use crate::families::closed_form_coefficients;
use crate::lattice::{enumerate_box, Direction, MultiIndex};
use crate::moments::FamilySpec;
use crate::mop::{MomentOracle, MonicPolynomial, NnCoefficients, NnCoefficientsJson};

/// Recurrence coefficients over a set of multi-indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientField {
    r: usize,
    entries: BTreeMap<MultiIndex, NnCoefficients>,
}

/// One row of the serialized field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldRow {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub index: MultiIndex,
}

/// Serialized field; rows are in graded-lexicographic index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub r: usize,
    pub rows: Vec<FieldRow>,
}

impl CoefficientField {
    pub fn new(r: usize) -> Self {
        CoefficientField {
            r,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_oracle(oracle: &MomentOracle<'_>, limits: &[usize]) -> Result<Self> {
        let mut field = CoefficientField::new(oracle.r());
        for (n, c) in oracle.field(limits)? {
            field.insert(n, c)?;
        }
        Ok(field)
    }

    pub fn from_closed_form(spec: &FamilySpec, limits: &[usize]) -> Result<Self> {
        let mut field = CoefficientField::new(spec.r());
        for n in enumerate_box(limits) {
            let c = closed_form_coefficients(spec, &n)?;
            field.insert(n, c)?;
        }
        Ok(field)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, n: &MultiIndex) -> bool {
        self.entries.contains_key(n)
    }

    pub fn get(&self, n: &MultiIndex) -> Result<&NnCoefficients> {
        self.entries
            .get(n)
            .ok_or_else(|| Error::MissingCoefficients(n.clone()))
    }

    /// Mutable access, used to inject perturbations.
    pub fn get_mut(&mut self, n: &MultiIndex) -> Result<&mut NnCoefficients> {
        self.entries
            .get_mut(n)
            .ok_or_else(|| Error::MissingCoefficients(n.clone()))
    }

    /// Adds or replaces the coefficients at `n`.
    pub fn insert(&mut self, n: MultiIndex, c: NnCoefficients) -> Result<()> {
        if n.r() != self.r || c.r() != self.r || c.b.len() != self.r {
            return Err(Error::DimensionMismatch(format!(
                "entry at {n} does not have r = {}",
                self.r
            )));
        }
        self.entries.insert(n, c);
        Ok(())
    }

    /// `a` and `b` at `n`.
    pub fn a(&self, n: &MultiIndex, j: Direction) -> Result<&Rational> {
        Ok(&self.get(n)?.a[j.position()])
    }

    pub fn b(&self, n: &MultiIndex, j: Direction) -> Result<&Rational> {
        Ok(&self.get(n)?.b[j.position()])
    }

    /// Entries in graded-lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &NnCoefficients)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by(|x, y| x.0.size().cmp(&y.0.size()).then_with(|| x.0.cmp(y.0)));
        v.into_iter()
    }

    /// Checks `a_{n,j} = 0` whenever `n_j = 0` and that every lower neighbor
    /// of a member is a member.
    pub fn validate(&self) -> Result<()> {
        for (n, c) in &self.entries {
            for j in n.directions() {
                match n.step_down(j) {
                    Err(_) => {
                        if !c.a[j.position()].is_zero() {
                            return Err(Error::Precondition(format!(
                                "a_({n}),{j} must vanish on the boundary"
                            )));
                        }
                    }
                    Ok(low) => {
                        if !self.entries.contains_key(&low) {
                            return Err(Error::Precondition(format!(
                                "field is not downward closed: {low} below {n} is missing"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson {
            r: self.r,
            rows: self
                .iter()
                .map(|(n, c)| {
                    let j = c.to_json();
                    FieldRow {
                        a: j.a,
                        b: j.b,
                        index: n.clone(),
                    }
                })
                .collect(),
        }
    }

    pub fn from_json(j: &FieldJson) -> Result<Self> {
        let mut field = CoefficientField::new(j.r);
        for row in &j.rows {
            let c = NnCoefficients::from_json(&NnCoefficientsJson {
                a: row.a.clone(),
                b: row.b.clone(),
            })?;
            field.insert(row.index.clone(), c)?;
        }
        field.validate()?;
        Ok(field)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let j: FieldJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        CoefficientField::from_json(&j)
    }
}

/// `(x - b_{m,k}) P_m - sum_j a_{m,j} P_{m-e_j}`.
fn step(
    field: &CoefficientField,
    polys: &BTreeMap<MultiIndex, MonicPolynomial>,
    m: &MultiIndex,
    k: Direction,
) -> Result<Polynomial> {
    let c = field.get(m)?;
    let pm = polys[m].as_poly();
    let mut out = &pm.shift() - &pm.scale(&c.b[k.position()]);
    for j in m.directions() {
        if let Ok(low) = m.step_down(j) {
            out = &out - &polys[&low].as_poly().scale(&c.a[j.position()]);
        }
    }
    Ok(out)
}

/// Type II polynomials on the box from `P_0 = 1` and the recurrence.
///
/// Every index with several positive entries is reached from each of its
/// lower neighbors; all of them must give the same polynomial.
pub fn generate_along_box(
    field: &CoefficientField,
    limits: &[usize],
) -> Result<BTreeMap<MultiIndex, MonicPolynomial>> {
    if limits.len() != field.r() {
        return Err(Error::DimensionMismatch(format!(
            "box of dimension {} for a field with r = {}",
            limits.len(),
            field.r()
        )));
    }
    let mut polys = BTreeMap::new();
    for n in enumerate_box(limits) {
        if n.is_zero() {
            polys.insert(n, MonicPolynomial::one());
            continue;
        }
        let mut first: Option<(Direction, Polynomial)> = None;
        for k in n.directions() {
            let Ok(m) = n.step_down(k) else { continue };
            let p = step(field, &polys, &m, k)?;
            match &first {
                None => first = Some((k, p)),
                Some((k0, p0)) => {
                    if *p0 != p {
                        return Err(Error::InconsistentField {
                            index: n.clone(),
                            first: k0.get(),
                            second: k.get(),
                        });
                    }
                }
            }
        }
        let (_, p) = first.expect("non-zero index has a lower neighbor");
        polys.insert(n, MonicPolynomial::new(p)?);
    }
    Ok(polys)
}

/// `P_{n+e_k} - P_{n+e_j} = (b_{n,j} - b_{n,k}) P_n`.
pub fn neighbor_difference_identity(
    field: &CoefficientField,
    polys: &BTreeMap<MultiIndex, MonicPolynomial>,
    n: &MultiIndex,
    j: Direction,
    k: Direction,
) -> Result<bool> {
    let get = |m: &MultiIndex| {
        polys
            .get(m)
            .map(MonicPolynomial::as_poly)
            .ok_or_else(|| Error::Precondition(format!("no polynomial at {m}")))
    };
    let c = field.get(n)?;
    let lhs = get(&n.step_up(k))? - get(&n.step_up(j))?;
    let rhs = get(n)?.scale(&(&c.b[j.position()] - &c.b[k.position()]));
    Ok(lhs == rhs)
}

/// The type I recurrence
/// `x Q_n = Q_{n-e_k} + b_{n-e_k,k} Q_n + sum_i a_{n,i} Q_{n+e_i}`,
/// checked separately for the coefficient polynomial of every weight.
pub fn type1_recurrence_check(oracle: &MomentOracle<'_>, n: &MultiIndex, k: Direction) -> Result<bool> {
    let low = n.step_down(k).map_err(|_| {
        Error::Precondition(format!("type I recurrence at {n} needs n_{k} >= 1"))
    })?;
    let c = oracle.coefficients(n)?;
    let b = oracle.coefficients(&low)?.b[k.position()].clone();
    let qn = oracle.type1(n)?;
    let qlow = oracle.type1_or_zero(&low)?;
    let above = n
        .directions()
        .map(|i| oracle.type1(&n.step_up(i)))
        .collect::<Result<Vec<_>>>()?;
    for w in 0..n.r() {
        let lhs = qn.component(w).shift();
        let mut rhs = qlow.component(w) + &qn.component(w).scale(&b);
        for (i, q) in above.iter().enumerate() {
            rhs = &rhs + &q.component(w).scale(&c.a[i]);
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
