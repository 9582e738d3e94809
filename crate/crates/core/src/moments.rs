//! Reduced moment tables for the classical families and for user-supplied
//! measures.
//!
//! Every built-in measure is divided by a positive constant so that its
//! zeroth moment is 1 and all moments are rational:
//!
//! | family          | weight                      | divided by                  | reduced moment `nu_k`          |
//! |-----------------|-----------------------------|-----------------------------|--------------------------------|
//! | hermite         | `exp(-x^2 + c_j x)`         | `sqrt(pi) exp(c_j^2 / 4)`   | `nu_{k+1} = c/2 nu_k + k/2 nu_{k-1}` |
//! | charlier        | `a_j^x / x!` on `{0,1,..}`  | `exp(a_j)`                  | Touchard polynomial `T_k(a_j)` |
//! | laguerre1       | `x^{alpha_j} exp(-x)`       | `Gamma(alpha_j + 1)`        | `(alpha_j + 1)_k`              |
//! | laguerre2       | `x^alpha exp(-c_j x)`       | `Gamma(alpha+1) / c_j^{alpha+1}` | `(alpha + 1)_k / c_j^k`   |
//! | jacobi-pineiro  | `x^{alpha_j} (1-x)^beta`    | `B(alpha_j + 1, beta + 1)`  | `(alpha_j+1)_k / (alpha_j+beta+2)_k` |
//!
//! Monic type II polynomials and recurrence coefficients do not depend on
//! these constants. Type I vectors do: they are the ones of the reduced
//! measures.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Hermite,
    Charlier,
    Laguerre1,
    Laguerre2,
    JacobiPineiro,
    Custom,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Hermite => "hermite",
            Family::Charlier => "charlier",
            Family::Laguerre1 => "laguerre1",
            Family::Laguerre2 => "laguerre2",
            Family::JacobiPineiro => "jacobi-pineiro",
            Family::Custom => "custom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hermite" => Ok(Family::Hermite),
            "charlier" => Ok(Family::Charlier),
            "laguerre1" | "laguerre-1" => Ok(Family::Laguerre1),
            "laguerre2" | "laguerre-2" => Ok(Family::Laguerre2),
            "jacobi-pineiro" | "jacobi_pineiro" => Ok(Family::JacobiPineiro),
            "custom" => Ok(Family::Custom),
            other => Err(Error::InvalidParameters(format!("unknown family '{other}'"))),
        }
    }
}

/// A family together with its parameters; `Custom` carries its moments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Hermite { c: Vec<Rational> },
    Charlier { a: Vec<Rational> },
    Laguerre1 { alpha: Vec<Rational> },
    Laguerre2 { alpha: Rational, c: Vec<Rational> },
    JacobiPineiro { alpha: Vec<Rational>, beta: Rational },
    Custom(MomentTable),
}

impl FamilySpec {
    pub fn hermite(c: Vec<Rational>) -> Result<Self> {
        Self::checked(FamilySpec::Hermite { c })
    }

    pub fn charlier(a: Vec<Rational>) -> Result<Self> {
        Self::checked(FamilySpec::Charlier { a })
    }

    pub fn laguerre1(alpha: Vec<Rational>) -> Result<Self> {
        Self::checked(FamilySpec::Laguerre1 { alpha })
    }

    pub fn laguerre2(alpha: Rational, c: Vec<Rational>) -> Result<Self> {
        Self::checked(FamilySpec::Laguerre2 { alpha, c })
    }

    pub fn jacobi_pineiro(alpha: Vec<Rational>, beta: Rational) -> Result<Self> {
        Self::checked(FamilySpec::JacobiPineiro { alpha, beta })
    }

    fn checked(spec: Self) -> Result<Self> {
        spec.validate()?;
        Ok(spec)
    }

    /// Builds a spec from `name -> values` assignments such as
    /// `alpha = [1/2, 5/3]`, `beta = [1/3]`.
    pub fn from_params(family: Family, params: &BTreeMap<String, Vec<Rational>>) -> Result<Self> {
        let allowed: &[&str] = match family {
            Family::Hermite => &["c"],
            Family::Charlier => &["a"],
            Family::Laguerre1 => &["alpha"],
            Family::Laguerre2 => &["alpha", "c"],
            Family::JacobiPineiro => &["alpha", "beta"],
            Family::Custom => {
                return Err(Error::InvalidParameters(
                    "custom measures are read from a moment file".into(),
                ))
            }
        };
        if let Some(unknown) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::InvalidParameters(format!(
                "{family} takes no parameter '{unknown}' (expected {})",
                allowed.join(", ")
            )));
        }
        let list = |name: &str| -> Result<Vec<Rational>> {
            match params.get(name) {
                Some(v) if !v.is_empty() => Ok(v.clone()),
                _ => Err(Error::InvalidParameters(format!(
                    "{family} requires parameter '{name}'"
                ))),
            }
        };
        let scalar = |name: &str| -> Result<Rational> {
            let v = list(name)?;
            if v.len() != 1 {
                return Err(Error::InvalidParameters(format!(
                    "{family} parameter '{name}' takes a single value"
                )));
            }
            Ok(v[0].clone())
        };
        match family {
            Family::Hermite => Self::hermite(list("c")?),
            Family::Charlier => Self::charlier(list("a")?),
            Family::Laguerre1 => Self::laguerre1(list("alpha")?),
            Family::Laguerre2 => Self::laguerre2(scalar("alpha")?, list("c")?),
            Family::JacobiPineiro => Self::jacobi_pineiro(list("alpha")?, scalar("beta")?),
            Family::Custom => unreachable!(),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            FamilySpec::Hermite { .. } => Family::Hermite,
            FamilySpec::Charlier { .. } => Family::Charlier,
            FamilySpec::Laguerre1 { .. } => Family::Laguerre1,
            FamilySpec::Laguerre2 { .. } => Family::Laguerre2,
            FamilySpec::JacobiPineiro { .. } => Family::JacobiPineiro,
            FamilySpec::Custom(_) => Family::Custom,
        }
    }

    pub fn r(&self) -> usize {
        match self {
            FamilySpec::Hermite { c } => c.len(),
            FamilySpec::Charlier { a } => a.len(),
            FamilySpec::Laguerre1 { alpha } => alpha.len(),
            FamilySpec::Laguerre2 { c, .. } => c.len(),
            FamilySpec::JacobiPineiro { alpha, .. } => alpha.len(),
            FamilySpec::Custom(t) => t.r(),
        }
    }

    pub fn is_builtin(&self) -> bool {
        !matches!(self, FamilySpec::Custom(_))
    }

    /// Checks the family's parameter constraints.
    pub fn validate(&self) -> Result<()> {
        if self.r() == 0 {
            return Err(Error::InvalidParameters("at least one measure is required".into()));
        }
        let minus_one = -Rational::one();
        match self {
            FamilySpec::Hermite { c } => distinct("c", c),
            FamilySpec::Charlier { a } => {
                all_greater("a", a, &Rational::zero())?;
                distinct("a", a)
            }
            FamilySpec::Laguerre1 { alpha } => {
                all_greater("alpha", alpha, &minus_one)?;
                non_integer_differences("alpha", alpha)
            }
            FamilySpec::Laguerre2 { alpha, c } => {
                all_greater("alpha", std::slice::from_ref(alpha), &minus_one)?;
                all_greater("c", c, &Rational::zero())?;
                distinct("c", c)
            }
            FamilySpec::JacobiPineiro { alpha, beta } => {
                all_greater("alpha", alpha, &minus_one)?;
                all_greater("beta", std::slice::from_ref(beta), &minus_one)?;
                non_integer_differences("alpha", alpha)
            }
            FamilySpec::Custom(_) => Ok(()),
        }
    }

    /// Parameter assignments in canonical string form, for reports.
    pub fn describe(&self) -> String {
        let join = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Hermite { c } => format!("hermite c={}", join(c)),
            FamilySpec::Charlier { a } => format!("charlier a={}", join(a)),
            FamilySpec::Laguerre1 { alpha } => format!("laguerre1 alpha={}", join(alpha)),
            FamilySpec::Laguerre2 { alpha, c } => {
                format!("laguerre2 alpha={} c={}", format_rational(alpha), join(c))
            }
            FamilySpec::JacobiPineiro { alpha, beta } => format!(
                "jacobi-pineiro alpha={} beta={}",
                join(alpha),
                format_rational(beta)
            ),
            FamilySpec::Custom(t) => format!("custom r={} max_degree={}", t.r(), t.max_degree()),
        }
    }
}

fn distinct(name: &str, v: &[Rational]) -> Result<()> {
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] == v[j] {
                return Err(Error::InvalidParameters(format!(
                    "{name}_{} = {name}_{} = {}; values must be distinct",
                    i + 1,
                    j + 1,
                    v[i]
                )));
            }
        }
    }
    Ok(())
}

fn all_greater(name: &str, v: &[Rational], bound: &Rational) -> Result<()> {
    match v.iter().position(|x| x <= bound) {
        Some(i) => Err(Error::InvalidParameters(format!(
            "{name}_{} = {} must exceed {bound}",
            i + 1,
            v[i]
        ))),
        None => Ok(()),
    }
}

fn non_integer_differences(name: &str, v: &[Rational]) -> Result<()> {
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if (&v[i] - &v[j]).is_integer() {
                return Err(Error::InvalidParameters(format!(
                    "{name}_{} - {name}_{} = {} is an integer",
                    i + 1,
                    j + 1,
                    &v[i] - &v[j]
                )));
            }
        }
    }
    Ok(())
}

/// Moments `nu^{(j)}_0 ..= nu^{(j)}_{max_degree}` for each measure `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentTable {
    moments: Vec<Vec<Rational>>,
}

impl MomentTable {
    pub fn new(moments: Vec<Vec<Rational>>) -> Result<Self> {
        let Some(first) = moments.first() else {
            return Err(Error::InvalidParameters("moment table has no measures".into()));
        };
        if first.is_empty() {
            return Err(Error::InvalidParameters("moment rows must be non-empty".into()));
        }
        let expected = first.len();
        if let Some((measure, row)) = moments
            .iter()
            .enumerate()
            .find(|(_, row)| row.len() != expected)
        {
            return Err(Error::RaggedTable {
                measure: measure + 1,
                expected,
                found: row.len(),
            });
        }
        Ok(MomentTable { moments })
    }

    pub fn r(&self) -> usize {
        self.moments.len()
    }

    pub fn max_degree(&self) -> usize {
        self.moments[0].len() - 1
    }

    /// Moments of measure `j` (0-based position).
    pub fn measure(&self, pos: usize) -> &[Rational] {
        &self.moments[pos]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.moments
    }

    /// Errors unless moments up to `degree` are available.
    pub fn require_degree(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree() {
            return Err(Error::InsufficientDepth {
                required: degree,
                available: self.max_degree(),
            });
        }
        Ok(())
    }

    pub fn truncated(&self, max_degree: usize) -> Result<Self> {
        self.require_degree(max_degree)?;
        Ok(MomentTable {
            moments: self
                .moments
                .iter()
                .map(|row| row[..=max_degree].to_vec())
                .collect(),
        })
    }

    pub fn to_json(&self) -> CustomMomentFile {
        CustomMomentFile {
            max_degree: self.max_degree(),
            moments: self
                .moments
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
            r: self.r(),
        }
    }
}

/// On-disk form of a moment table; rationals are strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomMomentFile {
    pub max_degree: usize,
    pub moments: Vec<Vec<String>>,
    pub r: usize,
}

/// Parses the custom-moment JSON format. No normalization is applied.
pub fn parse_custom(text: &str) -> Result<MomentTable> {
    let file: CustomMomentFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    if file.moments.len() != file.r {
        return Err(Error::Parse {
            location: "r".into(),
            message: format!("r = {} but {} moment rows given", file.r, file.moments.len()),
        });
    }
    let mut rows = Vec::with_capacity(file.r);
    for (j, row) in file.moments.iter().enumerate() {
        let parsed = row
            .iter()
            .enumerate()
            .map(|(k, s)| {
                parse_rational(s).map_err(|e| Error::Parse {
                    location: format!("moments[{j}][{k}]"),
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(parsed);
    }
    let table = MomentTable::new(rows)?;
    if table.max_degree() != file.max_degree {
        return Err(Error::Parse {
            location: "max_degree".into(),
            message: format!(
                "max_degree = {} but rows hold degrees 0..={}",
                file.max_degree,
                table.max_degree()
            ),
        });
    }
    Ok(table)
}

pub fn ingest_custom(path: impl AsRef<Path>) -> Result<MomentTable> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| {
        Error::Io(format!("{}: {e}", path.as_ref().display()))
    })?;
    parse_custom(&text)
}

/// Reduced moments of degree `0..=max_degree` for every measure of `spec`.
pub fn build_moments(spec: &FamilySpec, max_degree: usize) -> Result<MomentTable> {
    spec.validate()?;
    let rows = match spec {
        FamilySpec::Hermite { c } => c.iter().map(|c| hermite_moments(c, max_degree)).collect(),
        FamilySpec::Charlier { a } => a.iter().map(|a| touchard(a, max_degree)).collect(),
        FamilySpec::Laguerre1 { alpha } => alpha
            .iter()
            .map(|al| pochhammer_ratios(&(al + one()), None, max_degree))
            .collect(),
        FamilySpec::Laguerre2 { alpha, c } => c
            .iter()
            .map(|cj| {
                let base = pochhammer_ratios(&(alpha + one()), None, max_degree);
                let mut scale = Rational::one();
                base.into_iter()
                    .map(|m| {
                        let v = m * &scale;
                        scale /= cj;
                        v
                    })
                    .collect()
            })
            .collect(),
        FamilySpec::JacobiPineiro { alpha, beta } => alpha
            .iter()
            .map(|al| {
                let top = al + one();
                let bottom = al + beta + Rational::from_integer(2.into());
                pochhammer_ratios(&top, Some(&bottom), max_degree)
            })
            .collect(),
        FamilySpec::Custom(table) => return table.truncated(max_degree),
    };
    MomentTable::new(rows)
}

fn one() -> Rational {
    Rational::one()
}

/// `mu_0 = 1`, `mu_1 = c/2`, `mu_{k+1} = c/2 mu_k + k/2 mu_{k-1}`.
fn hermite_moments(c: &Rational, max_degree: usize) -> Vec<Rational> {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mean = c * &half;
    let mut out = vec![Rational::one()];
    for k in 0..max_degree {
        let next = if k == 0 {
            mean.clone()
        } else {
            &mean * &out[k] + &half * Rational::from_integer(k.into()) * &out[k - 1]
        };
        out.push(next);
    }
    out
}

/// Touchard polynomials `T_0 = 1`, `T_{l+1}(a) = a sum_i C(l, i) T_i(a)`.
fn touchard(a: &Rational, max_degree: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    for l in 0..max_degree {
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (i, t) in out.iter().enumerate() {
            acc += t * Rational::from_integer(binom.clone());
            binom = binom * BigInt::from(l - i) / BigInt::from(i + 1);
        }
        out.push(acc * a);
    }
    out
}

/// `(top)_k / (bottom)_k` for `k = 0..=max_degree` (bottom omitted means 1).
fn pochhammer_ratios(top: &Rational, bottom: Option<&Rational>, max_degree: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(max_degree + 1);
    let mut cur = Rational::one();
    for k in 0..=max_degree {
        out.push(cur.clone());
        if k == max_degree {
            break;
        }
        let kk = Rational::from_integer(k.into());
        cur *= top + &kk;
        if let Some(b) = bottom {
            cur /= b + &kk;
        }
    }
    out
}

/// Moment degree that suffices for every computation over the box `limits`
/// plus one ring: type II solves up to `limits + 2`, type I solves up to
/// `limits + 1`.
pub fn required_depth(limits: &[usize]) -> usize {
    let size: usize = limits.iter().map(|l| l + 2).sum();
    let max = limits.iter().map(|l| l + 2).max().unwrap_or(0);
    size + max
}

/// `gcd`-free helper for tests that want `C(n, k)` as a rational.
#[cfg(test)]
fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn rats(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    #[test]
    fn hermite_example() {
        let t = build_moments(&FamilySpec::hermite(vec![rat_int(2)]).unwrap(), 2).unwrap();
        assert_eq!(t.measure(0), rats(&[(1, 1), (1, 1), (3, 2)]).as_slice());
    }

    #[test]
    fn charlier_example() {
        let t = build_moments(&FamilySpec::charlier(vec![rat_int(1)]).unwrap(), 4).unwrap();
        assert_eq!(
            t.measure(0),
            rats(&[(1, 1), (1, 1), (2, 1), (5, 1), (15, 1)]).as_slice()
        );
    }

    #[test]
    fn jacobi_uniform_example() {
        let spec = FamilySpec::jacobi_pineiro(vec![rat_int(0)], rat_int(0)).unwrap();
        let t = build_moments(&spec, 3).unwrap();
        assert_eq!(t.measure(0), rats(&[(1, 1), (1, 2), (1, 3), (1, 4)]).as_slice());
    }

    /// Exact moments of N(c/2, 1/2) by binomial expansion around the mean.
    fn gaussian_moment(c: &Rational, k: usize) -> Rational {
        let mean = c / rat_int(2);
        let mut acc = Rational::zero();
        for i in (0..=k).step_by(2) {
            // E[t^i] = (i-1)!! / 2^(i/2)
            let dfact: i64 = (1..i as i64).step_by(2).product();
            let central = Rational::new(BigInt::from(dfact), BigInt::from(2).pow((i / 2) as u32));
            let mut pw = Rational::one();
            for _ in 0..k - i {
                pw *= &mean;
            }
            acc += Rational::from_integer(binomial(k, i)) * pw * central;
        }
        acc
    }

    #[test]
    fn hermite_matches_binomial_expansion() {
        for c in [rat_int(2), rat(-3, 2), rat_int(0), rat(7, 5)] {
            let t = build_moments(&FamilySpec::hermite(vec![c.clone()]).unwrap(), 10).unwrap();
            for k in 0..=10 {
                assert_eq!(t.measure(0)[k], gaussian_moment(&c, k), "c={c} k={k}");
            }
        }
    }

    #[test]
    fn hermite_matches_quadrature() {
        // trapezoid on a wide grid; the integrand is smooth and decays fast
        let c = 2.0f64;
        let t = build_moments(&FamilySpec::hermite(vec![rat_int(2)]).unwrap(), 4).unwrap();
        let norm = std::f64::consts::PI.sqrt() * (c * c / 4.0).exp();
        let h = 1e-3;
        for k in 0..=4 {
            let mut s = 0.0;
            let mut x: f64 = -12.0;
            while x <= 14.0 {
                s += x.powi(k as i32) * (-x * x + c * x).exp() * h;
                x += h;
            }
            let exact = crate::exact::rational_to_f64(&t.measure(0)[k]);
            assert!((s / norm - exact).abs() < 1e-9 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn charlier_matches_series() {
        let t = build_moments(&FamilySpec::charlier(vec![rat(3, 2)]).unwrap(), 6).unwrap();
        let a = 1.5f64;
        for l in 0..=6 {
            let mut s = 0.0;
            let mut term = (-a).exp();
            for k in 0..80 {
                s += (k as f64).powi(l as i32) * term;
                term *= a / (k + 1) as f64;
            }
            let exact = crate::exact::rational_to_f64(&t.measure(0)[l]);
            assert!((s - exact).abs() < 1e-12 * exact);
        }
    }

    #[test]
    fn pochhammer_families() {
        let spec = FamilySpec::laguerre1(vec![rat(1, 2), rat(5, 3)]).unwrap();
        let t = build_moments(&spec, 3).unwrap();
        // (3/2)_3 = 3/2 * 5/2 * 7/2
        assert_eq!(t.measure(0)[3], rat(105, 8));
        assert_eq!(t.measure(1)[2], rat(8, 3) * rat(11, 3));

        let spec = FamilySpec::laguerre2(rat(1, 2), vec![rat_int(1), rat_int(2)]).unwrap();
        let t = build_moments(&spec, 2).unwrap();
        assert_eq!(t.measure(1)[2], rat(15, 4) / rat_int(4));

        let spec = FamilySpec::jacobi_pineiro(vec![rat(1, 2)], rat(1, 3)).unwrap();
        let t = build_moments(&spec, 2).unwrap();
        // (3/2)(5/2) / ((17/6)(23/6))
        assert_eq!(t.measure(0)[2], rat(15, 4) / (rat(17, 6) * rat(23, 6)));
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilySpec::hermite(vec![rat_int(1), rat_int(1)]).is_err());
        assert!(FamilySpec::charlier(vec![rat_int(0)]).is_err());
        assert!(FamilySpec::charlier(vec![rat_int(1), rat_int(1)]).is_err());
        assert!(FamilySpec::laguerre1(vec![rat(1, 2), rat(3, 2)]).is_err());
        assert!(FamilySpec::laguerre1(vec![rat_int(-1)]).is_err());
        assert!(FamilySpec::laguerre2(rat_int(-2), vec![rat_int(1)]).is_err());
        assert!(FamilySpec::laguerre2(rat_int(0), vec![rat_int(-1)]).is_err());
        assert!(FamilySpec::jacobi_pineiro(vec![rat(1, 2)], rat_int(-1)).is_err());
        assert!(FamilySpec::jacobi_pineiro(vec![rat(1, 3), rat(4, 3)], rat_int(0)).is_err());
        assert!(FamilySpec::hermite(vec![]).is_err());
    }

    #[test]
    fn from_params_checks_names() {
        let mut p = BTreeMap::new();
        p.insert("alpha".to_string(), vec![rat(1, 2), rat(1, 3)]);
        assert!(FamilySpec::from_params(Family::JacobiPineiro, &p).is_err());
        p.insert("beta".to_string(), vec![rat(1, 3)]);
        let spec = FamilySpec::from_params(Family::JacobiPineiro, &p).unwrap();
        assert_eq!(spec.r(), 2);
        p.insert("gamma".to_string(), vec![rat(1, 3)]);
        assert!(FamilySpec::from_params(Family::JacobiPineiro, &p).is_err());
        assert_eq!("jacobi-pineiro".parse::<Family>().unwrap(), Family::JacobiPineiro);
        assert!("legendre".parse::<Family>().is_err());
    }

    #[test]
    fn custom_file_matches_family() {
        let table = parse_custom(r#"{"r": 1, "max_degree": 3, "moments": [["1","1","2","5"]]}"#).unwrap();
        let family = build_moments(&FamilySpec::charlier(vec![rat_int(1)]).unwrap(), 3).unwrap();
        assert_eq!(table, family);
    }

    #[test]
    fn custom_file_errors() {
        let ragged = parse_custom(r#"{"r": 2, "max_degree": 2, "moments": [["1","1","2"],["1","2","6","22"]]}"#);
        assert!(matches!(ragged, Err(Error::RaggedTable { measure: 2, .. })));
        let bad = parse_custom(r#"{"r": 1, "max_degree": 1, "moments": [["1","1/0"]]}"#);
        assert!(matches!(bad, Err(Error::Parse { ref location, .. }) if location == "moments[0][1]"));
        let syntax = parse_custom("{\"r\": 1,\n \"max_degree\": }");
        assert!(matches!(syntax, Err(Error::Parse { ref location, .. }) if location.starts_with("line 2")));
        let wrong_r = parse_custom(r#"{"r": 2, "max_degree": 0, "moments": [["1"]]}"#);
        assert!(matches!(wrong_r, Err(Error::Parse { .. })));
    }

    #[test]
    fn json_round_trip() {
        let spec = FamilySpec::laguerre1(vec![rat(1, 2), rat(5, 3)]).unwrap();
        let t = build_moments(&spec, 5).unwrap();
        let text = serde_json::to_string(&t.to_json()).unwrap();
        assert_eq!(parse_custom(&text).unwrap(), t);
        let custom = FamilySpec::Custom(t.clone());
        assert_eq!(build_moments(&custom, 3).unwrap(), t.truncated(3).unwrap());
        assert!(matches!(
            build_moments(&custom, 6),
            Err(Error::InsufficientDepth { required: 6, available: 5 })
        ));
    }
}
