//! Pass/fail verification of coefficient fields, polynomial identities and
//! closed forms over a lattice box.
//!
//! Ratio equations are checked cross-multiplied, so every check is a ring
//! identity. Checks that cannot apply at a lattice boundary are recorded as
//! skipped with the reason as witness.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cd::cd_sides;
use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational};
use crate::families::{
    closed_form_coefficients, jp_delta, jp_delta_partial_fraction, jp_sum_identity,
    laguerre1_sum_identity, residue_sum,
};
use crate::lattice::{enumerate_box, monotone_paths, widen, Direction, MultiIndex};
use crate::moments::{build_moments, required_depth, FamilySpec, MomentTable};
use crate::mop::{determinant_coefficients_r2, MomentOracle};
use crate::recurrence::{generate_along_box, neighbor_difference_identity, type1_recurrence_check, CoefficientField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// What a check is about: one index or an ordered pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(untagged)]
pub enum CheckSubject {
    Index(MultiIndex),
    Pair(MultiIndex, MultiIndex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub index: CheckSubject,
    pub name: String,
    pub status: CheckStatus,
    pub witness: Option<String>,
}

/// Outcome of a suite. Serializes as
/// `{"checks": [{"index", "name", "status", "witness"}], "status"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
    pub status: CheckStatus,
}

impl Default for VerificationReport {
    fn default() -> Self {
        VerificationReport {
            checks: Vec::new(),
            status: CheckStatus::Pass,
        }
    }
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, index: CheckSubject, name: impl Into<String>, status: CheckStatus, witness: Option<String>) {
        if status == CheckStatus::Fail {
            self.status = CheckStatus::Fail;
        }
        self.checks.push(CheckRecord {
            index,
            name: name.into(),
            status,
            witness,
        });
    }

    /// Records `lhs == rhs`, or the error that prevented computing them.
    pub fn equal<T: PartialEq + fmt::Display>(
        &mut self,
        index: CheckSubject,
        name: impl Into<String>,
        sides: Result<(T, T)>,
    ) {
        match sides {
            Ok((l, r)) if l == r => self.push(index, name, CheckStatus::Pass, None),
            Ok((l, r)) => self.push(index, name, CheckStatus::Fail, Some(format!("lhs = {l}, rhs = {r}"))),
            Err(e) => self.push(index, name, CheckStatus::Fail, Some(e.to_string())),
        }
    }

    pub fn skip(&mut self, index: CheckSubject, name: impl Into<String>, reason: impl Into<String>) {
        self.push(index, name, CheckStatus::Skipped, Some(reason.into()));
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(c.index, c.name, c.status, c.witness);
        }
    }

    /// Sorts by subject, then check name.
    pub fn finish(mut self) -> Self {
        self.checks
            .sort_by(|a, b| a.index.cmp(&b.index).then_with(|| a.name.cmp(&b.name)));
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Displays a rational in canonical string form.
struct R(Rational);

impl PartialEq for R {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl fmt::Display for R {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

fn pair(l: Rational, r: Rational) -> (R, R) {
    (R(l), R(r))
}

fn at(n: &MultiIndex) -> CheckSubject {
    CheckSubject::Index(n.clone())
}

/// The compatibility equations for `r = 2`, with `c = b_{.,1}`, `d = b_{.,2}`
/// and the two `a` components in place of the usual `a`, `b`.
pub fn check_pde_r2(field: &CoefficientField, limits: &[usize]) -> Result<VerificationReport> {
    if field.r() != 2 {
        return Err(Error::NotBivariate(field.r()));
    }
    let (e1, e2) = (Direction::new(1), Direction::new(2));
    let mut report = VerificationReport::new();
    for n in enumerate_box(limits) {
        let up1 = n.step_up(e1);
        let up2 = n.step_up(e2);
        let a = |m: &MultiIndex| field.a(m, e1).cloned();
        let b = |m: &MultiIndex| field.a(m, e2).cloned();
        let c = |m: &MultiIndex| field.b(m, e1).cloned();
        let d = |m: &MultiIndex| field.b(m, e2).cloned();
        let cd = |m: &MultiIndex| -> Result<Rational> { Ok(c(m)? - d(m)?) };

        report.equal(
            at(&n),
            "pde2-b-difference",
            (|| Ok(pair(d(&up1)? - d(&n)?, c(&up2)? - c(&n)?)))(),
        );
        report.equal(
            at(&n),
            "pde2-a-sum",
            (|| {
                let lhs = b(&up1)? - b(&up2)? + a(&up1)? - a(&up2)?;
                let rhs = d(&up1)? * c(&n)? - d(&n)? * c(&up2)?;
                Ok(pair(lhs, rhs))
            })(),
        );
        match n.step_down(e1) {
            Err(_) => report.skip(at(&n), "pde2-first-ratio", "n_1 = 0"),
            Ok(low) => report.equal(
                at(&n),
                "pde2-first-ratio",
                (|| Ok(pair(a(&up2)? * cd(&low)?, a(&n)? * cd(&n)?)))(),
            ),
        }
        match n.step_down(e2) {
            Err(_) => report.skip(at(&n), "pde2-second-ratio", "n_2 = 0"),
            Ok(low) => report.equal(
                at(&n),
                "pde2-second-ratio",
                (|| Ok(pair(b(&up1)? * cd(&low)?, b(&n)? * cd(&n)?)))(),
            ),
        }
    }
    Ok(report.finish())
}

/// The compatibility equations for every ordered pair `(i, j)`, `i != j`.
pub fn check_pde_general(field: &CoefficientField, limits: &[usize]) -> VerificationReport {
    let mut report = VerificationReport::new();
    let r = field.r();
    let a_sum = |m: &MultiIndex| -> Result<Rational> { Ok(field.get(m)?.a_sum()) };
    let b = |m: &MultiIndex, k: Direction| field.b(m, k).cloned();
    for n in enumerate_box(limits) {
        for i in (1..=r).map(Direction::new) {
            for j in (1..=r).map(Direction::new) {
                if i == j {
                    continue;
                }
                let ui = n.step_up(i);
                let uj = n.step_up(j);
                let tag = format!("[{i},{j}]");
                report.equal(
                    at(&n),
                    format!("pde-b-exchange{tag}"),
                    (|| Ok(pair(b(&ui, j)? - b(&n, j)?, b(&uj, i)? - b(&n, i)?)))(),
                );
                report.equal(
                    at(&n),
                    format!("pde-a-sum{tag}"),
                    (|| {
                        let lhs = a_sum(&uj)? - a_sum(&ui)?;
                        let rhs = b(&uj, i)? * b(&n, j)? - b(&n, i)? * b(&ui, j)?;
                        Ok(pair(lhs, rhs))
                    })(),
                );
                match n.step_down(i) {
                    Err(_) => report.skip(at(&n), format!("pde-a-ratio{tag}"), format!("n_{i} = 0")),
                    Ok(low) => report.equal(
                        at(&n),
                        format!("pde-a-ratio{tag}"),
                        (|| {
                            let lhs = field.a(&n, i)? * (b(&n, j)? - b(&n, i)?);
                            let rhs = field.a(&uj, i)? * (b(&low, j)? - b(&low, i)?);
                            Ok(pair(lhs, rhs))
                        })(),
                    ),
                }
            }
        }
    }
    report.finish()
}

/// Oracle against closed form; for `r = 2` also against the determinant
/// route and its `d - c` formula; `b` from the type I pairing against `b`
/// from subleading coefficients.
pub fn differential_check(spec: &FamilySpec, oracle: &MomentOracle<'_>, limits: &[usize]) -> VerificationReport {
    let mut report = VerificationReport::new();
    for n in enumerate_box(limits) {
        let here = at(&n);
        let computed = oracle.coefficients(&n);
        if spec.is_builtin() {
            let sides = computed
                .clone()
                .and_then(|o| Ok((CoefficientsView(o), CoefficientsView(closed_form_coefficients(spec, &n)?))));
            report.equal(here.clone(), "closed-form", sides);
        } else {
            report.skip(here.clone(), "closed-form", "no closed form for custom moments");
        }
        if n.r() == 2 {
            let det = determinant_coefficients_r2(oracle.table(), &n);
            report.equal(
                here.clone(),
                "determinant-route",
                computed
                    .clone()
                    .and_then(|o| Ok((CoefficientsView(o), CoefficientsView(det.clone()?.coefficients)))),
            );
            report.equal(
                here.clone(),
                "determinant-d-minus-c",
                computed
                    .clone()
                    .and_then(|o| Ok(pair(det?.d_minus_c, &o.b[1] - &o.b[0]))),
            );
        }
        for j in n.directions() {
            report.equal(
                here.clone(),
                format!("b-pairing[{j}]"),
                computed
                    .as_ref()
                    .map_err(Clone::clone)
                    .and_then(|o| Ok(pair(oracle.b_from_pairing(&n, j)?, o.b[j.position()].clone()))),
            );
        }
    }
    report.finish()
}

/// `a` and `b` arrays printed as JSON-like lists.
#[derive(PartialEq)]
struct CoefficientsView(crate::mop::NnCoefficients);

impl fmt::Display for CoefficientsView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = self.0.to_json();
        write!(f, "a = [{}], b = [{}]", j.a.join(", "), j.b.join(", "))
    }
}

/// Family-specific closed-form identities: the Laguerre (first kind) and
/// Jacobi-Piñeiro sums of `a`, the two forms of the Jacobi-Piñeiro
/// subleading coefficient, and the residue sum.
pub fn identities_check(spec: &FamilySpec, oracle: &MomentOracle<'_>, limits: &[usize]) -> VerificationReport {
    let mut report = VerificationReport::new();
    for n in enumerate_box(limits) {
        let here = at(&n);
        let a_sum = || -> Result<Rational> { Ok(oracle.coefficients(&n)?.a_sum()) };
        let alpha = match spec {
            FamilySpec::Laguerre1 { alpha } => {
                report.equal(
                    here.clone(),
                    "laguerre1-a-sum",
                    (|| Ok(pair(a_sum()?, laguerre1_sum_identity(spec, &n)?)))(),
                );
                alpha
            }
            FamilySpec::JacobiPineiro { alpha, .. } => {
                report.equal(
                    here.clone(),
                    "jp-delta-forms",
                    (|| Ok(pair(jp_delta(spec, &n)?, jp_delta_partial_fraction(spec, &n)?)))(),
                );
                report.equal(
                    here.clone(),
                    "jp-delta-solve",
                    (|| Ok(pair(jp_delta(spec, &n)?, oracle.delta(&n)?)))(),
                );
                match jp_sum_identity(spec, &n) {
                    Err(Error::EvaluationPole(why)) => report.skip(here.clone(), "jp-a-sum", why),
                    other => report.equal(here.clone(), "jp-a-sum", (|| Ok(pair(a_sum()?, other?)))()),
                }
                alpha
            }
            _ => continue,
        };
        report.equal(
            here,
            "residue-sum",
            (|| Ok(pair(residue_sum(alpha, &n)?, Rational::from_integer(n.size().into()))))(),
        );
    }
    report.finish()
}

/// Pairings `int P_n Q_m dmu` against the three determined cases: zero when
/// `m <= n`, zero when `|n| <= |m| - 2`, one when `|m| = |n| + 1`.
pub fn check_biorthogonality(oracle: &MomentOracle<'_>, limits: &[usize]) -> VerificationReport {
    let mut report = VerificationReport::new();
    let indices = enumerate_box(limits);
    for n in &indices {
        for m in &indices {
            let subject = CheckSubject::Pair(n.clone(), m.clone());
            let expected = if m.le_componentwise(n) || n.size() + 2 <= m.size() {
                0
            } else if m.size() == n.size() + 1 {
                1
            } else {
                report.skip(subject, "biorthogonality", "no determined value");
                continue;
            };
            report.equal(
                subject,
                "biorthogonality",
                oracle
                    .biorthogonality_pairing(n, m)
                    .map(|v| pair(v, Rational::from_integer(expected.into()))),
            );
        }
    }
    report.finish()
}

/// Christoffel-Darboux identity at every index of the box, over all monotone
/// paths when there are at most `max_paths`, otherwise `max_paths` seeded
/// ones.
pub fn check_cd(oracle: &MomentOracle<'_>, limits: &[usize], max_paths: usize, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new();
    for n in enumerate_box(limits) {
        let outcome = (|| -> Result<Option<String>> {
            let mut reference = None;
            for path in monotone_paths(&n, max_paths, seed) {
                let sides = cd_sides(oracle, &n, &path)?;
                let steps: Vec<String> = path.steps().iter().map(|d| d.to_string()).collect();
                if let Some(bad) = sides.iter().position(|s| s.lhs != s.rhs) {
                    return Ok(Some(format!(
                        "path [{}], weight {}: lhs = {}, rhs = {}",
                        steps.join(","),
                        bad + 1,
                        sides[bad].lhs,
                        sides[bad].rhs
                    )));
                }
                let lhs: Vec<_> = sides.into_iter().map(|s| s.lhs).collect();
                match &reference {
                    None => reference = Some(lhs),
                    Some(r) if *r != lhs => {
                        return Ok(Some(format!("path [{}] gives a different kernel", steps.join(","))))
                    }
                    Some(_) => {}
                }
            }
            Ok(None)
        })();
        match outcome {
            Ok(None) => report.push(at(&n), "christoffel-darboux", CheckStatus::Pass, None),
            Ok(Some(w)) => report.push(at(&n), "christoffel-darboux", CheckStatus::Fail, Some(w)),
            Err(e) => report.push(at(&n), "christoffel-darboux", CheckStatus::Fail, Some(e.to_string())),
        }
    }
    report.finish()
}

/// Type II generation from the field over the box plus one ring, the
/// three-neighbor relation, and (given an oracle) agreement with the moment
/// solve and the type I recurrence.
pub fn check_recurrence(
    field: &CoefficientField,
    oracle: Option<&MomentOracle<'_>>,
    limits: &[usize],
) -> VerificationReport {
    let mut report = VerificationReport::new();
    let outer = widen(limits, 1);
    let polys = match generate_along_box(field, &outer) {
        Ok(p) => p,
        Err(Error::InconsistentField { index, first, second }) => {
            report.push(
                at(&index),
                "generation",
                CheckStatus::Fail,
                Some(format!("steps along e_{first} and e_{second} disagree")),
            );
            return report.finish();
        }
        Err(e) => {
            report.push(at(&MultiIndex::zero(field.r())), "generation", CheckStatus::Fail, Some(e.to_string()));
            return report.finish();
        }
    };
    for n in enumerate_box(limits) {
        let here = at(&n);
        report.push(here.clone(), "generation", CheckStatus::Pass, None);
        for j in n.directions() {
            for k in n.directions() {
                if j >= k {
                    continue;
                }
                let name = format!("neighbor-difference[{j},{k}]");
                match neighbor_difference_identity(field, &polys, &n, j, k) {
                    Ok(true) => report.push(here.clone(), name, CheckStatus::Pass, None),
                    Ok(false) => report.push(
                        here.clone(),
                        name,
                        CheckStatus::Fail,
                        Some(format!("P at {} and {} differ by more than the b-difference", n.step_up(k), n.step_up(j))),
                    ),
                    Err(e) => report.push(here.clone(), name, CheckStatus::Fail, Some(e.to_string())),
                }
            }
        }
        let Some(oracle) = oracle else { continue };
        report.equal(
            here.clone(),
            "generation-vs-solve",
            oracle.type2(&n).map(|p| {
                let generated = polys[&n].as_poly().clone();
                (generated, p.into_poly())
            }),
        );
        for k in n.directions() {
            let name = format!("type1-recurrence[{k}]");
            if n.entry(k) == 0 {
                report.skip(here.clone(), name, format!("n_{k} = 0"));
                continue;
            }
            match type1_recurrence_check(oracle, &n, k) {
                Ok(true) => report.push(here.clone(), name, CheckStatus::Pass, None),
                Ok(false) => report.push(here.clone(), name, CheckStatus::Fail, Some("identity does not hold".into())),
                Err(e) => report.push(here.clone(), name, CheckStatus::Fail, Some(e.to_string())),
            }
        }
    }
    report.finish()
}

/// Check groups selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Pde,
    Cd,
    Biorth,
    Recurrence,
    Differential,
    Identities,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Pde,
        CheckKind::Cd,
        CheckKind::Biorth,
        CheckKind::Recurrence,
        CheckKind::Differential,
        CheckKind::Identities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Pde => "pde",
            CheckKind::Cd => "cd",
            CheckKind::Biorth => "biorth",
            CheckKind::Recurrence => "recurrence",
            CheckKind::Differential => "differential",
            CheckKind::Identities => "identities",
        }
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown check '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    pub checks: Vec<CheckKind>,
    pub max_paths: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            checks: CheckKind::ALL.to_vec(),
            max_paths: 20,
            seed: 0,
        }
    }
}

/// Moments deep enough for every check over `limits`. Custom tables are
/// used as given.
pub fn suite_table(spec: &FamilySpec, limits: &[usize]) -> Result<MomentTable> {
    match spec {
        FamilySpec::Custom(t) => Ok(t.clone()),
        _ => build_moments(spec, required_depth(limits)),
    }
}

/// Runs the selected checks over `limits` for a family or custom moments.
pub fn run_suite(spec: &FamilySpec, limits: &[usize], opts: &SuiteOptions) -> Result<VerificationReport> {
    if limits.len() != spec.r() {
        return Err(Error::DimensionMismatch(format!(
            "box of dimension {} for r = {}",
            limits.len(),
            spec.r()
        )));
    }
    let table = suite_table(spec, limits)?;
    let oracle = MomentOracle::new(&table);
    let mut report = VerificationReport::new();
    let needs_field = opts.checks.iter().any(|k| matches!(k, CheckKind::Pde | CheckKind::Recurrence));
    let field = if needs_field {
        Some(CoefficientField::from_oracle(&oracle, &widen(limits, 1))?)
    } else {
        None
    };
    for kind in &opts.checks {
        match kind {
            CheckKind::Pde => report.merge(pde_report(field.as_ref().expect("field built"), limits)?),
            CheckKind::Cd => report.merge(check_cd(&oracle, limits, opts.max_paths, opts.seed)),
            CheckKind::Biorth => report.merge(check_biorthogonality(&oracle, limits)),
            CheckKind::Recurrence => {
                report.merge(check_recurrence(field.as_ref().expect("field built"), Some(&oracle), limits))
            }
            CheckKind::Differential => report.merge(differential_check(spec, &oracle, limits)),
            CheckKind::Identities => report.merge(identities_check(spec, &oracle, limits)),
        }
    }
    Ok(report.finish())
}

/// Checks that need only a coefficient field: compatibility equations and
/// generation consistency. Other selected groups are ignored.
pub fn run_field_suite(field: &CoefficientField, limits: &[usize], opts: &SuiteOptions) -> Result<VerificationReport> {
    if limits.len() != field.r() {
        return Err(Error::DimensionMismatch(format!(
            "box of dimension {} for r = {}",
            limits.len(),
            field.r()
        )));
    }
    let mut report = VerificationReport::new();
    for kind in &opts.checks {
        match kind {
            CheckKind::Pde => report.merge(pde_report(field, limits)?),
            CheckKind::Recurrence => report.merge(check_recurrence(field, None, limits)),
            _ => {}
        }
    }
    Ok(report.finish())
}

fn pde_report(field: &CoefficientField, limits: &[usize]) -> Result<VerificationReport> {
    let mut report = check_pde_general(field, limits);
    if field.r() == 2 {
        report.merge(check_pde_r2(field, limits)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn charlier() -> FamilySpec {
        FamilySpec::charlier(vec![rat_int(1), rat_int(2)]).unwrap()
    }

    fn hermite() -> FamilySpec {
        FamilySpec::hermite(vec![rat_int(1), rat_int(-1)]).unwrap()
    }

    fn skipped_at_boundary_only(report: &VerificationReport) -> bool {
        report.checks.iter().all(|c| match (&c.index, c.status) {
            (_, CheckStatus::Pass) => true,
            (CheckSubject::Index(n), CheckStatus::Skipped) => n.entries().contains(&0),
            _ => false,
        })
    }

    #[test]
    fn pde_r2_closed_forms_pass() {
        for spec in [charlier(), hermite()] {
            let field = CoefficientField::from_closed_form(&spec, &[5, 5]).unwrap();
            let report = check_pde_r2(&field, &[4, 4]).unwrap();
            assert!(report.passed());
            assert!(skipped_at_boundary_only(&report));
            assert_eq!(report.count(CheckStatus::Skipped), 10);
        }
    }

    #[test]
    fn pde_r2_detects_mutation() {
        let mut field = CoefficientField::from_closed_form(&charlier(), &[5, 5]).unwrap();
        field.get_mut(&mi(&[2, 2])).unwrap().a[0] = rat_int(99);
        let report = check_pde_r2(&field, &[4, 4]).unwrap();
        assert!(!report.passed());
        let touched: Vec<_> = report.failures().collect();
        assert!(touched.len() >= 4);
        for f in touched {
            assert!(f.witness.as_ref().unwrap().contains("lhs"));
        }
    }

    #[test]
    fn pde_r2_requires_bivariate() {
        let spec = FamilySpec::charlier(vec![rat_int(1), rat_int(2), rat_int(3)]).unwrap();
        let field = CoefficientField::from_closed_form(&spec, &[1, 1, 1]).unwrap();
        assert!(matches!(check_pde_r2(&field, &[0, 0, 0]), Err(Error::NotBivariate(3))));
    }

    #[test]
    fn missing_ring_fails() {
        let field = CoefficientField::from_closed_form(&charlier(), &[2, 2]).unwrap();
        assert!(!check_pde_r2(&field, &[2, 2]).unwrap().passed());
    }

    #[test]
    fn general_matches_r2_verdicts() {
        let mut field = CoefficientField::from_closed_form(&charlier(), &[4, 4]).unwrap();
        field.get_mut(&mi(&[1, 2])).unwrap().b[1] += rat(1, 3);
        let r2 = check_pde_r2(&field, &[3, 3]).unwrap();
        let general = check_pde_general(&field, &[3, 3]);
        for n in enumerate_box(&[3, 3]) {
            let fails = |r: &VerificationReport| {
                r.checks
                    .iter()
                    .any(|c| c.index == at(&n) && c.status == CheckStatus::Fail)
            };
            assert_eq!(fails(&r2), fails(&general), "verdicts differ at {n}");
        }
    }

    #[test]
    fn general_three_measures() {
        let spec = FamilySpec::laguerre2(rat(1, 2), vec![rat_int(1), rat_int(2), rat_int(3)]).unwrap();
        let field = CoefficientField::from_closed_form(&spec, &[3, 3, 3]).unwrap();
        assert!(check_pde_general(&field, &[2, 2, 2]).passed());
        let jp = FamilySpec::jacobi_pineiro(vec![rat(1, 2), rat(5, 3)], rat(1, 3)).unwrap();
        let field = CoefficientField::from_closed_form(&jp, &[4, 4]).unwrap();
        assert!(check_pde_general(&field, &[3, 3]).passed());
    }

    #[test]
    fn differential_examples() {
        for spec in [hermite(), charlier()] {
            let t = suite_table(&spec, &[3, 3]).unwrap();
            let o = MomentOracle::new(&t);
            let report = differential_check(&spec, &o, &[3, 3]);
            assert!(report.passed(), "{}", report.to_json());
            assert_eq!(report.count(CheckStatus::Skipped), 0);
        }
        let l = FamilySpec::laguerre1(vec![rat(1, 2), rat(5, 3)]).unwrap();
        let t = suite_table(&l, &[2, 2]).unwrap();
        let o = MomentOracle::new(&t);
        assert!(differential_check(&l, &o, &[2, 2]).passed());
        assert!(identities_check(&l, &o, &[2, 2]).passed());
    }

    #[test]
    fn biorthogonality_examples() {
        let t = suite_table(&charlier(), &[2, 2]).unwrap();
        let o = MomentOracle::new(&t);
        assert_eq!(o.biorthogonality_pairing(&mi(&[2, 1]), &mi(&[1, 1])).unwrap(), rat_int(0));
        let report = check_biorthogonality(&o, &[2, 2]);
        assert!(report.passed());
        assert!(report.count(CheckStatus::Skipped) > 0);
    }

    #[test]
    fn suite_is_deterministic_and_sorted() {
        let opts = SuiteOptions::default();
        let a = run_suite(&charlier(), &[2, 1], &opts).unwrap();
        let b = run_suite(&charlier(), &[2, 1], &opts).unwrap();
        assert!(a.passed(), "{}", a.to_json());
        assert_eq!(a.to_json(), b.to_json());
        let keys: Vec<_> = a.checks.iter().map(|c| (c.index.clone(), c.name.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn report_json_shape() {
        let mut r = VerificationReport::new();
        r.push(at(&mi(&[1, 0])), "x", CheckStatus::Pass, None);
        r.push(CheckSubject::Pair(mi(&[0]), mi(&[1])), "y", CheckStatus::Fail, Some("w".into()));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["status"], "fail");
        assert_eq!(v["checks"][0]["index"], serde_json::json!([1, 0]));
        assert_eq!(v["checks"][1]["index"], serde_json::json!([[0], [1]]));
        assert_eq!(v["checks"][1]["witness"], "w");
    }

    #[test]
    fn field_suite_flags_mutation() {
        let mut field = CoefficientField::from_closed_form(&charlier(), &[3, 3]).unwrap();
        let opts = SuiteOptions::default();
        assert!(run_field_suite(&field, &[2, 2], &opts).unwrap().passed());
        field.get_mut(&mi(&[1, 1])).unwrap().b[0] += rat_int(1);
        assert!(!run_field_suite(&field, &[2, 2], &opts).unwrap().passed());
    }

    #[test]
    fn check_kind_names() {
        for k in CheckKind::ALL {
            assert_eq!(k.name().parse::<CheckKind>().unwrap(), k);
        }
        assert!("bogus".parse::<CheckKind>().is_err());
    }
}
