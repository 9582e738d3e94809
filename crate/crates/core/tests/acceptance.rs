//! Acceptance suite: one PASS/FAIL line per criterion. Runs as a plain
//! binary so the report prints in order; exits non-zero on any failure.

use std::process::Command;
use std::time::Instant;

use nnrec::cd::{cd_rhs, cd_sides};
use nnrec::exact::{rat, rat_int, Rational};
use nnrec::families::{
    closed_form_coefficients, jp_delta, jp_delta_partial_fraction, jp_sum_identity,
    laguerre1_sum_identity, residue_sum,
};
use nnrec::lattice::{enumerate_box, monotone_paths, path_count, widen, LatticePath};
use nnrec::moments::{build_moments, required_depth};
use nnrec::mop::determinant_coefficients_r2;
use nnrec::recurrence::CoefficientField;
use nnrec::verify::{check_pde_general, check_pde_r2, CheckStatus, CheckSubject, VerificationReport};
use nnrec::weights::WeightEvaluator;
use nnrec::{FamilySpec, MomentOracle, MultiIndex};

struct Outcome {
    passed: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: true,
        detail: detail.into(),
    }
}

fn bad(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: detail.into(),
    }
}

fn fixtures() -> Vec<(&'static str, FamilySpec)> {
    vec![
        ("hermite", FamilySpec::hermite(vec![rat_int(1), rat_int(-1)]).unwrap()),
        ("charlier", FamilySpec::charlier(vec![rat_int(1), rat_int(2)]).unwrap()),
        ("laguerre1", FamilySpec::laguerre1(vec![rat(1, 2), rat(5, 3)]).unwrap()),
        ("laguerre2", FamilySpec::laguerre2(rat(1, 2), vec![rat_int(1), rat_int(2)]).unwrap()),
        (
            "jacobi-pineiro",
            FamilySpec::jacobi_pineiro(vec![rat(1, 2), rat(1, 3)], rat(1, 3)).unwrap(),
        ),
    ]
}

const BOX: [usize; 2] = [5, 5];

fn closed_form_equals_oracle() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (name, spec) in fixtures() {
        let table = build_moments(&spec, required_depth(&BOX)).unwrap();
        let oracle = MomentOracle::new(&table);
        for n in enumerate_box(&BOX) {
            let o = oracle.coefficients(&n);
            let c = closed_form_coefficients(&spec, &n);
            match (o, c) {
                (Ok(o), Ok(c)) if o == c => count += 1,
                (o, c) => return bad(format!("{name} at {n}: oracle {o:?}, closed form {c:?}")),
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        return bad(format!("{count} indices agree but took {secs:.1} s (limit 60 s)"));
    }
    ok(format!("{count} indices, 5 families, {secs:.2} s"))
}

fn three_measures() -> Outcome {
    let limits = [3, 3, 3];
    let specs = [
        ("charlier", FamilySpec::charlier(vec![rat_int(1), rat_int(2), rat_int(3)]).unwrap()),
        (
            "laguerre2",
            FamilySpec::laguerre2(rat(1, 2), vec![rat_int(1), rat_int(2), rat_int(3)]).unwrap(),
        ),
    ];
    let mut count = 0;
    let mut pde = 0;
    for (name, spec) in specs {
        let table = build_moments(&spec, required_depth(&limits)).unwrap();
        let oracle = MomentOracle::new(&table);
        for n in enumerate_box(&limits) {
            if oracle.coefficients(&n).ok() != closed_form_coefficients(&spec, &n).ok() {
                return bad(format!("{name}: oracle and closed form differ at {n}"));
            }
            count += 1;
        }
        let field = CoefficientField::from_oracle(&oracle, &widen(&limits, 1)).unwrap();
        let report = check_pde_general(&field, &limits);
        if let Some(f) = report.failures().next() {
            return bad(format!("{name}: {} failed at {:?}: {:?}", f.name, f.index, f.witness));
        }
        pde += report.count(CheckStatus::Pass);
    }
    ok(format!("{count} indices agree, {pde} compatibility checks pass"))
}

fn determinant_route() -> Outcome {
    let mut count = 0;
    for (name, spec) in fixtures() {
        let table = build_moments(&spec, required_depth(&BOX)).unwrap();
        let oracle = MomentOracle::new(&table);
        for n in enumerate_box(&BOX) {
            let o = oracle.coefficients(&n).unwrap();
            let d = match determinant_coefficients_r2(&table, &n) {
                Ok(d) => d,
                Err(e) => return bad(format!("{name} at {n}: {e}")),
            };
            if d.coefficients != o {
                return bad(format!("{name} at {n}: determinant route {:?} vs oracle {o:?}", d.coefficients));
            }
            if d.d_minus_c != &o.b[1] - &o.b[0] {
                return bad(format!("{name} at {n}: d - c = {} but b_2 - b_1 = {}", d.d_minus_c, &o.b[1] - &o.b[0]));
            }
            count += 1;
        }
    }
    ok(format!("{count} indices, coefficients and d - c ratio"))
}

fn boundary_skips_only(report: &VerificationReport) -> bool {
    report.checks.iter().all(|c| match (&c.index, c.status) {
        (_, CheckStatus::Pass) => true,
        (CheckSubject::Index(n), CheckStatus::Skipped) => {
            let e = n.entries();
            (c.name == "pde2-first-ratio" && e[0] == 0) || (c.name == "pde2-second-ratio" && e[1] == 0)
        }
        _ => false,
    })
}

fn compatibility_r2() -> Outcome {
    let mut checks = 0;
    for (name, spec) in fixtures() {
        let table = build_moments(&spec, required_depth(&BOX)).unwrap();
        let oracle = MomentOracle::new(&table);
        let field = CoefficientField::from_oracle(&oracle, &widen(&BOX, 1)).unwrap();
        let report = check_pde_r2(&field, &BOX).unwrap();
        if !report.passed() || !boundary_skips_only(&report) {
            let f = report.checks.iter().find(|c| c.status != CheckStatus::Pass).unwrap();
            return bad(format!("{name}: {} {:?} at {:?}: {:?}", f.name, f.status, f.index, f.witness));
        }
        checks += report.count(CheckStatus::Pass);
        let mut mutated = field.clone();
        mutated.get_mut(&MultiIndex::new(vec![2, 2])).unwrap().a[0] += rat_int(1);
        if check_pde_r2(&mutated, &BOX).unwrap().passed() {
            return bad(format!("{name}: mutation at (2,2) not detected"));
        }
    }
    ok(format!("{checks} equation instances pass; mutation detected in all 5 fields"))
}

fn christoffel_darboux() -> Outcome {
    let specs = [
        ("charlier", FamilySpec::charlier(vec![rat_int(1), rat_int(2)]).unwrap()),
        ("hermite", FamilySpec::hermite(vec![rat_int(1), rat_int(-1)]).unwrap()),
    ];
    let mut identities = 0;
    for (name, spec) in specs {
        let table = build_moments(&spec, required_depth(&[6, 6])).unwrap();
        let oracle = MomentOracle::new(&table);
        for n in enumerate_box(&[6, 6]).into_iter().filter(|n| n.size() <= 6) {
            let all = path_count(&n).unwrap() <= 20;
            let paths = monotone_paths(&n, if all { 20 } else { 10 }, 7);
            let rhs = cd_rhs(&oracle, &n).unwrap();
            for p in &paths {
                let sides = cd_sides(&oracle, &n, p).unwrap();
                for (w, s) in sides.iter().enumerate() {
                    if s.lhs != s.rhs || s.rhs != rhs[w] {
                        return bad(format!("{name} at {n}, path {:?}, weight {}", p.steps(), w + 1));
                    }
                    identities += 1;
                }
            }
        }
    }
    ok(format!("{identities} per-weight bivariate identities"))
}

fn biorthogonality() -> Outcome {
    let spec = FamilySpec::charlier(vec![rat_int(1), rat_int(2)]).unwrap();
    let table = build_moments(&spec, required_depth(&BOX)).unwrap();
    let oracle = MomentOracle::new(&table);
    let indices: Vec<_> = enumerate_box(&BOX).into_iter().filter(|n| n.size() <= 5).collect();
    let mut checked = 0;
    for n in &indices {
        for m in &indices {
            let expected = if m.le_componentwise(n) || n.size() + 2 <= m.size() {
                rat_int(0)
            } else if m.size() == n.size() + 1 {
                rat_int(1)
            } else {
                continue;
            };
            let got = oracle.biorthogonality_pairing(n, m).unwrap();
            if got != expected {
                return bad(format!("n = {n}, m = {m}: {got} instead of {expected}"));
            }
            checked += 1;
        }
    }
    ok(format!("{checked} determined pairs"))
}

fn closed_form_identities() -> Outcome {
    let (_, lag) = &fixtures()[2];
    let (_, jp) = &fixtures()[4];
    let mut count = 0;
    for (spec, alpha) in [(lag, vec![rat(1, 2), rat(5, 3)]), (jp, vec![rat(1, 2), rat(1, 3)])] {
        let table = build_moments(spec, required_depth(&BOX)).unwrap();
        let oracle = MomentOracle::new(&table);
        for n in enumerate_box(&BOX) {
            let sum = oracle.coefficients(&n).unwrap().a_sum();
            if residue_sum(&alpha, &n).unwrap() != Rational::from_integer(n.size().into()) {
                return bad(format!("residue sum at {n}"));
            }
            match spec {
                FamilySpec::Laguerre1 { .. } => {
                    let rhs = laguerre1_sum_identity(spec, &n).unwrap();
                    if rhs != sum {
                        return bad(format!("laguerre1 sum at {n}: {rhs} vs {sum}"));
                    }
                }
                _ => {
                    let d = jp_delta(spec, &n).unwrap();
                    if d != jp_delta_partial_fraction(spec, &n).unwrap() || d != oracle.delta(&n).unwrap() {
                        return bad(format!("jacobi-pineiro delta at {n}"));
                    }
                    let rhs = jp_sum_identity(spec, &n).unwrap();
                    if rhs != sum {
                        return bad(format!("jacobi-pineiro sum at {n}: {rhs} vs {sum}"));
                    }
                }
            }
            count += 1;
        }
    }
    ok(format!("{count} indices over two fixtures"))
}

fn r1_reductions() -> Outcome {
    let (al, be) = (rat(1, 2), rat(1, 3));
    let lag = FamilySpec::laguerre1(vec![al.clone()]).unwrap();
    let jac = FamilySpec::jacobi_pineiro(vec![al.clone()], be.clone()).unwrap();
    let lt = build_moments(&lag, 20).unwrap();
    let jt = build_moments(&jac, 20).unwrap();
    let (lo, jo) = (MomentOracle::new(&lt), MomentOracle::new(&jt));
    let half = rat(1, 2);
    for k in 0..=8usize {
        let n = Rational::from_integer(k.into());
        let idx = MultiIndex::new(vec![k]);
        let c = lo.coefficients(&idx).unwrap();
        if c.b[0] != rat_int(2) * &n + &al + rat_int(1) || c.a[0] != &n * (&n + &al) {
            return bad(format!("laguerre n = {k}: {c:?}"));
        }
        let c = jo.coefficients(&idx).unwrap();
        let s = &al + &be;
        let two_n = rat_int(2) * &n;
        let a2 = &n * (&n + &al) * (&n + &be) * (&n + &s)
            / ((&two_n + &s - rat_int(1)) * (&two_n + &s) * (&two_n + &s) * (&two_n + &s + rat_int(1)));
        // the n = 0 value is 0 by definition; the quotient is 0/0 only when alpha + beta = 0
        if k > 0 && c.a[0] != a2 {
            return bad(format!("jacobi a_n^2 at n = {k}: {} vs {a2}", c.a[0]));
        }
        let delta = -(&n * (&n + &al)) / (&two_n + &s);
        if jo.delta(&idx).unwrap() != delta {
            return bad(format!("jacobi delta at n = {k}"));
        }
        let b = &half + (&al * &al - &be * &be) / (rat_int(2) * (&two_n + &s) * (&two_n + &s + rat_int(2)));
        if c.b[0] != b {
            return bad(format!("jacobi b_n at n = {k}: {} vs {b}", c.b[0]));
        }
    }
    ok("laguerre a_n, b_n; jacobi a_n^2, delta_n, b_n = 1/2 + (alpha^2 - beta^2)/(2(2n+s)(2n+s+2)) for n <= 8")
}

/// `sum_{k<n} p_k(x) p_k(y) w(y) / h_k` from the three-term recurrence.
fn classical_charlier_kernel(a: f64, n: usize, x: f64, y: f64) -> f64 {
    let eval = |t: f64| {
        let mut p = vec![1.0, t - a];
        for k in 1..n {
            let next = (t - k as f64 - a) * p[k] - a * k as f64 * p[k - 1];
            p.push(next);
        }
        p
    };
    let (px, py) = (eval(x), eval(y));
    let mut h = 1.0;
    let mut fact = 1.0;
    let mut sum = 0.0;
    for k in 0..n {
        if k > 0 {
            h *= a * k as f64;
        }
        sum += px[k] * py[k] / h;
    }
    for k in 2..=(y as usize) {
        fact *= k as f64;
    }
    sum * (-a).exp() * a.powf(y) / fact
}

fn kernel_float() -> Outcome {
    let spec = FamilySpec::charlier(vec![rat_int(1)]).unwrap();
    let table = build_moments(&spec, 16).unwrap();
    let oracle = MomentOracle::new(&table);
    let weights = WeightEvaluator::new(&spec).unwrap();
    let n = MultiIndex::new(vec![3]);
    let path = LatticePath::canonical(&n);
    let mut worst: f64 = 0.0;
    for x in [-1.5, 0.0, 0.75, 2.0, 4.25] {
        for y in [0.0, 1.0, 2.0, 3.0, 5.0] {
            let got = nnrec::cd::cd_kernel_eval(&oracle, &weights, &n, &path, x, y).unwrap();
            let want = classical_charlier_kernel(1.0, 3, x, y);
            let rel = (got - want).abs() / want.abs();
            worst = worst.max(rel);
        }
    }
    if worst <= 1e-12 {
        ok(format!("worst relative error {worst:.2e} on 25 points (tolerance 1e-12)"))
    } else {
        bad(format!("worst relative error {worst:.2e} exceeds 1e-12"))
    }
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_nnrec"))
            .args(["verify", "--family", "charlier", "--params", "a=1,2", "--box", "3,3", "--max-paths", "4", "--seed", "11"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    if !a.status.success() {
        return bad(format!("verify exited with {:?}", a.status.code()));
    }
    if a.stdout != b.stdout {
        return bad("reports differ between runs");
    }
    ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("closed form equals moment oracle, r = 2, box 5x5", closed_form_equals_oracle),
        ("r = 3 closed forms and compatibility, box 3x3x3", three_measures),
        ("determinant route and d - c ratio, box 5x5", determinant_route),
        ("r = 2 compatibility equations with negative control", compatibility_r2),
        ("Christoffel-Darboux per weight, |n| <= 6", christoffel_darboux),
        ("biorthogonality pattern, |n|, |m| <= 5", biorthogonality),
        ("Laguerre and Jacobi-Pineiro identities", closed_form_identities),
        ("r = 1 classical coefficients, n <= 8", r1_reductions),
        ("float Charlier kernel against classical kernel", kernel_float),
        ("byte-identical verify reports", determinism),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let outcome = f();
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        if !outcome.passed {
            failed += 1;
        }
        println!("[{tag}] {:>2}. {title}: {}", i + 1, outcome.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
