//! Command-line front end. Exit codes: 0 success, 1 computation or
//! verification failure, 2 usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cd::cd_kernel_eval;
use crate::error::Error;
use crate::exact::{format_rational, parse_rational, rational_to_f64, Rational};
use crate::families::closed_form_coefficients;
use crate::lattice::{enumerate_box, Direction, LatticePath, MultiIndex};
use crate::moments::{build_moments, ingest_custom, Family, FamilySpec, MomentTable};
use crate::mop::{determinant_coefficients_r2, MomentOracle, NnCoefficients};
use crate::recurrence::CoefficientField;
use crate::verify::{run_field_suite, run_suite, CheckKind, SuiteOptions};
use crate::weights::WeightEvaluator;

#[derive(Debug, Parser)]
#[command(name = "nnrec", version, about = "Exact nearest-neighbor recurrence coefficients for multiple orthogonal polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Built-in family: hermite, charlier, laguerre1, laguerre2, jacobi-pineiro
    #[arg(long)]
    pub family: Option<String>,

    /// Parameter assignments such as `alpha=1/2,5/3 beta=1/3`
    #[arg(long, num_args = 1.., value_name = "NAME=V1,V2")]
    pub params: Vec<String>,

    /// Moment file in the custom JSON format
    #[arg(long, value_name = "PATH")]
    pub custom: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Add double-precision values next to the exact ones
    #[arg(long)]
    pub float: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    ClosedForm,
    Determinant,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recurrence coefficients a and b over a box
    Coeffs {
        #[command(flatten)]
        source: SourceArgs,
        /// Box limits, one per measure
        #[arg(long = "box", value_name = "L1,L2")]
        limits: String,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Type II polynomial coefficients, lowest degree first
    Poly {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_name = "N1,N2")]
        index: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Type I polynomial coefficients, one array per measure
    Typei {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_name = "N1,N2")]
        index: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run verification checks over a box and print a JSON report
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long = "box", value_name = "L1,L2")]
        limits: String,
        /// Comma-separated subset of pde,cd,biorth,recurrence,differential,identities
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Largest number of lattice paths per index for the kernel identity
        #[arg(long, default_value_t = 20)]
        max_paths: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coefficient field as written by `coeffs`; replaces the moment source
        #[arg(long, value_name = "PATH")]
        field: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Christoffel-Darboux kernel values on a grid, as CSV
    Kernel {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_name = "N1,N2")]
        index: String,
        /// Lattice path as a list of directions; defaults to e_1 steps first
        #[arg(long, value_name = "D1,D2,..")]
        path: Option<String>,
        /// Grid as `xmin:xmax:points,ymin:ymax:points`
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Reduced moment table in the custom JSON format
    Moments {
        #[command(flatten)]
        source: SourceArgs,
        /// Highest moment degree
        #[arg(long, default_value_t = 10)]
        degree: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Usage errors exit with 2, everything else with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

type CliResult<T> = std::result::Result<T, CliError>;

fn parse_usize_list(what: &str, text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("{what}: '{s}' is not a non-negative integer")))
        })
        .collect()
}

/// `name=v1,v2` assignments into a map of exact rationals.
pub fn parse_params(items: &[String]) -> CliResult<BTreeMap<String, Vec<Rational>>> {
    let mut out = BTreeMap::new();
    for item in items {
        let (name, values) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("parameter '{item}' is not of the form name=v1,v2")))?;
        let parsed = values
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| usage(format!("parameter '{name}': {e}")))?;
        if out.insert(name.trim().to_string(), parsed).is_some() {
            return Err(usage(format!("parameter '{name}' given twice")));
        }
    }
    Ok(out)
}

/// Exactly one moment source: a built-in family with parameters or a file.
pub fn resolve_source(source: &SourceArgs) -> CliResult<FamilySpec> {
    match (&source.family, &source.custom) {
        (Some(_), Some(_)) => Err(usage("give either --family or --custom, not both")),
        (None, None) => Err(usage("a moment source is required: --family or --custom")),
        (None, Some(path)) => {
            if !source.params.is_empty() {
                return Err(usage("--params applies to --family only"));
            }
            Ok(FamilySpec::Custom(ingest_custom(path)?))
        }
        (Some(name), None) => {
            let family: Family = name.parse().map_err(usage)?;
            if family == Family::Custom {
                return Err(usage("use --custom PATH for custom moments"));
            }
            let params = parse_params(&source.params)?;
            FamilySpec::from_params(family, &params).map_err(usage)
        }
    }
}

fn check_dimension(spec: &FamilySpec, len: usize, what: &str) -> CliResult<()> {
    if spec.r() != len {
        return Err(usage(format!("{what} has {len} entries but the source has r = {}", spec.r())));
    }
    Ok(())
}

/// Moments up to `degree`; custom tables are used as given.
fn table_for(spec: &FamilySpec, degree: usize) -> CliResult<MomentTable> {
    match spec {
        FamilySpec::Custom(t) => Ok(t.clone()),
        _ => Ok(build_moments(spec, degree)?),
    }
}

fn degree_for(entries: &[usize], extra: usize) -> usize {
    entries.iter().sum::<usize>() + entries.iter().copied().max().unwrap_or(0) + extra
}

fn floats(v: &[Rational]) -> Vec<f64> {
    v.iter().map(rational_to_f64).collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Failure(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Failure(e.to_string())),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("value serializes")
}

fn coefficient_rows(spec: &FamilySpec, limits: &[usize], method: Method) -> CliResult<Vec<(MultiIndex, NnCoefficients)>> {
    match method {
        Method::Oracle => {
            let table = table_for(spec, degree_for(limits, 1))?;
            Ok(MomentOracle::new(&table).field(limits)?)
        }
        Method::ClosedForm => enumerate_box(limits)
            .into_iter()
            .map(|n| Ok((n.clone(), closed_form_coefficients(spec, &n)?)))
            .collect(),
        Method::Determinant => {
            if spec.r() != 2 {
                return Err(usage(Error::NotBivariate(spec.r())));
            }
            let table = table_for(spec, degree_for(limits, 2))?;
            enumerate_box(limits)
                .into_iter()
                .map(|n| Ok((n.clone(), determinant_coefficients_r2(&table, &n)?.coefficients)))
                .collect()
        }
    }
}

fn cmd_coeffs(source: &SourceArgs, limits: &str, method: Method, output: &OutputArgs) -> CliResult<()> {
    let spec = resolve_source(source)?;
    let limits = parse_usize_list("--box", limits)?;
    check_dimension(&spec, limits.len(), "--box")?;
    let rows = coefficient_rows(&spec, &limits, method)?;
    let text = match output.format {
        Format::Json => {
            let mut field = CoefficientField::new(spec.r());
            for (n, c) in &rows {
                field.insert(n.clone(), c.clone())?;
            }
            let mut v = serde_json::to_value(field.to_json()).expect("field serializes");
            if output.float {
                for (row, (_, c)) in v["rows"].as_array_mut().expect("rows").iter_mut().zip(&rows) {
                    row["a_float"] = json!(floats(&c.a));
                    row["b_float"] = json!(floats(&c.b));
                }
            }
            pretty(&v)
        }
        Format::Csv => {
            let r = spec.r();
            let mut header: Vec<String> = (1..=r).map(|j| format!("n_{j}")).collect();
            header.extend((1..=r).map(|j| format!("a_{j}")));
            header.extend((1..=r).map(|j| format!("b_{j}")));
            if output.float {
                header.extend((1..=r).map(|j| format!("a_{j}_float")));
                header.extend((1..=r).map(|j| format!("b_{j}_float")));
            }
            let mut lines = vec![header.join(",")];
            for (n, c) in &rows {
                let mut cells: Vec<String> = n.entries().iter().map(|e| e.to_string()).collect();
                cells.extend(strings(&c.a));
                cells.extend(strings(&c.b));
                if output.float {
                    cells.extend(floats(&c.a).iter().map(|x| format!("{x:.16e}")));
                    cells.extend(floats(&c.b).iter().map(|x| format!("{x:.16e}")));
                }
                lines.push(cells.join(","));
            }
            lines.join("\n")
        }
    };
    emit(output.out.as_deref(), &text)
}

fn parse_index(spec: &FamilySpec, text: &str) -> CliResult<MultiIndex> {
    let entries = parse_usize_list("--index", text)?;
    check_dimension(spec, entries.len(), "--index")?;
    Ok(MultiIndex::new(entries))
}

fn coefficient_list(coeffs: &[Rational], output: &OutputArgs, label: &str) -> String {
    match output.format {
        Format::Json if output.float => pretty(&json!({ "exact": strings(coeffs), "float": floats(coeffs) })),
        Format::Json => pretty(&json!(strings(coeffs))),
        Format::Csv => {
            let mut lines = vec![if output.float {
                format!("{label}k,coefficient,float")
            } else {
                format!("{label}k,coefficient")
            }];
            for (k, c) in coeffs.iter().enumerate() {
                let mut line = format!("{k},{}", format_rational(c));
                if output.float {
                    line.push_str(&format!(",{:.16e}", rational_to_f64(c)));
                }
                lines.push(line);
            }
            lines.join("\n")
        }
    }
}

fn cmd_poly(source: &SourceArgs, index: &str, output: &OutputArgs) -> CliResult<()> {
    let spec = resolve_source(source)?;
    let n = parse_index(&spec, index)?;
    let table = table_for(&spec, degree_for(n.entries(), 0))?;
    let p = MomentOracle::new(&table).type2(&n)?;
    emit(output.out.as_deref(), &coefficient_list(p.coeffs(), output, ""))
}

fn cmd_typei(source: &SourceArgs, index: &str, output: &OutputArgs) -> CliResult<()> {
    let spec = resolve_source(source)?;
    let n = parse_index(&spec, index)?;
    let table = table_for(&spec, degree_for(n.entries(), 0))?;
    let q = MomentOracle::new(&table).type1(&n)?;
    // pad each component to n_j coefficients
    let padded: Vec<Vec<Rational>> = q
        .components()
        .iter()
        .zip(n.entries())
        .map(|(p, &nj)| (0..nj).map(|k| p.coeff(k)).collect())
        .collect();
    let text = match output.format {
        Format::Json if output.float => pretty(&json!({
            "exact": padded.iter().map(|v| strings(v)).collect::<Vec<_>>(),
            "float": padded.iter().map(|v| floats(v)).collect::<Vec<_>>(),
        })),
        Format::Json => pretty(&json!(padded.iter().map(|v| strings(v)).collect::<Vec<_>>())),
        Format::Csv => {
            let mut lines = vec![if output.float { "j,k,coefficient,float" } else { "j,k,coefficient" }.to_string()];
            for (j, v) in padded.iter().enumerate() {
                for (k, c) in v.iter().enumerate() {
                    let mut line = format!("{},{k},{}", j + 1, format_rational(c));
                    if output.float {
                        line.push_str(&format!(",{:.16e}", rational_to_f64(c)));
                    }
                    lines.push(line);
                }
            }
            lines.join("\n")
        }
    };
    emit(output.out.as_deref(), &text)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    source: &SourceArgs,
    limits: &str,
    checks: &[String],
    max_paths: usize,
    seed: u64,
    field: Option<&Path>,
    out: Option<&Path>,
) -> CliResult<bool> {
    let limits = parse_usize_list("--box", limits)?;
    let kinds = if checks.is_empty() {
        CheckKind::ALL.to_vec()
    } else {
        checks
            .iter()
            .map(|c| c.trim().parse::<CheckKind>().map_err(usage))
            .collect::<CliResult<Vec<_>>>()?
    };
    if max_paths == 0 {
        return Err(usage("--max-paths must be at least 1"));
    }
    let opts = SuiteOptions {
        checks: kinds,
        max_paths,
        seed,
    };
    let report = match field {
        Some(path) => {
            if source.family.is_some() || source.custom.is_some() {
                return Err(usage("--field replaces --family and --custom"));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))?;
            let field = CoefficientField::parse(&text)?;
            if field.r() != limits.len() {
                return Err(usage(format!("--box has {} entries but the field has r = {}", limits.len(), field.r())));
            }
            run_field_suite(&field, &limits, &opts)?
        }
        None => {
            let spec = resolve_source(source)?;
            check_dimension(&spec, limits.len(), "--box")?;
            run_suite(&spec, &limits, &opts)?
        }
    };
    emit(out, &report.to_json())?;
    Ok(report.passed())
}

/// `lo:hi:points` into evenly spaced values.
fn parse_axis(text: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, points] = parts[..] else {
        return Err(usage(format!("grid axis '{text}' is not of the form min:max:points")));
    };
    let bad = |s: &str| usage(format!("grid axis '{text}': '{s}' is not a number"));
    let lo: f64 = lo.trim().parse().map_err(|_| bad(lo))?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad(hi))?;
    let points: usize = points.trim().parse().map_err(|_| bad(points))?;
    if points == 0 || !lo.is_finite() || !hi.is_finite() {
        return Err(usage(format!("grid axis '{text}' needs finite bounds and at least one point")));
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points).map(|i| if i + 1 == points { hi } else { lo + step * i as f64 }).collect())
}

fn cmd_kernel(source: &SourceArgs, index: &str, path: Option<&str>, grid: &str, out: Option<&Path>) -> CliResult<()> {
    let spec = resolve_source(source)?;
    let n = parse_index(&spec, index)?;
    let path = match path {
        None => LatticePath::canonical(&n),
        Some(text) => {
            let steps = parse_usize_list("--path", text)?;
            if steps.contains(&0) {
                return Err(usage("--path directions start at 1"));
            }
            let p = LatticePath::new(n.r(), steps.into_iter().map(Direction::new).collect()).map_err(usage)?;
            if p.endpoint() != n {
                return Err(usage(format!("--path ends at {} instead of {n}", p.endpoint())));
            }
            p
        }
    };
    let (xs, ys) = grid
        .split_once(',')
        .ok_or_else(|| usage("--grid needs two axes separated by a comma"))?;
    let (xs, ys) = (parse_axis(xs)?, parse_axis(ys)?);
    let weights = WeightEvaluator::new(&spec)?;
    let mut degree = n.entries().to_vec();
    for e in degree.iter_mut() {
        *e += 1;
    }
    let table = table_for(&spec, degree_for(&degree, 2))?;
    let oracle = MomentOracle::new(&table);
    let mut lines = vec!["x,y,value".to_string()];
    for &x in &xs {
        for &y in &ys {
            let v = cd_kernel_eval(&oracle, &weights, &n, &path, x, y).map_err(|e| match e {
                Error::DomainError(m) => CliError::Failure(format!("grid point (x, y) = ({x}, {y}): {m}")),
                other => other.into(),
            })?;
            lines.push(format!("{x:.16e},{y:.16e},{v:.16e}"));
        }
    }
    emit(out, &lines.join("\n"))
}

fn cmd_moments(source: &SourceArgs, degree: usize, output: &OutputArgs) -> CliResult<()> {
    let spec = resolve_source(source)?;
    let table = build_moments(&spec, degree)?;
    let text = match output.format {
        Format::Json => {
            let mut v = serde_json::to_value(table.to_json()).expect("table serializes");
            if output.float {
                v["float"] = json!(table.rows().iter().map(|r| floats(r)).collect::<Vec<_>>());
            }
            pretty(&v)
        }
        Format::Csv => {
            let mut lines = vec![if output.float { "j,k,moment,float" } else { "j,k,moment" }.to_string()];
            for (j, row) in table.rows().iter().enumerate() {
                for (k, m) in row.iter().enumerate() {
                    let mut line = format!("{},{k},{}", j + 1, format_rational(m));
                    if output.float {
                        line.push_str(&format!(",{:.16e}", rational_to_f64(m)));
                    }
                    lines.push(line);
                }
            }
            lines.join("\n")
        }
    };
    emit(output.out.as_deref(), &text)
}

/// Runs one parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Coeffs {
            source,
            limits,
            method,
            output,
        } => cmd_coeffs(source, limits, *method, output).map(|_| true),
        Command::Poly { source, index, output } => cmd_poly(source, index, output).map(|_| true),
        Command::Typei { source, index, output } => cmd_typei(source, index, output).map(|_| true),
        Command::Verify {
            source,
            limits,
            checks,
            max_paths,
            seed,
            field,
            out,
        } => cmd_verify(source, limits, checks, *max_paths, *seed, field.as_deref(), out.as_deref()),
        Command::Kernel {
            source,
            index,
            path,
            grid,
            out,
        } => cmd_kernel(source, index, path.as_deref(), grid, out.as_deref()).map(|_| true),
        Command::Moments { source, degree, output } => cmd_moments(source, *degree, output).map(|_| true),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

/// Parses `args` (program name first) and runs; clap usage errors exit 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            code
        }
    }
}
