use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use bendix::acceptance;
use bendix::bending::{angle_values, bend, bracket_from_gradients, gradient, ActionAngle, FlowSpec};
use bendix::combinatorics::{count_lattice_points, multiplicity_report};
use bendix::duality::{
    generic_pentagon, hitchin_invariance_report, hitchin_matrix, sample_euclidean_polygon, to_euclidean, HitchinReport, HitchinSpec,
};
use bendix::io::{
    format_csv_value, parse_r_list, phases_from_json, polygon_from_json, polygon_to_json, side_lengths_to_json,
};
use bendix::linalg::C;
use bendix::polygon::{DEFAULT_CLOSURE_REL_TOL, check_semistable, check_triangle_inequalities, default_wall_tol, enumerate_walls, TriangleVerdict};
use bendix::reconstruction::{random_interior_pattern, reconstruct, sample_polygon};
use bendix::scalar::{parse_rational, rational_to_real};
use bendix::spectral::{action_index_set, action_values};
use bendix::{duality_report, Error, GTsPattern, Polygon64, Rational, SideLengths};

#[derive(Parser)]
#[command(name = "bendix", version, about = "Polygons of rank-one Hermitian matrices: bending flows, action-angle variables and multiplicities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Lengths {
    /// Rank parameter; edges are (m+1)x(m+1) matrices.
    #[arg(long)]
    m: usize,
    /// Comma separated side lengths; integers, decimals or p/q.
    #[arg(long)]
    r: String,
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long = "o", short = 'o')]
    o: Option<PathBuf>,
}

#[derive(Args)]
struct PolygonInput {
    /// Polygon JSON file.
    #[arg(long)]
    polygon: PathBuf,
    /// Relative closure tolerance: the polygon must satisfy |sum e - Lambda I| <= tol Lambda.
    #[arg(long, default_value_t = DEFAULT_CLOSURE_REL_TOL)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Strong triangle inequalities; exits 1 when violated.
    Check {
        #[command(flatten)]
        lengths: Lengths,
        #[command(flatten)]
        out: Output,
    },
    /// Walls through r.
    Walls {
        #[command(flatten)]
        lengths: Lengths,
        /// Tolerance for the wall equation (default: exact).
        #[arg(long)]
        tol: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Semistability of a weighted point configuration.
    Semistable {
        #[command(flatten)]
        lengths: Lengths,
        /// JSON array of points, each an array of [re, im] pairs.
        #[arg(long)]
        points: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Seeded random closed polygon.
    Sample {
        #[command(flatten)]
        lengths: Lengths,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Seeded random interior pattern.
    Pattern {
        #[command(flatten)]
        lengths: Lengths,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Polygon realizing an interior pattern.
    Reconstruct {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        phases: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Bending flow of lambda_ij for time t.
    Flow {
        #[command(flatten)]
        input: PolygonInput,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        /// Emit a CSV time series with this many steps instead of the final polygon.
        #[arg(long)]
        steps: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Action variables (the pattern of diagonal spectra).
    Actions {
        #[command(flatten)]
        input: PolygonInput,
        #[command(flatten)]
        out: Output,
    },
    /// Angle variables.
    Angles {
        #[command(flatten)]
        input: PolygonInput,
        #[command(flatten)]
        out: Output,
    },
    /// Finite-difference Poisson brackets of the action-angle functions.
    Brackets {
        #[command(flatten)]
        input: PolygonInput,
        /// Step size (default 1e-5 max(1, Lambda)).
        #[arg(long)]
        h: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Lattice-point count; with --all-methods, the four-way report.
    Count {
        #[command(flatten)]
        lengths: Lengths,
        #[arg(long)]
        all_methods: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Block eigenvalues of N*N against the diagonal spectra.
    Duality {
        #[command(flatten)]
        input: PolygonInput,
        #[command(flatten)]
        out: Output,
    },
    /// Hitchin Hamiltonians of an m = 1 polygon and their bending derivatives.
    Hitchin {
        /// m = 1 polygon JSON file; without it a random n-gon is drawn from --seed.
        #[arg(long)]
        polygon: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the invariance table as CSV.
        #[arg(long)]
        csv: bool,
        /// Comma separated spectral points, one per edge.
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        /// Also evaluate A(z) at z = re,im.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the acceptance suite.
    VerifyAll {
        #[command(flatten)]
        out: Output,
    },
}

/// Lower bound on `|(e_2 x e_1) . e_5|` for a random pentagon to count as generic.
const GENERIC_TRIPLE: f64 = 1e-3;

enum Failure {
    Usage(String),
    Domain(Error, Option<Value>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e, None)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": "usage", "message": e.to_string().trim() }));
            return ExitCode::from(2);
        }
    };
    if let Some(threads) = std::env::var("BENDIX_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("{}", json!({ "error": "usage", "message": msg }));
            ExitCode::from(2)
        }
        Err(Failure::Domain(e, extra)) => {
            let mut v = json!({ "error": e.kind(), "message": e.to_string() });
            if let Error::TriangleInequality { indices } = &e {
                v["indices"] = json!(indices);
            }
            if let Some(Value::Object(map)) = extra {
                for (k, x) in map {
                    v[k] = x;
                }
            }
            eprintln!("{v}");
            ExitCode::from(1)
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{} is not valid JSON: {e}", path.display())))
}

fn read_polygon(input: &PolygonInput) -> Result<Polygon64, Failure> {
    if !(input.tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    Ok(polygon_from_json::<f64>(&read_json(&input.polygon)?)?.with_closure_tol(input.tol))
}

fn emit_text(out: &Output, text: &str) -> CmdResult {
    match &out.o {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(out: &Output, v: &Value) -> CmdResult {
    let mut text = serde_json::to_string_pretty(v).expect("JSON value serializes");
    text.push('\n');
    emit_text(out, &text)
}

fn exact_lengths(l: &Lengths) -> Result<SideLengths<Rational>, Failure> {
    Ok(SideLengths::new(l.m, parse_r_list(&l.r)?)?)
}

fn float_lengths(l: &Lengths) -> Result<SideLengths<f64>, Failure> {
    let s = exact_lengths(l)?;
    Ok(SideLengths::new(s.m, s.r.iter().map(rational_to_real).collect())?)
}

fn integer_lengths(l: &Lengths) -> Result<Vec<u64>, Failure> {
    parse_r_list(&l.r)?
        .iter()
        .map(|q| {
            if q.is_integer() && *q > Rational::from_integer(0.into()) {
                q.to_integer().try_into().map_err(|_| usage("side length too large"))
            } else {
                Err(Failure::Domain(Error::InvalidInput(format!("count needs positive integer side lengths, got {q}")), None))
            }
        })
        .collect()
}

fn parse_floats(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| usage(format!("cannot parse {t:?} as a number"))))
        .collect()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Check { lengths, out } => {
            let s = exact_lengths(&lengths)?;
            let verdict = check_triangle_inequalities(&s);
            emit(&out, &json!({ "input": side_lengths_to_json(&s), "result": to_value(&verdict) }))?;
            match verdict {
                TriangleVerdict::Satisfied => Ok(()),
                TriangleVerdict::Violated { indices } => Err(Error::TriangleInequality { indices }.into()),
            }
        }
        Command::Walls { lengths, tol, out } => {
            let s = exact_lengths(&lengths)?;
            let tol = match tol {
                Some(t) => parse_rational(&t).ok_or_else(|| usage(format!("cannot parse tolerance {t:?}")))?,
                None => default_wall_tol(&s),
            };
            let walls = enumerate_walls(&s, &tol)?;
            let in_cone = check_triangle_inequalities(&s).is_satisfied();
            emit(&out, &json!({ "input": side_lengths_to_json(&s), "in_cone": in_cone, "walls": to_value(&walls) }))
        }
        Command::Semistable { lengths, points, out } => {
            let s = float_lengths(&lengths)?;
            let raw: Vec<Vec<[f64; 2]>> = serde_json::from_value(read_json(&points)?)
                .map_err(|e| usage(format!("points must be arrays of [re, im] pairs: {e}")))?;
            let pts: Vec<Vec<C<f64>>> = raw.iter().map(|p| p.iter().map(|&[a, b]| C::new(a, b)).collect()).collect();
            emit(&out, &to_value(&check_semistable(&pts, &s)?))
        }
        Command::Sample { lengths, seed, out } => {
            let s = float_lengths(&lengths)?;
            emit(&out, &polygon_to_json(&sample_polygon(&s, seed)?))
        }
        Command::Pattern { lengths, seed, out } => {
            let s = float_lengths(&lengths)?;
            emit(&out, &to_value(&random_interior_pattern(&s, seed)?))
        }
        Command::Reconstruct { pattern, phases, out } => {
            let gamma: GTsPattern<f64> =
                serde_json::from_value(read_json(&pattern)?).map_err(|e| Failure::Domain(Error::InvalidInput(format!("pattern: {e}")), None))?;
            let phases = match phases {
                Some(p) => Some(phases_from_json(&read_json(&p)?)?),
                None => None,
            };
            emit(&out, &polygon_to_json(&reconstruct(&gamma, phases.as_ref())?))
        }
        Command::Flow { input, i, j, t, steps, out } => {
            let p = read_polygon(&input)?;
            match steps {
                None => emit(&out, &polygon_to_json(&bend(&p, FlowSpec { i, j, t })?)),
                Some(k) => emit_text(&out, &flow_series(&p, i, j, t, k.max(1))?),
            }
        }
        Command::Actions { input, out } => emit(&out, &to_value(&action_values(&read_polygon(&input)?)?)),
        Command::Angles { input, out } => emit(&out, &to_value(&angle_values(&read_polygon(&input)?)?)),
        Command::Brackets { input, h, out } => {
            let p = read_polygon(&input)?;
            emit(&out, &brackets(&p, h.unwrap_or_else(|| bendix::bending::default_fd_step(p.lambda())))?)
        }
        Command::Count { lengths, all_methods, out } => {
            let r = integer_lengths(&lengths)?;
            if all_methods {
                emit(&out, &to_value(&multiplicity_report(&r, lengths.m)?))
            } else {
                let c = count_lattice_points(&r, lengths.m)?;
                let text = c.value.to_string();
                let count = text.parse::<u64>().map(Value::from).unwrap_or(Value::String(text));
                emit(&out, &json!({ "m": lengths.m, "r": r, "lambda_integral": c.integral, "lattice_count": count }))
            }
        }
        Command::Duality { input, out } => emit(&out, &to_value(&duality_report(&read_polygon(&input)?)?)),
        Command::Hitchin { polygon, n, seed, csv, alphas, z, out } => {
            let ep = match polygon {
                Some(path) => to_euclidean(&read_polygon(&PolygonInput { polygon: path, tol: DEFAULT_CLOSURE_REL_TOL })?)?,
                None if n == 5 => generic_pentagon(seed, GENERIC_TRIPLE)?,
                None => sample_euclidean_polygon(n, seed)?,
            };
            let spec = HitchinSpec { alphas: parse_floats(&alphas)? };
            let report = hitchin_invariance_report(&ep, &spec)?;
            if csv {
                return emit_text(&out, &hitchin_csv(&report));
            }
            let mut v = to_value(&report);
            v["edges"] = json!(ep.edges);
            if let Some(z) = z {
                let zs = parse_floats(&z)?;
                let [re, im] = zs[..] else {
                    return Err(usage("--z takes re,im"));
                };
                v["z"] = json!([re, im]);
                v["a_of_z"] = to_value(&hitchin_matrix(&ep, &spec, C::new(re, im))?);
            }
            emit(&out, &v)
        }
        Command::VerifyAll { out } => {
            let mut results: Vec<_> = (1..=10).into_par_iter().map(acceptance::run).collect();
            results.sort_by_key(|r| r.id);
            for r in &results {
                eprintln!("{r}");
            }
            let passed = results.iter().filter(|r| r.passed).count();
            emit(&out, &json!({ "passed": passed, "total": results.len(), "criteria": to_value(&results) }))?;
            if passed == results.len() {
                Ok(())
            } else {
                let failing: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
                Err(Failure::Domain(
                    Error::InvalidInput(format!("{} of {} criteria failed", failing.len(), results.len())),
                    Some(json!({ "failing": failing })),
                ))
            }
        }
    }
}

/// CSV columns: `t`, `closure_defect`, pattern entries row by row
/// (`lambda_i_j`), then angles over the action index set (`theta_i_j`).
fn flow_series(p: &Polygon64, i: usize, j: usize, t_end: f64, steps: usize) -> Result<String, Failure> {
    let (n, m) = (p.n(), p.m());
    let idx = action_index_set(n, m);
    let mut header = vec!["t".to_string(), "closure_defect".to_string()];
    for a in 0..n {
        for b in 1..=m + 1 {
            header.push(format!("lambda_{a}_{b}"));
        }
    }
    header.extend(idx.iter().map(|(a, b)| format!("theta_{a}_{b}")));
    let mut out = header.join(",");
    out.push('\n');
    for k in 0..=steps {
        let t = t_end * k as f64 / steps as f64;
        let q = bend(p, FlowSpec { i, j, t })?;
        let mut row = vec![t, q.closure_defect()];
        row.extend(action_values(&q)?.rows().iter().flatten().copied());
        let angles = angle_values(&q)?;
        row.extend(idx.iter().map(|key| angles.theta[key]));
        out.push_str(&row.iter().map(|&x| format_csv_value(x)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    Ok(out)
}

fn brackets(p: &Polygon64, h: f64) -> Result<Value, Failure> {
    let idx = action_index_set(p.n(), p.m());
    let grads = |f: fn(usize, usize) -> ActionAngle| -> Result<Vec<_>, Failure> {
        idx.par_iter().map(|&(i, j)| gradient(&f(i, j), p, h)).collect::<Result<Vec<_>, Error>>().map_err(Failure::from)
    };
    let lam = grads(|i, j| ActionAngle::Lambda { i, j })?;
    let mu = grads(|i, j| ActionAngle::Mu { i, j })?;
    let th = grads(|i, j| ActionAngle::Theta { i, j })?;
    let table = |a: &[Vec<_>], b: &[Vec<_>]| -> Vec<Vec<f64>> {
        a.iter().map(|ga| b.iter().map(|gb| bracket_from_gradients(p, ga, gb)).collect()).collect()
    };
    Ok(json!({
        "index_set": idx,
        "h": h,
        "lambda_lambda": table(&lam, &lam),
        "mu_theta": table(&mu, &th),
        "theta_theta": table(&th, &th),
    }))
}

/// One row per bent diagonal: `diagonal`, then `dH_1 .. dH_n` (empty where `H_j` is undefined).
fn hitchin_csv(report: &HitchinReport) -> String {
    let n = report.alphas.len();
    let mut out = std::iter::once("diagonal".to_string()).chain((1..=n).map(|j| format!("dH_{j}"))).collect::<Vec<_>>().join(",");
    out.push('\n');
    for row in &report.rows {
        let cells = row.dh_dt.iter().map(|x| x.map(format_csv_value).unwrap_or_default());
        out.push_str(&std::iter::once(row.diagonal.to_string()).chain(cells).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}
