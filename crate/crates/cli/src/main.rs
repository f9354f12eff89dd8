//! `ehrhart`: lattice-point counts, quasipolynomial fits, criterion checks
//! and sweeps from the command line.
//!
//! Output is one JSON object per line, or CSV with `--format csv` (nested
//! fields flattened to dotted column names, arrays kept as JSON text).
//! Exit status: 0 success, 1 a verification failed, 2 bad usage or input.

mod output;

use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use ehrhart_core::arith::{parse_rational, Rational};
use ehrhart_core::counting::{count_axis_simplex, count_rational_params, count_triangle, count_triangle_interior};
use ehrhart_core::criteria::{
    check_collapse_criterion, check_pseudo_integral_criterion, check_reciprocal_criterion, classify_admissible,
};
use ehrhart_core::precursive::guess_recurrence;
use ehrhart_core::quasipoly::{fit_quasipolynomial, minimal_period, Fit};
use ehrhart_core::search::{run_search, SearchBounds, SearchRecord};
use ehrhart_core::sequences::{fib_triangle, k_fib, limit_tetrahedron, tetra_family, fib_coprimality, verify_fact2};
use ehrhart_core::verify::{run_verify, Suite};
use ehrhart_core::{AdmissiblePair, AxisSimplex, QuadNumber, RationalTriangleParams, TrianglePair};

use output::{Format, Output};

#[derive(Parser)]
#[command(name = "ehrhart", version, about = "Exact Ehrhart counting and period-collapse tools")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice points in dilates of a triangle or axis simplex.
    Count {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Single dilation factor.
        #[arg(long, conflicts_with_all = ["from", "to"])]
        t: Option<u64>,
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long)]
        to: Option<u64>,
        /// Also count strictly interior points (triangles only).
        #[arg(long)]
        interior: bool,
    },
    /// Fit a quasipolynomial of a given period to counts or to given values.
    Fit {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Values f(0), f(1), ... instead of a shape.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<String>,
        #[arg(long)]
        period: u64,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Number of counted samples t = 0..N (default: enough to make the fit
        /// conclusive for rational shapes)
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Minimal period of a rational triangle or admissible pair.
    Period {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Evaluate a divisibility criterion or classify an admissible pair.
    Check {
        #[arg(long, value_enum)]
        criterion: Criterion,
        /// p,q,r,s for the collapse and pseudo-integral criteria.
        #[arg(long, value_parser = parse_params)]
        params: Option<RationalTriangleParams>,
        #[arg(long)]
        p: Option<BigInt>,
        #[arg(long)]
        q: Option<BigInt>,
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long)]
        beta: Option<u64>,
    },
    /// Sweep lowest-term (p,q,r,s) and report periods against the denominator.
    Search {
        /// Bound applied to every parameter not given its own bound.
        #[arg(long, default_value_t = 6)]
        bound: u64,
        #[arg(long)]
        max_p: Option<u64>,
        #[arg(long)]
        max_q: Option<u64>,
        #[arg(long)]
        max_r: Option<u64>,
        #[arg(long)]
        max_s: Option<u64>,
    },
    /// k-Fibonacci numbers, their identities and triangles.
    Fib {
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long, conflicts_with = "to")]
        n: Option<u64>,
        /// Emit n = 0..=TO.
        #[arg(long)]
        to: Option<u64>,
    },
    /// Counts of the tetrahedron family or its irrational limit.
    Tetra {
        #[arg(long, required_unless_present = "limit", conflicts_with = "limit")]
        n: Option<u64>,
        #[arg(long)]
        limit: bool,
        #[arg(long, default_value_t = 40)]
        to: u64,
    },
    /// Guess a linear recurrence with polynomial coefficients.
    GuessRec {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<String>,
        /// Counted terms t = 0..=N when a shape is given.
        #[arg(long, default_value_t = 60)]
        terms: u64,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Run a self-check suite; exits 1 if any check fails.
    Verify {
        #[arg(
            long,
            default_value = "all",
            value_parser = PossibleValuesParser::new(Suite::NAMES).map(|s| s.parse::<Suite>().expect("listed name"))
        )]
        suite: Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Criterion {
    Collapse,
    PseudoIntegral,
    Reciprocal,
    Classify,
}

/// Exactly one shape: a triangle `u·x + v·y ≤ t`, rational parameters,
/// an admissible pair, or an axis simplex.
#[derive(Args)]
struct ShapeArgs {
    /// Triangle coefficient: rational, "a,b,d", or "a + b*sqrt(d)".
    #[arg(long, requires = "v")]
    u: Option<QuadNumber>,
    #[arg(long, requires = "u")]
    v: Option<QuadNumber>,
    /// p,q,r,s with u = q/p and v = s/r.
    #[arg(long, value_parser = parse_params)]
    params: Option<RationalTriangleParams>,
    #[arg(long, requires = "beta")]
    alpha: Option<u64>,
    #[arg(long, requires = "alpha")]
    beta: Option<u64>,
    /// Axis simplex leg; repeat once per dimension.
    #[arg(long = "leg")]
    legs: Vec<QuadNumber>,
}

enum Shape {
    Pair(TrianglePair),
    Params(RationalTriangleParams),
    Admissible(AdmissiblePair),
    Simplex(AxisSimplex),
}

impl ShapeArgs {
    fn given(&self) -> usize {
        usize::from(self.u.is_some())
            + usize::from(self.params.is_some())
            + usize::from(self.alpha.is_some())
            + usize::from(!self.legs.is_empty())
    }

    fn shape(&self) -> Result<Shape> {
        if self.given() != 1 {
            usage("give exactly one of --u/--v, --params, --alpha/--beta, --leg");
        }
        Ok(if let (Some(u), Some(v)) = (&self.u, &self.v) {
            Shape::Pair(TrianglePair::new(u.clone(), v.clone())?)
        } else if let Some(params) = &self.params {
            Shape::Params(params.clone())
        } else if let (Some(a), Some(b)) = (self.alpha, self.beta) {
            Shape::Admissible(AdmissiblePair::from_alpha_beta(a, b)?)
        } else {
            Shape::Simplex(AxisSimplex::new(self.legs.clone())?)
        })
    }
}

impl Shape {
    fn count(&self, t: u64) -> u64 {
        match self {
            Shape::Pair(pair) => count_triangle(pair, t),
            Shape::Params(params) => count_rational_params(params, t),
            Shape::Admissible(pair) => count_triangle(&pair.triangle(), t),
            Shape::Simplex(simplex) => count_axis_simplex(simplex, t),
        }
    }

    /// A period every count quasipolynomial of this shape is known to have,
    /// when the shape is rational.
    fn guaranteed_period(&self) -> Option<u64> {
        match self {
            Shape::Pair(pair) => {
                let params = RationalTriangleParams::from_uv(pair.u().as_rational()?, pair.v().as_rational()?).ok()?;
                params.denominator().to_u64()
            }
            Shape::Params(params) => params.denominator().to_u64(),
            Shape::Admissible(pair) => Some(pair.alpha()),
            Shape::Simplex(simplex) => simplex
                .legs()
                .iter()
                .map(|leg| leg.as_rational().and_then(|x| x.denom().to_u64()))
                .try_fold(1u64, |acc, d| d.map(|d| acc.lcm(&d))),
        }
    }

    fn triangle(&self) -> Option<TrianglePair> {
        match self {
            Shape::Pair(pair) => Some(pair.clone()),
            Shape::Params(params) => Some(TrianglePair::from_params(params)),
            Shape::Admissible(pair) => Some(pair.triangle()),
            Shape::Simplex(_) => None,
        }
    }
}

fn parse_params(s: &str) -> Result<RationalTriangleParams, String> {
    let parts: Vec<BigInt> = s
        .split(',')
        .map(|x| x.trim().parse::<BigInt>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let [p, q, r, s] = <[BigInt; 4]>::try_from(parts).map_err(|_| "expected p,q,r,s".to_string())?;
    RationalTriangleParams::new(p, q, r, s).map_err(|e| e.to_string())
}

fn usage(msg: &str) -> ! {
    Cli::command().error(clap::error::ErrorKind::ArgumentConflict, msg).exit()
}

fn parse_values(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|v| parse_rational(v).with_context(|| format!("value {v:?}"))).collect()
}

#[derive(Serialize)]
struct CountRecord {
    t: u64,
    count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    interior: Option<u64>,
}

/// Returns whether every verification passed.
fn run(cli: Cli, out: &mut Output) -> Result<bool> {
    match cli.command {
        Command::Count {
            shape,
            t,
            from,
            to,
            interior,
        } => {
            let shape = shape.shape()?;
            let triangle = if interior {
                Some(shape.triangle().ok_or_else(|| anyhow!("--interior needs a triangle"))?)
            } else {
                None
            };
            let range = match (t, to) {
                (Some(t), _) => t..=t,
                (None, Some(to)) => from..=to,
                (None, None) => usage("give --t or --to"),
            };
            for t in range {
                out.emit(&CountRecord {
                    t,
                    count: shape.count(t),
                    interior: triangle.as_ref().map(|tri| count_triangle_interior(tri, t)),
                })?;
            }
        }
        Command::Fit {
            shape,
            values,
            period,
            degree,
            samples,
        } => {
            let data: Vec<(i64, Rational)> = if values.is_empty() {
                let shape = shape.shape()?;
                let span = shape.guaranteed_period().map_or(period, |g| g.lcm(&period));
                let n = samples.unwrap_or((degree as u64 + 2) * span);
                (0..n).map(|t| (t as i64, Rational::from_integer(shape.count(t).into()))).collect()
            } else {
                if shape.given() > 0 {
                    usage("--values cannot be combined with a shape");
                }
                parse_values(&values)?.into_iter().enumerate().map(|(t, v)| (t as i64, v)).collect()
            };
            match fit_quasipolynomial(&data, period, degree)? {
                Fit::Found(qp) => out.emit(&json!({"fit": "found", "quasipolynomial": qp, "minimal_period": qp.minimal_period()}))?,
                Fit::NoFit(m) => out.emit(&json!({"fit": "no-fit", "mismatch": m}))?,
            }
        }
        Command::Period { shape, degree } => {
            let result = match shape.shape()? {
                Shape::Params(params) => minimal_period(&params, degree)?,
                Shape::Admissible(pair) => minimal_period(&pair, degree)?,
                _ => usage("period needs --params or --alpha/--beta"),
            };
            out.emit(&result)?;
        }
        Command::Check {
            criterion,
            params,
            p,
            q,
            alpha,
            beta,
        } => match criterion {
            Criterion::Collapse | Criterion::PseudoIntegral => {
                let params = params.unwrap_or_else(|| usage("this criterion needs --params"));
                let report = if matches!(criterion, Criterion::Collapse) {
                    check_collapse_criterion(&params)
                } else {
                    check_pseudo_integral_criterion(&params)
                };
                out.emit(&report)?;
            }
            Criterion::Reciprocal => {
                let (Some(p), Some(q)) = (p, q) else { usage("reciprocal needs --p and --q") };
                out.emit(&check_reciprocal_criterion(&p, &q)?)?;
            }
            Criterion::Classify => {
                let (Some(a), Some(b)) = (alpha, beta) else { usage("classify needs --alpha and --beta") };
                out.emit(&json!({"alpha": a, "beta": b, "class": classify_admissible(a, b)}))?;
            }
        },
        Command::Search {
            bound,
            max_p,
            max_q,
            max_r,
            max_s,
        } => {
            let bounds = SearchBounds {
                max_p: max_p.unwrap_or(bound),
                max_q: max_q.unwrap_or(bound),
                max_r: max_r.unwrap_or(bound),
                max_s: max_s.unwrap_or(bound),
            };
            run_search(&bounds, |r: &SearchRecord| out.emit(r))?;
        }
        Command::Fib { k, n, to } => {
            if k == 0 {
                usage("--k must be positive");
            }
            let range = match (n, to) {
                (Some(n), _) => n..=n,
                (None, Some(to)) => 0..=to,
                (None, None) => usage("give --n or --to"),
            };
            for n in range {
                out.emit(&json!({
                    "k": k,
                    "n": n,
                    "value": k_fib(k, n).to_string(),
                    "coprimality": fib_coprimality(k, n),
                    "cassini_identity": verify_fact2(k, n),
                    "triangle": fib_triangle(k, n),
                }))?;
            }
        }
        Command::Tetra { n, limit, to } => {
            let simplex = match n {
                _ if limit => limit_tetrahedron(),
                Some(0) | None => usage("--n must be positive"),
                Some(n) => tetra_family(n),
            };
            for t in 0..=to {
                out.emit(&CountRecord {
                    t,
                    count: count_axis_simplex(&simplex, t),
                    interior: None,
                })?;
            }
        }
        Command::GuessRec {
            shape,
            values,
            terms,
            max_order,
            max_degree,
        } => {
            let seq: Vec<BigInt> = if values.is_empty() {
                let shape = shape.shape()?;
                (0..=terms).map(|t| BigInt::from(shape.count(t))).collect()
            } else {
                if shape.given() > 0 {
                    usage("--values cannot be combined with a shape");
                }
                values
                    .iter()
                    .map(|v| v.trim().parse::<BigInt>().with_context(|| format!("value {v:?}")))
                    .collect::<Result<_>>()?
            };
            let rec = guess_recurrence(&seq, max_order, max_degree)?;
            out.emit(&json!({"recurrence": rec}))?;
        }
        Command::Verify { suite } => {
            let results = run_verify(suite);
            for r in &results {
                match out.format() {
                    Format::Json => out.emit(r)?,
                    // Counterexamples vary in shape, so CSV keeps them as one JSON cell.
                    Format::Csv => out.emit(&json!({
                        "suite": r.suite,
                        "tag": r.tag,
                        "passed": r.passed,
                        "counterexample": r.counterexample.as_ref().map(Value::to_string),
                    }))?,
                }
            }
            return Ok(results.iter().all(|r| r.passed));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            usage("--jobs must be positive");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = Output::stdout(cli.format);
    let result = run(cli, &mut out).and_then(|ok| out.finish().map(|()| ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
