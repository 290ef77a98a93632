//! Argument model and dispatch for the `threegap` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use threegap::cf::ContinuedFraction;
use threegap::decimal::{format_sig, to_f64_sig};
use threegap::sturmian::{self, ClosedFormMatch};
use threegap::three_gap::{self, f_bounds, f_closed, f_symbolic};
use threegap::{kronecker, oracle, QuadraticNumber};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_VERIFICATION: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Domain(#[from] threegap::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) | CliError::Io(_) => EXIT_DOMAIN,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    A,
    B,
}

#[derive(Debug, Parser)]
#[command(name = "threegap", version, about = "Exact three-gap, Kronecker and Sturmian computations")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Significant digits in decimal output.
    #[arg(long = "precision-digits", global = true, default_value_t = 10)]
    pub precision_digits: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distinct gap lengths of 0, {θ}, …, {Nθ}, 1.
    Gaps {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        n: u64,
        /// Include the sorted points.
        #[arg(long)]
        points: bool,
    },
    /// Convergent bracket of N and the predicted gap lengths.
    Regime {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        n: u64,
    },
    /// The optimal largest-gap constant f(B) and its bounds.
    Fb {
        #[arg(long)]
        b: u64,
    },
    /// Extremal witness (θ, N) with N·H close to f(B).
    Extremal {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        n: usize,
    },
    /// Solve |nθ − p − β| ≤ f(B)/(2N) with 0 ≤ n ≤ N.
    Kron {
        #[arg(long)]
        theta: String,
        /// Target as p/q in [0, 1).
        #[arg(long)]
        beta: String,
        #[arg(long)]
        n: u64,
    },
    /// Prefix of the characteristic Sturmian word of slope θ.
    Sturmian {
        #[arg(long)]
        theta: String,
        /// Prefix length.
        #[arg(long)]
        n: usize,
    },
    /// Maximum agreement per modulus r against 2(B+2)²r².
    Diversity {
        #[arg(long)]
        theta: String,
        /// Defaults to the largest partial quotient of θ.
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        rmax: u64,
    },
    /// Fibonacci/Lucas lower-bound witness on the golden word.
    Witness {
        #[arg(long)]
        n: u32,
    },
    /// The exact A/B arrays of the lower-bound construction.
    Arrays {
        #[arg(long)]
        n: u32,
        /// Which array a CSV dump shows.
        #[arg(long, value_enum, default_value = "a")]
        grid: Grid,
    },
    /// Randomized oracle cross-checks, as JSON lines.
    Verify {
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Extremal N·H approaching f(B), one row per n.
    Convergence {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        nmax: usize,
    },
}

/// A rendered report and whether every checked claim held.
#[derive(Debug)]
pub struct Emitted {
    pub text: String,
    pub verified: bool,
}

impl Emitted {
    pub fn exit_code(&self) -> u8 {
        if self.verified {
            EXIT_OK
        } else {
            EXIT_VERIFICATION
        }
    }
}

/// Expands `golden`, `sqrt2`, `extremal:B`, or inline JSON.
pub fn parse_theta(spec: &str) -> CliResult<ContinuedFraction> {
    let spec = spec.trim();
    match spec {
        "golden" => return Ok(ContinuedFraction::golden()),
        "sqrt2" => return Ok(ContinuedFraction::sqrt2_minus_one()),
        _ => {}
    }
    if let Some(b) = spec.strip_prefix("extremal:") {
        let b: u64 = b
            .parse()
            .map_err(|_| CliError::Usage(format!("bad bound in preset {spec:?}")))?;
        return ContinuedFraction::extremal(b).map_err(|e| CliError::Usage(e.to_string()));
    }
    serde_json::from_str(spec).map_err(|e| CliError::Usage(format!("θ {spec:?}: {e}")))
}

/// Canonical JSON of a preset name.
pub fn preset_json(name: &str) -> CliResult<String> {
    let cf = parse_theta(name)?;
    Ok(serde_json::to_string(&cf).expect("serializable"))
}

pub fn parse_beta(s: &str) -> CliResult<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| CliError::Usage(format!("β {s:?} is not a rational p/q")))
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn quad(x: &QuadraticNumber, sig: usize) -> String {
    x.to_decimal(sig)
}

pub fn dispatch(config: &RunConfig) -> CliResult<Emitted> {
    let sig = config.precision_digits.max(1);
    let fmt = |default| config.format.unwrap_or(default);
    let emitted = match &config.command {
        Command::Gaps { theta, n, points } => {
            let cf = parse_theta(theta)?;
            let gs = three_gap::gap_set(&cf, *n)?;
            let mut verified = gs.verify().is_ok();
            if !cf.is_rational() {
                let slack = gs.radius() * BigRational::from_integer((2 * n).into());
                verified &= three_gap::certified_below(&(gs.product_nh() + slack), &f_closed(cf.bound())?);
            }
            let report = gs.report(sig, *points);
            let text = match fmt(Format::Json) {
                Format::Json => {
                    let mut v = serde_json::to_value(&report).expect("serializable");
                    v["theta"] = json!(cf.to_string());
                    v["distinct"] = json!(gs.distinct_count());
                    to_json(&v)
                }
                Format::Csv => csv(
                    &["length", "multiplicity"],
                    report.gaps.iter().map(|g| vec![g.length.clone(), g.multiplicity.to_string()]),
                ),
            };
            Emitted { text, verified }
        }
        Command::Regime { theta, n } => {
            let cf = parse_theta(theta)?;
            let rep = three_gap::regime_report(&cf, *n)?;
            let fmt_all = |xs: &[BigRational]| xs.iter().map(|x| format_sig(x, sig)).collect::<Vec<_>>();
            let text = match fmt(Format::Json) {
                Format::Json => to_json(&json!({
                    "theta": cf.to_string(),
                    "n": n,
                    "tag": rep.tag,
                    "predicted": fmt_all(&rep.predicted),
                    "observed": fmt_all(&rep.observed),
                    "contained": rep.contained,
                })),
                Format::Csv => csv(
                    &["kind", "length"],
                    fmt_all(&rep.predicted)
                        .into_iter()
                        .map(|x| vec!["predicted".into(), x])
                        .chain(fmt_all(&rep.observed).into_iter().map(|x| vec!["observed".into(), x])),
                ),
            };
            Emitted {
                text,
                verified: rep.contained,
            }
        }
        Command::Fb { b } => {
            let f = f_closed(*b)?;
            let bounds = f_bounds(*b)?;
            let lower = QuadraticNumber::from_ratio(bounds.lower.clone());
            let verified = lower <= f && f <= bounds.upper;
            let symbolic = f_symbolic(*b)?;
            let decimal = to_f64_sig(&f.approx(sig as u32 + 10), sig);
            let lower_f = to_f64_sig(&bounds.lower, sig);
            let upper_f = to_f64_sig(&bounds.upper.approx(sig as u32 + 10), sig);
            let text = match fmt(Format::Json) {
                Format::Json => to_json(&json!({
                    "f": symbolic,
                    "decimal": decimal,
                    "lower": lower_f,
                    "upper": upper_f,
                })),
                Format::Csv => csv(
                    &["b", "f", "decimal", "lower", "upper"],
                    [vec![
                        b.to_string(),
                        symbolic,
                        quad(&f, sig),
                        format_sig(&bounds.lower, sig),
                        quad(&bounds.upper, sig),
                    ]],
                ),
            };
            Emitted { text, verified }
        }
        Command::Extremal { b, n } => {
            let w = three_gap::extremal_witness(*b, *n)?;
            let row = json!({
                "b": w.b,
                "n": w.n,
                "theta": w.theta.to_string(),
                "N": w.big_n,
                "k_surrogate": w.k_surrogate,
                "predicted_gap": w.predicted_gap.to_decimal(sig),
                "largest_gap": w.largest_gap.to_decimal(sig),
                "product": w.product.to_decimal(sig),
                "f": quad(&w.f, sig),
                "f_minus_product": w.gap_to_f().to_decimal(sig),
                "predicted_is_largest": w.predicted_is_largest,
                "below_f": w.below_f,
            });
            let text = match fmt(Format::Json) {
                Format::Json => to_json(&row),
                Format::Csv => csv(
                    &["b", "n", "N", "largest_gap", "product", "f"],
                    [vec![
                        w.b.to_string(),
                        w.n.to_string(),
                        w.big_n.to_string(),
                        w.largest_gap.to_decimal(sig),
                        w.product.to_decimal(sig),
                        quad(&w.f, sig),
                    ]],
                ),
            };
            Emitted {
                text,
                verified: w.holds(),
            }
        }
        Command::Kron { theta, beta, n } => {
            let cf = parse_theta(theta)?;
            let beta = parse_beta(beta)?;
            let sol = kronecker::solve(&cf, &beta, *n)?;
            let report = sol.report(sig);
            let text = match fmt(Format::Json) {
                Format::Json => {
                    let mut v = serde_json::to_value(&report).expect("serializable");
                    v["theta"] = json!(cf.to_string());
                    v["beta"] = json!(beta.to_string());
                    v["N"] = json!(n);
                    to_json(&v)
                }
                Format::Csv => csv(
                    &["n", "p", "error", "bound", "within_bound"],
                    [vec![
                        report.n.to_string(),
                        report.p.clone(),
                        report.error.clone(),
                        report.bound.clone(),
                        report.within_bound.to_string(),
                    ]],
                ),
            };
            Emitted {
                text,
                verified: sol.within_bound(),
            }
        }
        Command::Sturmian { theta, n } => {
            let cf = parse_theta(theta)?;
            let s = sturmian::generate(&cf, *n)?;
            let bits: String = s.to_vec().iter().map(|b| char::from(b'0' + b)).collect();
            let text = match fmt(Format::Json) {
                Format::Json => to_json(&json!({"theta": cf.to_string(), "len": n, "bits": bits, "ones": s.ones()})),
                Format::Csv => csv(
                    &["i", "s"],
                    s.to_vec().iter().enumerate().map(|(i, b)| vec![i.to_string(), b.to_string()]),
                ),
            };
            Emitted { text, verified: true }
        }
        Command::Diversity { theta, b, rmax } => {
            let cf = parse_theta(theta)?;
            let b = b.unwrap_or_else(|| cf.bound().max(1));
            let rows = sturmian::diversity_scan(&cf, b, *rmax)?;
            let verified = rows.iter().all(|r| r.pass);
            let text = match fmt(Format::Csv) {
                Format::Csv => csv(
                    &["r", "max_agreement", "bound", "pass"],
                    rows.iter().map(|r| {
                        vec![
                            r.r.to_string(),
                            r.max_agreement.to_string(),
                            r.bound.to_string(),
                            r.pass.to_string(),
                        ]
                    }),
                ),
                Format::Json => to_json(&rows),
            };
            Emitted { text, verified }
        }
        Command::Witness { n } => {
            let w = sturmian::lower_bound_witness(*n)?;
            let verified = w.crossing_pair && w.index_identity && w.disagreement_bits == Some((0, 1));
            let matches = match w.matches {
                ClosedFormMatch::Statement => "statement",
                ClosedFormMatch::ProofRange => "proof_range",
                ClosedFormMatch::Neither => "neither",
            };
            let text = match fmt(Format::Json) {
                Format::Json => to_json(&w),
                Format::Csv => csv(
                    &["n", "r", "a", "b", "k_star", "statement_form", "proof_range_form", "matches"],
                    [vec![
                        w.n.to_string(),
                        w.witness.r.to_string(),
                        w.witness.a.to_string(),
                        w.witness.b.to_string(),
                        w.witness.k_star.value().to_string(),
                        w.statement_form.to_string(),
                        w.proof_range_form.to_string(),
                        matches.to_string(),
                    ]],
                ),
            };
            Emitted { text, verified }
        }
        Command::Arrays { n, grid } => {
            let arr = sturmian::ab_arrays(*n)?;
            let report = arr.verify();
            let verified = report.all_hold();
            let text = match fmt(Format::Csv) {
                Format::Csv => arr.to_csv(*grid == Grid::B, sig),
                Format::Json => {
                    let mut v = serde_json::to_value(&report).expect("serializable");
                    v["rows"] = json!(arr.rows);
                    v["cols"] = json!(arr.cols);
                    v["d"] = json!(quad(&arr.d, sig));
                    v["d_prime"] = json!(quad(&arr.d_prime, sig));
                    v["d_double_prime"] = json!(quad(&arr.d_double_prime, sig));
                    to_json(&v)
                }
            };
            Emitted { text, verified }
        }
        Command::Verify { cases, seed } => {
            let mut text = String::new();
            let mut verified = true;
            for reports in [
                oracle::gap_suite(*seed, *cases),
                oracle::kronecker_suite(*seed, *cases),
                oracle::agreement_suite(*seed, *cases),
            ] {
                for r in reports {
                    verified &= r.agree;
                    writeln!(text, "{}", serde_json::to_string(&r).expect("serializable")).unwrap();
                }
            }
            Emitted { text, verified }
        }
        Command::Convergence { b, nmax } => emit_convergence(*b, *nmax, sig, fmt(Format::Csv))?,
    };
    Ok(emitted)
}

/// One row per `extremal_witness(B, n)`, `n = 1..=n_max`.
pub fn emit_convergence(b: u64, n_max: usize, sig: usize, format: Format) -> CliResult<Emitted> {
    if n_max == 0 {
        return Err(threegap::Error::Domain("nmax must be at least 1".into()).into());
    }
    let witnesses = (1..=n_max)
        .map(|n| three_gap::extremal_witness(b, n))
        .collect::<Result<Vec<_>, _>>()?;
    let verified = witnesses.iter().all(|w| w.holds());
    let rows: Vec<Vec<String>> = witnesses
        .iter()
        .map(|w| {
            vec![
                w.n.to_string(),
                w.big_n.to_string(),
                w.product.to_decimal(sig),
                quad(&w.f, sig),
                w.gap_to_f().to_decimal(sig),
            ]
        })
        .collect();
    let header = ["n", "N", "NH", "f", "f_minus_NH"];
    let text = match format {
        Format::Csv => csv(&header, rows),
        Format::Json => {
            let v: Vec<Value> = rows
                .into_iter()
                .map(|r| header.iter().zip(r).map(|(k, v)| (k.to_string(), json!(v))).collect())
                .collect();
            to_json(&v)
        }
    };
    Ok(Emitted { text, verified })
}

/// Writes the report to `--out` or stdout.
pub fn write_output(config: &RunConfig, emitted: &Emitted) -> CliResult<()> {
    match &config.out {
        Some(path) => std::fs::write(path, &emitted.text)?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(emitted.text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
