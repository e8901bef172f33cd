//! holocalc: verification suites and calculators for circle-invariant
//! Spin(7)/G2 exterior calculus, exposed as a single command-line tool.
//!
//! Exit codes: 0 success, 1 check failures, 2 domain errors, 64 usage.

use clap::{Args, Parser, Subcommand};
use holocalc::form::Form;
use holocalc::g2::G2Data;
use holocalc::report::{Config, Report};
use holocalc::scalar::Scalar;
use holocalc::spectral::{self, CohomologyInput};
use holocalc::verify::{self, Suite};
use holocalc::{catalog, scalar};
use num::Zero;
use serde_json::json;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "holocalc", disable_help_subcommand = true)]
#[command(about = "Exact-arithmetic verification suites and calculators for circle-invariant Spin(7)/G2 geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every randomized suite (falls back to HOLOCALC_SEED, then 0)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Optional JSON config overriding the model 3-form and catalog ranges
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    /// Output format for reports
    #[arg(long, global = true, value_parser = ["json", "table"], default_value = "json")]
    format: String,

    /// Include per-check wall times (off by default so identical runs are
    /// byte-identical)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a pass/fail report
    Verify(VerifyArgs),
    /// Split a 2- or 3-form into its G2-irreducible components
    Decompose(DecomposeArgs),
    /// Indicial roots of the cone Laplacian on functions
    Indicial(IndicialArgs),
    /// Weighted-cohomology dimensions across the rate -k
    Cohomology(CohomologyArgs),
    /// Enumerate example catalogs
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: exterior | seifert | g2 | spin7 | cone | spectral | catalog | all
    suite: String,
    /// Collapsing parameter used by the spin7 scaling and error checks
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Degree of the input form (2 or 3)
    #[arg(long)]
    degree: usize,
    /// Path to the form JSON ({"n":7,"k":...,"terms":[...]})
    #[arg(long)]
    input: std::path::PathBuf,
}

#[derive(Args)]
struct IndicialArgs {
    /// Link eigenvalue (nonnegative rational, e.g. 6 or 11/2)
    #[arg(long, allow_hyphen_values = true)]
    delta: String,
    /// Cone dimension m >= 2
    #[arg(long)]
    dim: usize,
}

#[derive(Args)]
struct CohomologyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// dim H^k_c, dim H^k, dim im(H^k -> H^k(link)), dim im(H^k_c -> H^k)
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
}

#[derive(Args)]
struct CatalogArgs {
    /// Family: an | wcp2 | s3r4
    family: String,
    /// Bound for the An family (defaults from config)
    #[arg(long)]
    n_max: Option<usize>,
    /// Bound for the weighted-projective family
    #[arg(long)]
    max_weight: Option<i64>,
    /// Bound for the circle-action family
    #[arg(long)]
    max: Option<i64>,
    /// Emit CSV instead of JSON
    #[arg(long)]
    csv: bool,
}

fn parse_rational(s: &str) -> Result<Scalar, String> {
    let parts: Vec<&str> = s.split('/').collect();
    let parse_int = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("bad integer {x:?}: {e}"));
    match parts.as_slice() {
        [a] => Ok(scalar::int(parse_int(a)?)),
        [a, b] => {
            let den = parse_int(b)?;
            if den == 0 {
                return Err("zero denominator".into());
            }
            Ok(scalar::rat(parse_int(a)?, den))
        }
        _ => Err(format!("cannot parse rational {s:?}")),
    }
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<String> for CliError {
    fn from(s: String) -> CliError {
        CliError::Domain(s)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            eprint!("{e}");
            // clap's own exit codes differ; the interface contract is 64
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };

    let seed = cli
        .seed
        .or_else(|| std::env::var("HOLOCALC_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0);

    let config = match &cli.config {
        None => Config::default(),
        Some(path) => {
            match std::fs::read_to_string(path)
                .map_err(|e| e.to_string())
                .and_then(|s| Config::from_json_str(&s))
            {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_DOMAIN);
                }
            }
        }
    };

    match run(&cli, seed, &config) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}

fn run(cli: &Cli, seed: u64, config: &Config) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Verify(args) => {
            let eps = match &args.eps {
                Some(s) => {
                    let e = parse_rational(s)?;
                    if e.is_zero() || e < Scalar::zero() {
                        return Err(CliError::Domain("eps must be positive".into()));
                    }
                    e
                }
                None => scalar::rat(1, 4),
            };
            if !config.is_default_phi0() {
                return Err(CliError::Domain(
                    "verification suites assert identity constants derived for the default \
                     coordinate model; run them without a phi0 override".into(),
                ));
            }
            let mut checks = if args.suite == "all" {
                verify::ALL_SUITES
                    .iter()
                    .flat_map(|&s| verify::run_suite_with_eps(s, seed, &eps))
                    .collect()
            } else {
                let suite = Suite::from_name(&args.suite).ok_or_else(|| {
                    CliError::Usage(format!(
                        "unknown suite {:?}; expected exterior|seifert|g2|spin7|cone|spectral|catalog|all",
                        args.suite
                    ))
                })?;
                verify::run_suite_with_eps(suite, seed, &eps)
            };
            if !cli.timings {
                for c in &mut checks {
                    c.elapsed_ms = None;
                }
            }
            let report =
                Report::new(format!("verify {}", args.suite), config.hash(), seed, checks);
            match cli.format.as_str() {
                "table" => print!("{}", report.to_table()),
                _ => println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap()),
            }
            Ok(ExitCode::from(if report.exit_code() == 0 { EXIT_OK } else { EXIT_CHECK_FAILED }))
        }

        Command::Decompose(args) => {
            let text = std::fs::read_to_string(&args.input).map_err(|e| e.to_string())?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| format!("malformed JSON: {e}"))?;
            let form = Form::from_json(&value).map_err(|e| e.to_string())?;
            if form.n() != 7 {
                return Err(CliError::Domain("decomposition lives on R^7".into()));
            }
            if form.k() != args.degree || !(args.degree == 2 || args.degree == 3) {
                return Err(CliError::Domain(format!(
                    "degree flag {} does not match the input form of degree {}",
                    args.degree,
                    form.k()
                )));
            }
            let g = G2Data::new(config.phi0_form()).map_err(|e| e.to_string())?;
            let out = if args.degree == 2 {
                let (p7, p14) = g.project2(&form).map_err(|e| e.to_string())?;
                json!({
                    "schema": "holocalc-decompose/1",
                    "config": config.hash(),
                    "degree": 2,
                    "ranks": {"7": 7, "14": 14},
                    "components": {"7": p7.to_json(), "14": p14.to_json()},
                })
            } else {
                let (p1, p7, p27) = g.project3(&form).map_err(|e| e.to_string())?;
                json!({
                    "schema": "holocalc-decompose/1",
                    "config": config.hash(),
                    "degree": 3,
                    "ranks": {"1": 1, "7": 7, "27": 27},
                    "components": {"1": p1.to_json(), "7": p7.to_json(), "27": p27.to_json()},
                })
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::from(EXIT_OK))
        }

        Command::Indicial(args) => {
            let delta = parse_rational(&args.delta)?;
            let (plus, minus) =
                spectral::indicial_roots_functions(&delta, args.dim).map_err(|e| e.to_string())?;
            let out = json!({
                "schema": "holocalc-indicial/1",
                "config": config.hash(),
                "delta": args.delta,
                "dim": args.dim,
                "roots": [
                    {"value": plus.to_string(), "approx": plus.to_f64(), "rational": plus.is_rational()},
                    {"value": minus.to_string(), "approx": minus.to_f64(), "rational": minus.is_rational()},
                ],
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::from(EXIT_OK))
        }

        Command::Cohomology(args) => {
            if args.dims.len() != 4 {
                return Err(CliError::Usage("expected --dims a,b,c,d".into()));
            }
            let input = CohomologyInput {
                n: args.n,
                k: args.k,
                dim_hk_c: args.dims[0],
                dim_hk: args.dims[1],
                dim_im_to_link: args.dims[2],
                dim_im_c_to_full: args.dims[3],
            };
            let (minus, plus) =
                spectral::weighted_cohomology_dims(&input).map_err(|e| e.to_string())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "schema": "holocalc-cohomology/1",
                    "config": config.hash(),
                    "n": args.n,
                    "k": args.k,
                    "minus": minus,
                    "plus": plus,
                }))
                .unwrap()
            );
            Ok(ExitCode::from(EXIT_OK))
        }

        Command::Catalog(args) => {
            let records = match args.family.as_str() {
                "an" => catalog::catalog_an(args.n_max.unwrap_or(config.an_n_max)),
                "wcp2" => catalog::catalog_wcp2(args.max_weight.unwrap_or(config.wcp2_max_weight)),
                "s3r4" => catalog::catalog_s3r4(args.max.unwrap_or(config.s3r4_max)),
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown catalog family {other:?}; expected an|wcp2|s3r4"
                    )))
                }
            };
            if args.csv {
                print!("{}", catalog::catalog_csv(&records));
            } else {
                let mut envelope = catalog::catalog_json(&records);
                envelope["config"] = json!(config.hash());
                println!("{}", serde_json::to_string_pretty(&envelope).unwrap());
            }
            Ok(ExitCode::from(EXIT_OK))
        }
    }
}
