//! Command-line front end for `gcdmix`.
//!
//! [`run`] parses an argument vector, validates every parameter, performs the
//! computation and returns the rendered report, so the binary and the tests
//! share one code path.

pub mod args;
pub mod render;
pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use gcdmix::analytic::{coprimality_product, euler_product, mean_value_series};
use gcdmix::arith::{f, is_prime, surjectivity_witness};
use gcdmix::density::{density_report_with_threads, heatmap, local_event_density};
use gcdmix::gl2::{count_conjugacy_classes, prime_power_class_count};
use gcdmix::summatory::{coprime_pair_count, phi_sum_hyperbola, phi_sum_sieve};
use gcdmix::{build_tables, EulerProductEstimate, Fraction};
use thiserror::Error;

pub use args::{Cli, Command, ImageFormat, ReportFormat, SumMethod};
use report::*;

/// Largest `x` the sieve route of `totient-sum` will tabulate.
pub const SIEVE_SUM_MAX: u64 = 20_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(#[from] clap::Error),

    #[error("invalid parameter: {0}")]
    Invalid(String),

    #[error("computation failed: {0}")]
    Compute(gcdmix::Error),

    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl From<gcdmix::Error> for CliError {
    fn from(e: gcdmix::Error) -> Self {
        use gcdmix::Error::*;
        match e {
            GcdOfZeros | InvalidArgument { .. } | NotPrime(_) | Limit { .. } => {
                CliError::Invalid(e.to_string())
            }
            Overflow(_) | Allocation(_) => CliError::Compute(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(e) => e.exit_code(),
            CliError::Invalid(_) => 3,
            CliError::Compute(_) => 4,
            CliError::Io { .. } => 5,
        }
    }
}

/// Text for stdout. Empty when the report went to `--out`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit<R: Report>(report: &R, output: &args::Output) -> Result<Outcome, CliError> {
    let text = match output.format {
        ReportFormat::Json => report.json(),
        ReportFormat::Csv => report.csv(),
    };
    match &output.out {
        Some(path) => {
            write_file(path, text.as_bytes())?;
            Ok(Outcome {
                stdout: String::new(),
            })
        }
        None => Ok(Outcome { stdout: text }),
    }
}

/// Parses `argv` (program name first) and runs the selected subcommand.
pub fn run<I, T>(argv: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            return Ok(Outcome {
                stdout: e.to_string(),
            });
        }
        Err(e) => return Err(e.into()),
    };
    execute(cli.command)
}

pub fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Density {
            n,
            histogram_cap,
            threads,
            output,
        } => {
            let r = density_report_with_threads(n, histogram_cap, threads.map(|t| t as usize))?;
            let out = DensityOut {
                n,
                ones_count: r.ones_count,
                total: r.total,
                rho: r.rho().into(),
                histogram_cap,
                histogram: r
                    .histogram
                    .iter()
                    .map(|(value, count)| HistogramEntry { value, count })
                    .collect(),
                histogram_overflow: r.histogram.overflow(),
            };
            emit(&out, &output)
        }

        Command::Heatmap { n, out, format } => {
            let grid = heatmap(n)?;
            let (bytes, name) = match format {
                ImageFormat::Ppm => (render::encode_ppm(&grid), "ppm"),
                ImageFormat::Csv => (render::encode_csv(&grid).into_bytes(), "csv"),
            };
            write_file(&out, &bytes)?;
            let ones = grid.ones_count();
            let total = n * n;
            let summary = HeatmapOut {
                n,
                format: name,
                path: out.display().to_string(),
                bytes: bytes.len() as u64,
                ones_count: ones,
                total,
                rho: Fraction::new(ones as u128, total as u128).into(),
            };
            Ok(Outcome {
                stdout: summary.json(),
            })
        }

        Command::Local { p, n, output } => {
            if !is_prime(p) {
                return Err(invalid(format!("--p {p} is not prime")));
            }
            let e = local_event_density(p, n)?;
            let out = LocalOut {
                p,
                n,
                event_count: e.event_count,
                density: e.density_exact().into(),
                target: e.target_exact().into(),
                abs_difference: round6((e.density - e.target).abs()),
            };
            emit(&out, &output)
        }

        Command::Euler {
            prime_limit,
            coprimality,
            output,
        } => {
            if prime_limit < 2 {
                return Err(invalid("--prime-limit must be at least 2"));
            }
            let est = if coprimality {
                coprimality_product(prime_limit)?
            } else {
                euler_product(prime_limit)?
            };
            emit(&euler_out(&est), &output)
        }

        Command::Mean {
            n,
            checkpoints,
            output,
        } => {
            if let Some(&bad) = checkpoints.iter().find(|&&c| c > n) {
                return Err(invalid(format!("checkpoint {bad} exceeds --n {n}")));
            }
            let mut marks = if checkpoints.is_empty() {
                std::iter::successors(Some(10u64), |&c| c.checked_mul(10))
                    .take_while(|&c| c < n)
                    .collect()
            } else {
                checkpoints
            };
            marks.push(n);
            let tables = build_tables(n)?;
            let series = mean_value_series(&tables, &marks)?;
            let out = MeanOut {
                n,
                checkpoints: series
                    .partial_means
                    .iter()
                    .map(|&(n, mean)| Checkpoint {
                        n,
                        mean: round6(mean),
                    })
                    .collect(),
                final_mean: series.final_mean.to_decimal(LONG_DIGITS),
                final_mean_rounded: round6(series.final_mean.to_f64()),
            };
            emit(&out, &output)
        }

        Command::Gl2 { n, force, output } => {
            if n < 2 {
                return Err(invalid("--n must be at least 2"));
            }
            let c = count_conjugacy_classes(n, force).map_err(|e| match e {
                gcdmix::Error::Limit { limit, .. } => invalid(format!(
                    "--n {n} exceeds the enumeration cap {limit}; pass --force to run anyway"
                )),
                other => other.into(),
            })?;
            let tables = build_tables(n)?;
            let prime_power_product = tables
                .factorize(n)
                .into_iter()
                .map(|(p, a)| prime_power_class_count(p, a))
                .product::<Result<u64, _>>()?;
            let out = Gl2Out {
                n,
                group_order: c.group_order,
                brute: c.class_count_brute,
                formula: c.class_count_formula,
                prime_power_product,
                matches: c.matches(),
                class_sizes: c.class_sizes,
            };
            emit(&out, &output)
        }

        Command::TotientSum { x, method, output } => {
            let mut results = Vec::new();
            if matches!(method, SumMethod::Sieve | SumMethod::Both) {
                if x > SIEVE_SUM_MAX {
                    return Err(invalid(format!(
                        "--x {x} exceeds the sieve limit {SIEVE_SUM_MAX}; use --method hyperbola"
                    )));
                }
                let tables = build_tables(x)?;
                results.push(phi_sum_sieve(x, &tables)?);
            }
            if matches!(method, SumMethod::Hyperbola | SumMethod::Both) {
                results.push(phi_sum_hyperbola(x)?);
            }
            let agree = (results.len() == 2).then(|| results[0].phi_sum == results[1].phi_sum);
            let out = TotientOut {
                x,
                results: results.iter().map(SumRow::from).collect(),
                agree,
            };
            emit(&out, &output)
        }

        Command::Coprime { n, output } => {
            let count = coprime_pair_count(n)?;
            let total = n as u128 * n as u128;
            let density = Fraction::new(count, total);
            let target = 6.0 / std::f64::consts::PI.powi(2);
            let out = CoprimeOut {
                n,
                count,
                total,
                abs_difference: round6((density.to_f64() - target).abs()),
                density: density.into(),
                six_over_pi_squared: round6(target),
            };
            emit(&out, &output)
        }

        Command::Witness { c_max, output } => {
            let mut failures = Vec::new();
            let mut sample = Vec::new();
            for c in 2..=c_max {
                match surjectivity_witness(c) {
                    Ok(pair) => {
                        let value = f(pair);
                        if value != c {
                            failures.push(c);
                        }
                        if sample.len() < 10 {
                            sample.push(WitnessPair {
                                c,
                                a: pair.a(),
                                b: pair.b(),
                                f: value,
                            });
                        }
                    }
                    Err(_) => failures.push(c),
                }
            }
            let out = WitnessOut {
                c_max,
                checked: c_max - 1,
                all_hold: failures.is_empty(),
                failures,
                sample,
            };
            emit(&out, &output)
        }
    }
}

fn euler_out(est: &EulerProductEstimate) -> EulerOut {
    EulerOut {
        kind: est.kind,
        prime_limit: est.prime_limit,
        largest_prime: est.largest_prime,
        prime_count: est.prime_count,
        value: est.value.to_decimal(LONG_DIGITS),
        lower: est.lower.to_decimal(LONG_DIGITS),
        upper: est.upper.to_decimal(LONG_DIGITS),
        value_rounded: round6(est.value.to_f64()),
        tail_bound: est.tail_bound,
    }
}
