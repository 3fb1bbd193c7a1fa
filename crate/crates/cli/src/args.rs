use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Reports on f(a, b) = gcd(a + b, ab) / gcd(a, b) and its companion identities.
#[derive(Debug, Parser)]
#[command(name = "gcdmix", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ImageFormat {
    Csv,
    Ppm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SumMethod {
    Sieve,
    Hyperbola,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Report encoding.
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,

    /// Write the report to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn positive() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(1..)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact count of f = 1 on the n × n grid.
    Density {
        #[arg(long, value_parser = positive())]
        n: u64,
        /// Values above the cap share one histogram bucket.
        #[arg(long, value_parser = positive(), default_value_t = 10)]
        histogram_cap: u64,
        /// Worker threads; defaults to all cores.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        threads: Option<u32>,
        #[command(flatten)]
        output: Output,
    },

    /// Write the grid of f(i, j) as CSV or a binary PPM image.
    Heatmap {
        #[arg(long, value_parser = positive())]
        n: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = ImageFormat::Ppm)]
        format: ImageFormat,
    },

    /// Frequency of p | gcd(a, b) and p | (a' + b') on the n × n grid.
    Local {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = positive())]
        n: u64,
        #[command(flatten)]
        output: Output,
    },

    /// Truncated Euler product with its certified enclosure.
    Euler {
        #[arg(long, default_value_t = 100_000)]
        prime_limit: u64,
        /// Evaluate the coprimality product (1 − 1/p²) instead.
        #[arg(long)]
        coprimality: bool,
        #[command(flatten)]
        output: Output,
    },

    /// Running mean of φ(n)σ(n)/n².
    Mean {
        #[arg(long, value_parser = positive())]
        n: u64,
        /// Comma-separated checkpoints; defaults to powers of ten up to n.
        #[arg(long, value_delimiter = ',', value_parser = positive())]
        checkpoints: Vec<u64>,
        #[command(flatten)]
        output: Output,
    },

    /// Conjugacy classes of GL(2, Z/nZ) by orbit enumeration.
    Gl2 {
        #[arg(long)]
        n: u64,
        /// Allow moduli above the default enumeration cap.
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        output: Output,
    },

    /// Σ_{n<=x} φ(n) by sieve, by the hyperbola method, or both.
    TotientSum {
        #[arg(long, value_parser = positive())]
        x: u64,
        #[arg(long, value_enum, default_value_t = SumMethod::Both)]
        method: SumMethod,
        #[command(flatten)]
        output: Output,
    },

    /// Ordered coprime pairs in [1, n]².
    Coprime {
        #[arg(long, value_parser = positive())]
        n: u64,
        #[command(flatten)]
        output: Output,
    },

    /// Check f(c, c² − c) = c for 2 <= c <= c-max.
    Witness {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        c_max: u64,
        #[command(flatten)]
        output: Output,
    },
}
