//! Serializable report bodies. Every JSON report carries `schema_version` and
//! `command`; exact integers sit next to decimals rounded to six places.

use gcdmix::{Fraction, SummatoryResult};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// Digits printed for extended-precision values.
pub const LONG_DIGITS: usize = 20;

/// `x` rounded to six decimal places.
pub fn round6(x: f64) -> f64 {
    format!("{x:.6}").parse().expect("formatted float parses")
}

/// Fixed six-place rendering.
pub fn fixed6(x: f64) -> String {
    format!("{x:.6}")
}

#[derive(Debug, Serialize)]
pub struct Ratio {
    pub numerator: u128,
    pub denominator: u128,
    /// Rounded half-up to six places.
    pub decimal: String,
}

impl From<Fraction> for Ratio {
    fn from(r: Fraction) -> Self {
        Self {
            numerator: r.numer(),
            denominator: r.denom(),
            decimal: r.to_decimal(6),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema_version: u32,
    pub command: &'static str,
    #[serde(flatten)]
    pub body: T,
}

pub trait Report: Serialize {
    const COMMAND: &'static str;

    fn csv(&self) -> String;

    fn json(&self) -> String
    where
        Self: Sized,
    {
        let env = Envelope {
            schema_version: SCHEMA_VERSION,
            command: Self::COMMAND,
            body: self,
        };
        let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn csv_lines(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize)]
pub struct HistogramEntry {
    pub value: u64,
    pub count: u64,
}

#[derive(Debug, Serialize)]
pub struct DensityOut {
    pub n: u64,
    pub ones_count: u64,
    pub total: u64,
    pub rho: Ratio,
    pub histogram_cap: u64,
    pub histogram: Vec<HistogramEntry>,
    pub histogram_overflow: u64,
}

impl Report for DensityOut {
    const COMMAND: &'static str = "density";

    fn csv(&self) -> String {
        let mut header = vec![
            "n".to_string(),
            "ones_count".into(),
            "total".into(),
            "rho_numerator".into(),
            "rho_denominator".into(),
            "rho".into(),
        ];
        let mut row = vec![
            self.n.to_string(),
            self.ones_count.to_string(),
            self.total.to_string(),
            self.rho.numerator.to_string(),
            self.rho.denominator.to_string(),
            self.rho.decimal.clone(),
        ];
        for e in &self.histogram {
            header.push(format!("f_{}", e.value));
            row.push(e.count.to_string());
        }
        header.push(format!("f_gt_{}", self.histogram_cap));
        row.push(self.histogram_overflow.to_string());
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        csv_lines(&header, [row])
    }
}

#[derive(Debug, Serialize)]
pub struct HeatmapOut {
    pub n: u64,
    pub format: &'static str,
    pub path: String,
    pub bytes: u64,
    pub ones_count: u64,
    pub total: u64,
    pub rho: Ratio,
}

impl Report for HeatmapOut {
    const COMMAND: &'static str = "heatmap";

    fn csv(&self) -> String {
        csv_lines(
            &["n", "format", "path", "bytes", "ones_count", "total", "rho"],
            [vec![
                self.n.to_string(),
                self.format.to_string(),
                self.path.clone(),
                self.bytes.to_string(),
                self.ones_count.to_string(),
                self.total.to_string(),
                self.rho.decimal.clone(),
            ]],
        )
    }
}

#[derive(Debug, Serialize)]
pub struct LocalOut {
    pub p: u64,
    pub n: u64,
    pub event_count: u64,
    pub density: Ratio,
    pub target: Ratio,
    pub abs_difference: f64,
}

impl Report for LocalOut {
    const COMMAND: &'static str = "local";

    fn csv(&self) -> String {
        csv_lines(
            &[
                "p",
                "n",
                "event_count",
                "density",
                "target",
                "abs_difference",
            ],
            [vec![
                self.p.to_string(),
                self.n.to_string(),
                self.event_count.to_string(),
                self.density.decimal.clone(),
                self.target.decimal.clone(),
                fixed6(self.abs_difference),
            ]],
        )
    }
}

#[derive(Debug, Serialize)]
pub struct EulerOut {
    pub kind: gcdmix::ProductKind,
    pub prime_limit: u64,
    pub largest_prime: u64,
    pub prime_count: usize,
    /// Truncated at [`LONG_DIGITS`] places.
    pub value: String,
    pub lower: String,
    pub upper: String,
    pub value_rounded: f64,
    pub tail_bound: f64,
}

impl Report for EulerOut {
    const COMMAND: &'static str = "euler";

    fn csv(&self) -> String {
        csv_lines(
            &[
                "kind",
                "prime_limit",
                "largest_prime",
                "prime_count",
                "value",
                "lower",
                "upper",
                "tail_bound",
            ],
            [vec![
                match self.kind {
                    gcdmix::ProductKind::Density => "density".to_string(),
                    gcdmix::ProductKind::Coprimality => "coprimality".to_string(),
                },
                self.prime_limit.to_string(),
                self.largest_prime.to_string(),
                self.prime_count.to_string(),
                self.value.clone(),
                self.lower.clone(),
                self.upper.clone(),
                format!("{:e}", self.tail_bound),
            ]],
        )
    }
}

#[derive(Debug, Serialize)]
pub struct Checkpoint {
    pub n: u64,
    pub mean: f64,
}

#[derive(Debug, Serialize)]
pub struct MeanOut {
    pub n: u64,
    pub checkpoints: Vec<Checkpoint>,
    /// Mean at `n`, truncated at [`LONG_DIGITS`] places.
    pub final_mean: String,
    pub final_mean_rounded: f64,
}

impl Report for MeanOut {
    const COMMAND: &'static str = "mean";

    fn csv(&self) -> String {
        csv_lines(
            &["n", "mean"],
            self.checkpoints
                .iter()
                .map(|c| vec![c.n.to_string(), fixed6(c.mean)]),
        )
    }
}

#[derive(Debug, Serialize)]
pub struct Gl2Out {
    pub n: u64,
    pub group_order: u64,
    pub brute: u64,
    pub formula: u64,
    /// Product of `p^{2α} − p^{α−1}` over the prime powers of `n`.
    pub prime_power_product: u64,
    #[serde(rename = "match")]
    pub matches: bool,
    pub class_sizes: Vec<u64>,
}

impl Report for Gl2Out {
    const COMMAND: &'static str = "gl2";

    fn csv(&self) -> String {
        csv_lines(
            &[
                "n",
                "group_order",
                "brute",
                "formula",
                "prime_power_product",
                "match",
            ],
            [vec![
                self.n.to_string(),
                self.group_order.to_string(),
                self.brute.to_string(),
                self.formula.to_string(),
                self.prime_power_product.to_string(),
                self.matches.to_string(),
            ]],
        )
    }
}

#[derive(Debug, Serialize)]
pub struct SumRow {
    pub method: gcdmix::Method,
    pub phi_sum: u128,
    pub main_term: f64,
    pub abs_error: f64,
    pub normalized_error: f64,
}

impl From<&SummatoryResult> for SumRow {
    fn from(r: &SummatoryResult) -> Self {
        Self {
            method: r.method,
            phi_sum: r.phi_sum,
            main_term: round6(r.main_term),
            abs_error: round6(r.abs_error),
            normalized_error: r.normalized_error,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TotientOut {
    pub x: u64,
    pub results: Vec<SumRow>,
    /// Present when both methods ran.
    pub agree: Option<bool>,
}

impl Report for TotientOut {
    const COMMAND: &'static str = "totient-sum";

    fn csv(&self) -> String {
        csv_lines(
            &[
                "x",
                "method",
                "phi_sum",
                "main_term",
                "abs_error",
                "normalized_error",
            ],
            self.results.iter().map(|r| {
                let method = match r.method {
                    gcdmix::Method::Sieve => "sieve",
                    gcdmix::Method::Hyperbola => "hyperbola",
                };
                vec![
                    self.x.to_string(),
                    method.to_string(),
                    r.phi_sum.to_string(),
                    fixed6(r.main_term),
                    fixed6(r.abs_error),
                    format!("{:.9}", r.normalized_error),
                ]
            }),
        )
    }
}

#[derive(Debug, Serialize)]
pub struct CoprimeOut {
    pub n: u64,
    pub count: u128,
    pub total: u128,
    pub density: Ratio,
    pub six_over_pi_squared: f64,
    pub abs_difference: f64,
}

impl Report for CoprimeOut {
    const COMMAND: &'static str = "coprime";

    fn csv(&self) -> String {
        csv_lines(
            &["n", "count", "total", "density", "abs_difference"],
            [vec![
                self.n.to_string(),
                self.count.to_string(),
                self.total.to_string(),
                self.density.decimal.clone(),
                fixed6(self.abs_difference),
            ]],
        )
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessPair {
    pub c: u64,
    pub a: u64,
    pub b: u64,
    pub f: u64,
}

#[derive(Debug, Serialize)]
pub struct WitnessOut {
    pub c_max: u64,
    pub checked: u64,
    pub all_hold: bool,
    /// Values of `c` where `f(c, c² − c) != c`, or where the pair overflows.
    pub failures: Vec<u64>,
    /// The first few witnesses.
    pub sample: Vec<WitnessPair>,
}

impl Report for WitnessOut {
    const COMMAND: &'static str = "witness";

    fn csv(&self) -> String {
        csv_lines(
            &["c_max", "checked", "all_hold", "failures"],
            [vec![
                self.c_max.to_string(),
                self.checked.to_string(),
                self.all_hold.to_string(),
                self.failures.len().to_string(),
            ]],
        )
    }
}
