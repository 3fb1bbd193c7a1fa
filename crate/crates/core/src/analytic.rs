//! Truncated Euler products with certified tail enclosures, and the mean value
//! of `φ(n)σ(n)/n²`.
//!
//! # Tail bounds
//!
//! For the density product `∏ (1 − u_p)` with `u_p = 1/(p²(p+1)) <= 1/12`,
//! `−log(1 − u) <= 2u` on `[0, 1/2]`, so the primes above `P` contribute at most
//! `Σ_{m>P} 2/m³ <= ∫_P^∞ 2/t³ dt = 1/P²` to `−log`. The omitted factors thus
//! shrink the truncated value by a ratio in `[exp(−1/P²), 1]`.
//!
//! For the coprimality product, `u_p = 1/p²` and `−log(1 − u) <= u/(1 − u) = 1/(p² − 1)`;
//! telescoping `1/(m² − 1) = (1/(m−1) − 1/(m+1))/2` gives `Σ_{m>P} <= 1/P`.
//!
//! In both cases the enclosure is `[value·(1 − τ), value]` with
//! `τ = 1 − exp(−bound)`, and enclosures at increasing `P` are nested.

use serde::Serialize;

use crate::arith::require_prime;
use crate::error::{invalid, Error, Result};
use crate::extended::DoubleDouble;
use crate::fraction::Fraction;
use crate::sieve::{primes_up_to, SieveTables};

/// `1 − 1/(p²(p+1))`.
pub fn local_factor(p: u64) -> Result<DoubleDouble> {
    require_prime(p)?;
    Ok(density_factor(p))
}

fn density_factor(p: u64) -> DoubleDouble {
    let p = p as u128;
    DoubleDouble::ONE - DoubleDouble::from_u128(p * p * (p + 1)).recip()
}

fn coprimality_factor(p: u64) -> DoubleDouble {
    let p = p as u128;
    DoubleDouble::ONE - DoubleDouble::from_u128(p * p).recip()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    /// `∏ (1 − 1/(p²(p+1)))`, the limiting density of `f = 1`.
    Density,
    /// `∏ (1 − 1/p²) = 6/π²`.
    Coprimality,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerProductEstimate {
    pub kind: ProductKind,
    /// Every prime `<= prime_limit` is included.
    pub prime_limit: u64,
    pub largest_prime: u64,
    pub prime_count: usize,
    pub value: DoubleDouble,
    /// Relative bound on the omitted factors: the limit is at least `value·(1 − tail_bound)`.
    pub tail_bound: f64,
    pub lower: DoubleDouble,
    pub upper: DoubleDouble,
}

impl EulerProductEstimate {
    pub fn contains(&self, x: f64) -> bool {
        let x = DoubleDouble::from_f64(x);
        self.lower <= x && x <= self.upper
    }

    /// True when `[lower, upper]` lies inside `other`'s enclosure.
    pub fn nested_in(&self, other: &Self) -> bool {
        other.lower <= self.lower && self.upper <= other.upper
    }
}

fn product(kind: ProductKind, prime_limit: u64) -> Result<EulerProductEstimate> {
    if prime_limit < 2 {
        return Err(invalid("prime_limit", "must be at least 2"));
    }
    let primes = primes_up_to(prime_limit);
    let factor = match kind {
        ProductKind::Density => density_factor,
        ProductKind::Coprimality => coprimality_factor,
    };
    let value = primes
        .iter()
        .fold(DoubleDouble::ONE, |acc, &p| acc * factor(p));
    let limit = prime_limit as f64;
    let log_bound = match kind {
        ProductKind::Density => 1.0 / (limit * limit),
        ProductKind::Coprimality => 1.0 / limit,
    };
    let tail_bound = -(-log_bound).exp_m1();
    let lower = value - value * DoubleDouble::from_f64(tail_bound);
    Ok(EulerProductEstimate {
        kind,
        prime_limit,
        largest_prime: *primes.last().expect("prime_limit >= 2"),
        prime_count: primes.len(),
        value,
        tail_bound,
        lower,
        upper: value,
    })
}

/// `∏_{p <= prime_limit} (1 − 1/(p²(p+1)))` with its tail enclosure.
pub fn euler_product(prime_limit: u64) -> Result<EulerProductEstimate> {
    product(ProductKind::Density, prime_limit)
}

/// `∏_{p <= prime_limit} (1 − 1/p²)` with its tail enclosure.
pub fn coprimality_product(prime_limit: u64) -> Result<EulerProductEstimate> {
    product(ProductKind::Coprimality, prime_limit)
}

/// `φ(p^k)σ(p^k)/p^{2k}`, which is `1 − p^{−(k+1)}` for `k >= 1` and 1 for `k = 0`.
pub fn prime_power_f(p: u64, k: u32) -> Result<Fraction> {
    require_prime(p)?;
    if k == 0 {
        return Ok(Fraction::new(1, 1));
    }
    let pk1 = (p as u128)
        .checked_pow(k + 1)
        .ok_or(Error::Overflow("p^(k+1)"))?;
    Ok(Fraction::new(pk1 - 1, pk1))
}

/// `Σ_{k < terms} f(p^k)/p^k` where `f(p^k) = φ(p^k)σ(p^k)/p^{2k}`.
pub fn local_mean_series(p: u64, terms: u32) -> Result<DoubleDouble> {
    require_prime(p)?;
    let pd = DoubleDouble::from_u128(p as u128);
    let inv_p = pd.recip();
    let mut p_pow_inv = DoubleDouble::ONE; // p^{-k}
    let mut sum = DoubleDouble::ZERO;
    for k in 0..terms {
        let fk = if k == 0 {
            DoubleDouble::ONE
        } else {
            // 1 − p^{−(k+1)} = 1 − p^{−k}/p
            DoubleDouble::ONE - p_pow_inv * inv_p
        };
        sum = sum + fk * p_pow_inv;
        p_pow_inv = p_pow_inv * inv_p;
    }
    Ok(sum)
}

/// Running means of `φ(n)σ(n)/n²` sampled at checkpoints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanValueSeries {
    /// Largest checkpoint.
    pub limit: u64,
    /// `(N, (1/N) Σ_{n<=N} φ(n)σ(n)/n²)` in increasing `N`.
    pub partial_means: Vec<(u64, f64)>,
    pub final_mean: DoubleDouble,
}

/// Accumulates `φ(n)σ(n)/n²` in double-double and records the mean at each
/// checkpoint. Checkpoints are sorted and deduplicated.
pub fn mean_value_series(tables: &SieveTables, checkpoints: &[u64]) -> Result<MeanValueSeries> {
    if checkpoints.is_empty() {
        return Err(invalid("checkpoints", "list is empty"));
    }
    let mut marks = checkpoints.to_vec();
    marks.sort_unstable();
    marks.dedup();
    if marks[0] == 0 {
        return Err(invalid("checkpoints", "must be positive"));
    }
    let limit = *marks.last().expect("non-empty");
    if limit > tables.limit() {
        return Err(Error::Limit {
            what: "checkpoint",
            value: limit,
            limit: tables.limit(),
        });
    }

    let mut sum = DoubleDouble::ZERO;
    let mut partial_means = Vec::with_capacity(marks.len());
    let mut final_mean = DoubleDouble::ZERO;
    let mut next = marks.iter().copied().peekable();
    for n in 1..=limit {
        let num = DoubleDouble::from_u128(tables.phi_sigma(n));
        let den = DoubleDouble::from_u128(n as u128 * n as u128);
        sum = sum + num / den;
        if next.peek() == Some(&n) {
            next.next();
            let mean = sum / DoubleDouble::from_u128(n as u128);
            partial_means.push((n, mean.to_f64()));
            final_mean = mean;
        }
    }
    Ok(MeanValueSeries {
        limit,
        partial_means,
        final_mean,
    })
}
