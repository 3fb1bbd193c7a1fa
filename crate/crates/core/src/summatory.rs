//! Summatory totient `Φ(x) = Σ_{n<=x} φ(n)`.
//!
//! Two independent routes are provided: a prefix sum over sieved φ, and the
//! Dirichlet hyperbola method applied to `φ = μ ∗ N` with `N(n) = n`. For a
//! convolution `g ∗ h` and split point `a = ⌊√x⌋`, `b = ⌊x/a⌋`,
//!
//! ```text
//! Σ_{k<=x} (g∗h)(k) = Σ_{d<=a} g(d) H(⌊x/d⌋) + Σ_{e<=b} h(e) G(⌊x/e⌋) − G(a) H(b)
//! ```
//!
//! where `G`, `H` are the prefix sums. Every quotient is a floor. The points
//! `(d, e)` under the hyperbola `de <= x` with `d > a` and `e > b` would need
//! `de >= (a+1)(b+1) > x`, so the two strips cover everything and overlap
//! exactly in the rectangle `[1, a] × [1, b]`.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::arith::isqrt;
use crate::error::{invalid, Error, Result};
use crate::sieve::{build_tables, mertens_prefix, SieveTables};

/// Largest argument accepted by the hyperbola route. Keeps `x²/2` and the
/// partial sums inside `i128`.
pub const MAX_HYPERBOLA_ARG: u64 = 1 << 62;

/// An arithmetic function exposed through point values and prefix sums.
pub trait ArithmeticFunction {
    fn value(&mut self, n: u64) -> Result<i128>;
    /// `Σ_{k<=n} value(k)`, with `prefix(0) = 0`.
    fn prefix(&mut self, n: u64) -> Result<i128>;
}

/// The constant function 1.
#[derive(Debug, Clone, Copy, Default)]
pub struct One;

impl ArithmeticFunction for One {
    fn value(&mut self, _n: u64) -> Result<i128> {
        Ok(1)
    }

    fn prefix(&mut self, n: u64) -> Result<i128> {
        Ok(n as i128)
    }
}

/// The identity `N(n) = n`, with prefix sums `T(n) = n(n+1)/2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Identity;

impl ArithmeticFunction for Identity {
    fn value(&mut self, n: u64) -> Result<i128> {
        Ok(n as i128)
    }

    fn prefix(&mut self, n: u64) -> Result<i128> {
        triangular(n)
    }
}

fn triangular(n: u64) -> Result<i128> {
    let n = n as i128;
    n.checked_mul(n + 1)
        .map(|t| t / 2)
        .ok_or(Error::Overflow("n(n+1)/2"))
}

/// Möbius values from a sieved table and Mertens values `M(x)` for any `x`.
///
/// Arguments up to the table bound are answered from sieved prefix sums;
/// larger ones use `M(x) = 1 − Σ_{d=2}^{x} M(⌊x/d⌋)` grouped over runs of
/// equal quotient, memoized per distinct argument.
#[derive(Debug, Clone)]
pub struct MertensCache {
    tables: SieveTables,
    small: Vec<i64>,
    large: HashMap<u64, i64>,
}

impl MertensCache {
    /// Sieves up to about `x^{2/3}`, which balances the sieve against the recursion.
    pub fn for_argument(x: u64) -> Result<Self> {
        let bound = ((x as f64).powf(2.0 / 3.0) as u64)
            .max(isqrt(x) + 1)
            .max(100);
        Self::with_bound(bound)
    }

    pub fn with_bound(bound: u64) -> Result<Self> {
        let tables = build_tables(bound.max(1))?;
        let small = mertens_prefix(&tables);
        Ok(Self {
            tables,
            small,
            large: HashMap::new(),
        })
    }

    pub fn sieve_bound(&self) -> u64 {
        self.tables.limit()
    }

    /// μ(n) for `n` within the sieve bound.
    pub fn mu(&self, n: u64) -> Result<i8> {
        if n == 0 || n > self.tables.limit() {
            return Err(Error::Limit {
                what: "Möbius argument",
                value: n,
                limit: self.tables.limit(),
            });
        }
        Ok(self.tables.mu(n))
    }

    /// Memoized entries above the sieve bound.
    pub fn memo_len(&self) -> usize {
        self.large.len()
    }

    pub fn mertens(&mut self, x: u64) -> i64 {
        if (x as usize) < self.small.len() {
            return self.small[x as usize];
        }
        if let Some(&m) = self.large.get(&x) {
            return m;
        }
        let mut acc = 1i64;
        let mut d = 2u64;
        while d <= x {
            let q = x / d;
            let last = x / q;
            acc -= (last - d + 1) as i64 * self.mertens(q);
            d = last + 1;
        }
        self.large.insert(x, acc);
        acc
    }
}

/// Mertens function `M(x) = Σ_{n<=x} μ(n)`.
pub fn mertens(x: u64, cache: &mut MertensCache) -> i64 {
    cache.mertens(x)
}

impl ArithmeticFunction for MertensCache {
    fn value(&mut self, n: u64) -> Result<i128> {
        self.mu(n).map(i128::from)
    }

    fn prefix(&mut self, n: u64) -> Result<i128> {
        Ok(self.mertens(n) as i128)
    }
}

/// `Σ_{k<=x} (g ∗ h)(k)` by the hyperbola method with `a = ⌊√x⌋`.
///
/// `g` is evaluated pointwise on `1..=a` and `h` on `1..=⌊x/a⌋`; both prefix
/// sums are queried at floored quotients of `x`.
pub fn hyperbola_sum<G, H>(x: u64, g: &mut G, h: &mut H) -> Result<i128>
where
    G: ArithmeticFunction + ?Sized,
    H: ArithmeticFunction + ?Sized,
{
    if x == 0 {
        return Ok(0);
    }
    let overflow = || Error::Overflow("hyperbola sum");
    let a = isqrt(x);
    let b = x / a;
    let mut total = 0i128;
    for d in 1..=a {
        let gd = g.value(d)?;
        if gd != 0 {
            let term = gd.checked_mul(h.prefix(x / d)?).ok_or_else(overflow)?;
            total = total.checked_add(term).ok_or_else(overflow)?;
        }
    }
    for e in 1..=b {
        let he = h.value(e)?;
        if he != 0 {
            let term = he.checked_mul(g.prefix(x / e)?).ok_or_else(overflow)?;
            total = total.checked_add(term).ok_or_else(overflow)?;
        }
    }
    let overlap = g
        .prefix(a)?
        .checked_mul(h.prefix(b)?)
        .ok_or_else(overflow)?;
    total.checked_sub(overlap).ok_or_else(overflow)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Sieve,
    Hyperbola,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummatoryResult {
    pub x: u64,
    pub phi_sum: u128,
    /// `3x²/π²`.
    pub main_term: f64,
    pub abs_error: f64,
    /// `|Φ(x) − 3x²/π²| / x^{3/2}`.
    pub normalized_error: f64,
    pub method: Method,
}

impl SummatoryResult {
    fn new(x: u64, phi_sum: u128, method: Method) -> Self {
        let xf = x as f64;
        let main_term = 3.0 * xf * xf / (PI * PI);
        let abs_error = (phi_sum as f64 - main_term).abs();
        Self {
            x,
            phi_sum,
            main_term,
            abs_error,
            normalized_error: abs_error / xf.powf(1.5),
            method,
        }
    }
}

/// `Φ(x)` as a prefix sum of the sieved totient.
pub fn phi_sum_sieve(x: u64, tables: &SieveTables) -> Result<SummatoryResult> {
    if x == 0 {
        return Err(invalid("x", "must be at least 1"));
    }
    if x > tables.limit() {
        return Err(Error::Limit {
            what: "x",
            value: x,
            limit: tables.limit(),
        });
    }
    let sum: u128 = tables.phi_values()[..x as usize]
        .iter()
        .map(|&v| v as u128)
        .sum();
    Ok(SummatoryResult::new(x, sum, Method::Sieve))
}

/// `Φ(x)` from `φ = μ ∗ N` by the hyperbola method, with a sublinear Mertens
/// recursion for `M` at large quotients.
pub fn phi_sum_hyperbola(x: u64) -> Result<SummatoryResult> {
    let mut cache = check_hyperbola_arg(x).and_then(|_| MertensCache::for_argument(x))?;
    phi_sum_hyperbola_with(x, &mut cache)
}

fn check_hyperbola_arg(x: u64) -> Result<()> {
    if x == 0 {
        return Err(invalid("x", "must be at least 1"));
    }
    if x > MAX_HYPERBOLA_ARG {
        return Err(Error::Limit {
            what: "x",
            value: x,
            limit: MAX_HYPERBOLA_ARG,
        });
    }
    Ok(())
}

/// As [`phi_sum_hyperbola`], reusing a caller-provided Mertens cache.
pub fn phi_sum_hyperbola_with(x: u64, cache: &mut MertensCache) -> Result<SummatoryResult> {
    check_hyperbola_arg(x)?;
    if cache.sieve_bound() < isqrt(x) {
        return Err(invalid(
            "cache",
            format!(
                "sieve bound {} is below √x = {}",
                cache.sieve_bound(),
                isqrt(x)
            ),
        ));
    }
    let sum = hyperbola_sum(x, cache, &mut Identity)?;
    let sum = u128::try_from(sum).map_err(|_| Error::Overflow("Φ(x)"))?;
    Ok(SummatoryResult::new(x, sum, Method::Hyperbola))
}

/// Ordered pairs in `[1, N]²` with `gcd(a, b) = 1`, i.e. `2Φ(N) − 1`.
///
/// Each coprime `(a, b)` with `a < b` is counted by φ(b) and mirrored; the
/// diagonal contributes only `(1, 1)`, which `2Φ(N)` would count twice.
pub fn coprime_pair_count(n: u64) -> Result<u128> {
    let phi = phi_sum_hyperbola(n)?;
    Ok(2 * phi.phi_sum - 1)
}

/// Hyperbola-route results for each `x`, which must all be at least 2.
pub fn error_term_report(x_values: &[u64]) -> Result<Vec<SummatoryResult>> {
    if let Some(&bad) = x_values.iter().find(|&&x| x < 2) {
        return Err(invalid("x", format!("{bad} < 2")));
    }
    let Some(&max) = x_values.iter().max() else {
        return Ok(Vec::new());
    };
    check_hyperbola_arg(max)?;
    let mut cache = MertensCache::for_argument(max)?;
    x_values
        .iter()
        .map(|&x| phi_sum_hyperbola_with(x, &mut cache))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gcd_u64;

    #[test]
    fn sieve_route_values() {
        let t = build_tables(1000).unwrap();
        assert_eq!(phi_sum_sieve(1, &t).unwrap().phi_sum, 1);
        assert_eq!(phi_sum_sieve(10, &t).unwrap().phi_sum, 32);
        assert_eq!(phi_sum_sieve(100, &t).unwrap().phi_sum, 3044);
        assert!(matches!(phi_sum_sieve(1001, &t), Err(Error::Limit { .. })));
        assert!(phi_sum_sieve(0, &t).is_err());
    }

    #[test]
    fn hyperbola_hand_example() {
        // a = 3, b = 3: (55 − 15 − 6) + (M(10) + 2M(5) + 3M(3)) − T(3)M(3)
        let mut cache = MertensCache::with_bound(3).unwrap();
        assert_eq!(mertens(10, &mut cache), -1);
        assert_eq!(mertens(5, &mut cache), -2);
        assert_eq!(34 - 8 - 6 * mertens(3, &mut cache) as i128, 32);
        assert_eq!(phi_sum_hyperbola_with(10, &mut cache).unwrap().phi_sum, 32);
        assert_eq!(phi_sum_hyperbola(1).unwrap().phi_sum, 1);
        assert!(phi_sum_hyperbola(0).is_err());
        assert!(matches!(
            phi_sum_hyperbola(MAX_HYPERBOLA_ARG + 1),
            Err(Error::Limit { .. })
        ));
    }

    #[test]
    fn routes_agree_to_1000() {
        let t = build_tables(1000).unwrap();
        let mut cache = MertensCache::with_bound(40).unwrap();
        for x in 1..=1000 {
            let sieve = phi_sum_sieve(x, &t).unwrap().phi_sum;
            assert_eq!(phi_sum_hyperbola(x).unwrap().phi_sum, sieve, "x={x}");
            assert_eq!(
                phi_sum_hyperbola_with(x, &mut cache).unwrap().phi_sum,
                sieve,
                "x={x}"
            );
        }
    }

    #[test]
    fn routes_agree_on_log_sample() {
        let t = build_tables(1_000_000).unwrap();
        let mut x = 1u64;
        while x <= 1_000_000 {
            for y in [x, x + 1, x * 3 / 2 + 7] {
                if y <= 1_000_000 {
                    let sieve = phi_sum_sieve(y, &t).unwrap().phi_sum;
                    assert_eq!(phi_sum_hyperbola(y).unwrap().phi_sum, sieve, "x={y}");
                }
            }
            x *= 10;
        }
    }

    #[test]
    fn mertens_recursion_matches_sieve() {
        let t = build_tables(10_000).unwrap();
        let prefix = mertens_prefix(&t);
        let mut cache = MertensCache::with_bound(50).unwrap();
        for x in 1..=10_000 {
            assert_eq!(mertens(x, &mut cache), prefix[x as usize], "x={x}");
        }
        assert!(cache.memo_len() > 0);
    }

    #[test]
    fn mertens_million() {
        let t = build_tables(1_000_000).unwrap();
        let prefix = mertens_prefix(&t);
        let mut cache = MertensCache::for_argument(1_000_000).unwrap();
        assert!(cache.sieve_bound() < 1_000_000);
        assert_eq!(mertens(1_000_000, &mut cache), prefix[1_000_000]);
        assert_eq!(mertens(1, &mut cache), 1);
    }

    #[test]
    fn coprime_counts() {
        assert_eq!(coprime_pair_count(1).unwrap(), 1);
        assert_eq!(coprime_pair_count(10).unwrap(), 63);
        for n in 1..=300u64 {
            let mut brute = 0u128;
            for a in 1..=n {
                for b in 1..=n {
                    if gcd_u64(a, b) == 1 {
                        brute += 1;
                    }
                }
            }
            assert_eq!(coprime_pair_count(n).unwrap(), brute, "n={n}");
        }
        let n = 10_000u64;
        let density = coprime_pair_count(n).unwrap() as f64 / (n * n) as f64;
        assert!((density - 0.607927).abs() < 2e-3);
    }

    #[test]
    fn error_terms() {
        let r = error_term_report(&[10, 100, 1_000_000]).unwrap();
        assert_eq!(r[0].phi_sum, 32);
        assert!((r[0].normalized_error - 0.0507).abs() < 1e-3);
        assert_eq!(r[1].phi_sum, 3044);
        assert!((r[1].normalized_error - 0.0044).abs() < 1e-4);
        assert!(r[2].normalized_error < 0.01);
        assert!(error_term_report(&[1]).is_err());
        assert!(error_term_report(&[]).unwrap().is_empty());
    }

    #[test]
    fn error_term_bounded_across_decades() {
        let xs: Vec<u64> = (1..=7).map(|k| 10u64.pow(k)).collect();
        let r = error_term_report(&xs).unwrap();
        // Expanding Φ(x) = ½ Σ μ(d)(⌊x/d⌋² + ⌊x/d⌋) gives
        // |Φ(x) − 3x²/π²| <= 1.5·x·(ln x + 1) + x/2, a decreasing envelope once divided by x^{3/2}.
        let envelope = |x: f64| (1.5 * (x.ln() + 1.0) + 0.5) / x.sqrt();
        for s in &r {
            assert!(s.normalized_error <= envelope(s.x as f64), "{s:?}");
        }
        for w in r.windows(2) {
            assert!(envelope(w[1].x as f64) < envelope(w[0].x as f64));
        }
        for s in &r {
            assert!(s.normalized_error <= 0.1);
        }
    }
}
