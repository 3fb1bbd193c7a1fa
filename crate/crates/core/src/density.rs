//! Exhaustive counts of `f(i, j) = 1` over the square grid `[1, n]²`.
//!
//! The grid is symmetric, so only `i <= j` is visited and off-diagonal cells
//! count twice. Row `i` first tabulates `gcd(i, r)` for every residue `r mod i`
//! from the divisors of `i`; each cell then costs one table lookup, and one
//! small gcd when `gcd(i, j) > 1`.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd_u64, require_prime};
use crate::error::{invalid, Error, Result};
use crate::fraction::Fraction;
use crate::sieve::{build_tables, SieveTables};

/// Default number of named histogram classes; larger values share one bucket.
pub const DEFAULT_HISTOGRAM_CAP: u64 = 10;

/// Largest grid side whose cell count `n²` fits in a `u64`.
pub const MAX_GRID: u64 = u32::MAX as u64;

/// Row blocks per unit of parallelism. More blocks than threads smooths out
/// the uneven cost of divisor-rich rows.
const BLOCKS_PER_THREAD: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Histogram {
    cap: u64,
    /// `counts[v - 1]` is the number of cells with `f = v`, for `v <= cap`.
    counts: Vec<u64>,
    overflow: u64,
}

impl Histogram {
    fn new(cap: u64) -> Self {
        Self {
            cap,
            counts: vec![0; cap as usize],
            overflow: 0,
        }
    }

    #[inline]
    fn add(&mut self, value: u64, weight: u64) {
        if value <= self.cap {
            self.counts[value as usize - 1] += weight;
        } else {
            self.overflow += weight;
        }
    }

    fn merge(&mut self, other: &Histogram) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.overflow += other.overflow;
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Count of cells with `f = value`, for `1 <= value <= cap`.
    pub fn count(&self, value: u64) -> Option<u64> {
        (1..=self.cap)
            .contains(&value)
            .then(|| self.counts[value as usize - 1])
    }

    /// Cells with `f > cap`.
    pub fn overflow(&self) -> u64 {
        self.overflow
    }

    /// `(value, count)` for `value = 1..=cap`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1, c))
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.overflow
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub n: u64,
    pub ones_count: u64,
    pub total: u64,
    pub histogram: Histogram,
}

impl DensityReport {
    /// `ρ_n = ones_count / n²` in lowest terms.
    pub fn rho(&self) -> Fraction {
        Fraction::new(self.ones_count as u128, self.total as u128)
    }

    pub fn rho_f64(&self) -> f64 {
        self.ones_count as f64 / self.total as f64
    }
}

fn check_grid(n: u64) -> Result<()> {
    if n == 0 {
        return Err(invalid("n", "grid size must be at least 1"));
    }
    if n > MAX_GRID {
        return Err(Error::Limit {
            what: "grid size",
            value: n,
            limit: MAX_GRID,
        });
    }
    Ok(())
}

/// Per-row gcd table. `table[r] = gcd(i, r)` for `0 <= r < i`.
struct RowGcd {
    table: Vec<u32>,
}

impl RowGcd {
    fn new(capacity: usize) -> Self {
        Self {
            table: Vec::with_capacity(capacity),
        }
    }

    fn fill(&mut self, i: u64, tables: &SieveTables) {
        self.table.clear();
        self.table.resize(i as usize, 1);
        // Ascending divisors: the last write to r is the largest divisor of i dividing r.
        for d in tables.divisors(i).into_iter().skip(1) {
            for r in (0..i as usize).step_by(d as usize) {
                self.table[r] = d as u32;
            }
        }
    }
}

/// Visits row `i`, columns `i..=n`, calling `visit(f, weight)` with weight 1 on
/// the diagonal and 2 elsewhere.
#[inline]
fn scan_row(i: u64, n: u64, row: &RowGcd, mut visit: impl FnMut(u64, u64)) {
    let mut r = 0usize;
    let modulus = i as usize;
    for j in i..=n {
        let g = row.table[r] as u64;
        let value = if g == 1 {
            1
        } else {
            gcd_u64(((i + j) / g) % g, g)
        };
        visit(value, if j == i { 1 } else { 2 });
        r += 1;
        if r == modulus {
            r = 0;
        }
    }
}

fn count_rows(
    rows: std::ops::Range<u64>,
    n: u64,
    cap: u64,
    tables: &SieveTables,
) -> (u64, Histogram) {
    let mut hist = Histogram::new(cap);
    let mut ones = 0u64;
    let mut row = RowGcd::new(rows.end as usize);
    for i in rows {
        row.fill(i, tables);
        scan_row(i, n, &row, |value, weight| {
            if value == 1 {
                ones += weight;
            }
            hist.add(value, weight);
        });
    }
    (ones, hist)
}

fn row_blocks(n: u64, blocks: usize) -> Vec<std::ops::Range<u64>> {
    let blocks = (blocks as u64).clamp(1, n);
    (0..blocks)
        .map(|b| (1 + b * n / blocks)..(1 + (b + 1) * n / blocks))
        .collect()
}

/// Exact count of `f = 1` on `[1, n]²` using the ambient rayon pool.
pub fn density_report(n: u64, histogram_cap: u64) -> Result<DensityReport> {
    density_report_with_threads(n, histogram_cap, None)
}

/// As [`density_report`], on a dedicated pool of `threads` workers when given.
///
/// Rows are split into contiguous blocks whose partial counts are merged in
/// block order, so the report does not depend on the thread count.
pub fn density_report_with_threads(
    n: u64,
    histogram_cap: u64,
    threads: Option<usize>,
) -> Result<DensityReport> {
    check_grid(n)?;
    if histogram_cap == 0 {
        return Err(invalid("histogram_cap", "must be at least 1"));
    }
    if threads == Some(0) {
        return Err(invalid("threads", "must be at least 1"));
    }
    let tables = build_tables(n)?;
    let run = || {
        let blocks = row_blocks(n, rayon::current_num_threads() * BLOCKS_PER_THREAD);
        let partials: Vec<(u64, Histogram)> = blocks
            .into_par_iter()
            .map(|rows| count_rows(rows, n, histogram_cap, &tables))
            .collect();
        let mut hist = Histogram::new(histogram_cap);
        let mut ones = 0u64;
        for (o, h) in &partials {
            ones += o;
            hist.merge(h);
        }
        (ones, hist)
    };
    let (ones_count, histogram) = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|_| Error::Allocation("thread pool"))?
            .install(run),
        None => run(),
    };
    Ok(DensityReport {
        n,
        ones_count,
        total: n * n,
        histogram,
    })
}

/// The `n × n` matrix of `f(i, j)`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeatmapGrid {
    n: usize,
    values: Vec<u32>,
}

/// Largest side accepted by [`heatmap`].
pub const MAX_HEATMAP: u64 = 20_000;

pub fn heatmap(n: u64) -> Result<HeatmapGrid> {
    check_grid(n)?;
    if n > MAX_HEATMAP {
        return Err(Error::Limit {
            what: "heatmap size",
            value: n,
            limit: MAX_HEATMAP,
        });
    }
    let tables = build_tables(n)?;
    let size = n as usize;
    let mut values = vec![0u32; size * size];
    let mut row = RowGcd::new(size);
    for i in 1..=n {
        row.fill(i, &tables);
        let mut j = i;
        scan_row(i, n, &row, |value, _| {
            let (a, b) = (i as usize - 1, j as usize - 1);
            values[a * size + b] = value as u32;
            values[b * size + a] = value as u32;
            j += 1;
        });
    }
    Ok(HeatmapGrid { n: size, values })
}

impl HeatmapGrid {
    /// Builds a grid from row-major values; `values.len()` must be `n²`.
    pub fn from_values(n: usize, values: Vec<u32>) -> Result<Self> {
        if n == 0 || values.len() != n * n {
            return Err(invalid(
                "heatmap",
                format!("{} values do not form a {n}×{n} grid", values.len()),
            ));
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `f(i, j)` for `1 <= i, j <= n`.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.values[(i - 1) * self.n + (j - 1)]
    }

    /// Row `i` (1-based).
    pub fn row(&self, i: usize) -> &[u32] {
        &self.values[(i - 1) * self.n..i * self.n]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn ones_count(&self) -> u64 {
        self.values.iter().filter(|&&v| v == 1).count() as u64
    }
}

/// Empirical frequency of the event "p | d and p | (a' + b')" on `[1, n]²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalEventEstimate {
    pub p: u64,
    pub n: u64,
    pub event_count: u64,
    pub density: f64,
    /// Limiting frequency `1 / (p²(p + 1))`.
    pub target: f64,
}

impl LocalEventEstimate {
    pub fn density_exact(&self) -> Fraction {
        Fraction::new(self.event_count as u128, self.n as u128 * self.n as u128)
    }

    pub fn target_exact(&self) -> Fraction {
        let p = self.p as u128;
        Fraction::new(1, p * p * (p + 1))
    }
}

/// Counts pairs in `[1, n]²` with `p | gcd(a, b)` and `p | (a/d + b/d)`.
///
/// Cells off the sublattice `pℤ × pℤ` have `p ∤ d`, so only `a = p·u`,
/// `b = p·v` are enumerated; there `d = p·gcd(u, v)`.
pub fn local_event_density(p: u64, n: u64) -> Result<LocalEventEstimate> {
    require_prime(p)?;
    check_grid(n)?;
    let m = n / p;
    let event_count: u64 = (1..=m)
        .into_par_iter()
        .map(|u| {
            let mut c = 0u64;
            for v in u..=m {
                let g = gcd_u64(u, v);
                if (u / g + v / g) % p == 0 {
                    c += if u == v { 1 } else { 2 };
                }
            }
            c
        })
        .sum();
    let pf = p as f64;
    Ok(LocalEventEstimate {
        p,
        n,
        event_count,
        density: event_count as f64 / (n as f64 * n as f64),
        target: 1.0 / (pf * pf * (pf + 1.0)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{f, Pair};

    fn brute(n: u64) -> (u64, Vec<u64>) {
        let mut ones = 0;
        let mut hist = vec![0u64; n as usize + 1];
        for i in 1..=n {
            for j in 1..=n {
                let v = f(Pair::new(i, j).unwrap());
                hist[v as usize] += 1;
                if v == 1 {
                    ones += 1;
                }
            }
        }
        (ones, hist)
    }

    #[test]
    fn small_grid_values() {
        let r = |n| density_report(n, 10).unwrap();
        assert_eq!(r(1).ones_count, 1);
        assert_eq!(r(2).ones_count, 3);
        assert_eq!(r(2).rho().to_decimal(2), "0.75");
        assert_eq!(r(5).rho().to_decimal(2), "0.92");
        assert_eq!(r(6).ones_count, 29);
        assert_eq!(r(6).rho().to_decimal(5), "0.80556");
    }

    #[test]
    fn table_one_at_five_places() {
        let expected = [
            "1.00000", "0.75000", "0.88889", "0.87500", "0.92000", "0.80556", "0.85714", "0.87500",
            "0.90123", "0.87000",
        ];
        for (k, want) in (1..=10).zip(expected) {
            assert_eq!(
                density_report(k, 10).unwrap().rho().to_decimal(5),
                want,
                "n={k}"
            );
        }
    }

    #[test]
    fn matches_brute_force_and_histogram_is_consistent() {
        for n in [1, 2, 3, 7, 30, 64, 97, 150] {
            let report = density_report(n, 10).unwrap();
            let (ones, hist) = brute(n);
            assert_eq!(report.ones_count, ones, "n={n}");
            assert_eq!(report.histogram.count(1), Some(report.ones_count));
            assert_eq!(report.histogram.total(), n * n);
            for v in 1..=10u64.min(n) {
                assert_eq!(
                    report.histogram.count(v),
                    Some(hist[v as usize]),
                    "n={n} v={v}"
                );
            }
            let over: u64 = hist.iter().skip(11).sum();
            assert_eq!(report.histogram.overflow(), over);
        }
    }

    #[test]
    fn thread_count_does_not_change_report() {
        for n in [1, 13, 200, 1000] {
            let base = density_report_with_threads(n, 10, Some(1)).unwrap();
            for t in [2, 3, 8] {
                assert_eq!(density_report_with_threads(n, 10, Some(t)).unwrap(), base);
            }
            assert_eq!(density_report(n, 10).unwrap(), base);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(density_report(0, 10).is_err());
        assert!(density_report(5, 0).is_err());
        assert!(density_report_with_threads(5, 10, Some(0)).is_err());
        assert!(matches!(
            density_report(MAX_GRID + 1, 10),
            Err(Error::Limit { .. })
        ));
    }

    #[test]
    fn heatmap_shapes() {
        assert_eq!(heatmap(1).unwrap().values(), [1]);
        let h3 = heatmap(3).unwrap();
        assert_eq!(h3.row(2), [1, 2, 1]);
        let h = heatmap(50).unwrap();
        for i in 1..=50 {
            assert_eq!(h.get(1, i), 1);
            assert_eq!(h.get(i, 1), 1);
            assert_eq!(h.get(i, i), if i % 2 == 0 { 2 } else { 1 });
            for j in 1..=50 {
                assert_eq!(h.get(i, j), h.get(j, i));
                assert_eq!(
                    h.get(i, j) as u64,
                    f(Pair::new(i as u64, j as u64).unwrap())
                );
            }
        }
        assert_eq!(h.ones_count(), density_report(50, 10).unwrap().ones_count);
    }

    #[test]
    fn local_event_small() {
        let e = local_event_density(2, 2).unwrap();
        assert_eq!(e.event_count, 1);
        assert_eq!(e.density, 0.25);
        assert!((e.target - 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(e.target_exact(), Fraction::new(1, 12));
        assert_eq!(
            local_event_density(3, 100).unwrap().target_exact(),
            Fraction::new(1, 36)
        );
        assert!(matches!(
            local_event_density(4, 10),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn local_event_matches_full_grid_scan() {
        for p in [2u64, 3, 5, 7] {
            let n = 120;
            let mut count = 0;
            for a in 1..=n {
                for b in 1..=n {
                    let g = gcd_u64(a, b);
                    if g % p == 0 && (a / g + b / g) % p == 0 {
                        count += 1;
                    }
                }
            }
            assert_eq!(
                local_event_density(p, n).unwrap().event_count,
                count,
                "p={p}"
            );
        }
    }
}
