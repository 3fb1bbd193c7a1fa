//! Brute-force conjugacy classes of GL(2, ℤ/nℤ).
//!
//! The class count is known to equal φ(n)σ(n); here it is obtained
//! independently by partitioning the group into conjugation orbits.

use std::collections::HashSet;

use serde::Serialize;

use crate::arith::{gcd_u64, require_prime};
use crate::error::{invalid, Error, Result};
use crate::sieve::build_tables;

/// Largest modulus enumerated without `force`.
pub const DEFAULT_MAX_MODULUS: u64 = 12;

/// Hard ceiling even with `force`: residues are packed into 16-bit lanes.
pub const HARD_MAX_MODULUS: u64 = u16::MAX as u64;

/// A 2×2 matrix `[[a, b], [c, d]]` over ℤ/nℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2 {
    a: u16,
    b: u16,
    c: u16,
    d: u16,
    modulus: u16,
}

impl Mat2 {
    /// Entries are reduced mod `n`. Fails unless the determinant is a unit.
    pub fn new(entries: [u64; 4], n: u64) -> Result<Self> {
        if !(2..=HARD_MAX_MODULUS).contains(&n) {
            return Err(invalid(
                "modulus",
                format!("{n} outside 2..={HARD_MAX_MODULUS}"),
            ));
        }
        let [a, b, c, d] = entries.map(|e| (e % n) as u16);
        let m = Self {
            a,
            b,
            c,
            d,
            modulus: n as u16,
        };
        if gcd_u64(m.det(), n) != 1 {
            return Err(invalid(
                "matrix",
                format!("determinant {} is not a unit mod {n}", m.det()),
            ));
        }
        Ok(m)
    }

    pub fn identity(n: u64) -> Result<Self> {
        Self::new([1, 0, 0, 1], n)
    }

    /// The companion matrix `[[0, −d], [1, t]]` of `x² − tx + d`.
    pub fn companion(t: u64, d: u64, n: u64) -> Result<Self> {
        let neg_d = (n - d % n) % n;
        Self::new([0, neg_d, 1, t], n)
    }

    pub fn entries(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d].map(u64::from)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus as u64
    }

    pub fn det(&self) -> u64 {
        let n = self.modulus as u64;
        let [a, b, c, d] = self.entries();
        (a * d + n * n - b * c % n) % n
    }

    pub fn trace(&self) -> u64 {
        (self.a as u64 + self.d as u64) % self.modulus as u64
    }

    /// Four residues in 16-bit lanes.
    #[inline]
    pub fn pack(&self) -> u64 {
        (self.a as u64) | (self.b as u64) << 16 | (self.c as u64) << 32 | (self.d as u64) << 48
    }

    #[inline]
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let n = self.modulus as u64;
        let [a, b, c, d] = self.entries();
        let [e, f, g, h] = rhs.entries();
        Mat2 {
            a: ((a * e + b * g) % n) as u16,
            b: ((a * f + b * h) % n) as u16,
            c: ((c * e + d * g) % n) as u16,
            d: ((c * f + d * h) % n) as u16,
            modulus: self.modulus,
        }
    }

    pub fn inverse(&self) -> Mat2 {
        let n = self.modulus as u64;
        let inv_det = mod_inverse(self.det(), n).expect("determinant is a unit");
        let [a, b, c, d] = self.entries();
        let scale = |x: u64| ((x * inv_det) % n) as u16;
        Mat2 {
            a: scale(d),
            b: scale((n - b) % n),
            c: scale((n - c) % n),
            d: scale(a),
            modulus: self.modulus,
        }
    }

    /// `p · self · p⁻¹`.
    #[inline]
    pub fn conjugate_by(&self, p: &Mat2, p_inv: &Mat2) -> Mat2 {
        p.mul(self).mul(p_inv)
    }
}

fn mod_inverse(x: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (x as i64, n as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(n as i64) as u64)
}

/// A group element together with its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Element {
    pub m: Mat2,
    pub inv: Mat2,
}

fn check_modulus(n: u64, force: bool) -> Result<()> {
    if n < 2 {
        return Err(invalid("n", "modulus must be at least 2"));
    }
    let cap = if force {
        HARD_MAX_MODULUS
    } else {
        DEFAULT_MAX_MODULUS
    };
    if n > cap {
        return Err(Error::Limit {
            what: "GL(2) modulus",
            value: n,
            limit: cap,
        });
    }
    Ok(())
}

/// All of GL(2, ℤ/nℤ) in lexicographic entry order. `n` above
/// [`DEFAULT_MAX_MODULUS`] requires `force`.
pub fn enumerate_group(n: u64, force: bool) -> Result<Vec<Element>> {
    check_modulus(n, force)?;
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if let Ok(m) = Mat2::new([a, b, c, d], n) {
                        out.push(Element {
                            m,
                            inv: m.inverse(),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `|GL(2, ℤ/nℤ)| = n⁴ ∏_{p|n} (1 − 1/p)(1 − 1/p²)`.
pub fn group_order(n: u64) -> u64 {
    let mut order = n.pow(4);
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            order = order / p * (p - 1) / (p * p) * (p * p - 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    order
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyCount {
    pub modulus: u64,
    pub group_order: u64,
    pub class_count_brute: u64,
    /// φ(n)σ(n) from the sieve.
    pub class_count_formula: u64,
    /// Orbit sizes in discovery order.
    pub class_sizes: Vec<u64>,
}

impl ConjugacyCount {
    pub fn matches(&self) -> bool {
        self.class_count_brute == self.class_count_formula
    }
}

/// Counts conjugation orbits. Each unseen element seeds an orbit, expanded by
/// conjugating with every group element.
pub fn count_conjugacy_classes(n: u64, force: bool) -> Result<ConjugacyCount> {
    let group = enumerate_group(n, force)?;
    let mut seen: HashSet<u64> = HashSet::with_capacity(group.len());
    let mut class_sizes = Vec::new();
    for seed in &group {
        if seen.contains(&seed.m.pack()) {
            continue;
        }
        let mut size = 0u64;
        for x in &group {
            if seen.insert(seed.m.conjugate_by(&x.m, &x.inv).pack()) {
                size += 1;
            }
        }
        class_sizes.push(size);
    }
    let tables = build_tables(n)?;
    Ok(ConjugacyCount {
        modulus: n,
        group_order: group.len() as u64,
        class_count_brute: class_sizes.len() as u64,
        class_count_formula: tables.phi(n) * tables.sigma(n),
        class_sizes,
    })
}

/// Class count of GL(2, ℤ/p^αℤ): `p^{2α} − p^{α−1}`.
pub fn prime_power_class_count(p: u64, alpha: u32) -> Result<u64> {
    require_prime(p)?;
    if alpha == 0 {
        return Err(invalid("alpha", "must be at least 1"));
    }
    let high = p.checked_pow(2 * alpha).ok_or(Error::Overflow("p^(2α)"))?;
    Ok(high - p.pow(alpha - 1))
}

/// `(trace, det)` modulo n, an invariant of the conjugacy class.
pub fn trace_det_signature(m: &Mat2) -> (u64, u64) {
    (m.trace(), m.det())
}

/// One row of the comparison between `ρ_n`, the class ratio `φ(n)σ(n)/n²`
/// and its running mean.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: u64,
    pub rho_n: f64,
    pub class_ratio: f64,
    pub running_mean: f64,
}

/// Tabulates `ρ_n`, `φ(n)σ(n)/n²` and `(1/n) Σ_{m<=n} φ(m)σ(m)/m²` side by side.
///
/// The class ratio oscillates (it is close to 1 at primes) while the running
/// mean settles toward the same limit as `ρ_n`.
pub fn convergence_comparison(
    n_values: &[u64],
    tables: &crate::sieve::SieveTables,
) -> Result<Vec<ConvergenceRow>> {
    let series = crate::analytic::mean_value_series(tables, n_values)?;
    series
        .partial_means
        .iter()
        .map(|&(n, running_mean)| {
            let report = crate::density::density_report(n, 1)?;
            Ok(ConvergenceRow {
                n,
                rho_n: report.rho_f64(),
                class_ratio: tables.phi_sigma(n) as f64 / (n as f64 * n as f64),
                running_mean,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sizes() {
        assert_eq!(enumerate_group(2, false).unwrap().len(), 6);
        assert_eq!(enumerate_group(3, false).unwrap().len(), 48);
        assert_eq!(enumerate_group(4, false).unwrap().len(), 96);
        for n in 2..=12 {
            assert_eq!(
                enumerate_group(n, false).unwrap().len() as u64,
                group_order(n)
            );
        }
    }

    #[test]
    fn inverses_are_inverses() {
        for n in [2u64, 6, 9, 12] {
            let id = Mat2::identity(n).unwrap();
            for e in enumerate_group(n, false).unwrap() {
                assert_eq!(e.m.mul(&e.inv), id);
                assert_eq!(e.inv.mul(&e.m), id);
            }
        }
    }

    #[test]
    fn small_class_counts() {
        for (n, classes) in [(2, 3), (3, 8), (4, 14)] {
            let c = count_conjugacy_classes(n, false).unwrap();
            assert_eq!(c.class_count_brute, classes);
            assert_eq!(c.class_count_formula, classes);
            assert!(c.matches());
        }
    }

    #[test]
    fn class_count_equals_phi_sigma_to_12() {
        let formula = [3, 8, 14, 24, 24, 48, 60, 78, 72, 120, 112];
        for (n, want) in (2..=12).zip(formula) {
            let c = count_conjugacy_classes(n, false).unwrap();
            assert_eq!(c.class_count_formula, want, "formula n={n}");
            assert_eq!(c.class_count_brute, want, "brute n={n}");
            assert_eq!(c.class_sizes.iter().sum::<u64>(), c.group_order);
            for s in &c.class_sizes {
                assert_eq!(c.group_order % s, 0);
            }
        }
    }

    #[test]
    fn crt_multiplicativity() {
        let k = |n| count_conjugacy_classes(n, false).unwrap().class_count_brute;
        assert_eq!(k(6), k(2) * k(3));
        assert_eq!(k(6), 24);
        assert_eq!(k(12), k(4) * k(3));
        assert_eq!(k(10), k(2) * k(5));
    }

    #[test]
    fn cap_requires_force() {
        assert!(matches!(
            count_conjugacy_classes(13, false),
            Err(Error::Limit { .. })
        ));
        assert_eq!(
            count_conjugacy_classes(13, true).unwrap().class_count_brute,
            12 * 14
        );
        assert!(enumerate_group(1, true).is_err());
    }

    #[test]
    fn prime_power_formula() {
        assert_eq!(prime_power_class_count(2, 1), Ok(3));
        assert_eq!(prime_power_class_count(3, 1), Ok(8));
        assert_eq!(prime_power_class_count(2, 2), Ok(14));
        assert_eq!(prime_power_class_count(4, 1), Err(Error::NotPrime(4)));
        assert!(prime_power_class_count(2, 0).is_err());
        assert_eq!(
            prime_power_class_count(2, 40),
            Err(Error::Overflow("p^(2α)"))
        );
        assert_eq!(
            count_conjugacy_classes(9, false).unwrap().class_count_brute,
            prime_power_class_count(3, 2).unwrap()
        );
        assert_eq!(
            count_conjugacy_classes(8, false).unwrap().class_count_brute,
            prime_power_class_count(2, 3).unwrap()
        );
    }

    #[test]
    fn prime_power_formula_matches_sieve() {
        let t = build_tables(10_000).unwrap();
        for &p in t.primes() {
            let p = p as u64;
            let mut pk = p;
            let mut alpha = 1;
            while pk <= 10_000 {
                assert_eq!(
                    prime_power_class_count(p, alpha).unwrap(),
                    t.phi(pk) * t.sigma(pk),
                    "p={p} alpha={alpha}"
                );
                pk *= p;
                alpha += 1;
            }
        }
    }

    #[test]
    fn signatures() {
        assert_eq!(trace_det_signature(&Mat2::identity(5).unwrap()), (2, 1));
        assert_eq!(
            trace_det_signature(&Mat2::companion(3, 2, 5).unwrap()),
            (3, 2)
        );
        assert!(Mat2::companion(3, 0, 5).is_err());
        assert!(Mat2::new([2, 0, 0, 2], 4).is_err());
    }

    #[test]
    fn signature_is_conjugation_invariant() {
        for n in 2..=5 {
            let g = enumerate_group(n, false).unwrap();
            for a in &g {
                let sig = trace_det_signature(&a.m);
                for x in &g {
                    assert_eq!(trace_det_signature(&a.m.conjugate_by(&x.m, &x.inv)), sig);
                }
            }
        }
    }

    #[test]
    fn comparison_rows() {
        let t = build_tables(1000).unwrap();
        let rows = convergence_comparison(&[10, 11, 1000], &t).unwrap();
        assert!((rows[0].class_ratio - 0.72).abs() < 1e-12);
        assert!((rows[1].class_ratio - 120.0 / 121.0).abs() < 1e-12);
        assert!((rows[0].rho_n - 0.87).abs() < 1e-12);
        assert!((rows[2].running_mean - 0.8815).abs() < 2e-3);
    }

    #[test]
    fn packing_is_injective_on_group() {
        let g = enumerate_group(12, false).unwrap();
        let keys: HashSet<u64> = g.iter().map(|e| e.m.pack()).collect();
        assert_eq!(keys.len(), g.len());
    }
}
