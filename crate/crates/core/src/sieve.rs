//! Linear sieve for φ, σ, μ and smallest prime factors.

use crate::error::{invalid, Error, Result};

/// Largest limit accepted by [`build_tables`]; entries are indexed by `u32`.
pub const MAX_LIMIT: u64 = u32::MAX as u64 - 1;

/// Tables of multiplicative functions on `1..=limit`.
///
/// The vectors are indexed directly by `n`; slot 0 holds 0 and is not part of
/// the data. Use the accessors or the `*_values` slices for 1-based views.
#[derive(Debug, Clone)]
pub struct SieveTables {
    limit: usize,
    phi: Vec<u32>,
    sigma: Vec<u64>,
    mu: Vec<i8>,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

fn alloc<T: Clone>(len: usize, fill: T, what: &'static str) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len)
        .map_err(|_| Error::Allocation(what))?;
    v.resize(len, fill);
    Ok(v)
}

/// Fills φ, σ, μ, smallest prime factor and the prime list in one linear pass.
pub fn build_tables(limit: u64) -> Result<SieveTables> {
    if limit == 0 {
        return Err(invalid("limit", "must be at least 1"));
    }
    if limit > MAX_LIMIT {
        return Err(Error::Limit {
            what: "sieve limit",
            value: limit,
            limit: MAX_LIMIT,
        });
    }
    let n = limit as usize;
    let mut phi = alloc(n + 1, 0u32, "phi table")?;
    let mut sigma = alloc(n + 1, 0u64, "sigma table")?;
    let mut mu = alloc(n + 1, 0i8, "mu table")?;
    let mut spf = alloc(n + 1, 0u32, "spf table")?;
    // Largest power of spf(i) dividing i.
    let mut spf_power = alloc(n + 1, 0u32, "prime-power table")?;
    let mut primes = Vec::new();

    phi[1] = 1;
    sigma[1] = 1;
    mu[1] = 1;
    spf_power[1] = 1;

    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            spf_power[i] = i as u32;
            phi[i] = i as u32 - 1;
            sigma[i] = i as u64 + 1;
            mu[i] = -1;
            primes.push(i as u32);
        }
        let spf_i = spf[i];
        for &p in &primes {
            if p > spf_i {
                break;
            }
            let m = i * p as usize;
            if m > n {
                break;
            }
            spf[m] = p;
            if p == spf_i {
                let pk = spf_power[i] as usize * p as usize;
                spf_power[m] = pk as u32;
                phi[m] = phi[i] * p;
                mu[m] = 0;
                sigma[m] = if pk == m {
                    // σ(p^k) = p·σ(p^{k-1}) + 1
                    sigma[i] * p as u64 + 1
                } else {
                    sigma[m / pk] * sigma[pk]
                };
            } else {
                spf_power[m] = p;
                phi[m] = phi[i] * (p - 1);
                mu[m] = -mu[i];
                sigma[m] = sigma[i] * (p as u64 + 1);
            }
        }
    }

    Ok(SieveTables {
        limit: n,
        phi,
        sigma,
        mu,
        spf,
        primes,
    })
}

impl SieveTables {
    pub fn limit(&self) -> u64 {
        self.limit as u64
    }

    #[inline]
    pub fn phi(&self, n: u64) -> u64 {
        self.phi[n as usize] as u64
    }

    #[inline]
    pub fn sigma(&self, n: u64) -> u64 {
        self.sigma[n as usize]
    }

    #[inline]
    pub fn mu(&self, n: u64) -> i8 {
        self.mu[n as usize]
    }

    /// Smallest prime factor; 1 for `n = 1`.
    #[inline]
    pub fn spf(&self, n: u64) -> u64 {
        if n == 1 {
            1
        } else {
            self.spf[n as usize] as u64
        }
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// φ(1), …, φ(limit).
    pub fn phi_values(&self) -> &[u32] {
        &self.phi[1..]
    }

    /// σ(1), …, σ(limit).
    pub fn sigma_values(&self) -> &[u64] {
        &self.sigma[1..]
    }

    /// μ(1), …, μ(limit).
    pub fn mu_values(&self) -> &[i8] {
        &self.mu[1..]
    }

    /// φ(n)·σ(n), exact.
    #[inline]
    pub fn phi_sigma(&self, n: u64) -> u128 {
        self.phi(n) as u128 * self.sigma(n) as u128
    }

    /// Prime factorization of `n` as `(p, exponent)` pairs in increasing order.
    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        assert!(n >= 1 && n <= self.limit(), "{n} outside the sieve range");
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf(n);
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }

    /// Divisors of `n` in increasing order.
    pub fn divisors(&self, n: u64) -> Vec<u64> {
        let mut divs = vec![1u64];
        for (p, e) in self.factorize(n) {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Mertens prefix sums `M(0..=limit)`, with `M(0) = 0`.
pub fn mertens_prefix(tables: &SieveTables) -> Vec<i64> {
    let mut acc = 0i64;
    let mut out = Vec::with_capacity(tables.limit + 1);
    out.push(0);
    for &m in tables.mu_values() {
        acc += m as i64;
        out.push(acc);
    }
    out
}

/// Primes up to `limit` by a plain odd-only Eratosthenes sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n / 2 + 1];
    let mut primes = vec![2u64];
    let mut i = 3usize;
    while i <= n {
        if !composite[i / 2] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j / 2] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    primes
}
