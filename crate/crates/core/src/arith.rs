//! Exact integer arithmetic for `f(a, b) = gcd(a + b, ab) / gcd(a, b)` and its
//! higher-power analogue `f_r`.
//!
//! Writing `d = gcd(a, b)`, `a = d·a'`, `b = d·b'`, the quotient reduces to
//! `gcd(a' + b', d)`. Everything here evaluates that reduced form, so no
//! product `ab` is ever formed and the functions are total on `u64`.

use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// An ordered pair of positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Pair {
    a: u64,
    b: u64,
}

impl Pair {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(invalid("pair", format!("({a}, {b}) has a zero entry")));
        }
        Ok(Self { a, b })
    }

    #[inline]
    pub fn a(&self) -> u64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }
}

/// `a = d·a'`, `b = d·b'` with `d = gcd(a, b)` and `gcd(a', b') = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GcdDecomposition {
    pub d: u64,
    pub a_prime: u64,
    pub b_prime: u64,
}

/// Binary gcd. Returns `x` when `y == 0` and 0 for `(0, 0)`.
#[inline]
pub fn gcd_u64(mut x: u64, mut y: u64) -> u64 {
    if x == 0 {
        return y;
    }
    if y == 0 {
        return x;
    }
    let shift = (x | y).trailing_zeros();
    x >>= x.trailing_zeros();
    loop {
        y >>= y.trailing_zeros();
        if x > y {
            std::mem::swap(&mut x, &mut y);
        }
        y -= x;
        if y == 0 {
            return x << shift;
        }
    }
}

#[inline]
pub(crate) fn gcd_u128(mut x: u128, mut y: u128) -> u128 {
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    x
}

/// Greatest common divisor; `gcd(0, 0)` is a domain error.
pub fn gcd(x: u64, y: u64) -> Result<u64> {
    if x == 0 && y == 0 {
        return Err(Error::GcdOfZeros);
    }
    Ok(gcd_u64(x, y))
}

pub fn decompose(p: Pair) -> GcdDecomposition {
    let d = gcd_u64(p.a, p.b);
    GcdDecomposition {
        d,
        a_prime: p.a / d,
        b_prime: p.b / d,
    }
}

/// `gcd(a + b, ab) / gcd(a, b)`, evaluated as `gcd((a' + b') mod d, d)`.
pub fn f(p: Pair) -> u64 {
    let GcdDecomposition {
        d,
        a_prime,
        b_prime,
    } = decompose(p);
    if d == 1 {
        return 1;
    }
    let s = ((a_prime % d) as u128 + (b_prime % d) as u128) % d as u128;
    gcd_u64(s as u64, d)
}

/// `gcd(a^r + b^r, ab) / gcd(a, b)`.
///
/// `a^r + b^r` is formed with checked 128-bit arithmetic and an overflow is
/// reported rather than wrapped. For `r = 1` this equals [`f`].
pub fn f_r(p: Pair, r: u32) -> Result<u64> {
    if r == 0 {
        return Err(invalid("r", "exponent must be at least 1"));
    }
    if r == 1 {
        return Ok(f(p));
    }
    let pow = |x: u64| (x as u128).checked_pow(r);
    let sum = pow(p.a)
        .zip(pow(p.b))
        .and_then(|(x, y)| x.checked_add(y))
        .ok_or(Error::Overflow("a^r + b^r"))?;
    let prod = p.a as u128 * p.b as u128;
    let g = gcd_u64(p.a, p.b) as u128;
    Ok((gcd_u128(sum, prod) / g) as u64)
}

/// The pair `(c, c² − c)`, on which `f` takes the value `c`.
///
/// `c = 1` would need `b = 0`; the value 1 is already attained at `(1, 1)`.
pub fn surjectivity_witness(c: u64) -> Result<Pair> {
    if c < 2 {
        return Err(invalid("c", format!("{c} < 2 has no witness in ℕ×ℕ")));
    }
    let b = c
        .checked_mul(c)
        .map(|sq| sq - c)
        .ok_or(Error::Overflow("c² − c"))?;
    Pair::new(c, b)
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut k = 5u64;
    while k.saturating_mul(k) <= n {
        if n % k == 0 || n % (k + 2) == 0 {
            return false;
        }
        k += 6;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}
