//! Double-double floating point: an unevaluated sum `hi + lo` of two `f64`s
//! with `|lo| <= ulp(hi) / 2`, giving about 106 bits of mantissa.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact for every `u128` below 2^106, correctly rounded above.
    pub fn from_u128(n: u128) -> Self {
        let hi = n as f64;
        // hi is within half an ulp of n, so the residual fits in i128 and f64 exactly.
        let lo = (n as i128).wrapping_sub(hi as u128 as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn to_f64(&self) -> f64 {
        self.hi + self.lo
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Decimal rendering of a non-negative value, truncated to `places` digits.
    pub fn to_decimal(&self, places: usize) -> String {
        assert!(self.hi >= 0.0, "to_decimal expects a non-negative value");
        let int_part = self.hi.floor();
        let mut rest = *self - Self::from_f64(int_part);
        let mut int_part = int_part as u128;
        if rest.hi < 0.0 {
            int_part -= 1;
            rest = rest + Self::ONE;
        }
        let mut out = format!("{int_part}.");
        let ten = Self::from_f64(10.0);
        for _ in 0..places {
            rest = rest * ten;
            let mut d = rest.hi.floor();
            let mut next = rest - Self::from_f64(d);
            if next.hi < 0.0 {
                d -= 1.0;
                next = next + Self::ONE;
            }
            out.push(char::from(b'0' + d.clamp(0.0, 9.0) as u8));
            rest = next;
        }
        out
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        // Two rounds of long division on the leading component.
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Self::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Self::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from_f64(q3)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = f.precision().unwrap_or(20);
        if self.hi < 0.0 {
            write!(f, "-{}", (-*self).to_decimal(places))
        } else {
            f.write_str(&self.to_decimal(places))
        }
    }
}

impl Serialize for DoubleDouble {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.to_f64())
    }
}
