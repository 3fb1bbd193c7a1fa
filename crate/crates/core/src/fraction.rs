use std::fmt;

use serde::Serialize;

use crate::arith::gcd_u128;

/// A non-negative rational number kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Fraction {
    num: u128,
    den: u128,
}

impl Fraction {
    /// Panics if `den == 0`.
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd_u128(num, den).max(1);
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numer(&self) -> u128 {
        self.num
    }

    pub fn denom(&self) -> u128 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Decimal expansion rounded half-up to exactly `places` digits.
    pub fn to_decimal(&self, places: u32) -> String {
        let scale = 10u128.pow(places);
        // num * scale can overflow for huge numerators; fall back to long division.
        let (int_part, mut rem) = (self.num / self.den, self.num % self.den);
        let mut digits = Vec::with_capacity(places as usize + 1);
        for _ in 0..=places {
            rem *= 10;
            digits.push((rem / self.den) as u8);
            rem %= self.den;
        }
        let round_up = digits.pop().is_some_and(|d| d >= 5);
        let mut frac: u128 = digits.iter().fold(0, |acc, &d| acc * 10 + d as u128);
        let mut int_part = int_part;
        if round_up {
            frac += 1;
            if frac == scale {
                frac = 0;
                int_part += 1;
            }
        }
        if places == 0 {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac:0width$}", width = places as usize)
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces() {
        let r = Fraction::new(29 * 4, 36 * 4);
        assert_eq!((r.numer(), r.denom()), (29, 36));
        assert_eq!(Fraction::new(0, 7).denom(), 1);
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(Fraction::new(29, 36).to_decimal(5), "0.80556");
        assert_eq!(Fraction::new(29, 36).to_decimal(6), "0.805556");
        assert_eq!(Fraction::new(3, 4).to_decimal(5), "0.75000");
        assert_eq!(Fraction::new(1, 1).to_decimal(6), "1.000000");
        assert_eq!(
            Fraction::new(9_999_995, 10_000_000).to_decimal(6),
            "1.000000"
        );
        assert_eq!(Fraction::new(2, 3).to_decimal(0), "1");
        assert_eq!(Fraction::new(1, 8).to_decimal(2), "0.13");
    }
}
