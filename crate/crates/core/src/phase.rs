//! Exact rational phases e^{2πi·(num/den)}.
//!
//! Unitary p-adic character values are roots of unity.  Representing them as
//! reduced rational turns keeps products and integer powers exact; conversion
//! to `Complex64` happens once, at evaluation time.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// A unit-modulus complex number e^{2πi·(num/den)}, stored as a reduced
/// fraction with 0 ≤ num < den.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Phase {
    num: i64,
    den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Phase {
    pub const ONE: Phase = Phase { num: 0, den: 1 };

    /// e^{2πi·num/den}; `den` must be nonzero.
    pub fn new(num: i64, den: i64) -> Phase {
        assert!(den != 0, "phase denominator must be nonzero");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(den);
        let g = gcd(num, den).max(1);
        num /= g;
        den /= g;
        Phase { num, den }
    }

    /// The k-th power of a primitive m-th root of unity.
    pub fn root_of_unity(k: i64, m: i64) -> Phase {
        Phase::new(k, m)
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn mul(&self, other: &Phase) -> Phase {
        let den = (self.den as i128) * (other.den as i128);
        let num =
            (self.num as i128) * (other.den as i128) + (other.num as i128) * (self.den as i128);
        let g = gcd128(num.rem_euclid(den), den);
        Phase::new((num.rem_euclid(den) / g) as i64, (den / g) as i64)
    }

    pub fn pow(&self, k: i64) -> Phase {
        let num = (self.num as i128) * (k as i128);
        let den = self.den as i128;
        let r = num.rem_euclid(den);
        let g = gcd128(r, den);
        Phase::new((r / g) as i64, (den / g) as i64)
    }

    pub fn inv(&self) -> Phase {
        self.pow(-1)
    }

    pub fn value(&self) -> Complex64 {
        // Common small cases kept bit-exact.
        match (self.num, self.den) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, TAU * self.num as f64 / self.den as f64),
        }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs().max(1)
    } else {
        gcd128(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_products() {
        let a = Phase::new(3, 8);
        let b = Phase::new(7, 8);
        assert_eq!(a.mul(&b), Phase::new(1, 4));
        assert_eq!(a.pow(8), Phase::ONE);
        assert_eq!(Phase::new(-1, 8), Phase::new(7, 8));
        assert_eq!(a.mul(&a.inv()), Phase::ONE);
    }

    #[test]
    fn exact_values() {
        assert_eq!(Phase::new(1, 2).value(), Complex64::new(-1.0, 0.0));
        assert_eq!(Phase::new(2, 8).value(), Complex64::new(0.0, 1.0));
        let z = Phase::new(1, 8).value();
        assert!((z.norm() - 1.0).abs() < 1e-15);
    }
}
