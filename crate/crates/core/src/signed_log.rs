use std::cmp::Ordering;
use std::ops::Mul;

/// A real number stored as a sign and the natural log of its magnitude.
///
/// Products of many factors of size `O(1)` stay representable long after the
/// plain `f64` product would underflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    sign: i8,
    ln_mag: f64,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog {
        sign: 0,
        ln_mag: f64::NEG_INFINITY,
    };
    pub const ONE: SignedLog = SignedLog {
        sign: 1,
        ln_mag: 0.0,
    };

    pub fn from_value(x: f64) -> Self {
        match x.partial_cmp(&0.0) {
            Some(Ordering::Greater) => Self {
                sign: 1,
                ln_mag: x.ln(),
            },
            Some(Ordering::Less) => Self {
                sign: -1,
                ln_mag: (-x).ln(),
            },
            _ => Self::ZERO,
        }
    }

    pub fn from_parts(sign: i8, ln_mag: f64) -> Self {
        if sign == 0 || ln_mag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            Self {
                sign: sign.signum(),
                ln_mag,
            }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// `ln |x|`, `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.sign == 0 {
            f64::NEG_INFINITY
        } else {
            self.ln_mag
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn abs(&self) -> f64 {
        self.ln_abs().exp()
    }

    pub fn value(&self) -> f64 {
        f64::from(self.sign) * self.abs()
    }

    /// Multiply by a real scalar.
    pub fn scale(self, x: f64) -> Self {
        self * SignedLog::from_value(x)
    }

    /// Sum of two signed values, computed without leaving the log domain.
    pub fn add(self, other: SignedLog) -> SignedLog {
        if self.sign == 0 {
            return other;
        }
        if other.sign == 0 {
            return self;
        }
        let (big, small) = if self.ln_mag >= other.ln_mag {
            (self, other)
        } else {
            (other, self)
        };
        let ratio = (small.ln_mag - big.ln_mag).exp();
        if big.sign == small.sign {
            Self::from_parts(big.sign, big.ln_mag + ratio.ln_1p())
        } else if ratio == 1.0 {
            Self::ZERO
        } else {
            Self::from_parts(big.sign, big.ln_mag + (-ratio).ln_1p())
        }
    }
}

impl Mul for SignedLog {
    type Output = SignedLog;

    fn mul(self, rhs: SignedLog) -> SignedLog {
        if self.sign == 0 || rhs.sign == 0 {
            return SignedLog::ZERO;
        }
        SignedLog {
            sign: self.sign * rhs.sign,
            ln_mag: self.ln_mag + rhs.ln_mag,
        }
    }
}

impl std::iter::Product for SignedLog {
    fn product<I: Iterator<Item = SignedLog>>(iter: I) -> SignedLog {
        iter.fold(SignedLog::ONE, Mul::mul)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_is_absorbing() {
        assert!((SignedLog::ZERO * SignedLog::from_value(3.0)).is_zero());
        assert_eq!(SignedLog::from_value(0.0), SignedLog::ZERO);
        assert_eq!(SignedLog::ZERO.value(), 0.0);
        assert_eq!(SignedLog::from_value(-2.0).add(SignedLog::ZERO).value(), -2.0);
    }

    #[test]
    fn exact_cancellation() {
        let a = SignedLog::from_value(1.25);
        assert!(a.add(SignedLog::from_value(-1.25)).is_zero());
    }

    #[test]
    fn long_products_do_not_underflow() {
        let p: SignedLog = (0..100_000).map(|_| SignedLog::from_value(-0.5)).product();
        assert_eq!(p.sign(), 1);
        assert!((p.ln_abs() - 100_000.0 * 0.5f64.ln()).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn arithmetic_matches_floats(a in -1e3f64..1e3, b in -1e3f64..1e3) {
            let (x, y) = (SignedLog::from_value(a), SignedLog::from_value(b));
            let prod = (x * y).value();
            prop_assert!((prod - a * b).abs() <= 1e-12 * (a * b).abs().max(1e-300));
            let sum = x.add(y).value();
            prop_assert!((sum - (a + b)).abs() <= 1e-12 * (a.abs() + b.abs()));
        }

        #[test]
        fn addition_is_commutative(a in -1e3f64..1e3, b in -1e3f64..1e3) {
            let (x, y) = (SignedLog::from_value(a), SignedLog::from_value(b));
            prop_assert_eq!(x.add(y), y.add(x));
        }
    }
}
