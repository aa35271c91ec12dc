//! Extended-precision scalar used by the closed-form bound evaluations.
//!
//! In the regime of interest (`N_B ~ 10^4`, `κN_S ~ 10^-9`) the per-copy
//! exponent `-ln Q_s` is of order `10^-13` while the individual factors of
//! `Q_s` are of order `N_B`. Double precision leaves only a couple of correct
//! digits after the cancellation, so the closed forms are evaluated with a
//! 128-bit binary float and converted back at the end.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_base::SquareRoot;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;

type Inner = FBig<HalfEven, 2>;

/// Working precision in bits.
pub const PRECISION_BITS: usize = 128;

/// A real number carried with [`PRECISION_BITS`] bits of mantissa.
#[derive(Clone, PartialEq)]
pub struct Wide(Inner);

impl Wide {
    // Some dashu operations return exact results (e.g. exp(0) = 1) with
    // unlimited precision, which later divisions reject.
    fn wrap(v: Inner) -> Self {
        if v.precision() == 0 {
            Wide(v.with_precision(PRECISION_BITS).value())
        } else {
            Wide(v)
        }
    }

    /// Exact conversion of a finite `f64`, widened to the working precision.
    ///
    /// Panics on non-finite input; callers validate parameters first.
    pub fn from_f64(x: f64) -> Self {
        let v = Inner::try_from(x).expect("finite input");
        Wide(v.with_precision(PRECISION_BITS).value())
    }

    pub fn from_i64(x: i64) -> Self {
        Wide(Inner::from(x).with_precision(PRECISION_BITS).value())
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn sqrt(&self) -> Self {
        Wide::wrap(self.0.sqrt())
    }

    pub fn ln(&self) -> Self {
        Wide::wrap(self.0.ln())
    }

    pub fn exp(&self) -> Self {
        Wide::wrap(self.0.exp())
    }

    pub fn cosh(&self) -> Self {
        let e = self.exp();
        let inv = Wide::one() / &e;
        (e + inv) * Wide::from_f64(0.5)
    }

    pub fn sinh(&self) -> Self {
        // exp_m1 keeps small arguments accurate.
        let em1 = Wide::wrap(self.0.exp_m1());
        let e = &em1 + &Wide::one();
        let inv = Wide::one() / &e;
        // sinh = (e - 1/e)/2 = (em1 + em1/e)/2
        (&em1 + &(&em1 * &inv)) * Wide::from_f64(0.5)
    }

    /// `self^p` for `self > 0`.
    pub fn powf(&self, p: &Wide) -> Self {
        (p * &self.ln()).exp()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == Inner::ZERO
    }

    pub fn abs(&self) -> Self {
        if self.0 < Inner::ZERO {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl PartialOrd for Wide {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl fmt::Debug for Wide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Wide({:e})", self.to_f64())
    }
}

impl From<f64> for Wide {
    fn from(x: f64) -> Self {
        Wide::from_f64(x)
    }
}

impl Neg for Wide {
    type Output = Wide;
    fn neg(self) -> Wide {
        Wide(-self.0)
    }
}

impl Neg for &Wide {
    type Output = Wide;
    fn neg(self) -> Wide {
        Wide(-self.0.clone())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Wide> for Wide {
            type Output = Wide;
            fn $method(self, rhs: Wide) -> Wide {
                Wide::wrap($tr::$method(self.0, rhs.0))
            }
        }
        impl $tr<&Wide> for Wide {
            type Output = Wide;
            fn $method(self, rhs: &Wide) -> Wide {
                Wide::wrap($tr::$method(self.0, &rhs.0))
            }
        }
        impl $tr<Wide> for &Wide {
            type Output = Wide;
            fn $method(self, rhs: Wide) -> Wide {
                Wide::wrap($tr::$method(&self.0, rhs.0))
            }
        }
        impl $tr<&Wide> for &Wide {
            type Output = Wide;
            fn $method(self, rhs: &Wide) -> Wide {
                Wide::wrap($tr::$method(&self.0, &rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    // Reference digits from a 50-digit independent evaluation (the exponent
    // is the double nearest 0.3).
    #[test]
    fn transcendental_functions_match_reference_digits() {
        let x = Wide::from_f64(20002.0);
        let p = Wide::from_f64(0.3);
        assert_eq!(x.powf(&p).to_f64(), 19.512_909_345_702_003);
        assert_eq!(Wide::from_f64(3.0).ln().to_f64(), 1.098_612_288_668_109_7);
        assert_eq!(Wide::from_f64(2.0).sqrt().to_f64(), std::f64::consts::SQRT_2);
    }

    #[test]
    fn tiny_differences_survive() {
        let one = Wide::one();
        let eps = Wide::from_f64(1e-20);
        let d = (&one + &eps) - &one;
        assert!((d.to_f64() / 1e-20 - 1.0).abs() < 1e-15);
        let l = (&one + &Wide::from_f64(1e-13)).ln().to_f64();
        assert!((l - 9.999_999_999_999_5e-14).abs() < 1e-27);
    }

    #[test]
    fn hyperbolic_functions() {
        let r = Wide::from_f64(0.7);
        assert!((r.sinh().to_f64() - 0.7f64.sinh()).abs() < 1e-15);
        assert!((r.cosh().to_f64() - 0.7f64.cosh()).abs() < 1e-15);
        let tiny = Wide::from_f64(1e-20);
        assert!((tiny.sinh().to_f64() / 1e-20 - 1.0).abs() < 1e-15);
        assert_eq!(Wide::zero().sinh().to_f64(), 0.0);
        let one = Wide::zero().exp();
        assert_eq!((Wide::one() / one).to_f64(), 1.0);
    }
}
