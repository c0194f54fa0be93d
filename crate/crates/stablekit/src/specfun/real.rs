//! Scalar abstraction shared by the f64, double-double and multiprecision
//! evaluation paths.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Real scalar used by the generic series kernels.
///
/// Implementations must give exact results for `from_i128` on integers of
/// modest size and correctly rounded (to their own precision) arithmetic.
pub trait Real:
    Clone
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn from_i128(n: i128) -> Self;
    fn to_f64(&self) -> f64;

    /// Unit roundoff of the format.
    fn unit_roundoff() -> f64;

    fn pi() -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    /// `(sin x, cos x)` for |x| not much larger than π.
    fn sin_cos(&self) -> (Self, Self);
    /// Γ(x) for x > 0.
    fn gamma(&self) -> Self;

    fn zero() -> Self {
        Self::from_i128(0)
    }
    fn one() -> Self {
        Self::from_i128(1)
    }
    fn ratio(num: i128, den: i128) -> Self {
        Self::from_i128(num) / Self::from_i128(den)
    }
    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
    fn powf(&self, e: &Self) -> Self {
        (self.ln() * e.clone()).exp()
    }
    fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            k >>= 1;
        }
        acc
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i128(n: i128) -> Self {
        n as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn unit_roundoff() -> f64 {
        f64::EPSILON / 2.0
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        f64::sin_cos(*self)
    }
    fn gamma(&self) -> Self {
        super::dd::DoubleDouble::from_f64(*self).gamma().to_f64()
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

/// `(sin πr, cos πr)` for the exact rational r = num/den, reduced exactly
/// before any rounding so that multiples of 1/2 give exact 0 and ±1.
pub fn sin_cos_pi_ratio<T: Real>(num: i128, den: i128) -> (T, T) {
    assert!(den > 0, "denominator must be positive");
    let two_den = 2 * den;
    let r = num.rem_euclid(two_den);
    // nearest quarter turn: k = round(2 r/den), s = r/den - k/2 in [-1/4, 1/4]
    let k = (4 * r + den) / two_den;
    let s_num = 2 * r - k * den;
    let (s, c) = if s_num == 0 {
        (T::zero(), T::one())
    } else {
        (T::pi() * T::ratio(s_num, two_den)).sin_cos()
    };
    match k % 4 {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// Γ(num/den) for a positive rational, reduced to Γ(y) with y in (1, 2]
/// times exact integer-shift factors.
pub fn gamma_ratio<T: Real>(num: i128, den: i128) -> T {
    assert!(num > 0 && den > 0, "gamma_ratio needs a positive argument");
    let k = num / den;
    let f = num - k * den;
    if f == 0 {
        return (1..k).fold(T::one(), |acc, j| acc * T::from_i128(j));
    }
    let y = T::ratio(den + f, den);
    let g = y.gamma();
    if k == 0 {
        return g / T::ratio(num, den);
    }
    // x = y + (k − 1)
    (0..k - 1).fold(g, |acc, j| acc * (y.clone() + T::from_i128(j)))
}

/// Exact dyadic decomposition x = m·2^e of a finite f64.
pub fn dyadic(x: f64) -> (i128, i32) {
    if x == 0.0 {
        return (0, 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut m, mut e) = if exp_bits == 0 {
        (frac as i128, -1074)
    } else {
        ((frac | (1u64 << 52)) as i128, exp_bits - 1075)
    };
    while m & 1 == 0 {
        m >>= 1;
        e += 1;
    }
    (sign * m, e)
}

/// Represents `k·x/d` (k, d integers, x an f64) as an exact fraction num/den.
pub fn scaled_dyadic_ratio(k: i128, x: f64, d: i128) -> (i128, i128) {
    let (m, e) = dyadic(x);
    if e >= 0 {
        (k * m * (1i128 << e), d)
    } else {
        (k * m, d * (1i128 << (-e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turns_are_exact() {
        let (s, c) = sin_cos_pi_ratio::<f64>(1, 2);
        assert_eq!((s, c), (1.0, 0.0));
        let (s, c) = sin_cos_pi_ratio::<f64>(-3, 2);
        assert_eq!((s, c), (1.0, 0.0));
        let (s, _) = sin_cos_pi_ratio::<f64>(7, 1);
        assert_eq!(s, 0.0);
    }

    #[test]
    fn general_angles() {
        for (n, d) in [(1i128, 3i128), (5, 7), (-11, 6), (123, 40)] {
            let (s, c) = sin_cos_pi_ratio::<f64>(n, d);
            let x = std::f64::consts::PI * n as f64 / d as f64;
            assert!((s - x.sin()).abs() < 1e-14);
            assert!((c - x.cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn gamma_of_rationals() {
        let g: f64 = gamma_ratio(1, 2);
        assert!((g - std::f64::consts::PI.sqrt()).abs() < 1e-15);
        assert_eq!(gamma_ratio::<f64>(5, 1), 24.0);
        let g: f64 = gamma_ratio(7, 3);
        assert!((g - 1.190_639_348_758_998_9).abs() < 1e-14);
        let g: f64 = gamma_ratio(1, 60);
        assert!((g / 59.439_020_994_688_55 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dyadic_roundtrip() {
        for x in [1.0, 0.75, -3.0, 1.3, 1e-300, 2.5e10] {
            let (m, e) = dyadic(x);
            assert_eq!(m as f64 * 2f64.powi(e), x);
        }
        assert_eq!(scaled_dyadic_ratio(3, 1.0, 2), (3, 2));
        assert_eq!(scaled_dyadic_ratio(1, 0.5, 1), (1, 2));
    }
}
