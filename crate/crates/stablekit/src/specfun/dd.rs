//! Double-double arithmetic: an unevaluated sum `hi + lo` of two f64 values
//! carrying about 106 significant bits.

use super::real::Real;
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
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

const PI: DoubleDouble = DoubleDouble::new(std::f64::consts::PI, 1.224_646_799_147_353_2e-16);
const LN2: DoubleDouble = DoubleDouble::new(std::f64::consts::LN_2, 2.319_046_813_846_299_6e-17);
const HALF_LN_2PI: DoubleDouble =
    DoubleDouble::new(0.9189385332046728, -3.8782941580672414e-17);

// B_{2k} / (2k (2k-1)) as exact rationals, k = 1..20
const STIRLING: [(i128, i128); 20] = [
    (1, 12),
    (-1, 360),
    (1, 1260),
    (-1, 1680),
    (1, 1188),
    (-691, 360360),
    (1, 156),
    (-3617, 122400),
    (43867, 244188),
    (-174611, 125400),
    (77683, 5796),
    (-236364091, 1506960),
    (657931, 300),
    (-3392780147, 93960),
    (1723168255201, 2492028),
    (-7709321041217, 505920),
    (151628697551, 396),
    (-26315271553053477373, 2418179400),
    (154210205991661, 444),
    (-261082718496449122051, 21106800),
];

impl DoubleDouble {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (h, l) = quick_two_sum(hi, lo);
        Self::new(h, l)
    }

    fn ldexp(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        Self::new(self.hi * f, self.lo * f)
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        Self::renorm(p1, p2 + self.lo * b)
    }

    fn recip(self) -> Self {
        Self::from_f64(1.0) / self
    }

    /// ln Γ(x) for x > 0 via upward shift and the Stirling series.
    pub fn ln_gamma(self) -> Self {
        assert!(self.hi > 0.0, "ln_gamma needs a positive argument");
        let mut x = self;
        let mut shift = Self::from_f64(1.0);
        let mut shifted = false;
        while x.hi < 20.0 {
            shift = shift * x;
            x = x + Self::from_f64(1.0);
            shifted = true;
        }
        let inv = x.recip();
        let inv2 = inv * inv;
        let mut series = Self::from_f64(0.0);
        let mut pow = inv;
        for &(n, d) in STIRLING.iter() {
            let term = Self::from_i128(n) / Self::from_i128(d) * pow;
            series = series + term;
            if term.hi.abs() < 1e-34 * series.hi.abs() {
                break;
            }
            pow = pow * inv2;
        }
        let base = (x - Self::from_f64(0.5)) * x.ln() - x + HALF_LN_2PI + series;
        if shifted {
            base - shift.ln()
        } else {
            base
        }
    }
}

impl PartialEq for DoubleDouble {
    fn eq(&self, o: &Self) -> bool {
        self.hi == o.hi && self.lo == o.lo
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&o.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&o.lo),
            r => r,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Self::renorm(s1, s2 + t2)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.hi, -self.lo)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, b.hi);
        Self::renorm(p1, p2 + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Self::new(q1, q2) + Self::from_f64(q3)
    }
}

impl Real for DoubleDouble {
    fn from_f64(x: f64) -> Self {
        Self::new(x, 0.0)
    }

    fn from_i128(n: i128) -> Self {
        let hi = n as f64;
        // the remainder is exact when |n| < 2^106
        let rem = n - hi as i128;
        Self::renorm(hi, rem as f64)
    }

    fn to_f64(&self) -> f64 {
        self.hi + self.lo
    }

    fn unit_roundoff() -> f64 {
        2f64.powi(-104)
    }

    fn pi() -> Self {
        PI
    }

    fn sqrt(&self) -> Self {
        if self.hi <= 0.0 {
            return Self::from_f64(0.0);
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let ax_dd = Self::from_f64(ax);
        let diff = *self - ax_dd * ax_dd;
        Self::from_f64(ax) + Self::from_f64(diff.hi * x * 0.5)
    }

    fn exp(&self) -> Self {
        if self.hi > 709.0 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Self::from_f64(0.0);
        }
        let k = (self.hi / LN2.hi).round();
        let r = (*self - LN2.mul_f64(k)).ldexp(-10);
        // Taylor series of e^r - 1, |r| < 3.4e-4
        let mut term = r;
        let mut sum = r;
        for n in 2..=12 {
            term = term * r / Self::from_f64(n as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        // (1 + s)^2 - 1 = s (2 + s), repeated 10 times
        for _ in 0..10 {
            sum = sum * (sum + Self::from_f64(2.0));
        }
        (sum + Self::from_f64(1.0)).ldexp(k as i32)
    }

    fn ln(&self) -> Self {
        let mut y = Self::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + *self * (-y).exp() - Self::from_f64(1.0);
        }
        y
    }

    fn sin_cos(&self) -> (Self, Self) {
        // reduce by π/2
        let two_over_pi = 2.0 / std::f64::consts::PI;
        let j = (self.hi * two_over_pi).round();
        let half_pi = PI.ldexp(-1);
        let r = *self - half_pi.mul_f64(j);
        let r2 = r * r;
        let mut s = r;
        let mut term = r;
        let mut n = 1.0;
        loop {
            term = -term * r2 / Self::from_f64((n + 1.0) * (n + 2.0));
            s = s + term;
            n += 2.0;
            if term.hi.abs() < 1e-36 || n > 60.0 {
                break;
            }
        }
        let mut c = Self::from_f64(1.0);
        let mut term = Self::from_f64(1.0);
        let mut n = 0.0;
        loop {
            term = -term * r2 / Self::from_f64((n + 1.0) * (n + 2.0));
            c = c + term;
            n += 2.0;
            if term.hi.abs() < 1e-36 || n > 60.0 {
                break;
            }
        }
        match (j as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    fn gamma(&self) -> Self {
        self.ln_gamma().exp()
    }

    fn abs(&self) -> Self {
        if self.hi < 0.0 {
            -*self
        } else {
            *self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(x: f64) -> DoubleDouble {
        DoubleDouble::from_f64(x)
    }

    #[test]
    fn division_and_sqrt_roundtrip() {
        let third = dd(1.0) / dd(3.0);
        let back = third * dd(3.0) - dd(1.0);
        assert!(back.to_f64().abs() < 1e-31);
        let r = dd(2.0).sqrt();
        assert!((r * r - dd(2.0)).to_f64().abs() < 1e-31);
    }

    #[test]
    fn exp_ln_inverse() {
        for x in [-30.0, -1.5, 0.1, 2.0, 45.0] {
            let y = dd(x).exp().ln();
            assert!((y - dd(x)).to_f64().abs() < 1e-30 * (1.0 + x.abs()), "{x}");
        }
        // e to 32 digits
        let e = dd(1.0).exp();
        let e_ref = DoubleDouble::new(std::f64::consts::E, 1.445_646_891_729_250_2e-16);
        assert!((e - e_ref).to_f64().abs() < 1e-31);
    }

    #[test]
    fn trig_identity() {
        for x in [0.3, 1.0, 2.9, -2.5] {
            let (s, c) = dd(x).sin_cos();
            assert!((s * s + c * c - dd(1.0)).to_f64().abs() < 1e-30);
            assert!((s.to_f64() - x.sin()).abs() < 1e-15);
        }
        let (s, _) = (PI / dd(6.0)).sin_cos();
        assert!((s - dd(0.5)).to_f64().abs() < 1e-31);
    }

    #[test]
    fn gamma_values() {
        // Γ(1/2)^2 = π
        let g = dd(0.5).gamma();
        assert!((g * g - PI).to_f64().abs() < 1e-29);
        assert!((dd(5.0).gamma() - dd(24.0)).to_f64().abs() < 1e-29);
        assert!(dd(1.0).ln_gamma().to_f64().abs() < 1e-31);
        assert!(dd(2.0).ln_gamma().to_f64().abs() < 1e-31);
    }

    #[test]
    fn big_integers_are_exact() {
        let n: i128 = (1 << 100) + 12345;
        let x = DoubleDouble::from_i128(n);
        assert_eq!(x.hi as i128 + x.lo as i128, n);
    }
}
