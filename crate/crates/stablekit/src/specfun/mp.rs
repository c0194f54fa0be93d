//! Multiprecision scalar backed by `astro-float`, for series whose peak terms
//! exceed the double-double range of cancellation.
//!
//! The working precision is thread-local and scoped with [`with_precision`].

use super::real::Real;
use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static PRECISION: Cell<usize> = const { Cell::new(256) };
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants"));
}

fn prec() -> usize {
    PRECISION.with(|p| p.get())
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Runs `f` with the multiprecision working precision set to `bits`
/// (rounded up to a whole 64-bit word), restoring the previous value after.
pub fn with_precision<R>(bits: usize, f: impl FnOnce() -> R) -> R {
    let bits = bits.max(128).div_ceil(64) * 64;
    let old = PRECISION.with(|p| p.replace(bits));
    let out = f();
    PRECISION.with(|p| p.set(old));
    out
}

#[derive(Clone, Debug)]
pub struct Mp(BigFloat);

impl Mp {
    fn wrap(v: BigFloat) -> Self {
        Mp(v)
    }
}

impl PartialEq for Mp {
    fn eq(&self, o: &Self) -> bool {
        self.0.cmp(&o.0) == Some(0)
    }
}

impl PartialOrd for Mp {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.0.cmp(&o.0).map(|c| c.cmp(&0))
    }
}

impl Add for Mp {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Mp::wrap(self.0.add(&o.0, prec(), RM))
    }
}

impl Sub for Mp {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Mp::wrap(self.0.sub(&o.0, prec(), RM))
    }
}

impl Mul for Mp {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Mp::wrap(self.0.mul(&o.0, prec(), RM))
    }
}

impl Div for Mp {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Mp::wrap(self.0.div(&o.0, prec(), RM))
    }
}

impl Neg for Mp {
    type Output = Self;
    fn neg(self) -> Self {
        Mp::wrap(self.0.neg())
    }
}

impl Real for Mp {
    fn from_f64(x: f64) -> Self {
        Mp::wrap(BigFloat::from_f64(x, prec()))
    }

    fn from_i128(n: i128) -> Self {
        Mp::wrap(BigFloat::from_i128(n, prec()))
    }

    fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let (words, _, sign, exp, _) = self.0.as_raw_parts().expect("finite value");
        let n = words.len();
        let top = words[n - 1] as f64;
        let next = if n > 1 { words[n - 2] as f64 } else { 0.0 };
        let mant = (top + next * 2f64.powi(-64)) * 2f64.powi(-64);
        let e = exp;
        // split the scaling so that neither factor overflows prematurely
        let v = mant * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
        match sign {
            Sign::Neg => -v,
            Sign::Pos => v,
        }
    }

    fn unit_roundoff() -> f64 {
        2f64.powi(-(prec() as i32) + 1)
    }

    fn pi() -> Self {
        Mp::wrap(with_consts(|cc| cc.pi(prec(), RM)))
    }

    fn sqrt(&self) -> Self {
        Mp::wrap(self.0.sqrt(prec(), RM))
    }

    fn exp(&self) -> Self {
        Mp::wrap(with_consts(|cc| self.0.exp(prec(), RM, cc)))
    }

    fn ln(&self) -> Self {
        Mp::wrap(with_consts(|cc| self.0.ln(prec(), RM, cc)))
    }

    fn sin_cos(&self) -> (Self, Self) {
        with_consts(|cc| {
            (
                Mp::wrap(self.0.sin(prec(), RM, cc)),
                Mp::wrap(self.0.cos(prec(), RM, cc)),
            )
        })
    }

    /// Γ(x) for 0 < x ≤ 60 from the lower incomplete gamma series
    /// γ(x, N) = N^x e^{-N} Σ N^k / (x)_{k+1}, whose terms are all positive.
    fn gamma(&self) -> Self {
        let xf = self.to_f64();
        assert!(xf > 0.0 && xf <= 60.0, "multiprecision gamma range is (0, 60]");
        let bits = prec() as f64;
        // Γ(x, N) ≈ N^{x-1} e^{-N} must fall below 2^-bits relative to Γ(x)
        let big_n = (bits * std::f64::consts::LN_2 + 2.0 * xf + 20.0).ceil() as i128;
        let n_t = Mp::from_i128(big_n);
        let mut term = Mp::one() / self.clone();
        let mut sum = term.clone();
        let mut k: i128 = 1;
        // relative size 2^{−bits−8}, kept in range for any width
        let inv_tiny = Mp::from_i128(2).powi(bits as u32 + 8);
        loop {
            term = term * n_t.clone() / (self.clone() + Mp::from_i128(k));
            sum = sum + term.clone();
            k += 1;
            if k > big_n && (term.clone() * inv_tiny.clone() / sum.clone()).to_f64() < 1.0 {
                break;
            }
        }
        (self.clone() * n_t.ln() - n_t).exp() * sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversion_roundtrip() {
        with_precision(256, || {
            for x in [1.0, 0.75, -3.0, 1e-300, 6.02e23] {
                assert_eq!(Mp::from_f64(x).to_f64(), x);
            }
            let third = Mp::from_i128(1) / Mp::from_i128(3);
            assert_eq!(third.to_f64(), 1.0 / 3.0);
        });
    }

    #[test]
    fn gamma_matches_double_double() {
        with_precision(320, || {
            let half = Mp::ratio(1, 2);
            let g = half.gamma();
            let err = (g.clone() * g - Mp::pi()).abs().to_f64();
            assert!(err < 1e-90, "{err}");
            let g = Mp::ratio(17, 5).gamma();
            let reference = crate::specfun::dd::DoubleDouble::from_f64(3.4).gamma();
            assert!((g.to_f64() - reference.to_f64()).abs() < 1e-15);
        });
    }

    #[test]
    fn precision_scope_restores() {
        let before = prec();
        with_precision(1000, || assert_eq!(prec(), 1024));
        assert_eq!(prec(), before);
    }
}
