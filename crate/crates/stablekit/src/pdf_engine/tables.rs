//! Tabulated H(z) for α ∈ {1/3, 1/2, 2/3} (index below one) and α = 4/3
//! (index above one), term by term as published.

use super::EngineError;
use crate::params::RationalIndex;
use crate::specfun::{bessel_i, fresnel_c, fresnel_s, gamma, hyper_pfq_with, HyperSpec, Precision, SeriesOptions, SeriesResult};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Accumulates coefficient·pFq terms with their error bounds.
struct Terms {
    sum: f64,
    magnitude: f64,
    bound: f64,
    count: usize,
    precision: Precision,
}

impl Terms {
    fn new() -> Self {
        Self::with_precision(Precision::Auto)
    }

    fn with_precision(precision: Precision) -> Self {
        Self {
            sum: 0.0,
            magnitude: 0.0,
            bound: 0.0,
            count: 0,
            precision,
        }
    }

    fn push(&mut self, coef: f64, value: f64, value_bound: f64) {
        let t = coef * value;
        self.sum += t;
        self.magnitude += t.abs();
        self.bound += coef.abs() * value_bound;
        self.count += 1;
    }

    fn pfq(&mut self, coef: f64, a: &[f64], b: &[f64], w: f64, tol: f64) -> Result<(), EngineError> {
        let spec = HyperSpec::new(a.to_vec(), b.to_vec(), Complex64::new(w, 0.0))?;
        let opts = SeriesOptions {
            tol: tol / (coef.abs() * 16.0).max(f64::MIN_POSITIVE),
            max_terms: 20_000,
            precision: self.precision,
        };
        let r = hyper_pfq_with(&spec, &opts)?;
        self.push(coef, r.value.re, r.abs_error_bound);
        Ok(())
    }

    /// Widens the bound for terms whose argument carries a relative rounding
    /// error amplified `gain` times.
    fn sensitivity(&mut self, gain: f64) {
        self.bound += gain * f64::EPSILON * self.magnitude;
    }

    fn finish(self, tol: f64) -> SeriesResult {
        let bound = self.bound + 8.0 * f64::EPSILON * self.magnitude;
        let ok = self.sum.is_finite() && bound.is_finite();
        SeriesResult {
            value: Complex64::new(if ok { self.sum } else { f64::NAN }, 0.0),
            abs_error_bound: if ok { bound } else { f64::INFINITY },
            terms_used: self.count,
            converged: ok && bound <= tol,
        }
    }
}

fn r(n: f64, d: f64) -> f64 {
    n / d
}

/// H(z) from the published row for `index`, or `None` when no row is
/// implemented for it. `tol` is an absolute tolerance on H.
pub fn tabulated_h(index: RationalIndex, z: f64, tol: f64) -> Option<Result<SeriesResult, EngineError>> {
    let row = match (index.numer(), index.denom()) {
        (1, 3) => row_one_third,
        (1, 2) => row_one_half,
        (2, 3) => row_two_thirds,
        (4, 3) => row_four_thirds,
        _ => return None,
    };
    if !(z > 0.0 && z.is_finite()) {
        return Some(Err(EngineError::Argument(z)));
    }
    Some(row(z, tol))
}

fn row_one_third(z: f64, tol: f64) -> Result<SeriesResult, EngineError> {
    let w = -1.0 / (11664.0 * z * z);
    let g = gamma(2.0 / 3.0)?;
    let s3 = 3f64.sqrt();
    let mut t = Terms::new();
    t.pfq(s3 / 27.0 / (z.powf(1.0 / 3.0) * g), &[], &[r(1.0, 3.0), 0.5, r(5.0, 6.0)], w, tol)?;
    t.pfq(-s3 * g / (18.0 * z.powf(2.0 / 3.0) * PI), &[], &[0.5, r(2.0, 3.0), r(7.0, 6.0)], w, tol)?;
    t.pfq(1.0 / (18.0 * z * PI), &[1.0], &[r(2.0, 3.0), r(5.0, 6.0), r(7.0, 6.0), r(4.0, 3.0)], w, tol)?;
    t.pfq(-1.0 / (162.0 * z.powf(4.0 / 3.0) * g), &[], &[r(5.0, 6.0), r(4.0, 3.0), 1.5], w, tol)?;
    t.pfq(g / (648.0 * z.powf(5.0 / 3.0) * PI), &[], &[r(7.0, 6.0), 1.5, r(5.0, 3.0)], w, tol)?;
    Ok(t.finish(tol))
}

/// Fresnel form, also the symmetric α = 1/2 closed form.
pub(crate) fn row_one_half(z: f64, tol: f64) -> Result<SeriesResult, EngineError> {
    let root = (2.0 * PI * z).sqrt();
    let arg = 1.0 / root;
    let (s, c) = (1.0 / (4.0 * z)).sin_cos();
    let (fc, fs) = (fresnel_c(arg), fresnel_s(arg));
    let mut t = Terms::new();
    let fresnel_bound = 4.0 * f64::EPSILON;
    t.push(-c / (2.0 * root), fc, fresnel_bound);
    t.push(-s / (2.0 * root), fs, fresnel_bound);
    t.push(1.0 / (4.0 * root), c + s, 2.0 * f64::EPSILON);
    t.sensitivity(2.0 / (4.0 * z));
    Ok(t.finish(tol))
}

/// Bessel form, also the symmetric α = 2/3 closed form.
pub(crate) fn row_two_thirds(z: f64, tol: f64) -> Result<SeriesResult, EngineError> {
    let y = 2.0 / (27.0 * z * z);
    let z2 = z * z;
    let (ch, sh) = (y.cosh(), y.sinh());
    let i = |nu: f64| bessel_i(nu, y);
    let (i13, i23, i43, i53) = (i(1.0 / 3.0)?, i(2.0 / 3.0)?, i(4.0 / 3.0)?, i(5.0 / 3.0)?);
    // bessel_i is accurate to a few ulps relative
    let eb = 8.0 * f64::EPSILON;
    let mut t = Terms::new();
    let c1 = 4.0 / 9.0;
    t.push(c1 * ch, i13, eb * i13);
    t.push(c1 / (9.0 * z2) * sh, i13, eb * i13);
    t.push(c1 / (9.0 * z2) * ch, i43, eb * i43);
    let c2 = -4.0 / 27.0;
    t.push(c2 * 6.0 * ch, i23, eb * i23);
    t.push(c2 / (3.0 * z2) * sh, i23, eb * i23);
    t.push(c2 / (3.0 * z2) * ch, i53, eb * i53);
    let c3 = 4.0 / (81.0 * z2);
    t.push(c3 * ch, i13, eb * i13);
    t.push(c3 * 9.0 * z2 * sh, i13, eb * i13);
    t.push(c3 * sh, i43, eb * i43);
    let c4 = -4.0 / (81.0 * z2);
    t.push(c4 * ch, i23, eb * i23);
    t.push(c4 * 18.0 * z2 * sh, i23, eb * i23);
    t.push(c4 * sh, i53, eb * i53);
    // cosh, sinh and I_ν all pass a relative error in y through about y times
    t.sensitivity(4.0 * y);
    Ok(t.finish(tol))
}

fn csc(x: f64) -> f64 {
    1.0 / x.sin()
}

fn row_four_thirds(z: f64, tol: f64) -> Result<SeriesResult, EngineError> {
    let w = 729.0 * z.powi(8) / 262_144.0;
    let g = |x: f64| gamma(x);
    let k = |n: f64| n / 24.0;
    let a_fac = csc(7.0 * PI / 24.0) * csc(11.0 * PI / 24.0) / csc(3.0 * PI / 8.0) * g(k(19.0))? * g(k(23.0))? * g(0.625)?
        / (g(k(17.0))? * g(k(13.0))? * g(0.875)?);
    let b_fac = csc(PI / 24.0) * csc(5.0 * PI / 24.0) / csc(PI / 8.0) * g(k(13.0))? * g(k(17.0))? * g(0.875)?
        / (g(k(23.0))? * g(k(19.0))? * g(0.625)?);
    let lead = 6f64.powf(0.25) / PI.sqrt() * z;
    let s6 = 6f64.sqrt();
    let mut t = Terms::new();
    t.pfq(
        lead * 0.5 * a_fac,
        &[k(7.0), k(11.0), k(19.0), k(23.0)],
        &[0.25, 0.375, 0.5, 0.75, 0.875],
        w,
        tol,
    )?;
    t.pfq(
        -lead * 5.0 * s6 / 384.0 * z.powi(2) * b_fac,
        &[k(13.0), k(17.0), k(25.0), k(29.0)],
        &[0.5, 0.625, 0.75, 1.125, 1.25],
        w,
        tol,
    )?;
    t.pfq(
        lead * 77.0 / 1024.0 * z.powi(4) * a_fac,
        &[k(19.0), k(23.0), k(31.0), k(35.0)],
        &[0.75, 0.875, 1.25, 1.375, 1.5],
        w,
        tol,
    )?;
    t.pfq(
        -lead * 221.0 * s6 / 196_608.0 * z.powi(6) * b_fac,
        &[k(25.0), k(29.0), k(37.0), k(41.0)],
        &[1.125, 1.25, 1.5, 1.625, 1.75],
        w,
        tol,
    )?;
    Ok(t.finish(tol))
}

/// Three-term Holtsmark form (α = 3/2, symmetric).
pub(crate) fn holtsmark(z: f64, tol: f64, precision: Precision) -> Result<SeriesResult, EngineError> {
    let w = -4.0 / 729.0 * z.powi(6);
    let g = gamma(2.0 / 3.0)?;
    let lead = z / PI;
    let mut t = Terms::with_precision(precision);
    t.pfq(lead * g, &[r(5.0, 12.0), r(11.0, 12.0)], &[r(1.0, 3.0), 0.5, r(5.0, 6.0)], w, tol)?;
    t.pfq(
        -lead * z * z / 2.0,
        &[1.0, 0.75, 1.25],
        &[r(5.0, 6.0), r(2.0, 3.0), r(4.0, 3.0), r(7.0, 6.0)],
        w,
        tol,
    )?;
    t.pfq(
        lead * 14.0 * 3f64.sqrt() / 486.0 * PI / g * z.powi(4),
        &[r(19.0, 12.0), r(13.0, 12.0)],
        &[1.5, r(7.0, 6.0), r(5.0, 3.0)],
        w,
        tol,
    )?;
    Ok(t.finish(tol))
}
