//! Numerical checks of Fourier identities behind the stable generator: Weyl
//! derivative symbols, the transform of |x|^a and self-similarity in time.

use super::fourier::{graded, pdf_quadrature};
use super::OracleError;
use crate::params::StableParams;
use crate::specfun::gamma;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Left (+) or right (−) Weyl fractional derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylSide {
    Left,
    Right,
}

/// Fourier multiplier (±ip)^α = |p|^α e^{±iαπ sgn(p)/2} of the left (+) or
/// right (−) Weyl derivative.
pub fn weyl_symbol(alpha: f64, p: f64, side: WeylSide) -> Result<Complex64, OracleError> {
    if p == 0.0 || !p.is_finite() {
        return Err(OracleError::Precondition("Weyl symbol needs p ≠ 0"));
    }
    let sign = match side {
        WeylSide::Left => 1.0,
        WeylSide::Right => -1.0,
    };
    Ok(Complex64::from_polar(p.abs().powf(alpha), sign * alpha * PI * p.signum() / 2.0))
}

/// −(c/(2cos(απ/2)))[(1−β)(ip)^α + (1+β)(−ip)^α] + iτp: the generator symbol
/// assembled from the two Weyl derivatives. Equals [`char_exponent`] for
/// every α ≠ 1; α = 1 is rejected.
pub fn weyl_combination(params: &StableParams, p: f64) -> Result<Complex64, OracleError> {
    if params.index.is_one() {
        return Err(OracleError::Precondition("cos(απ/2) vanishes at α = 1"));
    }
    let a = params.alpha();
    let beta = if params.index.is_two() { 0.0 } else { params.skewness };
    let left = weyl_symbol(a, p, WeylSide::Left)?;
    let right = weyl_symbol(a, p, WeylSide::Right)?;
    let k = -params.scale / (2.0 * (a * PI / 2.0).cos());
    Ok(k * ((1.0 - beta) * left + (1.0 + beta) * right) + Complex64::new(0.0, params.drift * p))
}

/// Regulators ε/ω for the transform of |x|^a, halved twice for extrapolation.
/// Relative to ω = 2π|p| the leftover O((ε/ω)³) is below 3e−7 relative.
pub const REGULATORS: [f64; 3] = [0.01, 0.005, 0.0025];

/// (numeric, closed form) for ∫|x|^a e^{2πipx} dx with −1 < a < 1, a ≠ 0.
///
/// The numeric side integrates 2∫₀^∞ x^a e^{−εx} cos(2πpx) dx for each
/// regulator and removes the O(ε) and O(ε²) terms by Richardson
/// extrapolation; the closed form is 2Γ(1+a) cos(π(1+a)/2)/(2π|p|)^{1+a}.
pub fn verify_ft_abs_power(a: f64, p: f64) -> Result<(f64, f64), OracleError> {
    if !(a > -1.0 && a < 1.0) || a == 0.0 {
        return Err(OracleError::Precondition("exponent must lie in (−1, 0) ∪ (0, 1)"));
    }
    if p == 0.0 || !p.is_finite() {
        return Err(OracleError::Precondition("frequency must be nonzero"));
    }
    let omega = 2.0 * PI * p.abs();
    let mut values = [0.0; 3];
    for (v, ratio) in values.iter_mut().zip(REGULATORS) {
        let eps = ratio * omega;
        // x^a e^{−εx} < 1e−16 beyond the cut
        let mut cut = 40.0 / eps;
        for _ in 0..20 {
            cut = (37.0 + a * cut.ln()) / eps;
        }
        let f = |x: f64| x.powf(a) * (-eps * x).exp() * (omega * x).cos();
        let (i, _) = graded(&f, &|_| omega, cut, 1e-12)?;
        *v = 2.0 * i;
    }
    let r1 = [2.0 * values[1] - values[0], 2.0 * values[2] - values[1]];
    let r2 = (4.0 * r1[1] - r1[0]) / 3.0;
    let change = (r2 - r1[1]).abs();
    if !r2.is_finite() || change > 1e-3 * r2.abs().max(1.0) {
        return Err(OracleError::Extrapolation(change));
    }
    let closed = 2.0 * gamma(1.0 + a).map_err(|_| OracleError::Precondition("Γ(1+a)"))? * (PI * (1.0 + a) / 2.0).cos()
        / omega.powf(1.0 + a);
    Ok((r2, closed))
}

/// Largest deviation from self-similarity over the probe coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimilarityReport {
    /// max |(ct₁)^{1/α} f(x₁, t₁) − (ct₂)^{1/α} f(x₂, t₂)|
    pub max_deviation: f64,
    /// The matching combined quadrature bound.
    pub max_bound: f64,
}

/// Compares (ct)^{1/α} f(τt + z s(t), t) at two times for each probe z, with
/// s(t) = (ct)^{1/α}(1+γ²)^{1/(2α)}. α = 1 with β ≠ 0 has no such scaling and
/// is rejected.
pub fn self_similarity_check(
    params: &StableParams,
    t1: f64,
    t2: f64,
    probes: &[f64],
    tol: f64,
) -> Result<SimilarityReport, OracleError> {
    if params.index.is_one() && params.skewness != 0.0 {
        return Err(OracleError::Precondition("α = 1 with β ≠ 0 is not self-similar"));
    }
    let a = params.alpha();
    let mut report = SimilarityReport {
        max_deviation: 0.0,
        max_bound: 0.0,
    };
    for &z in probes {
        let mut side = [(0.0, 0.0); 2];
        for (slot, t) in side.iter_mut().zip([t1, t2]) {
            let s = params.length_scale(t)?;
            let weight = (params.scale * t).powf(1.0 / a);
            let d = pdf_quadrature(params, params.drift * t + z * s, t, tol / weight)?;
            *slot = (weight * d.value, weight * d.abs_error_bound);
        }
        report.max_deviation = report.max_deviation.max((side[0].0 - side[1].0).abs());
        report.max_bound = report.max_bound.max(side[0].1 + side[1].1);
    }
    Ok(report)
}
