//! Resolvent of the stable semigroup: h_λ(q) = 1/(λ − ψ(q)), the measure μ_λ
//! it transforms, the explicit Gaussian case and the m-fold convolution
//! (m/t)^m μ_{m/t} * ··· * μ_{m/t} → f(·, t).
//!
//! Normalization: μ_λ(x) = (1/2π) ∫ e^{−iqx} h_λ(q) dq, the kernel used for
//! densities, so λ ∫ μ_λ dx = λ h_λ(0) = 1.

use crate::oracle::{char_exponent, check_size, invert_spectrum, GridDensity, OracleError};
use crate::params::{ParamError, StableParams};
use crate::pdf_engine::{pdf, EngineError, EvalMethod};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// Printed Gaussian-case formula ÷ μ_λ under the density kernel: the
/// printed form carries an extra factor π.
pub const PRINTED_GAUSSIAN_FACTOR: f64 = PI;

/// Largest spectral tail bound, relative to the total mass 1/λ, accepted by
/// [`mu_lambda_grid`].
pub const MU_TAIL_LIMIT: f64 = 1e-2;

/// Aliases summed on either side of each wavenumber by [`mu_lambda_grid`].
pub const MU_ALIASES: i64 = 64;

/// Largest spectral tail bound accepted by [`mu_lambda_grid_smoothed`].
pub const SMOOTH_TAIL_LIMIT: f64 = 1e-10;

/// Largest spectral tail bound accepted by [`mfold_limit`].
pub const MFOLD_TAIL_LIMIT: f64 = 1e-5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResolventError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("resolvent parameter λ = {0} must be positive and finite")]
    Lambda(f64),
    #[error("convolution power m = {0} must be at least 1")]
    Multiplicity(u32),
    #[error("{0} must be positive and finite")]
    Domain(&'static str),
    #[error("spectral tail beyond the Nyquist wavenumber may carry {bound:e} (limit {limit:e}){}", hint(*.suggested_n))]
    Tail {
        bound: f64,
        limit: f64,
        suggested_n: Option<usize>,
    },
}

fn hint(n: Option<usize>) -> String {
    match n {
        Some(n) => format!("; use n >= {n} for this half-width"),
        None => "; refining the grid does not help here, use the smoothed grid".to_string(),
    }
}

/// A stable law with a resolvent parameter λ > 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResolventSpec {
    pub params: StableParams,
    pub lambda: f64,
}

impl ResolventSpec {
    pub fn new(params: StableParams, lambda: f64) -> Result<Self, ResolventError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(ResolventError::Lambda(lambda));
        }
        Ok(Self { params, lambda })
    }
}

/// h_λ(q) = 1/(λ − ψ(q)), the Laplace transform in t of e^{tψ(q)}.
pub fn h_lambda(spec: &ResolventSpec, q: f64) -> Complex64 {
    1.0 / (spec.lambda - char_exponent(&spec.params, q))
}

/// Cell averages of μ_λ over the n cells of width dx = 2L/n centred on
/// x_j = −L + j dx.
///
/// Cell averages rather than point values because for α ≤ 1 μ_λ is singular
/// at the origin; they are exact in mass. The spectrum h_λ·sinc(q dx/2) is
/// only algebraically small, so each DFT coefficient sums [`MU_ALIASES`]
/// aliases on either side explicitly. The grid is refused when the remaining
/// aliases, bounded by (1/π)∫_{Q'}^∞ |h_λ sinc| dq with Q' = (2J+1)π/dx, may
/// exceed [`MU_TAIL_LIMIT`]/λ. For α ≤ 1 that bound does not shrink with dx:
/// use [`mu_lambda_grid_smoothed`].
pub fn mu_lambda_grid(spec: &ResolventSpec, n: usize, half_width: f64) -> Result<GridDensity, ResolventError> {
    check_grid(n, half_width)?;
    let dx = 2.0 * half_width / n as f64;
    let (a, c) = (spec.params.alpha(), spec.params.scale);
    let limit = MU_TAIL_LIMIT / spec.lambda;
    let reach = (2 * MU_ALIASES + 1) as f64 * PI;
    // |h| ≤ 1/(c q^α) and |sinc(q dx/2)| ≤ 2/(q dx)
    let bound = 2.0 / (PI * c * a * dx) * (reach / dx).powf(-a);
    if bound > limit {
        let suggested_n = (a > 1.0).then(|| {
            let dx_need = (limit * PI * c * a * reach.powf(a) / 2.0).powf(1.0 / (a - 1.0));
            ((2.0 * half_width / dx_need).ceil() as usize).next_power_of_two()
        });
        return Err(ResolventError::Tail {
            bound,
            limit,
            suggested_n,
        });
    }
    let period = 2.0 * PI / dx;
    let values = invert_spectrum(n, half_width, |q| {
        (-MU_ALIASES..=MU_ALIASES)
            .map(|j| {
                let q = q + j as f64 * period;
                h_lambda(spec, q) * sinc(0.5 * q * dx)
            })
            .sum()
    });
    Ok(GridDensity {
        x0: -half_width,
        dx,
        values,
        t: 0.0,
    })
}

/// Point values of μ_λ convolved with a centred Gaussian of standard
/// deviation `width`, on the same grid as [`mu_lambda_grid`]. Nonnegative
/// whenever μ_λ is, with an exponentially small spectral tail.
pub fn mu_lambda_grid_smoothed(
    spec: &ResolventSpec,
    n: usize,
    half_width: f64,
    width: f64,
) -> Result<GridDensity, ResolventError> {
    check_grid(n, half_width)?;
    if !(width > 0.0 && width.is_finite()) {
        return Err(ResolventError::Domain("smoothing width"));
    }
    let dx = 2.0 * half_width / n as f64;
    let q_max = PI / dx;
    let (a, c) = (spec.params.alpha(), spec.params.scale);
    let s2 = width * width;
    // ∫_Q^∞ q^{−α} e^{−σ²q²/2} dq ≤ Q^{−α} e^{−σ²Q²/2}/(σ²Q)
    let bound = q_max.powf(-a) * (-0.5 * s2 * q_max * q_max).exp() / (PI * c * s2 * q_max);
    let limit = SMOOTH_TAIL_LIMIT / spec.lambda;
    if bound > limit {
        return Err(ResolventError::Tail {
            bound,
            limit,
            suggested_n: Some(((2.0 * half_width * 8.0 / (PI * width)).ceil() as usize).next_power_of_two()),
        });
    }
    let values = invert_spectrum(n, half_width, |q| h_lambda(spec, q) * (-0.5 * s2 * q * q).exp());
    Ok(GridDensity {
        x0: -half_width,
        dx,
        values,
        t: 0.0,
    })
}

/// The Gaussian-case measure as printed, for x ≥ 0:
/// (π/(2√(K₂λ))) e^{−√(λ/K₂) x}.
pub fn mu_lambda_gaussian_closed(lambda: f64, k2: f64, x: f64) -> Result<f64, ResolventError> {
    check_gaussian(lambda, k2)?;
    if !(x >= 0.0) {
        return Err(ResolventError::Domain("x on the printed branch (x ≥ 0)"));
    }
    Ok(PI / (2.0 * (k2 * lambda).sqrt()) * (-(lambda / k2).sqrt() * x).exp())
}

/// The even extension of the printed form divided by
/// [`PRINTED_GAUSSIAN_FACTOR`]: e^{−√(λ/K₂)|x|}/(2√(K₂λ)), which is μ_λ for
/// α = 2 with λ ∫ μ_λ = 1.
pub fn mu_lambda_gaussian_symmetric(lambda: f64, k2: f64, x: f64) -> Result<f64, ResolventError> {
    Ok(mu_lambda_gaussian_closed(lambda, k2, x.abs())? / PRINTED_GAUSSIAN_FACTOR)
}

/// Exact average of [`mu_lambda_gaussian_symmetric`] over [x − dx/2, x + dx/2].
pub fn mu_lambda_gaussian_cell(lambda: f64, k2: f64, x: f64, dx: f64) -> Result<f64, ResolventError> {
    check_gaussian(lambda, k2)?;
    let k = (lambda / k2).sqrt();
    let amp = 1.0 / (2.0 * (k2 * lambda).sqrt());
    // antiderivative of e^{−k|y|}, odd about 0
    let prim = |y: f64| y.signum() * (1.0 - (-k * y.abs()).exp()) / k;
    Ok(amp * (prim(x + 0.5 * dx) - prim(x - 0.5 * dx)) / dx)
}

/// ((m/t) h_{m/t}(q))^m = (1 − tψ(q)/m)^{−m}, the symbol of the m-fold
/// convolution; tends to e^{tψ(q)} as m grows.
pub fn mfold_symbol(params: &StableParams, m: u32, t: f64, q: f64) -> Complex64 {
    let mf = m as f64;
    (1.0 - t * char_exponent(params, q) / mf).powi(-(m as i32))
}

/// (m/t)^m μ_{m/t} * ··· * μ_{m/t} (m factors) on n points spanning
/// [τt − L, τt + L), computed as one inversion of [`mfold_symbol`].
///
/// The symbol decays like (ct|q|^α/m)^{−m}; the grid is refused when the
/// tail beyond π/dx may exceed [`MFOLD_TAIL_LIMIT`] (always for αm ≤ 1).
pub fn mfold_limit(params: &StableParams, m: u32, t: f64, n: usize, half_width: f64) -> Result<GridDensity, ResolventError> {
    if m == 0 {
        return Err(ResolventError::Multiplicity(m));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(ParamError::Time(t).into());
    }
    check_grid(n, half_width)?;
    let dx = 2.0 * half_width / n as f64;
    let q_max = PI / dx;
    let (a, ct, mf) = (params.alpha(), params.scale * t, m as f64);
    let decay = a * mf - 1.0;
    let bound_at = |q: f64| (mf / ct).powf(mf) * q.powf(-decay) / (PI * decay);
    let bound = if decay > 0.0 { bound_at(q_max) } else { f64::INFINITY };
    if bound > MFOLD_TAIL_LIMIT {
        let suggested_n = (decay > 0.0).then(|| {
            let q_need = ((mf / ct).powf(mf) / (PI * decay * MFOLD_TAIL_LIMIT)).powf(1.0 / decay);
            ((2.0 * half_width * q_need / PI).ceil() as usize).next_power_of_two()
        });
        return Err(ResolventError::Tail {
            bound,
            limit: MFOLD_TAIL_LIMIT,
            suggested_n,
        });
    }
    let centre = params.drift * t;
    let values = invert_spectrum(n, half_width, |q| {
        mfold_symbol(params, m, t, q) * Complex64::from_polar(1.0, -q * centre)
    });
    Ok(GridDensity {
        x0: centre - half_width,
        dx,
        values,
        t,
    })
}

/// max |grid − f(·, t)| over every `stride`-th grid point within `radius` of
/// τt, with f from [`pdf`] (Auto) at tolerance `tol`.
pub fn distance_to_density(
    params: &StableParams,
    grid: &GridDensity,
    radius: f64,
    stride: usize,
    tol: f64,
) -> Result<f64, ResolventError> {
    let centre = params.drift * grid.t;
    let mut worst: f64 = 0.0;
    for j in (0..grid.len()).step_by(stride.max(1)) {
        let x = grid.x(j);
        if (x - centre).abs() > radius {
            continue;
        }
        let f = pdf(params, x, grid.t, EvalMethod::Auto, tol)?;
        worst = worst.max((grid.values[j] - f.value).abs());
    }
    Ok(worst)
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

fn check_grid(n: usize, half_width: f64) -> Result<(), ResolventError> {
    check_size(n)?;
    if !(half_width > 0.0 && half_width.is_finite()) {
        return Err(ResolventError::Domain("half-width"));
    }
    Ok(())
}

fn check_gaussian(lambda: f64, k2: f64) -> Result<(), ResolventError> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(ResolventError::Lambda(lambda));
    }
    if !(k2 > 0.0 && k2.is_finite()) {
        return Err(ResolventError::Domain("K₂"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::reduce_rational;

    fn law(p: i64, q: i64, beta: f64, c: f64) -> StableParams {
        StableParams::new(reduce_rational(p, q).unwrap(), beta, c, 0.0).unwrap()
    }

    fn spec(p: i64, q: i64, beta: f64, lambda: f64) -> ResolventSpec {
        ResolventSpec::new(law(p, q, beta, 1.0), lambda).unwrap()
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_lambda(&spec(2, 1, 0.0, 1.0), 0.0), Complex64::new(1.0, 0.0));
        assert!((h_lambda(&spec(2, 1, 0.0, 1.0), 1.0) - Complex64::new(0.5, 0.0)).norm() < 1e-16);
        // ψ(1) = −1 + i for the one-sided index 1/2 law
        let want = 1.0 / Complex64::new(3.0, -1.0);
        assert!((h_lambda(&spec(1, 2, 1.0, 2.0), 1.0) - want).norm() < 1e-15);
        assert!(ResolventSpec::new(law(2, 1, 0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn resolvent_identity() {
        let p = law(3, 4, 0.4, 1.7);
        for (l, m, q) in [(0.5, 2.0, 1.3), (3.0, 0.1, -4.0), (1.0, 7.0, 0.02)] {
            let (a, b) = (ResolventSpec::new(p, l).unwrap(), ResolventSpec::new(p, m).unwrap());
            let lhs = h_lambda(&a, q) - h_lambda(&b, q);
            let rhs = (m - l) * h_lambda(&a, q) * h_lambda(&b, q);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn gaussian_closed_examples() {
        assert!((mu_lambda_gaussian_closed(1.0, 1.0, 0.0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((mu_lambda_gaussian_closed(4.0, 1.0, 0.0).unwrap() - PI / 4.0).abs() < 1e-15);
        let e1 = mu_lambda_gaussian_closed(1.0, 1.0, 1.0).unwrap();
        assert!((e1 - PI / 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        assert!(mu_lambda_gaussian_closed(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn gaussian_grid_matches_cell_averages() {
        let s = ResolventSpec::new(law(2, 1, 0.0, 1.0), 1.0).unwrap();
        let g = mu_lambda_grid(&s, 1 << 16, 40.0).unwrap();
        assert!((g.mass() - 1.0).abs() < 1e-8);
        let worst = (0..g.len())
            .map(|j| (g.values[j] - mu_lambda_gaussian_cell(1.0, 1.0, g.x(j), g.dx).unwrap()).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-6, "{worst}");
    }

    #[test]
    fn mass_is_inverse_lambda() {
        let s = ResolventSpec::new(law(3, 2, 0.5, 1.0), 2.5).unwrap();
        let g = mu_lambda_grid(&s, 1 << 14, 200.0).unwrap();
        assert!((g.mass() * 2.5 - 1.0).abs() < 1e-8);
    }

    #[test]
    fn small_index_needs_smoothing() {
        let s = spec(1, 2, 0.0, 1.0);
        assert!(matches!(
            mu_lambda_grid(&s, 1 << 12, 50.0),
            Err(ResolventError::Tail { suggested_n: None, .. })
        ));
        let g = mu_lambda_grid_smoothed(&s, 1 << 16, 400.0, 0.05).unwrap();
        assert!(g.values.iter().all(|&v| v >= -1e-8));
        assert!((g.mass() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn mfold_symbol_converges() {
        let p = law(1, 2, 0.5, 1.0);
        let gap = |m: u32| {
            [0.1, 1.0, 5.0, -3.0]
                .iter()
                .map(|&q| (mfold_symbol(&p, m, 1.0, q) * (-char_exponent(&p, q)).exp() - 1.0).norm())
                .fold(0.0, f64::max)
        };
        let gaps: Vec<f64> = [8, 16, 32, 64].into_iter().map(gap).collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    }

    #[test]
    fn mfold_guard() {
        assert!(matches!(mfold_limit(&law(1, 2, 0.0, 1.0), 1, 1.0, 1024, 10.0), Err(ResolventError::Tail { .. })));
        assert!(matches!(mfold_limit(&law(2, 1, 0.0, 1.0), 0, 1.0, 1024, 10.0), Err(ResolventError::Multiplicity(0))));
    }

    #[test]
    fn gaussian_mfold_improves() {
        let p = law(2, 1, 0.0, 1.0);
        let d = |m: u32| {
            let g = mfold_limit(&p, m, 1.0, 1 << 14, 40.0).unwrap();
            assert!((g.mass() - 1.0).abs() < 1e-8);
            distance_to_density(&p, &g, 10.0, 16, 1e-12).unwrap()
        };
        let (d8, d64) = (d(8), d(64));
        assert!(d64 < d8, "{d8} {d64}");
    }
}
