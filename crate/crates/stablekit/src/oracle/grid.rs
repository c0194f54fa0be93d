//! Densities on periodic grids by discrete inversion of a sampled spectrum.

use super::fourier::char_exponent;
use super::OracleError;
use crate::params::{ParamError, StableParams};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// Largest |e^{tψ}| tolerated at the Nyquist wavenumber.
pub const NYQUIST_GUARD: f64 = 1e-14;

/// Samples x_j = x0 + j·dx, j = 0..n, of a density at time `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridDensity {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<f64>,
    pub t: f64,
}

impl GridDensity {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.dx
    }

    /// dx·Σ values.
    pub fn mass(&self) -> f64 {
        self.dx * self.values.iter().sum::<f64>()
    }

    /// max_j |values_j − f(x_j)| over grid points with |x_j − center| ≤ radius.
    pub fn sup_distance(&self, center: f64, radius: f64, f: impl Fn(f64) -> f64) -> f64 {
        (0..self.len())
            .filter(|&j| (self.x(j) - center).abs() <= radius)
            .map(|j| (self.values[j] - f(self.x(j))).abs())
            .fold(0.0, f64::max)
    }

    /// Circular convolution with itself, dx·Σ_j g_j g_{m−j}, reported on a
    /// grid of the same size centred on twice the original centre.
    pub fn self_convolve(&self) -> GridDensity {
        let n = self.len();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let mut buf: Vec<Complex64> = self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fwd.process(&mut buf);
        for b in &mut buf {
            *b = *b * *b;
        }
        inv.process(&mut buf);
        let scale = self.dx / n as f64;
        // index m sits at 2·x0 + m·dx; shifting by n/2 recentres on 2·centre
        let values = (0..n).map(|i| buf[(i + n / 2) % n].re * scale).collect();
        GridDensity {
            x0: 2.0 * self.x0 + 0.5 * n as f64 * self.dx,
            dx: self.dx,
            values,
            t: 2.0 * self.t,
        }
    }
}

pub(crate) fn check_size(n: usize) -> Result<(), OracleError> {
    if n < 2 || !n.is_power_of_two() {
        return Err(OracleError::GridSize(n));
    }
    Ok(())
}

/// (1/(n dx)) Σ_k e^{−i q_k u_j} spectrum(q_k) at u_j = −L + j dx, q_k = 2πk/(n dx),
/// k = −n/2..n/2, with dx = 2L/n: the periodized inverse transform.
pub(crate) fn invert_spectrum(n: usize, half_width: f64, spectrum: impl Fn(f64) -> Complex64) -> Vec<f64> {
    let dx = 2.0 * half_width / n as f64;
    let dq = 2.0 * PI / (n as f64 * dx);
    let half = n as i64 / 2;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for k in -half..half {
        // e^{i q_k L} = (−1)^k
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        buf[k.rem_euclid(n as i64) as usize] = sign * spectrum(k as f64 * dq);
    }
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let norm = 1.0 / (n as f64 * dx);
    buf.iter().map(|c| c.re * norm).collect()
}

/// f(·, t) on n points spanning [τt − L, τt + L) from the sampled
/// characteristic function e^{tψ}.
///
/// Fails when |e^{tψ}| at the Nyquist wavenumber π/dx exceeds
/// [`NYQUIST_GUARD`]; the error names a sufficient n for this L. The grid
/// is periodic with period 2L, so tail mass beyond ±L wraps around.
pub fn propagator_grid(params: &StableParams, t: f64, n: usize, half_width: f64) -> Result<GridDensity, OracleError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(ParamError::Time(t).into());
    }
    if !(half_width > 0.0 && half_width.is_finite()) {
        return Err(OracleError::Precondition("half-width must be positive"));
    }
    check_size(n)?;
    let centred = StableParams { drift: 0.0, ..*params };
    let dx = 2.0 * half_width / n as f64;
    let q_max = PI / dx;
    let magnitude = (t * char_exponent(&centred, q_max).re).exp();
    if magnitude >= NYQUIST_GUARD {
        // c t q^α = ln(1/guard) fixes the wavenumber needed
        let q_need = ((1.0 / NYQUIST_GUARD).ln() / (params.scale * t)).powf(1.0 / params.alpha());
        let suggested_n = ((2.0 * half_width * q_need / PI).ceil() as usize).next_power_of_two();
        return Err(OracleError::Aliasing {
            q_max,
            magnitude,
            suggested_n,
        });
    }
    let values = invert_spectrum(n, half_width, |q| (t * char_exponent(&centred, q)).exp());
    Ok(GridDensity {
        x0: params.drift * t - half_width,
        dx,
        values,
        t,
    })
}
