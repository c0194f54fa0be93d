//! Characteristic exponent and direct Fourier inversion of e^{tψ}.
//!
//! After the substitution q = s/(ct)^{1/α} (q = s/(ct) at α = 1) the density is
//! (1/(πa)) ∫₀^∞ e^{−s^α} cos φ(s) ds with a = (ct)^{1/α} and
//!
//! | index  | φ(s)                       | argument v                       |
//! |--------|----------------------------|----------------------------------|
//! | α ≠ 1  | s v − γ s^α                | (x − τt)/a                       |
//! | α = 1  | s v + (2/π)β s ln s        | (x − τt)/(ct) − (2/π)β ln(ct)    |
//!
//! The range is cut where the envelope tail drops below the tolerance. Near
//! s = 0 panels are graded geometrically (the integrand is only Hölder there
//! for α < 1 and at α = 1); elsewhere each panel spans at most half an
//! oscillation. For α < 1 the envelope decays so slowly that the far range is
//! split at the zeros of cos φ and the alternating panel series is summed by
//! Euler averaging.

use super::quadrature::{adaptive, euler_sum, panel};
use super::OracleError;
use crate::params::{ParamError, StableParams};
use crate::pdf_engine::{Density, EvalMethod};
use num_complex::Complex64;
use std::f64::consts::{FRAC_2_PI, PI};

/// ψ(q) = iτq − c|q|^α(1 − iβ sgn(q) tan(πα/2)), with the logarithmic form
/// at α = 1 and −cq² at α = 2.
pub fn char_exponent(params: &StableParams, q: f64) -> Complex64 {
    if q == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let idx = params.index;
    let (c, beta) = (params.scale, params.skewness);
    let m = q.abs();
    let body = if idx.is_two() {
        Complex64::new(-c * q * q, 0.0)
    } else if idx.is_one() {
        -c * m * Complex64::new(1.0, beta * FRAC_2_PI * q.signum() * m.ln())
    } else {
        let a = idx.value();
        -c * m.powf(a) * Complex64::new(1.0, -beta * q.signum() * (PI * a / 2.0).tan())
    };
    body + Complex64::new(0.0, params.drift * q)
}

/// f(x, t) by quadrature of the inversion integral, to absolute error `tol`.
pub fn pdf_quadrature(params: &StableParams, x: f64, t: f64, tol: f64) -> Result<Density, OracleError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(ParamError::Time(t).into());
    }
    if !(tol > 0.0) || !x.is_finite() {
        return Err(OracleError::Precondition("finite x and positive tolerance"));
    }
    let (inv, length) = Inversion::new(params, x, t);
    let norm = PI * length;
    let (value, err) = inv.integrate(tol * norm)?;
    let (value, bound) = (value / norm, err / norm);
    if !(bound <= tol) {
        return Err(OracleError::Tolerance {
            achieved: bound,
            requested: tol,
        });
    }
    Ok(Density {
        value: value.max(0.0),
        abs_error_bound: bound.max(-value),
        method_used: EvalMethod::Oracle,
    })
}

#[derive(Clone, Copy, Debug)]
enum Phase {
    /// −γ s^α
    Power { gamma: f64 },
    /// (2/π) β s ln s
    Log { beta: f64 },
}

/// The standardized integral with a nonnegative argument `v` (x < τt is
/// reflected onto x > τt with β → −β).
#[derive(Clone, Copy, Debug)]
struct Inversion {
    alpha: f64,
    v: f64,
    phase: Phase,
}

impl Inversion {
    fn new(params: &StableParams, x: f64, t: f64) -> (Self, f64) {
        let idx = params.index;
        let u = x - params.drift * t;
        let ct = params.scale * t;
        let (alpha, mut v, mut phase, length) = if idx.is_one() {
            let beta = params.skewness;
            (1.0, u / ct - FRAC_2_PI * beta * ct.ln(), Phase::Log { beta }, ct)
        } else {
            let a = idx.value();
            let gamma = if idx.is_two() {
                0.0
            } else {
                params.skewness * (PI * a / 2.0).tan()
            };
            let length = ct.powf(1.0 / a);
            (a, u / length, Phase::Power { gamma }, length)
        };
        if v < 0.0 {
            v = -v;
            phase = match phase {
                Phase::Power { gamma } => Phase::Power { gamma: -gamma },
                Phase::Log { beta } => Phase::Log { beta: -beta },
            };
        }
        (Self { alpha, v, phase }, length)
    }

    fn phi(&self, s: f64) -> f64 {
        match self.phase {
            Phase::Power { gamma } => s * self.v - gamma * s.powf(self.alpha),
            Phase::Log { beta } if s > 0.0 => s * self.v + FRAC_2_PI * beta * s * s.ln(),
            Phase::Log { .. } => 0.0,
        }
    }

    /// |φ'(s)|; φ' is monotone in s, so its extremes on an interval sit at
    /// the endpoints.
    fn slope(&self, s: f64) -> f64 {
        let d = match self.phase {
            Phase::Power { gamma } => self.v - gamma * self.alpha * s.powf(self.alpha - 1.0),
            Phase::Log { beta } => self.v + FRAC_2_PI * beta * (s.max(f64::MIN_POSITIVE).ln() + 1.0),
        };
        d.abs()
    }

    fn integrand(&self, s: f64) -> f64 {
        (-s.powf(self.alpha)).exp() * self.phi(s).cos()
    }

    fn integrate(&self, tol: f64) -> Result<(f64, f64), OracleError> {
        let a = self.alpha;
        let v_cut = envelope_cutoff(a, 0.05 * tol);
        let s_max = v_cut.powf(1.0 / a);
        if a >= 1.0 {
            let (head, err) = graded(&|s| self.integrand(s), &|s| self.slope(s), s_max, 0.9 * tol)?;
            return Ok((head, err + 0.05 * tol));
        }
        if self.v == 0.0 {
            return self.at_center(v_cut, tol);
        }
        // beyond s_a the phase grows at least at rate v/2
        let mut s_a = PI / self.v;
        if let Phase::Power { gamma } = self.phase {
            if gamma > 0.0 {
                s_a = s_a.max((2.0 * gamma * a / self.v).powf(1.0 / (1.0 - a)));
            }
        }
        let s_a = s_a.min(s_max);
        let (head, head_err) = graded(&|s| self.integrand(s), &|s| self.slope(s), s_a, 0.3 * tol)?;
        if s_a >= s_max {
            return Ok((head, head_err + 0.05 * tol));
        }
        let (rest, rest_err) = self.alternating(s_a, s_max, 0.6 * tol)?;
        Ok((head + rest, head_err + rest_err + 0.05 * tol))
    }

    /// v = 0 and α < 1: ∫ e^{−s^α} cos(γ s^α) ds = (1/α)∫ w^{1/α−1} e^{−w} cos(γw) dw.
    fn at_center(&self, w_cut: f64, tol: f64) -> Result<(f64, f64), OracleError> {
        let a = self.alpha;
        let gamma = match self.phase {
            Phase::Power { gamma } => gamma,
            Phase::Log { .. } => unreachable!("α < 1"),
        };
        let f = |w: f64| w.powf(1.0 / a - 1.0) * (-w).exp() * (gamma * w).cos() / a;
        let (value, err) = graded(&f, &|_| gamma.abs(), w_cut, 0.9 * a * tol)?;
        Ok((value, err + 0.05 * tol))
    }

    /// ∫_{s_a}^∞ over zero-to-zero panels of cos φ, Euler-summed.
    fn alternating(&self, s_a: f64, s_max: f64, tol: f64) -> Result<(f64, f64), OracleError> {
        let f = |s: f64| self.integrand(s);
        let step = 2.0 * PI / self.v;
        let mut k = (self.phi(s_a) / PI - 0.5).floor() + 1.0;
        let mut lo = self.zero(s_a, step, k);
        let (lead, mut err) = adaptive_piece(&f, s_a, lo, 0.1 * tol, (k + 0.5) * PI)?;
        let panel_tol = 1e-3 * tol;
        let mut panels = Vec::new();
        let mut last: Option<f64> = None;
        while panels.len() < MAX_PANELS {
            k += 1.0;
            let hi = self.zero(lo, step, k);
            let (p, e) = adaptive_piece(&f, lo, hi, panel_tol, (k + 0.5) * PI)?;
            panels.push(p);
            err += e;
            lo = hi;
            if hi >= s_max {
                // the envelope beyond s_max is below the tail budget
                return Ok((lead + panels.iter().sum::<f64>(), err));
            }
            if panels.len() >= 16 && panels.len() % 8 == 0 {
                let (sum, level_err) = euler_sum(&panels);
                if let Some(prev) = last {
                    let change = (sum - prev).abs();
                    if change + level_err <= 0.5 * tol {
                        return Ok((lead + sum, err + change + level_err));
                    }
                }
                last = Some(sum);
            }
        }
        Err(OracleError::Tolerance {
            achieved: f64::INFINITY,
            requested: tol,
        })
    }

    /// The s ≥ `lo` with φ(s) = (k + 1/2)π; φ rises by at least π per `step`.
    fn zero(&self, lo: f64, step: f64, k: f64) -> f64 {
        let target = (k + 0.5) * PI;
        let mut a = lo;
        let mut b = lo + step;
        while self.phi(b) < target {
            a = b;
            b += step;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if self.phi(m) < target {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }
}

const MAX_PANELS: usize = 20_000;

/// w at which ∫_{w^{1/α}}^∞ e^{−s^α} ds falls below `eps`.
fn envelope_cutoff(alpha: f64, eps: f64) -> f64 {
    // tail = (1/α) Γ(1/α, w) ≤ (2/α) w^{1/α−1} e^{−w} once w > 2(1/α − 1)
    let k = 1.0 / alpha - 1.0;
    let mut w = (1.0 / eps).ln().max(1.0);
    for _ in 0..50 {
        w = (2.0 / (alpha * eps)).ln() + k.max(0.0) * w.ln();
    }
    w.max(2.0 * k).max(1.0)
}

/// ∫₀^hi with geometric grading toward 0 and panels no wider than half an
/// oscillation. `slope` bounds |φ'| at a point and is monotone.
pub(super) fn graded(f: &impl Fn(f64) -> f64, slope: &impl Fn(f64) -> f64, hi: f64, tol: f64) -> Result<(f64, f64), OracleError> {
    let mut pieces = Vec::new();
    let mut b = hi;
    let floor = hi * 1e-30;
    while b > floor {
        let a = 0.5 * b;
        let turns = (slope(a).max(slope(b)) * (b - a) / PI).ceil().max(1.0) as usize;
        let h = (b - a) / turns as f64;
        for j in 0..turns {
            pieces.push((a + j as f64 * h, a + (j + 1) as f64 * h));
        }
        b = a;
    }
    // [0, floor]: the integrand is bounded, a single panel is plenty
    let mut value = panel(f, 0.0, b);
    let mut err = b * f(0.5 * b).abs();
    let share = tol / pieces.len() as f64;
    for (a, b) in pieces {
        let (v, e) = adaptive_piece(f, a, b, share, slope(b) * b)?;
        value += v;
        err += e;
    }
    Ok((value, err))
}

/// Adaptive quadrature whose request never asks for less than rounding
/// allows on the piece; `phase` is the largest |φ| there, whose rounding
/// dominates the noise in cos φ.
fn adaptive_piece(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, phase: f64) -> Result<(f64, f64), OracleError> {
    let mag = panel(&|s| f(s).abs(), a, b);
    let tol = tol.max(16.0 * f64::EPSILON * mag * (1.0 + phase));
    adaptive(f, a, b, tol, 40).ok_or(OracleError::Tolerance {
        achieved: f64::INFINITY,
        requested: tol,
    })
}
