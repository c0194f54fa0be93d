//! Density evaluation f(x, t) = H(z)/(α z s) for S_α(β, c, τ), where
//! s = (ct)^{1/α}(1+γ²)^{1/(2α)} and z = |x − τt|/s.
//!
//! [`pdf`] dispatches among closed forms, the two power series of H, their
//! hypergeometric resummations and, where none of those reaches the
//! tolerance, the quadrature oracle.

mod closed;
mod hyper_forms;
mod series;
mod tables;

pub use closed::pdf_closed_form;
pub use hyper_forms::{h_hyper_large, h_hyper_large_symmetric, h_hyper_small};
pub use series::{h_series_large_z, h_series_small_z, large_z_threshold, SeriesIndex};
pub use tables::tabulated_h;

use crate::oracle::{self, OracleError};
use crate::params::{scaled_argument, ParamError, ScaledArg, StableParams};
use crate::specfun::{gamma, Precision, SeriesOptions, SeriesResult, SpecFunError};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Widest arithmetic `Auto` spends on a series before turning to quadrature.
pub const AUTO_SERIES_BITS: u32 = 512;

/// Evaluator requested from (or chosen by) [`pdf`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvalMethod {
    SeriesSmallZ,
    SeriesLargeZ,
    HyperSmall,
    HyperLarge,
    ClosedForm,
    Oracle,
    Auto,
}

impl EvalMethod {
    pub fn name(self) -> &'static str {
        match self {
            EvalMethod::SeriesSmallZ => "series-small",
            EvalMethod::SeriesLargeZ => "series-large",
            EvalMethod::HyperSmall => "hyper-small",
            EvalMethod::HyperLarge => "hyper-large",
            EvalMethod::ClosedForm => "closed",
            EvalMethod::Oracle => "oracle",
            EvalMethod::Auto => "auto",
        }
    }
}

impl fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EvalMethod {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            EvalMethod::SeriesSmallZ,
            EvalMethod::SeriesLargeZ,
            EvalMethod::HyperSmall,
            EvalMethod::HyperLarge,
            EvalMethod::ClosedForm,
            EvalMethod::Oracle,
            EvalMethod::Auto,
        ]
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| EngineError::UnknownMethod(s.to_string()))
    }
}

/// A density value in 1/[L] with the bound on its absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Density {
    pub value: f64,
    pub abs_error_bound: f64,
    pub method_used: EvalMethod,
}

impl Density {
    /// Rescales a density of a dimensionless variable to x units.
    fn per_length(self, length: f64) -> Self {
        Self {
            value: self.value / length,
            abs_error_bound: self.abs_error_bound / length,
            ..self
        }
    }

    /// Replaces a negative value by 0, keeping it inside the bound.
    fn clamped(self) -> Self {
        if self.value >= 0.0 {
            return self;
        }
        Self {
            value: 0.0,
            abs_error_bound: self.abs_error_bound.max(-self.value),
            ..self
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("argument {0} outside the evaluator's domain")]
    Argument(f64),
    #[error("phase δ = {0} outside [0, 2]")]
    Phase(f64),
    #[error("{what} diverges for α = {alpha}")]
    Divergent { what: &'static str, alpha: f64 },
    #[error("method {method} does not apply: {reason}")]
    Unavailable { method: EvalMethod, reason: &'static str },
    #[error("method {method} reached {achieved:e}, requested {requested:e}")]
    Tolerance {
        method: EvalMethod,
        achieved: f64,
        requested: f64,
    },
    #[error("unknown method '{0}'")]
    UnknownMethod(String),
}

/// f(x, t) for the law `params` with absolute tolerance `tol`.
///
/// `Auto` tries a closed form, then the series that converges at z (about 0
/// for α > 1, about ∞ for α < 1), then the two quadrature routes. α = 1 with
/// β ≠ 0 has no series and is only served by `Oracle` and `Auto`.
pub fn pdf(params: &StableParams, x: f64, t: f64, method: EvalMethod, tol: f64) -> Result<Density, EngineError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(EngineError::Tolerance {
            method,
            achieved: f64::NAN,
            requested: tol,
        });
    }
    if !x.is_finite() {
        return Err(EngineError::Argument(x));
    }
    if method == EvalMethod::Oracle {
        return Ok(oracle::pdf_quadrature(params, x, t, tol)?);
    }
    if params.index.is_one() && params.skewness != 0.0 {
        if method == EvalMethod::Auto {
            return quadrature(params, x, t, tol);
        }
        return Err(EngineError::Unavailable {
            method,
            reason: "α = 1 with β ≠ 0 has no series; use the oracle",
        });
    }
    let arg = scaled_argument(params, x, t)?;
    let d = match method {
        EvalMethod::Auto => auto(params, x, t, &arg, tol)?,
        EvalMethod::ClosedForm => closed(params, &arg, tol, Precision::Auto)?.ok_or(EngineError::Unavailable {
            method,
            reason: "no closed form for this (α, β)",
        })?,
        _ => from_series(params, &arg, method, tol, Precision::Auto)?,
    };
    Ok(d.clamped())
}

fn closed(params: &StableParams, arg: &ScaledArg, tol: f64, precision: Precision) -> Result<Option<Density>, EngineError> {
    let s = arg.length_scale;
    match closed::closed_form_with(params, arg.z, arg.side, tol * s, precision) {
        None => Ok(None),
        Some(d) => Ok(Some(d?.per_length(s))),
    }
}

fn auto(params: &StableParams, x: f64, t: f64, arg: &ScaledArg, tol: f64) -> Result<Density, EngineError> {
    let budget = Precision::AutoUpTo(AUTO_SERIES_BITS);
    if let Some(d) = closed(params, arg, tol, budget)? {
        if d.abs_error_bound <= tol {
            return Ok(d);
        }
    }
    let idx = params.index;
    let candidate = if idx.below_one() {
        (arg.z > 0.0).then_some(EvalMethod::SeriesLargeZ)
    } else {
        Some(EvalMethod::SeriesSmallZ)
    };
    if let Some(m) = candidate {
        match from_series(params, arg, m, tol, budget) {
            Ok(d) if d.abs_error_bound <= tol => return Ok(d),
            Ok(_) | Err(EngineError::Tolerance { .. }) | Err(EngineError::Divergent { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    quadrature(params, x, t, tol)
}

/// Fourier inversion near the centre, the Zolotarev integral in the tails
/// (where inversion slows down), each falling back to the other.
fn quadrature(params: &StableParams, x: f64, t: f64, tol: f64) -> Result<Density, EngineError> {
    let z = (x - params.drift * t).abs() / (params.scale * t).powf(1.0 / params.alpha());
    let (first, second): (Oracle, Oracle) = if z < 1.0 {
        (oracle::pdf_quadrature, oracle::pdf_zolotarev)
    } else {
        (oracle::pdf_zolotarev, oracle::pdf_quadrature)
    };
    match first(params, x, t, tol) {
        Ok(d) => Ok(d),
        Err(_) => Ok(second(params, x, t, tol)?),
    }
}

type Oracle = fn(&StableParams, f64, f64, f64) -> Result<Density, OracleError>;

/// f from one of the four H evaluators.
fn from_series(
    params: &StableParams,
    arg: &ScaledArg,
    method: EvalMethod,
    tol: f64,
    precision: Precision,
) -> Result<Density, EngineError> {
    let idx = params.index;
    let a = idx.value();
    let (z, s, delta) = (arg.z, arg.length_scale, arg.side_phase());
    let small = matches!(method, EvalMethod::SeriesSmallZ | EvalMethod::HyperSmall);
    if z == 0.0 && small {
        return origin_limit(a, delta, s, method);
    }
    let to_h = a * z * s;
    let opts = SeriesOptions {
        precision,
        ..SeriesOptions::new(tol * to_h)
    };
    let h = match method {
        EvalMethod::SeriesSmallZ => h_series_small_z(idx, delta, z, &opts)?,
        EvalMethod::SeriesLargeZ => h_series_large_z(idx, delta, z, &opts)?,
        EvalMethod::HyperSmall => h_hyper_small(idx, delta, z, &opts)?,
        EvalMethod::HyperLarge => h_hyper_large(idx, delta, z, &opts)?,
        _ => unreachable!("dispatched above"),
    };
    density_from_h(h, to_h, method, tol)
}

fn density_from_h(h: SeriesResult, to_h: f64, method: EvalMethod, tol: f64) -> Result<Density, EngineError> {
    let achieved = h.abs_error_bound / to_h;
    if !h.converged || !(achieved <= tol) {
        return Err(EngineError::Tolerance {
            method,
            achieved,
            requested: tol,
        });
    }
    Ok(Density {
        value: h.value.re / to_h,
        abs_error_bound: achieved,
        method_used: method,
    })
}

/// f(τt, t) = Γ(1 + 1/α) sin(πδ/2)/(π s), the first coefficient of the
/// expansion about z = 0 divided by α; valid for α ≥ 1.
fn origin_limit(a: f64, delta: f64, s: f64, method: EvalMethod) -> Result<Density, EngineError> {
    if a < 1.0 {
        return Err(EngineError::Argument(0.0));
    }
    let value = gamma(1.0 + 1.0 / a)? * (PI * delta / 2.0).sin() / (PI * s);
    Ok(Density {
        value,
        abs_error_bound: 8.0 * f64::EPSILON * value.abs(),
        method_used: method,
    })
}
