//! Independent ground truth: the characteristic exponent, its inversion by
//! two unrelated quadratures, spectral grids, and numerical checks of the
//! Fourier identities behind the fractional generator.

mod fourier;
mod grid;
mod identities;
pub mod quadrature;
mod zolotarev;

pub use fourier::{char_exponent, pdf_quadrature};
pub use grid::{propagator_grid, GridDensity, NYQUIST_GUARD};
pub(crate) use grid::{check_size, invert_spectrum};
pub use identities::{self_similarity_check, verify_ft_abs_power, weyl_combination, weyl_symbol, SimilarityReport, WeylSide, REGULATORS};
pub use zolotarev::pdf_zolotarev;

use crate::params::ParamError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("quadrature reached {achieved:e}, requested {requested:e}")]
    Tolerance { achieved: f64, requested: f64 },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("grid size {0} must be a power of two, at least 2")]
    GridSize(usize),
    #[error("spectrum is {magnitude:e} at the Nyquist wavenumber {q_max}; use n >= {suggested_n} for this half-width")]
    Aliasing {
        q_max: f64,
        magnitude: f64,
        suggested_n: usize,
    },
    #[error("extrapolation in the regulator did not settle (last change {0:e})")]
    Extrapolation(f64),
}
