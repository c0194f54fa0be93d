//! Special functions used by the density formulas: log-gamma, Pochhammer
//! symbols, generalized hypergeometric series, Fresnel integrals and the
//! modified Bessel function I_ν.
//!
//! Series are summed in f64, double-double or multiprecision arithmetic; the
//! tier is picked from a cheap scan of term magnitudes (see [`Precision`]).

mod bessel;
pub(crate) mod complex;
pub mod dd;
mod fresnel;
mod gamma;
pub(crate) mod hyper;
pub mod mp;
mod precision;
pub mod real;

pub use bessel::bessel_i;
pub use fresnel::{fresnel_c, fresnel_s};
pub use gamma::{gamma, log_gamma, pochhammer};
pub(crate) use gamma::ln_gamma_fast;
pub use hyper::{hyper_pfq, hyper_pfq_with, Convergence, HyperSpec, SeriesOptions, SeriesResult};
pub use precision::{Precision, Tier, EXTENDED_PRECISION_ENV, MAX_AUTO_BITS};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("{what} is undefined at {value}")]
    Domain { what: &'static str, value: f64 },
    #[error("denominator parameter {0} is a pole of the Pochhammer symbol")]
    DenominatorPole(f64),
    #[error("series has more numerator than denominator parameters plus one and diverges")]
    DivergentClass,
}
