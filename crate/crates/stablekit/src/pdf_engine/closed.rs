//! Catalogue of (α, β) with elementary or short special-function densities.

use super::tables::{holtsmark, row_one_half, row_two_thirds};
use super::{Density, EngineError, EvalMethod};
use crate::params::{Side, StableParams};
use crate::specfun::{gamma, Precision, SeriesResult};
use std::f64::consts::PI;

/// Density of the scaled coordinate Z = (x − τt)/scale at |Z| = z on `side`,
/// when (α, β) is one of (2, any), (1, 0), (1/2, 0), (1/2, ±1), (3/2, 0),
/// (2/3, 0). Divide by the length scale for x units.
///
/// `tol` only steers the internal hypergeometric sums; the returned bound is
/// what was achieved.
pub fn pdf_closed_form(params: &StableParams, z: f64, side: Side, tol: f64) -> Option<Result<Density, EngineError>> {
    closed_form_with(params, z, side, tol, Precision::Auto)
}

/// [`pdf_closed_form`] with the arithmetic for its hypergeometric sums.
pub(crate) fn closed_form_with(
    params: &StableParams,
    z: f64,
    side: Side,
    tol: f64,
    precision: Precision,
) -> Option<Result<Density, EngineError>> {
    let idx = params.index;
    let beta = params.skewness;
    let kind = match (idx.numer(), idx.denom()) {
        (2, 1) => Kind::Gauss,
        (1, 1) if beta == 0.0 => Kind::Cauchy,
        (1, 2) if beta == 0.0 => Kind::Fresnel,
        (1, 2) if beta.abs() == 1.0 => Kind::Levy {
            // β = −1 puts the support on the left
            support: if beta > 0.0 { Side::Right } else { Side::Left },
        },
        (3, 2) if beta == 0.0 => Kind::Holtsmark,
        (2, 3) if beta == 0.0 => Kind::Bessel,
        _ => return None,
    };
    if !(z >= 0.0 && z.is_finite()) {
        return Some(Err(EngineError::Argument(z)));
    }
    Some(kind.eval(z, side, tol, precision))
}

#[derive(Clone, Copy)]
enum Kind {
    Gauss,
    Cauchy,
    Fresnel,
    Levy { support: Side },
    Holtsmark,
    Bessel,
}

fn exact(value: f64) -> Density {
    Density {
        value,
        abs_error_bound: 4.0 * f64::EPSILON * value.abs(),
        method_used: EvalMethod::ClosedForm,
    }
}

/// f_Z = H/(αz) from an H evaluation.
fn from_h(h: SeriesResult, alpha: f64, z: f64) -> Density {
    let d = alpha * z;
    Density {
        value: h.value.re / d,
        abs_error_bound: h.abs_error_bound / d + 2.0 * f64::EPSILON * (h.value.re / d).abs(),
        method_used: EvalMethod::ClosedForm,
    }
}

/// f_Z(0) = Γ(1 + 1/α)/π for a symmetric law.
fn symmetric_peak(alpha: f64) -> Result<Density, EngineError> {
    Ok(exact(gamma(1.0 + 1.0 / alpha)? / PI))
}

impl Kind {
    fn eval(self, z: f64, side: Side, tol: f64, precision: Precision) -> Result<Density, EngineError> {
        match self {
            Kind::Gauss => Ok(exact((-z * z / 4.0).exp() / (2.0 * PI.sqrt()))),
            Kind::Cauchy => Ok(exact(1.0 / (PI * (1.0 + z * z)))),
            Kind::Levy { support } => {
                if side != support || z == 0.0 {
                    return Ok(exact(0.0));
                }
                Ok(exact((-1.0 / (4.0 * z)).exp() / (2.0 * PI.sqrt() * z.powf(1.5))))
            }
            Kind::Fresnel if z == 0.0 => symmetric_peak(0.5),
            Kind::Fresnel => Ok(from_h(row_one_half(z, tol)?, 0.5, z)),
            Kind::Holtsmark if z == 0.0 => symmetric_peak(1.5),
            Kind::Holtsmark => Ok(from_h(holtsmark(z, tol, precision)?, 1.5, z)),
            Kind::Bessel if z == 0.0 => symmetric_peak(2.0 / 3.0),
            Kind::Bessel => Ok(from_h(row_two_thirds(z, tol)?, 2.0 / 3.0, z)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::reduce_rational;

    fn params(p: i64, q: i64, beta: f64) -> StableParams {
        StableParams::new(reduce_rational(p, q).unwrap(), beta, 1.0, 0.0).unwrap()
    }

    fn value(p: i64, q: i64, beta: f64, z: f64, side: Side) -> f64 {
        pdf_closed_form(&params(p, q, beta), z, side, 1e-14).unwrap().unwrap().value
    }

    #[test]
    fn catalogue_examples() {
        assert!((value(1, 1, 0.0, 0.0, Side::Right) - 1.0 / PI).abs() < 1e-16);
        assert!((value(2, 1, 0.3, 0.0, Side::Right) - 0.5 / PI.sqrt()).abs() < 1e-16);
        assert_eq!(value(1, 2, 1.0, 0.7, Side::Left), 0.0);
        assert_eq!(value(1, 2, -1.0, 0.7, Side::Right), 0.0);
        assert!(value(1, 2, -1.0, 0.7, Side::Left) > 0.0);
    }

    #[test]
    fn absent_entries() {
        assert!(pdf_closed_form(&params(3, 4, 0.0), 1.0, Side::Right, 1e-10).is_none());
        assert!(pdf_closed_form(&params(3, 2, 0.5), 1.0, Side::Right, 1e-10).is_none());
        assert!(pdf_closed_form(&params(1, 2, 0.5), 1.0, Side::Right, 1e-10).is_none());
    }

    #[test]
    fn peaks_are_continuous() {
        for (p, q) in [(1, 2), (3, 2)] {
            let at0 = value(p, q, 0.0, 0.0, Side::Right);
            let near = value(p, q, 0.0, 1e-3, Side::Right);
            assert!((at0 - near).abs() < 2e-3 * at0, "{p}/{q}: {at0} {near}");
        }
    }

    #[test]
    fn bessel_form_reports_its_cancellation() {
        // cosh(y)·I_ν(y) terms ~e^{2y} cancel down to O(1) as z → 0
        let d = pdf_closed_form(&params(2, 3, 0.0), 0.08, Side::Right, 1e-10).unwrap().unwrap();
        assert!(d.abs_error_bound > 1e-10);
        let d = pdf_closed_form(&params(2, 3, 0.0), 1.0, Side::Right, 1e-12).unwrap().unwrap();
        assert!(d.abs_error_bound < 1e-13);
    }

    #[test]
    fn bessel_bound_covers_the_error() {
        let p = params(2, 3, 0.0);
        for z in [0.04, 0.05, 0.06, 0.08, 0.1, 0.15] {
            let d = pdf_closed_form(&p, z, Side::Right, 1e-13).unwrap().unwrap();
            let f = crate::oracle::pdf_quadrature(&p, z, 1.0, 1e-14).unwrap().value;
            assert!((d.value - f).abs() <= d.abs_error_bound, "z={z}: {} vs {f} ± {}", d.value, d.abs_error_bound);
        }
    }
}
