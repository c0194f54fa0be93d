use super::gamma::log_gamma;
use super::hyper::{hyper_pfq, HyperSpec};
use super::SpecFunError;
use num_complex::Complex64;

/// Modified Bessel function I_ν(x) = (x/2)^ν / Γ(ν+1) · ₀F₁(ν+1; x²/4).
pub fn bessel_i(nu: f64, x: f64) -> Result<f64, SpecFunError> {
    if nu <= -1.0 {
        return Err(SpecFunError::Domain {
            what: "bessel_i order",
            value: nu,
        });
    }
    if !(x >= 0.0) {
        return Err(SpecFunError::Domain {
            what: "bessel_i argument",
            value: x,
        });
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    let spec = HyperSpec::new(vec![], vec![nu + 1.0], Complex64::new(x * x / 4.0, 0.0))?;
    // positive terms: scale the tolerance with the size of the sum (~e^x)
    let series = hyper_pfq(&spec, 1e-16 * x.exp(), 10_000)?;
    let pre = (nu * (x / 2.0).ln() - log_gamma(nu + 1.0)?).exp();
    Ok(pre * series.value.re)
}
