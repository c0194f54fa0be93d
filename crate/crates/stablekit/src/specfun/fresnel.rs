//! Fresnel integrals C(x) = ∫₀ˣ cos(πt²/2) dt and S(x) = ∫₀ˣ sin(πt²/2) dt.

use super::hyper::{hyper_pfq, HyperSpec};
use num_complex::Complex64;
use std::f64::consts::PI;

const SERIES_LIMIT: f64 = 8.0;

fn series(x: f64, cosine: bool) -> f64 {
    let w = Complex64::new(-PI * PI * x.powi(4) / 16.0, 0.0);
    let (a, b, pre) = if cosine {
        (0.25, vec![0.5, 1.25], x)
    } else {
        (0.75, vec![1.5, 1.75], PI * x.powi(3) / 6.0)
    };
    let spec = HyperSpec::new(vec![a], b, w).expect("valid Fresnel parameters");
    let r = hyper_pfq(&spec, 1e-17, 5000).expect("entire series");
    pre * r.value.re
}

/// Auxiliary functions f, g of the large-x expansion
/// C = 1/2 + f sin(πx²/2) − g cos(πx²/2), S = 1/2 − f cos(πx²/2) − g sin(πx²/2).
fn auxiliary(x: f64) -> (f64, f64) {
    let y = PI * x * x;
    let y2 = y * y;
    let mut f = 0.0;
    let mut g = 0.0;
    let mut tf = 1.0;
    let mut tg = 1.0;
    for k in 0..40 {
        f += tf;
        g += tg;
        let kf = k as f64;
        let nf = -(4.0 * kf + 1.0) * (4.0 * kf + 3.0) / y2;
        let ng = -(4.0 * kf + 3.0) * (4.0 * kf + 5.0) / y2;
        if (tf * nf).abs() > tf.abs() || (tf * nf).abs() < 1e-18 {
            break;
        }
        tf *= nf;
        tg *= ng;
    }
    (f / (PI * x), g / (PI * PI * x.powi(3)))
}

fn phase(x: f64) -> (f64, f64) {
    // πx²/2 reduced exactly through x² mod 4
    let x2 = x * x;
    let r = x2 - 4.0 * (x2 / 4.0).floor();
    (PI * r / 2.0).sin_cos()
}

pub fn fresnel_c(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= SERIES_LIMIT {
        series(ax, true)
    } else {
        let (f, g) = auxiliary(ax);
        let (s, c) = phase(ax);
        0.5 + f * s - g * c
    };
    v.copysign(x)
}

pub fn fresnel_s(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= SERIES_LIMIT {
        series(ax, false)
    } else {
        let (f, g) = auxiliary(ax);
        let (s, c) = phase(ax);
        0.5 - f * c - g * s
    };
    v.copysign(x)
}
