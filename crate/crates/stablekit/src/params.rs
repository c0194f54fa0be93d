//! Stable-law parameters, rational stability index, Farey enumeration and the
//! self-similar coordinate used by every series evaluator.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("stability index {p}/{q} is outside (0, 2]")]
    IndexOutOfRange { p: i64, q: i64 },
    #[error("cannot parse stability index {0:?}; expected p/q with positive integers, e.g. 3/2")]
    IndexSyntax(String),
    #[error("skewness {0} is outside [-1, 1]")]
    Skewness(f64),
    #[error("scale {0} must be positive and finite")]
    Scale(f64),
    #[error("drift {0} must be finite")]
    Drift(f64),
    #[error("time {0} must be positive and finite")]
    Time(f64),
    #[error("index 1 with nonzero skewness has no self-similar coordinate")]
    UnitIndexSkewed,
    #[error("Farey order must be at least 1, got {0}")]
    FareyOrder(u32),
    #[error("stability index {0} is outside (0, 2]")]
    RealIndex(f64),
}

/// Stability index α = p/q in lowest terms, 0 < α ≤ 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalIndex {
    p: u32,
    q: u32,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Reduces p/q to lowest terms, rejecting values outside (0, 2].
pub fn reduce_rational(p: i64, q: i64) -> Result<RationalIndex, ParamError> {
    if p < 1 || q < 1 || p > 2 * q || p > u32::MAX as i64 || q > u32::MAX as i64 {
        return Err(ParamError::IndexOutOfRange { p, q });
    }
    let g = gcd(p as u64, q as u64);
    Ok(RationalIndex {
        p: (p as u64 / g) as u32,
        q: (q as u64 / g) as u32,
    })
}

impl RationalIndex {
    pub fn new(p: i64, q: i64) -> Result<Self, ParamError> {
        reduce_rational(p, q)
    }

    pub fn numer(self) -> u32 {
        self.p
    }

    pub fn denom(self) -> u32 {
        self.q
    }

    pub fn value(self) -> f64 {
        self.p as f64 / self.q as f64
    }

    pub fn is_one(self) -> bool {
        self.p == self.q
    }

    pub fn is_two(self) -> bool {
        self.p == 2 && self.q == 1
    }

    /// α < 1 (subdiffusive).
    pub fn below_one(self) -> bool {
        self.p < self.q
    }

    /// α > 1 (superdiffusive).
    pub fn above_one(self) -> bool {
        self.p > self.q
    }
}

impl fmt::Display for RationalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RationalIndex {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParamError::IndexSyntax(s.to_string());
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        reduce_rational(p, q)
    }
}

/// Irreducible fractions p/q with 0 < p ≤ q ≤ n, ascending; ends with 1/1.
pub fn farey_series(n: u32) -> Result<Vec<RationalIndex>, ParamError> {
    if n < 1 {
        return Err(ParamError::FareyOrder(n));
    }
    // next-term recurrence of the Farey sequence starting after 0/1
    let n = n as u64;
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n);
    let mut out = Vec::new();
    while c <= n {
        out.push(RationalIndex {
            p: c as u32,
            q: d as u32,
        });
        if c == d {
            break;
        }
        let k = (n + b) / d;
        (a, b, c, d) = (c, d, k * c - a, k * d - b);
    }
    Ok(out)
}

/// Whether the centering constant b is allowed for index α.
pub fn admissible_region(alpha: f64, b: f64) -> Result<bool, ParamError> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(ParamError::RealIndex(alpha));
    }
    let limit = if alpha < 1.0 { alpha } else { 2.0 - alpha };
    Ok(b.abs() <= limit)
}

/// Parameters of the stable law: index, skewness β, scale c > 0 and drift τ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StableParams {
    pub index: RationalIndex,
    pub skewness: f64,
    pub scale: f64,
    pub drift: f64,
}

impl StableParams {
    pub fn new(index: RationalIndex, skewness: f64, scale: f64, drift: f64) -> Result<Self, ParamError> {
        if !(-1.0..=1.0).contains(&skewness) {
            return Err(ParamError::Skewness(skewness));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(ParamError::Scale(scale));
        }
        if !drift.is_finite() {
            return Err(ParamError::Drift(drift));
        }
        Ok(Self {
            index,
            skewness,
            scale,
            drift,
        })
    }

    /// Symmetric law with unit scale and no drift.
    pub fn symmetric(index: RationalIndex) -> Self {
        Self {
            index,
            skewness: 0.0,
            scale: 1.0,
            drift: 0.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.index.value()
    }

    /// γ = β tan(απ/2); zero at α = 2 and for symmetric laws.
    pub fn skew_tangent(&self) -> Result<f64, ParamError> {
        let idx = self.index;
        if idx.is_two() || self.skewness == 0.0 {
            return Ok(0.0);
        }
        if idx.is_one() {
            return Err(ParamError::UnitIndexSkewed);
        }
        Ok(self.skewness * (PI * idx.value() / 2.0).tan())
    }

    /// δ = 1 + (2/(απ)) arctan γ on the principal branch.
    pub fn phase(&self) -> Result<f64, ParamError> {
        let g = self.skew_tangent()?;
        if g == 0.0 {
            return Ok(1.0);
        }
        let idx = self.index;
        // β = ±1 with α < 1: arctan(±tan(απ/2)) = ±απ/2 exactly
        if idx.below_one() && self.skewness.abs() == 1.0 {
            return Ok(1.0 + self.skewness);
        }
        Ok(1.0 + 2.0 / (idx.value() * PI) * g.atan())
    }

    /// Length (ct)^{1/α}(1+γ²)^{1/(2α)} that makes z dimensionless.
    pub fn length_scale(&self, t: f64) -> Result<f64, ParamError> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(ParamError::Time(t));
        }
        let a = self.alpha();
        let g = self.skew_tangent()?;
        Ok((self.scale * t).powf(1.0 / a) * (1.0 + g * g).powf(0.5 / a))
    }
}

/// Which side of the drifted center x lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Right => 1.0,
            Side::Left => -1.0,
        }
    }
}

/// Self-similar coordinate z = |x − τt| / length_scale together with γ, δ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledArg {
    pub z: f64,
    pub side: Side,
    pub skew_tangent: f64,
    pub phase: f64,
    pub length_scale: f64,
}

impl ScaledArg {
    /// δ seen from the side of x: the left side uses 2 − δ (β → −β).
    pub fn side_phase(&self) -> f64 {
        match self.side {
            Side::Right => self.phase,
            Side::Left => 2.0 - self.phase,
        }
    }
}

pub fn scaled_argument(params: &StableParams, x: f64, t: f64) -> Result<ScaledArg, ParamError> {
    let length_scale = params.length_scale(t)?;
    let u = x - params.drift * t;
    Ok(ScaledArg {
        z: u.abs() / length_scale,
        side: if u < 0.0 { Side::Left } else { Side::Right },
        skew_tangent: params.skew_tangent()?,
        phase: params.phase()?,
        length_scale,
    })
}
