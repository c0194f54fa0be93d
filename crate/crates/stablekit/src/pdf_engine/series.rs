//! Power series of H(z) about z = 0 (index above one) and about z = ∞
//! (index below one).
//!
//! Both expansions share the term shape (α/π)(−1)^{n+1} c_n sin(nπθ) xⁿ:
//!
//! | expansion | c_n               | θ     | x       |
//! |-----------|-------------------|-------|---------|
//! | origin    | Γ(1+n/α)/n!       | δ/2   | z       |
//! | infinity  | Γ(1+nα)/n!        | αδ/2  | z^{−α}  |
//!
//! With α = p/q the coefficients obey a short exact recurrence within each
//! residue class, so no gamma function is evaluated past the first class.

use super::EngineError;
use crate::params::RationalIndex;
use crate::specfun::complex::Cx;
use crate::specfun::dd::DoubleDouble;
use crate::specfun::hyper::{in_tier, rounding_bound, scan_terms, CompensatedSum};
use crate::specfun::mp::Mp;
use crate::specfun::real::{gamma_ratio, scaled_dyadic_ratio, sin_cos_pi_ratio, Real};
use crate::specfun::{ln_gamma_fast, SeriesOptions, SeriesResult, Tier};
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

/// Stability index as accepted by the series evaluators.
///
/// Exact fractions use integer recurrences and any precision tier; a plain
/// real index is summed from log-gamma values in f64 or double-double only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeriesIndex {
    Rational(RationalIndex),
    Real(f64),
}

impl From<RationalIndex> for SeriesIndex {
    fn from(r: RationalIndex) -> Self {
        SeriesIndex::Rational(r)
    }
}

impl From<f64> for SeriesIndex {
    fn from(a: f64) -> Self {
        SeriesIndex::Real(a)
    }
}

impl SeriesIndex {
    pub fn value(self) -> f64 {
        match self {
            SeriesIndex::Rational(r) => r.value(),
            SeriesIndex::Real(a) => a,
        }
    }

    fn is_one(self) -> bool {
        match self {
            SeriesIndex::Rational(r) => r.is_one(),
            SeriesIndex::Real(a) => a == 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Expansion {
    Origin,
    Infinity,
}

/// H(z) from its convergent expansion about z = 0, for 1 < α ≤ 2
/// (α = 1 is accepted for z < 1).
///
/// `opts.tol` is an absolute tolerance on H.
pub fn h_series_small_z(
    alpha: impl Into<SeriesIndex>,
    delta: f64,
    z: f64,
    opts: &SeriesOptions,
) -> Result<SeriesResult, EngineError> {
    let index = alpha.into();
    let a = index.value();
    check_index(a)?;
    check_phase(delta)?;
    if !(z >= 0.0 && z.is_finite()) {
        return Err(EngineError::Argument(z));
    }
    if a < 1.0 && z > 0.0 {
        return Err(EngineError::Divergent {
            what: "expansion about z = 0",
            alpha: a,
        });
    }
    if index.is_one() && z >= 1.0 {
        return Err(EngineError::Divergent {
            what: "expansion about z = 0 at |z| ≥ 1",
            alpha: a,
        });
    }
    sum(index, Expansion::Origin, delta, z, opts)
}

/// H(z) from its convergent expansion about z = ∞, for 0 < α < 1.
///
/// The n = 1 term is the algebraic tail law H ~ (α/π)Γ(1+α) sin(παδ/2) z^{−α}.
pub fn h_series_large_z(
    alpha: impl Into<SeriesIndex>,
    delta: f64,
    z: f64,
    opts: &SeriesOptions,
) -> Result<SeriesResult, EngineError> {
    let index = alpha.into();
    let a = index.value();
    check_index(a)?;
    check_phase(delta)?;
    if !(z > 0.0 && z.is_finite()) {
        return Err(EngineError::Argument(z));
    }
    if a >= 1.0 {
        return Err(EngineError::Divergent {
            what: "expansion about z = ∞",
            alpha: a,
        });
    }
    sum(index, Expansion::Infinity, delta, z, opts)
}

/// Smallest z (to about 1%) beyond which the expansion about ∞ meets `opts`
/// within the term cap and precision budget, for 0 < α < 1.
pub fn large_z_threshold(index: RationalIndex, delta: f64, opts: &SeriesOptions) -> f64 {
    let fits = |z: f64| plan(SeriesIndex::Rational(index), Expansion::Infinity, delta, z, opts).is_some();
    let mut hi = 1.0;
    while !fits(hi) {
        hi *= 2.0;
        if hi > 1e12 {
            return f64::INFINITY;
        }
    }
    let mut lo = hi / 2.0;
    if fits(lo) {
        // walk down until the expansion stops fitting
        while lo > 1e-6 && fits(lo) {
            lo /= 2.0;
        }
        if fits(lo) {
            return lo;
        }
        hi = lo * 2.0;
    }
    while hi / lo > 1.01 {
        let mid = (hi * lo).sqrt();
        if fits(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn check_index(a: f64) -> Result<(), EngineError> {
    if a > 0.0 && a <= 2.0 {
        Ok(())
    } else {
        Err(EngineError::Param(crate::params::ParamError::RealIndex(a)))
    }
}

fn check_phase(delta: f64) -> Result<(), EngineError> {
    if (0.0..=2.0).contains(&delta) {
        Ok(())
    } else {
        Err(EngineError::Phase(delta))
    }
}

/// ln of the envelope |c_n xⁿ| (without the α/π factor and the sine).
fn ln_envelope(kind: Expansion, a: f64, ln_z: f64, n: usize) -> f64 {
    let nf = n as f64;
    match kind {
        Expansion::Origin => ln_gamma_fast(1.0 + nf / a) - ln_gamma_fast(nf + 1.0) + nf * ln_z,
        Expansion::Infinity => ln_gamma_fast(1.0 + nf * a) - ln_gamma_fast(nf + 1.0) - nf * a * ln_z,
    }
}

struct Plan {
    last: usize,
    tail: f64,
    ln_peak: f64,
    tier: Tier,
}

fn plan(index: SeriesIndex, kind: Expansion, delta: f64, z: f64, opts: &SeriesOptions) -> Option<Plan> {
    let a = index.value();
    let ln_z = z.ln();
    let lead = (a / PI).ln();
    // δ = 0 makes every sine factor vanish
    if delta == 0.0 {
        return Some(Plan {
            last: 0,
            tail: 0.0,
            ln_peak: f64::NEG_INFINITY,
            tier: Tier::F64,
        });
    }
    let scan = scan_terms(lead + ln_envelope(kind, a, ln_z, 1), 0.5 * opts.tol, opts.max_terms, |i| {
        let n = i + 1;
        (ln_envelope(kind, a, ln_z, n + 1) - ln_envelope(kind, a, ln_z, n)).exp()
    });
    if !scan.converged {
        return None;
    }
    let log2_cancel = (scan.ln_peak - opts.tol.ln()) / LN_2;
    let tier = opts.precision.resolve(log2_cancel, scan.last + 1)?;
    if matches!(index, SeriesIndex::Real(_)) && matches!(tier, Tier::Multi(_)) {
        return None;
    }
    Some(Plan {
        last: scan.last + 1,
        tail: scan.tail_bound,
        ln_peak: scan.ln_peak,
        tier,
    })
}

fn sum(
    index: SeriesIndex,
    kind: Expansion,
    delta: f64,
    z: f64,
    opts: &SeriesOptions,
) -> Result<SeriesResult, EngineError> {
    if z == 0.0 {
        return Ok(exact_zero());
    }
    let Some(plan) = plan(index, kind, delta, z, opts) else {
        return Ok(SeriesResult::not_converged(opts.max_terms));
    };
    if plan.last == 0 {
        return Ok(exact_zero());
    }
    let h = match index {
        SeriesIndex::Rational(r) => in_tier(
            plan.tier,
            || rational_sum::<f64>(r, kind, delta, z, plan.last),
            || rational_sum::<DoubleDouble>(r, kind, delta, z, plan.last),
            || rational_sum::<Mp>(r, kind, delta, z, plan.last),
        ),
        SeriesIndex::Real(a) => match plan.tier {
            Tier::F64 => real_sum_f64(a, kind, delta, z, plan.last),
            _ => real_sum_dd(a, kind, delta, z, plan.last),
        },
    };
    let bound = plan.tail + rounding_bound(plan.ln_peak, plan.last, plan.tier);
    Ok(SeriesResult {
        value: Complex64::new(h, 0.0),
        abs_error_bound: bound,
        terms_used: plan.last,
        converged: bound <= opts.tol,
    })
}

fn exact_zero() -> SeriesResult {
    SeriesResult {
        value: Complex64::new(0.0, 0.0),
        abs_error_bound: 0.0,
        terms_used: 0,
        converged: true,
    }
}

/// sin(nπθ) for n = 1, 2, … with θ = num/den exact.
///
/// Angles that are always multiples of π/2 are produced exactly; otherwise
/// high precisions rotate by e^{iπθ} and resynchronise periodically, which
/// is far cheaper than a fresh multiprecision sine per term.
pub(crate) struct PhaseWalk<T> {
    num: i128,
    den: i128,
    n: i128,
    quarter_turns: bool,
    rotate: bool,
    step: Cx<T>,
    cur: Cx<T>,
}

const RESYNC: i128 = 64;

impl<T: Real> PhaseWalk<T> {
    pub fn new(num: i128, den: i128) -> Self {
        Self {
            num,
            den,
            n: 0,
            quarter_turns: (2 * num) % den == 0,
            rotate: T::unit_roundoff() < 1e-40,
            step: Cx::cis_pi(num, den),
            cur: Cx::real(T::one()),
        }
    }

    /// Advances to the next n and returns sin(nπθ); exact zeros are `None`.
    pub fn next_sin(&mut self) -> Option<T> {
        self.n += 1;
        if self.quarter_turns {
            let (s, _) = sin_cos_pi_ratio::<T>(self.n * self.num, self.den);
            return (!s.is_zero()).then_some(s);
        }
        if !self.rotate || self.n % RESYNC == 1 {
            self.cur = Cx::cis_pi(self.n * self.num, self.den);
        } else {
            self.cur = self.cur.clone() * self.step.clone();
        }
        Some(self.cur.im.clone())
    }
}

/// Exact fraction θ for the expansion's phase step.
fn phase_step(index: SeriesIndex, kind: Expansion, delta: f64) -> (i128, i128) {
    match (kind, index) {
        (Expansion::Origin, _) => scaled_dyadic_ratio(1, delta, 2),
        (Expansion::Infinity, SeriesIndex::Rational(r)) => {
            scaled_dyadic_ratio(r.numer() as i128, delta, 2 * r.denom() as i128)
        }
        (Expansion::Infinity, SeriesIndex::Real(a)) => scaled_dyadic_ratio(1, a * delta / 2.0, 1),
    }
}

/// Product of integers accumulated in i128 and flushed into `T` before
/// overflow, so a multiprecision product costs few full-width multiplies.
fn int_product<T: Real>(factors: impl Iterator<Item = i128>) -> T {
    const LIMIT: i128 = 1 << 62;
    let mut acc = T::one();
    let mut chunk: i128 = 1;
    for f in factors {
        if chunk.abs() >= LIMIT / f.abs().max(1) {
            acc = acc * T::from_i128(chunk);
            chunk = 1;
        }
        chunk *= f;
    }
    acc * T::from_i128(chunk)
}

/// Σ_{n=1}^{last} (−1)^{n+1} c_n sin(nπθ) xⁿ times α/π, for α = p/q.
///
/// With c_n = Γ(1 + n·u/v)/n! (u/v = 1/α at the origin, α at infinity), the
/// running term t_n = c_n xⁿ obeys t_{n+v} = t_n · xᵛ · Π_{i=1}^{u}(nu+iv) /
/// (vᵘ Π_{i=1}^{v}(n+i)).
fn rational_sum<T: Real>(r: RationalIndex, kind: Expansion, delta: f64, z: f64, last: usize) -> f64 {
    let (p, q) = (r.numer() as i128, r.denom() as i128);
    let (u, v) = match kind {
        Expansion::Origin => (q, p),
        Expansion::Infinity => (p, q),
    };
    let x = match kind {
        Expansion::Origin => T::from_f64(z),
        Expansion::Infinity => (-(T::ratio(p, q) * T::from_f64(z).ln())).exp(),
    };
    let x_step = x.powi(v as u32);
    let v_pow_u = int_product::<T>((0..u).map(|_| v));
    // seeds t_1..t_v
    let mut ring: Vec<T> = Vec::with_capacity(v as usize);
    let mut xn = T::one();
    let mut fact = T::one();
    for n in 1..=v {
        xn = xn * x.clone();
        fact = fact * T::from_i128(n);
        ring.push(gamma_ratio::<T>(v + n * u, v) / fact.clone() * xn.clone());
    }
    let (num, den) = phase_step(SeriesIndex::Rational(r), kind, delta);
    let mut phase = PhaseWalk::<T>::new(num, den);
    let mut acc = CompensatedSum::new();
    for n in 1..=last as i128 {
        let slot = ((n - 1) % v) as usize;
        if n > v {
            let m = n - v;
            let up = int_product::<T>((1..=u).map(|i| m * u + i * v));
            let down = int_product::<T>((1..=v).map(|i| m + i)) * v_pow_u.clone();
            ring[slot] = ring[slot].clone() * x_step.clone() * up / down;
        }
        if let Some(s) = phase.next_sin() {
            let t = ring[slot].clone() * s;
            acc.add(if n % 2 == 1 { t } else { -t });
        }
    }
    (acc.value() * T::ratio(p, q) / T::pi()).to_f64()
}

fn real_exponent(kind: Expansion, a: f64) -> f64 {
    match kind {
        Expansion::Origin => 1.0 / a,
        Expansion::Infinity => a,
    }
}

fn real_sum_f64(a: f64, kind: Expansion, delta: f64, z: f64, last: usize) -> f64 {
    let e = real_exponent(kind, a);
    let ln_x = match kind {
        Expansion::Origin => z.ln(),
        Expansion::Infinity => -a * z.ln(),
    };
    let (num, den) = phase_step(SeriesIndex::Real(a), kind, delta);
    let mut phase = PhaseWalk::<f64>::new(num, den);
    let mut acc = CompensatedSum::new();
    for n in 1..=last {
        let nf = n as f64;
        if let Some(s) = phase.next_sin() {
            let lc = DoubleDouble::from_f64(1.0 + nf * e).ln_gamma() - DoubleDouble::from_f64(nf + 1.0).ln_gamma();
            let t = (lc.to_f64() + nf * ln_x).exp() * s;
            acc.add(if n % 2 == 1 { t } else { -t });
        }
    }
    acc.value() * a / PI
}

fn real_sum_dd(a: f64, kind: Expansion, delta: f64, z: f64, last: usize) -> f64 {
    type D = DoubleDouble;
    let e = real_exponent(kind, a);
    let ln_x = match kind {
        Expansion::Origin => D::from_f64(z).ln(),
        Expansion::Infinity => -(D::from_f64(a) * D::from_f64(z).ln()),
    };
    let (num, den) = phase_step(SeriesIndex::Real(a), kind, delta);
    let mut phase = PhaseWalk::<D>::new(num, den);
    let mut acc = CompensatedSum::new();
    for n in 1..=last {
        if let Some(s) = phase.next_sin() {
            let nd = D::from_i128(n as i128);
            let arg = D::one() + nd * D::from_f64(e);
            let lc = arg.ln_gamma() - (nd + D::one()).ln_gamma();
            let t = (lc + nd * ln_x).exp() * s;
            acc.add(if n % 2 == 1 { t } else { -t });
        }
    }
    (acc.value() * D::from_f64(a) / D::pi()).to_f64()
}
