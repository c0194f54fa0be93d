//! Finite sums of generalized hypergeometric functions equal to H(z) for a
//! rational index α = p/q.
//!
//! Gauss multiplication splits the expansion about z = 0 (α > 1) into p
//! residue classes and the expansion about z = ∞ (α < 1) into q classes; each
//! class is a pFq in zᵖ (resp. z^{−p}) with a unimodular phase. The pieces are
//! summed in complex arithmetic and the imaginary part of the total, which is
//! zero in exact arithmetic, is added to the error bound.

use super::EngineError;
use crate::params::RationalIndex;
use crate::specfun::complex::Cx;
use crate::specfun::dd::DoubleDouble;
use crate::specfun::hyper::{in_tier, pfq_parts, pfq_ratio, rounding_bound, scan_terms};
use crate::specfun::mp::Mp;
use crate::specfun::real::{gamma_ratio, scaled_dyadic_ratio, sin_cos_pi_ratio, Real};
use crate::specfun::{log_gamma, SeriesOptions, SeriesResult};
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

type Frac = (i128, i128);

fn frac_f64((n, d): Frac) -> f64 {
    n as f64 / d as f64
}

fn frac_t<T: Real>((n, d): Frac) -> T {
    T::ratio(n, d)
}

fn add_frac((a, b): Frac, (c, d): Frac) -> Frac {
    (a * d + c * b, b * d)
}

/// Removes numerator/denominator pairs with equal values; Γ(a)/Γ(b) and
/// (a)_n/(b)_n of such a pair are both one.
fn cancel_pairs(a: &mut Vec<Frac>, b: &mut Vec<Frac>) {
    let mut i = 0;
    while i < a.len() {
        let (x, y) = a[i];
        if let Some(j) = b.iter().position(|&(u, v)| x * v == u * y) {
            a.remove(i);
            b.remove(j);
        } else {
            i += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Form {
    /// Classes of the expansion about z = 0, α = p/q > 1.
    Origin,
    /// Classes of the expansion about z = ∞, α = p/q < 1.
    Infinity,
}

/// One residue class l: its pFq parameters (without the leading 1) and the
/// logarithm of its real weight |base|^l.
struct Class {
    l: i128,
    a: Vec<Frac>,
    b: Vec<Frac>,
}

impl Class {
    fn new(form: Form, p: i128, q: i128, l: i128) -> Self {
        let (mut a, mut b): (Vec<Frac>, Vec<Frac>) = match form {
            Form::Origin => (
                (1..q).map(|k| (l * q + k * p, p * q)).collect(),
                (1..p).map(|s| (l + s, p)).collect(),
            ),
            Form::Infinity => (
                (0..p).map(|k| (q * (k + 1) + l * p, p * q)).collect(),
                (0..q).map(|s| (l + s + 1, q)).collect(),
            ),
        };
        cancel_pairs(&mut a, &mut b);
        Self { l, a, b }
    }

    fn series_params_f64(&self) -> (Vec<f64>, Vec<f64>) {
        let mut a = vec![1.0];
        a.extend(self.a.iter().map(|&f| frac_f64(f)));
        (a, self.b.iter().map(|&f| frac_f64(f)).collect())
    }

    fn series_params<T: Real>(&self) -> (Vec<T>, Vec<T>) {
        let mut a = vec![T::one()];
        a.extend(self.a.iter().map(|&f| frac_t::<T>(f)));
        (a, self.b.iter().map(|&f| frac_t::<T>(f)).collect())
    }

    fn ln_gamma_ratio(&self) -> f64 {
        let lg = |f: Frac| log_gamma(frac_f64(f)).unwrap_or(f64::NAN);
        self.a.iter().map(|&f| lg(f)).sum::<f64>() - self.b.iter().map(|&f| lg(f)).sum::<f64>()
    }

    fn gamma_ratio<T: Real>(&self) -> T {
        let num = self.a.iter().fold(T::one(), |acc, &(n, d)| acc * gamma_ratio::<T>(n, d));
        let den = self.b.iter().fold(T::one(), |acc, &(n, d)| acc * gamma_ratio::<T>(n, d));
        num / den
    }
}

/// Logarithms, in `T`, of the class base and of |w|, plus the overall
/// constant K with H = −K Σ (…).
struct Scales<T> {
    ln_base: T,
    ln_w: T,
    k: T,
}

fn scales<T: Real>(form: Form, p: i128, q: i128, z: f64) -> Scales<T> {
    let (pt, qt) = (T::from_i128(p), T::from_i128(q));
    let (ln_p, ln_q, ln_z) = (pt.ln(), qt.ln(), T::from_f64(z).ln());
    let two_pi = T::pi() * T::from_i128(2);
    match form {
        Form::Origin => Scales {
            // (q^{q/p} z / p)^l,  |w| = q^q z^p / p^p
            ln_base: T::ratio(q, p) * ln_q.clone() + ln_z.clone() - ln_p.clone(),
            ln_w: qt * ln_q + pt * ln_z - T::from_i128(p) * ln_p,
            k: T::ratio(p, q).sqrt() * (T::ratio(p - q - 2, 2) * two_pi.ln()).exp(),
        },
        Form::Infinity => {
            // (p^p / (q^q z^p))^{l/q},  |w| = p^p / (q^q z^p)
            let ln_w = pt.clone() * ln_p - qt * ln_q - pt * ln_z;
            let r = T::ratio(p, q);
            Scales {
                ln_base: ln_w.clone() / T::from_i128(q),
                ln_w,
                k: r.clone() * r.sqrt() * (T::ratio(q - p - 2, 2) * two_pi.ln()).exp(),
            }
        }
    }
}

/// One pFq piece: phase of its argument and of its coefficient, both as
/// exact fractions of π, and the sign in front of it.
#[derive(Clone, Copy)]
struct Piece {
    class: usize,
    w_phase: Frac,
    coef_phase: Frac,
    sign: i8,
}

struct Assembly {
    form: Form,
    p: i128,
    q: i128,
    z: f64,
    classes: Vec<Class>,
    pieces: Vec<Piece>,
}

impl Assembly {
    fn new(form: Form, index: RationalIndex, delta: f64, z: f64) -> Self {
        let (p, q) = (index.numer() as i128, index.denom() as i128);
        let n_classes = match form {
            Form::Origin => p,
            Form::Infinity => q,
        };
        let classes: Vec<Class> = (0..n_classes).map(|l| Class::new(form, p, q, l)).collect();
        let mut pieces = Vec::with_capacity(2 * classes.len());
        for (i, c) in classes.iter().enumerate() {
            let l = c.l;
            // lδ/2 at the origin, lpδ/(2q) at infinity
            let half_shift = match form {
                Form::Origin => scaled_dyadic_ratio(l, delta, 2),
                Form::Infinity => scaled_dyadic_ratio(l * p, delta, 2 * q),
            };
            // argument phase p ± pδ/2 (origin) or q ± pδ/2 (infinity)
            let centre = match form {
                Form::Origin => (p, 1),
                Form::Infinity => (q, 1),
            };
            let pd = scaled_dyadic_ratio(p, delta, 2);
            let parity = if l % 2 == 0 { 1 } else { -1 };
            pieces.push(Piece {
                class: i,
                w_phase: add_frac(centre, pd),
                coef_phase: add_frac(half_shift, (-1, 2)),
                sign: parity,
            });
            pieces.push(Piece {
                class: i,
                w_phase: add_frac(centre, (-pd.0, pd.1)),
                coef_phase: add_frac((-half_shift.0, half_shift.1), (-1, 2)),
                sign: -parity,
            });
        }
        Self {
            form,
            p,
            q,
            z,
            classes,
            pieces,
        }
    }

    fn evaluate(&self, opts: &SeriesOptions) -> SeriesResult {
        let sc = scales::<f64>(self.form, self.p, self.q, self.z);
        let w_abs = sc.ln_w.exp();
        let share = 0.5 * opts.tol / self.pieces.len() as f64;
        let mut plans = Vec::with_capacity(self.classes.len());
        for c in &self.classes {
            let (a, b) = c.series_params_f64();
            let ln_t0 = sc.k.ln() + c.l as f64 * sc.ln_base + c.ln_gamma_ratio();
            let plan = scan_terms(ln_t0, share, opts.max_terms, |n| pfq_ratio(&a, &b, w_abs, n));
            if !plan.converged {
                return SeriesResult::not_converged(opts.max_terms);
            }
            plans.push(plan);
        }
        let ln_peak = plans.iter().map(|p| p.ln_peak).fold(f64::NEG_INFINITY, f64::max);
        let max_last = plans.iter().map(|p| p.last).max().unwrap_or(0);
        let log2_cancel = (ln_peak - opts.tol.ln()) / LN_2;
        let Some(tier) = opts.precision.resolve(log2_cancel, max_last + 1) else {
            return SeriesResult::not_converged(max_last + 1);
        };
        let lasts: Vec<usize> = plans.iter().map(|p| p.last).collect();
        let total = in_tier(
            tier,
            || self.sum::<f64>(&lasts),
            || self.sum::<DoubleDouble>(&lasts),
            || self.sum::<Mp>(&lasts),
        );
        let mut bound = total.im.abs();
        for plan in &plans {
            bound += 2.0 * (plan.tail_bound + rounding_bound(plan.ln_peak, plan.last + 1, tier));
        }
        let terms: usize = lasts.iter().map(|l| 2 * (l + 1)).sum();
        SeriesResult {
            value: Complex64::new(total.re, 0.0),
            abs_error_bound: bound,
            terms_used: terms,
            converged: bound <= opts.tol,
        }
    }

    fn sum<T: Real>(&self, lasts: &[usize]) -> Complex64 {
        let sc = scales::<T>(self.form, self.p, self.q, self.z);
        let w_abs = sc.ln_w.exp();
        let weights: Vec<T> = self
            .classes
            .iter()
            .map(|c| (T::from_i128(c.l) * sc.ln_base.clone()).exp() * c.gamma_ratio::<T>())
            .collect();
        let mut total = Cx::<T>::zero();
        for piece in &self.pieces {
            let class = &self.classes[piece.class];
            let (a, b) = class.series_params::<T>();
            let w = Cx::<T>::cis_pi(piece.w_phase.0, piece.w_phase.1).scale(&w_abs);
            let (even, odd) = pfq_parts(&a, &b, &w, lasts[piece.class]);
            let mut term = Cx::<T>::cis_pi(piece.coef_phase.0, piece.coef_phase.1) * (even + odd);
            term = term.scale(&weights[piece.class]);
            total = if piece.sign > 0 { total + term } else { total - term };
        }
        (-total).scale(&sc.k).to_c64()
    }
}

fn check_phase(delta: f64) -> Result<(), EngineError> {
    if (0.0..=2.0).contains(&delta) {
        Ok(())
    } else {
        Err(EngineError::Phase(delta))
    }
}

/// H(z) as p hypergeometric classes of the expansion about z = 0, for
/// α = p/q with 1 < α ≤ 2.
///
/// α = 1 is also accepted: the single class is the geometric series
/// ₁F₀(1;;w), evaluated as 1/(1 − w) for every z.
pub fn h_hyper_small(
    index: RationalIndex,
    delta: f64,
    z: f64,
    opts: &SeriesOptions,
) -> Result<SeriesResult, EngineError> {
    check_phase(delta)?;
    if !(z >= 0.0 && z.is_finite()) {
        return Err(EngineError::Argument(z));
    }
    if index.below_one() {
        return Err(EngineError::Divergent {
            what: "hypergeometric form about z = 0",
            alpha: index.value(),
        });
    }
    if z == 0.0 {
        return Ok(SeriesResult {
            value: Complex64::new(0.0, 0.0),
            abs_error_bound: 0.0,
            terms_used: 0,
            converged: true,
        });
    }
    if index.is_one() {
        return Ok(unit_index(delta, z, opts.tol));
    }
    Ok(Assembly::new(Form::Origin, index, delta, z).evaluate(opts))
}

/// H(z) as q hypergeometric classes of the expansion about z = ∞, for
/// α = p/q < 1.
pub fn h_hyper_large(
    index: RationalIndex,
    delta: f64,
    z: f64,
    opts: &SeriesOptions,
) -> Result<SeriesResult, EngineError> {
    check_phase(delta)?;
    if !(z > 0.0 && z.is_finite()) {
        return Err(EngineError::Argument(z));
    }
    if !index.below_one() {
        return Err(EngineError::Divergent {
            what: "hypergeometric form about z = ∞",
            alpha: index.value(),
        });
    }
    // p ≤ q − 1 numerator against q − 1 denominator parameters: entire
    debug_assert!(index.numer() < index.denom());
    Ok(Assembly::new(Form::Infinity, index, delta, z).evaluate(opts))
}

/// Symmetric (δ = 1) form of [`h_hyper_large`] in which every class is split
/// into its even and odd powers of one argument w = pᵖ e^{iπ(q+p/2)}/(q^q zᵖ).
///
/// The even part carries sin(πlp/2q); the odd part carries
/// e^{−iπp/2} sin(πp/2 + πlp/2q), which for odd p is sin(πp/2)cos(πlp/2q) and
/// for even p is cos(πp/2)sin(πlp/2q): the two factors trade places.
pub fn h_hyper_large_symmetric(index: RationalIndex, z: f64, opts: &SeriesOptions) -> Result<SeriesResult, EngineError> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(EngineError::Argument(z));
    }
    if !index.below_one() {
        return Err(EngineError::Divergent {
            what: "hypergeometric form about z = ∞",
            alpha: index.value(),
        });
    }
    let (p, q) = (index.numer() as i128, index.denom() as i128);
    let classes: Vec<Class> = (0..q).map(|l| Class::new(Form::Infinity, p, q, l)).collect();
    let sc = scales::<f64>(Form::Infinity, p, q, z);
    let w_abs = sc.ln_w.exp();
    let share = 0.5 * opts.tol / q as f64;
    let mut lasts = Vec::with_capacity(classes.len());
    let mut ln_peak = f64::NEG_INFINITY;
    let mut tails = 0.0;
    for c in &classes {
        let (a, b) = c.series_params_f64();
        let ln_t0 = (2.0 * sc.k).ln() + c.l as f64 * sc.ln_base + c.ln_gamma_ratio();
        let plan = scan_terms(ln_t0, share, opts.max_terms, |n| pfq_ratio(&a, &b, w_abs, n));
        if !plan.converged {
            return Ok(SeriesResult::not_converged(opts.max_terms));
        }
        ln_peak = ln_peak.max(plan.ln_peak);
        tails += plan.tail_bound;
        lasts.push(plan.last);
    }
    let max_last = lasts.iter().copied().max().unwrap_or(0);
    let log2_cancel = (ln_peak - opts.tol.ln()) / LN_2;
    let Some(tier) = opts.precision.resolve(log2_cancel, max_last + 1) else {
        return Ok(SeriesResult::not_converged(max_last + 1));
    };
    let total = in_tier(
        tier,
        || symmetric_sum::<f64>(&classes, p, q, z, &lasts),
        || symmetric_sum::<DoubleDouble>(&classes, p, q, z, &lasts),
        || symmetric_sum::<Mp>(&classes, p, q, z, &lasts),
    );
    let bound = total.im.abs() + tails + q as f64 * rounding_bound(ln_peak, max_last + 1, tier);
    Ok(SeriesResult {
        value: Complex64::new(total.re, 0.0),
        abs_error_bound: bound,
        terms_used: lasts.iter().map(|l| l + 1).sum(),
        converged: bound <= opts.tol,
    })
}

fn symmetric_sum<T: Real>(classes: &[Class], p: i128, q: i128, z: f64, lasts: &[usize]) -> Complex64 {
    let sc = scales::<T>(Form::Infinity, p, q, z);
    let w = Cx::<T>::cis_pi(2 * q + p, 2).scale(&sc.ln_w.exp());
    let odd_rotation = Cx::<T>::cis_pi(-p, 2);
    let mut total = Cx::<T>::zero();
    for (c, &last) in classes.iter().zip(lasts) {
        let (a, b) = c.series_params::<T>();
        let (even, odd) = pfq_parts(&a, &b, &w, last);
        let (s_even, _) = sin_cos_pi_ratio::<T>(c.l * p, 2 * q);
        let (s_odd, _) = sin_cos_pi_ratio::<T>(p * q + c.l * p, 2 * q);
        let term = even.scale(&s_even) + (odd_rotation.clone() * odd).scale(&s_odd);
        let weight = (T::from_i128(c.l) * sc.ln_base.clone()).exp() * c.gamma_ratio::<T>();
        let term = term.scale(&weight);
        total = if c.l % 2 == 0 { total + term } else { total - term };
    }
    // −(α^{3/2}/π)(2π)^{(q−p)/2} = −2K
    (-total).scale(&(sc.k * T::from_i128(2))).to_c64()
}

/// α = 1: H = −(1/2π)[e^{−iπ/2}F(w₊) − e^{−iπ/2}F(w₋)] with F(w) = 1/(1 − w),
/// w± = z e^{iπ(1 ± δ/2)}.
fn unit_index(delta: f64, z: f64, tol: f64) -> SeriesResult {
    let f = |sign: f64| {
        let w = Complex64::from_polar(z, PI * (1.0 + sign * delta / 2.0));
        Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - w)
    };
    let (fp, fm) = (f(1.0), f(-1.0));
    let rot = Complex64::new(0.0, -1.0);
    let total = -(rot * fp - rot * fm) / (2.0 * PI);
    let bound = total.im.abs() + 8.0 * f64::EPSILON * (fp.norm() + fm.norm()) / (2.0 * PI);
    SeriesResult {
        value: Complex64::new(total.re, 0.0),
        abs_error_bound: bound,
        terms_used: 2,
        converged: bound.is_finite() && bound <= tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::reduce_rational;
    use crate::pdf_engine::series::{h_series_large_z, h_series_small_z};

    fn idx(p: i64, q: i64) -> RationalIndex {
        reduce_rational(p, q).unwrap()
    }

    fn opts(tol: f64) -> SeriesOptions {
        SeriesOptions::new(tol)
    }

    #[test]
    fn gaussian_classes() {
        for z in [0.3, 1.3, 3.0] {
            let r = h_hyper_small(idx(2, 1), 1.0, z, &opts(1e-13)).unwrap();
            let exact = z * (-z * z / 4.0).exp() / PI.sqrt();
            assert!(r.converged, "{r:?}");
            assert!((r.value.re - exact).abs() < 1e-13, "z={z}");
        }
    }

    #[test]
    fn cauchy_everywhere() {
        for z in [0.1, 0.99, 1.0, 3.0, 10.0] {
            let r = h_hyper_small(idx(1, 1), 1.0, z, &opts(1e-14)).unwrap();
            assert!((r.value.re - z / (PI * (1.0 + z * z))).abs() < 1e-15, "z={z}");
            assert!(r.converged);
        }
    }

    #[test]
    fn origin_classes_match_series() {
        for (p, q, d, z) in [(3, 2, 1.0, 0.8), (4, 3, 1.0, 0.5), (4, 3, 0.7, 1.2), (6, 5, 1.3, 0.9), (7, 4, 0.5, 2.5)] {
            let a = h_hyper_small(idx(p, q), d, z, &opts(1e-13)).unwrap();
            let b = h_series_small_z(idx(p, q), d, z, &opts(1e-13)).unwrap();
            assert!(a.converged && b.converged);
            assert!((a.value.re - b.value.re).abs() < 1e-12, "{p}/{q} δ={d} z={z}");
        }
    }

    #[test]
    fn infinity_classes_match_series() {
        for (p, q, d, z) in [(1, 2, 1.0, 1.5), (1, 2, 2.0, 0.7), (1, 3, 1.0, 2.0), (2, 3, 0.6, 1.1), (4, 5, 1.0, 3.0), (2, 5, 1.5, 2.0)] {
            let a = h_hyper_large(idx(p, q), d, z, &opts(1e-13)).unwrap();
            let b = h_series_large_z(idx(p, q), d, z, &opts(1e-13)).unwrap();
            assert!(a.converged && b.converged, "{a:?} {b:?}");
            assert!((a.value.re - b.value.re).abs() < 1e-12, "{p}/{q} δ={d} z={z}");
        }
    }

    #[test]
    fn symmetric_split_matches_both_parities() {
        for (p, q, z) in [(1, 2, 1.5), (1, 3, 2.0), (2, 3, 1.1), (3, 4, 2.0), (2, 5, 2.0), (4, 5, 3.0)] {
            let s = h_hyper_large_symmetric(idx(p, q), z, &opts(1e-13)).unwrap();
            let g = h_hyper_large(idx(p, q), 1.0, z, &opts(1e-13)).unwrap();
            assert!(s.converged, "{s:?}");
            assert!((s.value.re - g.value.re).abs() < 1e-12, "{p}/{q} z={z}");
        }
    }

    #[test]
    fn imaginary_residual_is_small() {
        let r = h_hyper_large(idx(2, 3), 0.6, 1.1, &opts(1e-12)).unwrap();
        assert!(r.abs_error_bound < 1e-12);
        let r = h_hyper_small(idx(5, 4), 0.8, 1.7, &opts(1e-12)).unwrap();
        assert!(r.abs_error_bound < 1e-12);
    }

    #[test]
    fn wrong_regime_is_rejected() {
        assert!(h_hyper_small(idx(1, 2), 1.0, 1.0, &opts(1e-10)).is_err());
        assert!(h_hyper_large(idx(3, 2), 1.0, 1.0, &opts(1e-10)).is_err());
        assert!(h_hyper_large(idx(1, 2), 1.0, 0.0, &opts(1e-10)).is_err());
    }
}
