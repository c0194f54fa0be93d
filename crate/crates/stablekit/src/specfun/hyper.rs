//! Generalized hypergeometric series pFq with real parameters and complex
//! argument.

use super::complex::Cx;
use super::dd::DoubleDouble;
use super::mp::{self, Mp};
use super::precision::{Precision, Tier};
use super::real::{dyadic, Real};
use super::SpecFunError;
use num_complex::Complex64;

/// One pFq term: numerator list `a`, denominator list `b`, argument `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperSpec {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub w: Complex64,
}

/// Where the series converges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convergence {
    Entire,
    UnitDisk,
    Divergent,
}

/// Outcome of a truncated series evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesResult {
    pub value: Complex64,
    pub abs_error_bound: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl SeriesResult {
    pub(crate) fn not_converged(terms_used: usize) -> Self {
        Self {
            value: Complex64::new(f64::NAN, f64::NAN),
            abs_error_bound: f64::INFINITY,
            terms_used,
            converged: false,
        }
    }
}

/// Evaluation controls shared by all series in the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesOptions {
    pub tol: f64,
    pub max_terms: usize,
    pub precision: Precision,
}

impl SeriesOptions {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_terms: 20_000,
            precision: Precision::Auto,
        }
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

impl HyperSpec {
    pub fn new(a: Vec<f64>, b: Vec<f64>, w: Complex64) -> Result<Self, SpecFunError> {
        if let Some(&bad) = b.iter().find(|&&x| is_nonpositive_integer(x)) {
            return Err(SpecFunError::DenominatorPole(bad));
        }
        Ok(Self { a, b, w })
    }

    /// Whether some numerator parameter is a non-positive integer.
    fn terminates(&self) -> bool {
        self.a.iter().any(|&x| is_nonpositive_integer(x))
    }

    pub fn convergence(&self) -> Convergence {
        if self.a.len() <= self.b.len() || self.terminates() {
            Convergence::Entire
        } else if self.a.len() == self.b.len() + 1 {
            Convergence::UnitDisk
        } else {
            Convergence::Divergent
        }
    }
}

/// Result of scanning term magnitudes in f64 logarithms.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Plan {
    /// Index of the last term to include.
    pub last: usize,
    pub ln_peak: f64,
    pub tail_bound: f64,
    pub converged: bool,
}

/// Scans |t_n| for a series whose term ratio is `ratio(n) = |t_{n+1}/t_n|`.
///
/// Stops at the first n where the ratios are below one and non-increasing
/// and the geometric tail bound |t_n| r/(1−r) is under `tail_tol`.
pub(crate) fn scan_terms(
    ln_t0: f64,
    tail_tol: f64,
    max_terms: usize,
    mut ratio: impl FnMut(usize) -> f64,
) -> Plan {
    let mut ln_t = ln_t0;
    let mut ln_peak = ln_t0;
    let mut prev_r = f64::INFINITY;
    let ln_tol = tail_tol.ln();
    for n in 0..max_terms {
        let r = ratio(n);
        if r == 0.0 {
            return Plan {
                last: n,
                ln_peak,
                tail_bound: 0.0,
                converged: true,
            };
        }
        if r < 1.0 && r <= prev_r {
            let ln_tail = ln_t + r.ln() - (1.0 - r).ln();
            if ln_tail <= ln_tol {
                return Plan {
                    last: n,
                    ln_peak,
                    tail_bound: ln_tail.exp(),
                    converged: true,
                };
            }
        }
        prev_r = r;
        ln_t += r.ln();
        ln_peak = ln_peak.max(ln_t);
    }
    Plan {
        last: max_terms,
        ln_peak,
        tail_bound: f64::INFINITY,
        converged: false,
    }
}

/// Neumaier-compensated running sum, generic over the scalar.
pub(crate) struct CompensatedSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum.clone() + x.clone();
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp.clone() + ((self.sum.clone() - t.clone()) + x);
        } else {
            self.comp = self.comp.clone() + ((x - t.clone()) + self.sum.clone());
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum.clone() + self.comp.clone()
    }
}

/// Exact rational image of an f64 parameter.
pub(crate) fn exact<T: Real>(x: f64) -> T {
    let (m, e) = dyadic(x);
    if e >= 0 {
        T::from_i128(m) * T::from_i128(1i128 << e.min(100))
    } else if e >= -120 {
        T::ratio(m, 1i128 << (-e))
    } else {
        T::from_f64(x)
    }
}

/// Sums terms 0..=last of pFq in arithmetic `T`.
pub(crate) fn pfq_sum<T: Real>(a: &[T], b: &[T], w: &Cx<T>, last: usize) -> Cx<T> {
    let (even, odd) = pfq_parts(a, b, w, last);
    even + odd
}

/// Terms 0..=last of pFq split into the even- and odd-index partial sums.
pub(crate) fn pfq_parts<T: Real>(a: &[T], b: &[T], w: &Cx<T>, last: usize) -> (Cx<T>, Cx<T>) {
    let mut term = Cx::<T>::real(T::one());
    let mut sums = [
        (CompensatedSum::new(), CompensatedSum::new()),
        (CompensatedSum::new(), CompensatedSum::new()),
    ];
    sums[0].0.add(T::one());
    for n in 0..last {
        let nn = T::from_i128(n as i128);
        let mut num = T::one();
        for ak in a {
            num = num * (ak.clone() + nn.clone());
        }
        let mut den = T::from_i128(n as i128 + 1);
        for bs in b {
            den = den * (bs.clone() + nn.clone());
        }
        term = (term * w.clone()).scale(&(num / den));
        let (re, im) = &mut sums[(n + 1) % 2];
        re.add(term.re.clone());
        im.add(term.im.clone());
    }
    let [(er, ei), (or, oi)] = sums;
    (Cx::new(er.value(), ei.value()), Cx::new(or.value(), oi.value()))
}

/// f64 ratio |t_{n+1}/t_n| of a pFq series.
pub(crate) fn pfq_ratio(a: &[f64], b: &[f64], w_abs: f64, n: usize) -> f64 {
    let nf = n as f64;
    let num: f64 = a.iter().map(|&x| (x + nf).abs()).product();
    let den: f64 = b.iter().map(|&x| (x + nf).abs()).product::<f64>() * (nf + 1.0);
    w_abs * num / den
}

/// Runs `f` in the arithmetic of `tier`, returning its f64-level output.
pub(crate) fn in_tier<R>(tier: Tier, f64_path: impl FnOnce() -> R, dd_path: impl FnOnce() -> R, mp_path: impl FnOnce() -> R) -> R {
    match tier {
        Tier::F64 => f64_path(),
        Tier::DoubleDouble => dd_path(),
        Tier::Multi(bits) => mp::with_precision(bits as usize, mp_path),
    }
}

/// Evaluates pFq(a; b; w) to absolute tolerance `tol`.
pub fn hyper_pfq(spec: &HyperSpec, tol: f64, max_terms: usize) -> Result<SeriesResult, SpecFunError> {
    hyper_pfq_with(
        spec,
        &SeriesOptions {
            tol,
            max_terms,
            precision: Precision::Auto,
        },
    )
}

/// [`hyper_pfq`] with an explicit precision request.
pub fn hyper_pfq_with(spec: &HyperSpec, opts: &SeriesOptions) -> Result<SeriesResult, SpecFunError> {
    let w_abs = spec.w.norm();
    match spec.convergence() {
        Convergence::Divergent => return Err(SpecFunError::DivergentClass),
        Convergence::UnitDisk if w_abs >= 1.0 => return Ok(SeriesResult::not_converged(0)),
        _ => {}
    }
    if w_abs == 0.0 {
        return Ok(SeriesResult {
            value: Complex64::new(1.0, 0.0),
            abs_error_bound: 0.0,
            terms_used: 1,
            converged: true,
        });
    }
    let plan = scan_terms(0.0, opts.tol * 0.5, opts.max_terms, |n| {
        pfq_ratio(&spec.a, &spec.b, w_abs, n)
    });
    if !plan.converged {
        return Ok(SeriesResult::not_converged(opts.max_terms));
    }
    let log2_cancel = (plan.ln_peak - opts.tol.ln()) / std::f64::consts::LN_2;
    let Some(tier) = opts.precision.resolve(log2_cancel, plan.last + 1) else {
        return Ok(SeriesResult::not_converged(plan.last + 1));
    };
    let value = in_tier(
        tier,
        || eval_spec::<f64>(spec, plan.last),
        || eval_spec::<DoubleDouble>(spec, plan.last),
        || eval_spec::<Mp>(spec, plan.last),
    );
    let rounding = rounding_bound(plan.ln_peak, plan.last + 1, tier);
    let bound = plan.tail_bound + rounding;
    Ok(SeriesResult {
        value,
        abs_error_bound: bound,
        terms_used: plan.last + 1,
        converged: bound <= opts.tol,
    })
}

fn eval_spec<T: Real>(spec: &HyperSpec, last: usize) -> Complex64 {
    let a: Vec<T> = spec.a.iter().map(|&x| exact(x)).collect();
    let b: Vec<T> = spec.b.iter().map(|&x| exact(x)).collect();
    let w = Cx::new(exact::<T>(spec.w.re), exact::<T>(spec.w.im));
    pfq_sum(&a, &b, &w, last).to_c64()
}

/// Conservative rounding-error estimate for a sum of `n` terms whose largest
/// magnitude is e^{ln_peak}.
pub(crate) fn rounding_bound(ln_peak: f64, n: usize, tier: Tier) -> f64 {
    // in logs: 2^{−bits} underflows past 1074 bits
    ((4.0 * (n as f64 + 4.0)).ln() - tier.bits() as f64 * std::f64::consts::LN_2 + ln_peak).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: &[f64], b: &[f64], w: f64) -> HyperSpec {
        HyperSpec::new(a.to_vec(), b.to_vec(), Complex64::new(w, 0.0)).unwrap()
    }

    #[test]
    fn exponential_series() {
        let r = hyper_pfq(&spec(&[], &[], 1.0), 1e-15, 200).unwrap();
        assert!(r.converged);
        assert!((r.value.re - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn geometric_series() {
        let r = hyper_pfq(&spec(&[1.0], &[], -0.25), 1e-14, 500).unwrap();
        assert!(r.converged);
        assert!((r.value.re - 0.8).abs() < 1e-14);
    }

    #[test]
    fn cosine_identity() {
        let z = std::f64::consts::PI / 3.0;
        let r = hyper_pfq(&spec(&[], &[0.5], -z * z / 4.0), 1e-15, 200).unwrap();
        assert!((r.value.re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn unit_disk_boundary_is_not_converged() {
        let r = hyper_pfq(&spec(&[1.0], &[], 1.0), 1e-10, 500).unwrap();
        assert!(!r.converged);
        assert!(r.value.re.is_nan());
        let r = hyper_pfq(&spec(&[1.0], &[], -1.5), 1e-10, 500).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn divergent_class_is_an_error() {
        assert!(matches!(
            hyper_pfq(&spec(&[1.0, 1.0], &[], 0.1), 1e-10, 100),
            Err(SpecFunError::DivergentClass)
        ));
    }

    #[test]
    fn denominator_pole_rejected() {
        assert!(HyperSpec::new(vec![], vec![-2.0], Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn terminating_polynomial() {
        // 2F1(-2, 1; 1; w) = (1 - w)^2
        let r = hyper_pfq(&spec(&[-2.0, 1.0], &[1.0], 3.0), 1e-14, 100).unwrap();
        assert!(r.converged);
        assert!((r.value.re - 4.0).abs() < 1e-13);
    }

    #[test]
    fn cancellation_escalates_precision() {
        // 0F0(;;-40) = e^{-40}, peak term ~ 1.4e16
        let r = hyper_pfq(&spec(&[], &[], -40.0), 1e-25, 500).unwrap();
        assert!(r.converged, "{r:?}");
        assert!((r.value.re / (-40f64).exp() - 1.0).abs() < 1e-8);
        let plain = hyper_pfq_with(
            &spec(&[], &[], -40.0),
            &SeriesOptions {
                tol: 1e-25,
                max_terms: 500,
                precision: Precision::Double,
            },
        )
        .unwrap();
        assert!(!plain.converged);
    }

    #[test]
    fn complex_argument() {
        // 0F0(;;iθ) = e^{iθ}
        let s = HyperSpec::new(vec![], vec![], Complex64::new(0.0, 2.0)).unwrap();
        let r = hyper_pfq(&s, 1e-14, 200).unwrap();
        assert!((r.value - Complex64::new(2f64.cos(), 2f64.sin())).norm() < 1e-14);
    }
}
