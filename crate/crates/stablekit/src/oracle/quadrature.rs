//! Gauss–Legendre panels, adaptive bisection and Euler summation of
//! alternating panel series.

use std::sync::OnceLock;

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Cached 20-point rule.
pub fn gauss_legendre_20() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(20))
}

/// One 20-point Gauss–Legendre panel on [a, b].
pub fn panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (nodes, weights) = gauss_legendre_20();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut s = 0.0;
    for (t, w) in nodes.iter().zip(weights) {
        s += w * f(mid + half * t);
    }
    s * half
}

/// Adaptive bisection on 20-point panels until each accepted panel agrees
/// with its two halves to within its share of `tol`.
///
/// Returns the integral and an error estimate; `None` when `max_depth`
/// bisections cannot reach the tolerance.
pub fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, max_depth: u32) -> Option<(f64, f64)> {
    fn rec(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Option<(f64, f64)> {
        let m = 0.5 * (a + b);
        let left = panel(f, a, m);
        let right = panel(f, m, b);
        let err = (left + right - whole).abs();
        if err <= tol || (b - a) < 1e-14 * a.abs().max(b.abs()).max(1e-300) {
            return Some((left + right, err));
        }
        if depth == 0 {
            return None;
        }
        let (l, el) = rec(f, a, m, left, 0.5 * tol, depth - 1)?;
        let (r, er) = rec(f, m, b, right, 0.5 * tol, depth - 1)?;
        Some((l + r, el + er))
    }
    rec(f, a, b, panel(f, a, b), tol, max_depth)
}

/// Sum of an alternating-in-sign sequence of panel integrals by repeated
/// averaging of partial sums (Euler transform).
///
/// Returns the accelerated sum and the change between the last two
/// averaging levels as an error estimate.
pub fn euler_sum(terms: &[f64]) -> (f64, f64) {
    let mut partial: Vec<f64> = terms
        .iter()
        .scan(0.0, |s, &t| {
            *s += t;
            Some(*s)
        })
        .collect();
    let mut prev = *partial.last().unwrap_or(&0.0);
    let mut err = f64::INFINITY;
    while partial.len() > 1 {
        partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let cur = *partial.last().unwrap();
        err = (cur - prev).abs();
        prev = cur;
    }
    (prev, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(20);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let m38: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(38)).sum();
        assert!((m38 - 2.0 / 39.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_sqrt_endpoint() {
        let (v, _) = adaptive(&|x: f64| x.sqrt(), 0.0, 1.0, 1e-13, 60).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn euler_on_alternating_harmonic() {
        let terms: Vec<f64> = (0..40).map(|k| (-1f64).powi(k) / (k as f64 + 1.0)).collect();
        let (s, _) = euler_sum(&terms);
        assert!((s - 2f64.ln()).abs() < 1e-10);
    }
}
