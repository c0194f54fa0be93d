//! The characteristic exponent rebuilt from the two one-sided Weyl symbols,
//! and the regulated Fourier transform of |x|^a against its closed form.

use stablekit::oracle::{char_exponent, verify_ft_abs_power, weyl_combination};
use stablekit::params::{reduce_rational, StableParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, q, beta) in [(1, 3, 0.5), (4, 5, -1.0), (3, 2, 0.2), (7, 4, 1.0)] {
        let law = StableParams::new(reduce_rational(p, q)?, beta, 1.3, 0.4)?;
        for k in [-3.0, 0.7, 5.0] {
            let gap = (weyl_combination(&law, k)? - char_exponent(&law, k)).norm();
            println!("α = {p}/{q}, β = {beta:>4}, q = {k:>4}: |Weyl − ψ| = {gap:.1e}");
        }
    }
    for a in [-0.5, 0.5] {
        for p in [0.5, 1.0, 2.0] {
            let (numeric, closed) = verify_ft_abs_power(a, p)?;
            println!("|x|^{a} at p = {p}: numeric {numeric:.10}, closed {closed:.10}");
        }
    }
    Ok(())
}
