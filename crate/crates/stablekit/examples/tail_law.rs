//! Heavy tails: the density against its leading algebraic term
//! f ~ ct(1+β)Γ(1+α) sin(πα/2)/(π x^{1+α}).

use stablekit::params::{reduce_rational, StableParams};
use stablekit::pdf_engine::{pdf, EvalMethod};
use stablekit::specfun::gamma;
use std::f64::consts::PI;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, q, beta) in [(1, 3, 0.0), (1, 2, 0.5), (6, 5, 0.0), (3, 2, -0.5)] {
        let law = StableParams::new(reduce_rational(p, q)?, beta, 1.0, 0.0)?;
        let a = law.alpha();
        let lead = (1.0 + beta) * gamma(1.0 + a)? * (PI * a / 2.0).sin() / PI;
        println!("α = {p}/{q}, β = {beta}");
        for x in [1e1, 1e2, 1e3, 1e4] {
            let f = pdf(&law, x, 1.0, EvalMethod::Auto, 1e-9 * lead * x.powf(-1.0 - a))?;
            println!("  x = {x:>7}: f = {:.6e}, f / leading term = {:.6}", f.value, f.value / (lead * x.powf(-1.0 - a)));
        }
    }
    Ok(())
}
