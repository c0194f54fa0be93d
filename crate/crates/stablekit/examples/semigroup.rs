//! Infinite divisibility on an FFT grid: f(·, 1) * f(·, 1) = f(·, 2).

use stablekit::oracle::{propagator_grid, OracleError};
use stablekit::params::{reduce_rational, StableParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, q, beta) in [(1, 2, 0.0), (3, 2, 0.5), (2, 1, 0.0)] {
        let law = StableParams::new(reduce_rational(p, q)?, beta, 1.0, 0.2)?;
        // the grid refuses sizes that alias and suggests one that does not
        let one = match propagator_grid(&law, 1.0, 1 << 14, 200.0) {
            Err(OracleError::Aliasing { suggested_n, .. }) => propagator_grid(&law, 1.0, suggested_n, 200.0)?,
            other => other?,
        };
        let two = propagator_grid(&law, 2.0, one.len(), 200.0)?;
        let conv = one.self_convolve();
        let sup = conv.values.iter().zip(&two.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        println!("α = {p}/{q}, β = {beta}, n = {}: mass {:.12}, sup |f1*f1 − f2| = {sup:.2e}", one.len(), one.mass());
    }
    Ok(())
}
