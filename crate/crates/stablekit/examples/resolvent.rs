//! The resolvent measure μ_λ and the m-fold convolutions of (m/t)μ_{m/t}
//! approaching the stable density.

use stablekit::params::{reduce_rational, StableParams};
use stablekit::resolvent::{distance_to_density, mfold_limit, mu_lambda_gaussian_closed, mu_lambda_grid, ResolventSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gauss = StableParams::new(reduce_rational(2, 1)?, 0.0, 1.0, 0.0)?;
    let spec = ResolventSpec::new(gauss, 2.0)?;
    let grid = mu_lambda_grid(&spec, 1 << 14, 40.0)?;
    println!("λ = 2: λ·mass = {:.12}", 2.0 * grid.mass());
    // cells away from the cusp at the origin
    for j in [8200, 8300, 8500] {
        let x = grid.x(j);
        let printed = mu_lambda_gaussian_closed(2.0, 1.0, x.abs())?;
        println!("  x = {x:.4}: grid {:.10e}, printed form / grid = {:.6}", grid.values[j], printed / grid.values[j]);
    }
    for (p, q, n, half_width) in [(2, 1, 1 << 14, 40.0), (3, 2, 1 << 16, 100.0)] {
        let law = StableParams::new(reduce_rational(p, q)?, 0.0, 1.0, 0.0)?;
        println!("α = {p}/{q}: sup distance of the m-fold limit to f(·, 1) on |x| ≤ 5");
        for m in [8, 16, 32, 64] {
            let g = mfold_limit(&law, m, 1.0, n, half_width)?;
            println!("  m = {m:>2}: {:.3e}", distance_to_density(&law, &g, 5.0, 64, 1e-10)?);
        }
    }
    Ok(())
}
