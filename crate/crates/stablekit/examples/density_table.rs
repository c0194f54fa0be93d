//! Tabulates f(x, t) with automatic backend selection and shows which
//! evaluator served each point.

use stablekit::params::{reduce_rational, StableParams};
use stablekit::pdf_engine::{pdf, EvalMethod};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let laws = [(1, 2, 0.0), (3, 4, 0.5), (1, 1, 0.0), (3, 2, -0.3), (2, 1, 0.0)];
    for (p, q, beta) in laws {
        let law = StableParams::new(reduce_rational(p, q)?, beta, 1.0, 0.0)?;
        println!("α = {p}/{q}, β = {beta}");
        for x in [-4.0, -1.0, 0.0, 0.5, 2.0, 10.0, 100.0] {
            let d = pdf(&law, x, 1.0, EvalMethod::Auto, 1e-12)?;
            println!("  x = {x:>6}: f = {:.15e}  ± {:.1e}  via {}", d.value, d.abs_error_bound, d.method_used);
        }
    }
    Ok(())
}
