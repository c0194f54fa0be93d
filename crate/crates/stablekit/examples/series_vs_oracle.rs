//! Evaluates the same density through every valid series and hypergeometric
//! form and through both quadrature routes.

use stablekit::oracle::{pdf_quadrature, pdf_zolotarev};
use stablekit::params::{reduce_rational, StableParams};
use stablekit::pdf_engine::{pdf, EvalMethod};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [(1, 3, 0.4, 3.0), (2, 3, -0.5, 1.5), (5, 4, 0.7, 1.0), (3, 2, 0.0, 2.5)];
    let methods = [EvalMethod::SeriesSmallZ, EvalMethod::HyperSmall, EvalMethod::SeriesLargeZ, EvalMethod::HyperLarge];
    for (p, q, beta, x) in cases {
        let law = StableParams::new(reduce_rational(p, q)?, beta, 1.0, 0.0)?;
        println!("α = {p}/{q}, β = {beta}, x = {x}");
        for m in methods {
            match pdf(&law, x, 1.0, m, 1e-13) {
                Ok(d) => println!("  {:<13} {:.15e}  ± {:.1e}", m.name(), d.value, d.abs_error_bound),
                Err(e) => println!("  {:<13} not available: {e}", m.name()),
            }
        }
        println!("  {:<13} {:.15e}", "fourier", pdf_quadrature(&law, x, 1.0, 1e-13)?.value);
        println!("  {:<13} {:.15e}", "zolotarev", pdf_zolotarev(&law, x, 1.0, 1e-13)?.value);
    }
    Ok(())
}
