//! Finite Gaussians versus the naive sampled Gaussian.
//!
//! ```bash
//! cargo run --example finite_gaussians
//! ```

use fingauss::theta::{self, ThetaKind, DEFAULT_TERM_TOL};
use fingauss::Dimension;

pub fn run_example() -> fingauss::Result<()> {
    for d in [3, 31] {
        let dim = Dimension::new(d)?;
        for kappa in [1.0 / 3.0, 1.0, 3.0] {
            let g = theta::finite_gaussian(dim, kappa, DEFAULT_TERM_TOL)?;
            let gp = theta::shifted_finite_gaussian(dim, kappa, DEFAULT_TERM_TOL)?;
            let naive = theta::naive_gaussian(dim, kappa)?;
            let s = dim.s();
            let worst = g
                .values()
                .iter()
                .zip(&naive)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            println!(
                "{dim} kappa={kappa:.4}: g(0)={:.12} g(s)={:.3e} g+(s)={:.6} |g-naive|={:.3e} window={}",
                g.at(0),
                g.at(s),
                gp.at(s),
                worst,
                g.window()
            );
        }
    }

    // g_kappa(0) in terms of theta3
    let dim = Dimension::new(9)?;
    let g = theta::finite_gaussian(dim, 2.0, DEFAULT_TERM_TOL)?;
    let t3 = theta::theta(ThetaKind::Theta3, 0.0, 2.0 * 9.0, DEFAULT_TERM_TOL)?;
    println!("g_2(0) = {:.15}, theta3(0, 18i) = {:.15}", g.at(0), t3);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fingauss::Result<()> {
    run_example()
}
