//! The finite Fourier transform maps g_kappa to g_{1/kappa} / sqrt(kappa).
//!
//! ```bash
//! cargo run --example fourier_duality
//! ```

use fingauss::hilbert::{self, fourier_apply, StateVector};
use fingauss::theta::{self, DEFAULT_TERM_TOL};
use fingauss::Dimension;

pub fn run_example() -> fingauss::Result<()> {
    for d in [5, 15, 51] {
        let dim = Dimension::new(d)?;
        for kappa in [0.25, 1.0, 3.0] {
            let g = theta::finite_gaussian(dim, kappa, DEFAULT_TERM_TOL)?;
            let dual = theta::finite_gaussian(dim, 1.0 / kappa, DEFAULT_TERM_TOL)?;
            let fg = fourier_apply(&StateVector::from_gaussian(&g), false);
            let expected = StateVector::from_gaussian(&dual).scale((1.0 / kappa.sqrt()).into());
            println!("{dim} kappa={kappa}: max|F g - g_dual/sqrt(kappa)| = {:.2e}", fg.max_abs_diff(&expected));
        }
    }

    let dim = Dimension::new(9)?;
    let f = hilbert::fourier_matrix(dim);
    println!("F unitarity defect at {dim}: {:.2e}", f.unitarity_defect());
    for k in 0..=4 {
        let v = hilbert::mehta_eigenvector(dim, k)?;
        let fv = f.apply(&v)?;
        let ik = num_complex::Complex64::i().powu(k as u32);
        println!("Hermite-type vector k={k}: max|F f - i^k f| = {:.2e}", fv.max_abs_diff(&v.scale(ik)));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fingauss::Result<()> {
    run_example()
}
