//! Energy levels of the finite oscillator and the quasi-eigenstate g_1.
//!
//! ```bash
//! cargo run --example oscillator
//! ```

use fingauss::spectral;
use fingauss::Dimension;

pub fn run_example() -> fingauss::Result<()> {
    for d in [3, 7, 13] {
        let dim = Dimension::new(d)?;
        let sp = spectral::hermitian_eig(&spectral::oscillator_hamiltonian(dim))?;
        let low: Vec<String> = sp.eigenvalues().iter().take(4).map(|e| format!("{e:.6}")).collect();
        println!("{dim}: lowest levels {} (residual {:.1e})", low.join(" "), sp.residual());
    }
    for d in [5, 9, 11] {
        let q = spectral::quasi_eigen_residual(Dimension::new(d)?)?;
        let worst = q.residual.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        println!("d={d}: H g_1 = {:.8} g_1 + r, max|r| = {worst:.3e}", q.lambda);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fingauss::Result<()> {
    run_example()
}
