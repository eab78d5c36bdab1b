//! Spectrum of the finite commutator [Q, P] and its large-d approximation.
//!
//! ```bash
//! cargo run --example commutator_spectrum
//! ```

use fingauss::spectral;
use fingauss::Dimension;

pub fn run_example() -> fingauss::Result<()> {
    let dim = Dimension::new(15)?;
    let eta = spectral::commutator_spectrum(dim)?;
    println!("Im(eta_k) of [Q, P] at {dim}:");
    for (k, e) in eta.iter().enumerate() {
        println!("  {k:2}  {e:+.12}");
    }
    println!("trace = {:.2e}", eta.iter().sum::<f64>());

    for d in [15, 31, 61] {
        let dim = Dimension::new(d)?;
        let exact = spectral::commutator_qp(dim);
        let approx = spectral::floratos_approx(dim);
        for delta in [1, 2] {
            println!(
                "{dim}: entry ({delta}, 0) = {:+.8}i, approximation {:+.1}i",
                exact.get(delta, 0).im,
                approx.get(delta, 0).im
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fingauss::Result<()> {
    run_example()
}
