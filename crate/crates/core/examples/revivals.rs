//! Revivals: the free particle returns after 2d, equidistant ladders after 2 pi / gap.
//!
//! ```bash
//! cargo run --example revivals
//! ```

use std::f64::consts::PI;

use fingauss::dynamics::{self, Propagator};
use fingauss::{Dimension, StateVector};

pub fn run_example() -> fingauss::Result<()> {
    let dim = Dimension::new(9)?;
    let prop = Propagator::new(&dynamics::free_hamiltonian(dim))?;
    let psi = StateVector::delta(dim, 0);
    let weights = prop.spectrum().weights(&psi)?;
    let report = dynamics::detect_revival(prop.spectrum().eigenvalues(), &weights, 1e-9, 1_000_000)?;
    println!("free particle, {dim}: {:?} period {:?} m {:?}", report.kind, report.period, report.m);
    if let Some(t) = report.period {
        let cert = prop.certify_period(&psi, t, dynamics::CERTIFY_TOL)?;
        println!("  certified={} deviation={:.2e}", cert.certified, cert.max_deviation);
    }
    let ac = prop.autocorrelation(&psi, &[0.0, 4.5, 9.0, 13.5, 18.0])?;
    println!("  |<psi|psi(t)>| at t=0,4.5,9,13.5,18: {:.4?}", ac.values);

    let eps = 0.8;
    let full = dynamics::detect_revival(&[eps, 2.0 * eps, 3.0 * eps], &[0.3, 0.3, 0.4], 1e-9, 1000)?;
    let ends = dynamics::detect_revival(&[eps, 2.0 * eps, 3.0 * eps], &[0.5, 0.0, 0.5], 1e-9, 1000)?;
    println!(
        "ladder eps={eps}: full period {:.6} (2 pi/eps = {:.6}), outer pair {:.6}",
        full.period.unwrap_or(f64::NAN),
        2.0 * PI / eps,
        ends.period.unwrap_or(f64::NAN)
    );

    let irrational = dynamics::detect_revival(&[1.0, 2f64.sqrt()], &[0.5, 0.5], 1e-9, 10_000)?;
    println!("levels 1, sqrt 2: {:?}", irrational.kind);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fingauss::Result<()> {
    run_example()
}
