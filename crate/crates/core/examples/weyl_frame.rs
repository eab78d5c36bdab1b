//! Weyl pair, displacement operators and the coherent-state frame.
//!
//! ```bash
//! cargo run --example weyl_frame
//! ```

use fingauss::hilbert::{self, PhasePoint};
use fingauss::Dimension;

pub fn run_example() -> fingauss::Result<()> {
    let dim = Dimension::new(7)?;
    let a = hilbert::shift_operator(dim);
    let b = hilbert::modulation_operator(dim);
    let ab = a.compose(&b)?;
    let ba = b.compose(&a)?;
    let w = num_complex::Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI / 7.0);
    let twisted = ba.entries().map(|z| z * w);
    println!("max|AB - e^(-2 pi i/d) BA| = {:.2e}", (ab.entries() - twisted).map(|z| z.norm()).max());

    let p = PhasePoint::new(dim, 2, -3)?;
    let disp = hilbert::displacement(dim, p)?;
    println!("D(2,-3) unitarity defect = {:.2e}", disp.unitarity_defect());

    let coh = hilbert::coherent_state(dim, p)?;
    let peak = dim.indices().max_by(|&x, &y| coh.at(x).norm().total_cmp(&coh.at(y).norm())).unwrap_or(0);
    println!("|2,-3> has norm {:.15} and peaks at n={peak}", coh.norm());

    for d in [3, 5, 9, 15] {
        let dim = Dimension::new(d)?;
        println!("{dim}: frame resolution residual {:.2e}", hilbert::frame_resolution_residual(dim)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fingauss::Result<()> {
    run_example()
}
