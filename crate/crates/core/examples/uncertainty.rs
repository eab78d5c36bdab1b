//! g_1 is a quasi-minimum uncertainty state.
//!
//! ```bash
//! cargo run --example uncertainty
//! ```

use fingauss::spectral;
use fingauss::Dimension;

pub fn run_example() -> fingauss::Result<()> {
    println!(" d   dQ dP              |<[Q,P]>|/2         gap");
    for d in (3..=15).step_by(2) {
        let u = spectral::uncertainty_product(Dimension::new(d)?, 1.0)?;
        println!("{:2}  {:.14}  {:.14}  {:+.6e}", u.d, u.product, u.half_comm, u.gap);
    }
    let wide = spectral::uncertainty_product(Dimension::new(31)?, 0.5)?;
    println!("kappa=1/2 at d=31: dQ={:.6} dP={:.6} gap={:.3e}", wide.dq, wide.dp, wide.gap);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fingauss::Result<()> {
    run_example()
}
