//! Discrete Wigner function of g_kappa: peaks, anti-peak and marginals.
//!
//! ```bash
//! cargo run --example wigner
//! ```

use fingauss::wigner;
use fingauss::Dimension;

pub fn run_example() -> fingauss::Result<()> {
    let dim = Dimension::new(31)?;
    let def = wigner::wigner_definition(dim, 4.0 / 3.0)?;
    let closed = wigner::wigner_closed_form(dim, 4.0 / 3.0)?;
    println!(
        "{dim} kappa=4/3: max|W| = {:.6}, definition vs closed form {:.2e}",
        def.max_abs(),
        def.max_abs_diff(&closed)?
    );
    let p = wigner::peak_summary(&def);
    println!(
        "W(0,0)={:.6} W(0,s)={:.6} W(s,0)={:.6} W(s,s)={:.6}",
        p.origin, p.edge_m, p.edge_n, p.corner
    );

    let m = wigner::wigner_marginals(&def);
    println!("position marginal at n=0: {:.12}", m.pos[dim.offset(0)]);

    for d in [9, 31] {
        let fit = wigner::theta_form_fit(Dimension::new(d)?)?;
        println!("d={d}: theta form = {:.10} x W, deviation {:.2e}", fit.c, fit.max_deviation);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fingauss::Result<()> {
    run_example()
}
