//! The comparison ODE i'' = c i^2 (started from rest) blows up at a time
//! with a closed Beta-integral form. This example integrates it, checks the
//! step-size sensitivity, and demonstrates the exact scaling law
//! T(c, 4 i0) = T(c, i0) / 2.
//!
//! Run with `cargo run --release --example ode_blowup_clock`.

use blowup_lab::diagnostics::ode_comparator;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let closed_form = 2.9744774254021756; // T(1, 1) from the energy quadrature
    let base = ode_comparator(1.0, 1.0, 1e-3)?;
    let halved = ode_comparator(1.0, 1.0, 5e-4)?;
    let quadrupled = ode_comparator(1.0, 4.0, 1e-3)?;

    println!("T(c=1, i0=1)  dt=1e-3 : {:.8}  ({} steps)", base.t_blowup, base.steps);
    println!("T(c=1, i0=1)  dt=5e-4 : {:.8}  ({} steps)", halved.t_blowup, halved.steps);
    println!("closed form            : {closed_form:.8}");
    println!(
        "discretization shift   : {:.2e}",
        (base.t_blowup - halved.t_blowup).abs()
    );
    println!();
    println!("T(c=1, i0=4)  dt=1e-3 : {:.8}", quadrupled.t_blowup);
    println!("half of T(1, 1)        : {:.8}", base.t_blowup / 2.0);
    println!(
        "scaling-law ratio      : {:.8}  (exactly 1/2 in the limit)",
        quadrupled.t_blowup / base.t_blowup
    );
    Ok(())
}
