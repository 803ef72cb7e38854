//! Integrates half-period bump data under the regularized kernel until the
//! gradient integral reaches its stop, then fits the blow-up time.
//!
//! Run with `cargo run --release --example simulate_blowup`.

use blowup_lab::diagnostics::estimate_blowup_time;
use blowup_lab::evolution::{run, StepControl};
use blowup_lab::grid::Domain;
use blowup_lab::scenarios::{build_half_period, HalfPeriodSpec};
use blowup_lab::velocity::KernelSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = 1.0;
    let domain = Domain::periodic(l, 512)?;
    let spec = HalfPeriodSpec {
        domain,
        kernel: KernelSpec::modified(0.1)?,
        theta_sup: 1.0,
        omega_max: 6.0,
        support_offset: 0.2 * l,
        support_width: 0.3 * l,
    };
    let state = build_half_period(&spec)?;

    let mut ctrl = StepControl::new(2.0);
    ctrl.bkm_stop = 5.0;
    let traj = run(&state, &ctrl)?;

    println!("termination: {:?} after {} steps", traj.termination, traj.steps);
    println!(
        "final time {:.6}, final gradient integral {:.4}",
        traj.final_time(),
        traj.final_bkm()
    );
    println!(
        "defects: sup drift {:.2e}, worst mean {:.2e}, worst parity {:.2e}",
        traj.defects.theta_sup_drift, traj.defects.worst_mean, traj.defects.worst_parity
    );

    println!("\n      t         I          J        max|u_x|   max|w|");
    let stride = (traj.samples.len() / 12).max(1);
    for s in traj.samples.iter().step_by(stride) {
        println!(
            "  {:8.5}  {:9.5}  {:9.5}  {:8.4}  {:8.4}",
            s.t, s.i, s.j, s.max_ux, s.max_omega
        );
    }

    let ts: Vec<f64> = traj.samples.iter().map(|s| s.t).collect();
    let is: Vec<f64> = traj.samples.iter().map(|s| s.i).collect();
    match estimate_blowup_time(&ts, &is) {
        Ok(fit) => println!(
            "\ninverse-square-root fit: t* = {:.5} (quality {:.4}, window {:?})",
            fit.t_blowup, fit.fit_quality, fit.window
        ),
        Err(e) => println!("\nblow-up fit unavailable: {e}"),
    }
    Ok(())
}
