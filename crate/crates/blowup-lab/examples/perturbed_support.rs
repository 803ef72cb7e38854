//! Small-support data under a perturbed kernel: builds the data, prints the
//! admissibility radii the scans produced, runs the transport, and audits
//! the drift inequalities and the support confinement along the way.
//!
//! Run with `cargo run --release --example perturbed_support`.

use blowup_lab::diagnostics::{perturbed_inequality_audit, probe_indices};
use blowup_lab::evolution::{run, StepControl};
use blowup_lab::grid::Domain;
use blowup_lab::scenarios::{AmplitudeMode, CompactSupportSpec, PerturbationFn, build_compact_support};
use blowup_lab::velocity::{velocity, KernelSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = 1.0;
    let theta_sup = 0.1;
    let domain = Domain::periodic(l, 4096)?;
    let f = PerturbationFn::cos_shift_with_c1(1.0, l)?;

    let spec = CompactSupportSpec {
        domain,
        f: f.clone(),
        theta_sup,
        omega_max: 1.0,
        epsilon: None,
        amplitude: AmplitudeMode::Fixed,
        scan_resolution: 256,
    };
    let (state, report) = build_compact_support(&spec)?;
    println!("admissibility scan:");
    println!("  eps1 (sign scan)      = {:.7}", report.eps1);
    println!("  eps2 (geometric bound) = {:.7}", report.eps2);
    println!("  chosen support radius  = {:.7}", report.epsilon);
    println!("  perturbation constant  = {:.6}", report.c_f);
    println!("  I(0) = {:.6e}  (required level {:.6e})", report.i0, report.required_i0);
    println!("  initial half-cell mass = {:.6e}", report.mass0);

    let mut ctrl = StepControl::new(0.1);
    ctrl.store_states = true;
    ctrl.diag_every = 2;
    let traj = run(&state, &ctrl)?;
    println!("\nrun: {:?} after {} steps, final t = {:.4}", traj.termination, traj.steps, traj.final_time());

    // Mass drift against the linear bound.
    let mass0 = traj.samples[0].mass_half;
    let worst_mass = traj
        .samples
        .iter()
        .map(|s| s.mass_half - (mass0 + theta_sup * s.t))
        .fold(f64::NEG_INFINITY, f64::max);
    println!("worst mass drift beyond M t: {worst_mass:+.3e}");

    // Support confinement while the velocity points inward on (0, eps].
    let eps = report.epsilon;
    let h = domain.spacing();
    let kernel = KernelSpec::Perturbed { f };
    let mut worst_edge = f64::NEG_INFINITY;
    let mut inward_states = 0usize;
    for (k, st) in traj.states.iter().enumerate() {
        let u = velocity(&st.omega, &kernel)?;
        let inward = (0..domain.n).all(|j| {
            let x = domain.node(j);
            !(x > 0.0 && x <= eps) || u.values[j] < 0.0
        });
        if !inward {
            println!("velocity stops pointing inward at t = {:.4}", st.t);
            break;
        }
        inward_states += 1;
        worst_edge = worst_edge.max(traj.samples[k].supp_edge - (eps + 2.0 * h));
    }
    println!(
        "velocity pointed inward on (0, eps] for {inward_states}/{} sampled states",
        traj.states.len()
    );
    println!("worst support-edge excess over eps + 2 dx: {worst_edge:+.3e}");

    // Drift-inequality audit at ten probe times.
    let ts: Vec<f64> = traj.samples.iter().map(|s| s.t).collect();
    let probes = probe_indices(&ts, 10);
    let audit = perturbed_inequality_audit(&traj.samples, &probes, report.c_f, theta_sup, l)?;
    println!(
        "\ndrift-inequality audit: {} (min margins {:+.3e} / {:+.3e})",
        if audit.pass { "PASS" } else { "FAIL" },
        audit.min_margin_i,
        audit.min_margin_j
    );
    println!("      t        dI/dt      rhs_I       dJ/dt      rhs_J");
    for row in &audit.rows {
        println!(
            "  {:8.5}  {:+9.5}  {:+9.5}  {:+9.5}  {:+9.5}",
            row.t, row.di_dt, row.rhs_i, row.dj_dt, row.rhs_j
        );
    }
    Ok(())
}
