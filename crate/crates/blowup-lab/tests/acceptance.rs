//! End-to-end acceptance gates, one test per numbered capability.
//!
//! Each test collects its sub-checks and prints exactly one
//! `criterion NN: PASS/FAIL` line (visible with `--nocapture`, and always
//! visible on failure). Wall-clock budgets are asserted with
//! `std::time::Instant` around the measured work.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use blowup_lab::diagnostics::{
    bracket_positivity, centered_rate, di_dt_formula, ode_comparator, perturbed_inequality_audit,
    probe_indices,
};
use blowup_lab::evolution::{run, StepControl, SystemState, Termination, Trajectory};
use blowup_lab::grid::{Domain, GridField};
use blowup_lab::kernels;
use blowup_lab::runner::{run_experiment, Config};
use blowup_lab::scans;
use blowup_lab::scenarios::{
    build_compact_support, build_half_period, required_i0, AmplitudeMode, CompactReport,
    CompactSupportSpec, HalfPeriodSpec, PerturbationFn,
};
use blowup_lab::velocity::{velocity, velocity_modified, velocity_modified_multiplier, KernelSpec};

/// Accumulates sub-checks for one criterion and prints a single verdict line.
struct Criterion {
    failures: Vec<String>,
    details: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Criterion {
            failures: Vec::new(),
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: String) {
        if ok {
            self.details.push(what);
        } else {
            self.failures.push(what);
        }
    }

    fn finish(self, name: &str) {
        if self.failures.is_empty() {
            println!("{name}: PASS — {}", self.details.join("; "));
        } else {
            println!("{name}: FAIL — {}", self.failures.join("; "));
            panic!("{name} failed: {}", self.failures.join("; "));
        }
    }
}

/// Deterministic 64-bit LCG (Knuth multiplier) for reproducible random draws.
struct Lcg(u64);

impl Lcg {
    fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        lo + (hi - lo) * u
    }
}

// ---------------------------------------------------------------------------
// Criterion 1: periodized image sums of the boundary-layer kernel match the
// closed periodic form after relabeling the layer parameter.
// ---------------------------------------------------------------------------

#[test]
fn criterion_01_periodized_images_match_relabeled_closed_form() {
    let t0 = Instant::now();
    let mut c = Criterion::new();
    let mut rng = Lcg(0x5dee_ce66_d001);
    let l = 1.0;
    let n_max = 10_000;
    let mut worst = 0.0_f64;
    // The truncated image sum carries an O(depth^2 / n_max) tail, so the
    // depth range is capped where that tail sits safely under the gate.
    for _ in 0..100 {
        let z = rng.uniform(0.02, 0.98);
        let depth = rng.uniform(0.02, 0.1);
        let chk = kernels::periodization_check(depth, z, l, n_max).unwrap();
        worst = worst.max(chk.abs_diff);
    }
    c.check(
        worst <= 1e-6,
        format!("worst |image sum - closed form| = {worst:.3e} (gate 1e-6, 100 draws)"),
    );
    let elapsed = t0.elapsed();
    c.check(
        elapsed < Duration::from_secs(5),
        format!("elapsed {elapsed:.2?} (budget 5 s)"),
    );
    c.finish("criterion 01 (periodized relabeling identity)");
}

// ---------------------------------------------------------------------------
// Criterion 2: the boundary-layer kernel equals the vertical quadrature of
// the half-plane gradient kernel.
// ---------------------------------------------------------------------------

#[test]
fn criterion_02_layer_kernel_matches_halfplane_quadrature() {
    let t0 = Instant::now();
    let mut c = Criterion::new();
    let mut rng = Lcg(0x00c0_ffee_4242);
    let mut worst = 0.0_f64;
    for _ in 0..50 {
        let x = rng.uniform(0.1, 3.0);
        let depth = rng.uniform(0.05, 1.0);
        let chk = kernels::greens_check(x, depth, 10_000).unwrap();
        worst = worst.max(chk.abs_diff);
    }
    c.check(
        worst <= 1e-8,
        format!("worst |kernel - quadrature| = {worst:.3e} (gate 1e-8, 50 draws)"),
    );
    let elapsed = t0.elapsed();
    c.check(
        elapsed < Duration::from_secs(5),
        format!("elapsed {elapsed:.2?} (budget 5 s)"),
    );
    c.finish("criterion 02 (layer kernel from half-plane quadrature)");
}

// ---------------------------------------------------------------------------
// Criterion 3: both regularized-velocity routes reproduce the closed form on
// a pure mode: u = -(L/2pi) (1 - e^{-beta}) sin(2 mu x) with cosh beta = 1+2a.
// ---------------------------------------------------------------------------

#[test]
fn criterion_03_velocity_closed_forms_on_pure_modes() {
    let mut c = Criterion::new();
    let l = 1.0;
    let n = 512;
    let d = Domain::periodic(l, n).unwrap();
    let mu = d.mu();
    let omega = GridField::from_fn(d, |x| (2.0 * mu * x).sin());

    // Pure log kernel: the mode-1 factor is exactly 1.
    let u_log = velocity(&omega, &KernelSpec::Hl).unwrap();
    let mut worst_log = 0.0_f64;
    for (j, &uj) in u_log.values.iter().enumerate() {
        let x = d.node(j);
        let exact = -(l / (2.0 * std::f64::consts::PI)) * (2.0 * mu * x).sin();
        worst_log = worst_log.max((uj - exact).abs());
    }
    c.check(
        worst_log <= 1e-12,
        format!("log-kernel pure mode error {worst_log:.3e} (gate 1e-12)"),
    );

    for &a in &[0.5_f64, 1.5] {
        let beta = (1.0 + 2.0 * a).acosh();
        let factor = 1.0 - (-beta).exp();
        let u_direct = velocity_modified(&omega, a).unwrap();
        let u_mult = velocity_modified_multiplier(&omega, a).unwrap();
        let mut worst_direct = 0.0_f64;
        let mut worst_mult = 0.0_f64;
        let mut worst_gap = 0.0_f64;
        for j in 0..n {
            let x = d.node(j);
            let exact = -(l / (2.0 * std::f64::consts::PI)) * factor * (2.0 * mu * x).sin();
            worst_direct = worst_direct.max((u_direct.values[j] - exact).abs());
            worst_mult = worst_mult.max((u_mult.values[j] - exact).abs());
            worst_gap = worst_gap.max((u_direct.values[j] - u_mult.values[j]).abs());
        }
        c.check(
            worst_direct <= 1e-8,
            format!("a={a}: direct route error {worst_direct:.3e} (gate 1e-8)"),
        );
        c.check(
            worst_mult <= 1e-8,
            format!("a={a}: multiplier route error {worst_mult:.3e} (gate 1e-8)"),
        );
        c.check(
            worst_gap <= 1e-10,
            format!("a={a}: route disagreement {worst_gap:.3e} (gate 1e-10)"),
        );
    }
    c.finish("criterion 03 (velocity closed forms on pure modes)");
}

// ---------------------------------------------------------------------------
// Criterion 4: the full scan suite passes at resolution 400 with
// refinement-stable extremals, inside a 30-second budget.
// ---------------------------------------------------------------------------

#[test]
fn criterion_04_scan_suite_passes_and_refines_stably() {
    let t0 = Instant::now();
    let mut c = Criterion::new();
    let cfg = scans::SuiteConfig {
        l: 1.0,
        x_half: 1.0,
        resolution: 400,
        a_values: vec![0.01, 0.1, 1.0, 10.0],
    };
    let reports = scans::default_suite(&cfg).unwrap();
    c.check(
        reports.len() == 8,
        format!("{} reports produced (want 8)", reports.len()),
    );
    for r in &reports {
        c.check(
            r.pass,
            format!("{}: pass={} extremal={:.6e}", r.property_id, r.pass, r.extremal_value),
        );
        c.check(
            r.refinement_ratio <= 0.10,
            format!("{}: refinement ratio {:.3e} (gate 0.10)", r.property_id, r.refinement_ratio),
        );
    }
    // The suite's sign report covers every scanned parameter, so its
    // estimated constant is the worst case over a — attained at a = 0.01.
    if let Some(sign) = reports.iter().find(|r| r.property_id == "pairing-negativity") {
        if let Some(chat) = sign.estimated_constant {
            c.check(
                (chat - 0.03965126329).abs() <= 1e-6,
                format!("worst-case pairing constant {chat:.9} (frozen 0.03965126329)"),
            );
        } else {
            c.check(false, "pairing-negativity report lacks an estimated constant".into());
        }
    } else {
        c.check(false, "pairing-negativity report missing".into());
    }
    let single = scans::scan_f_sign(1.0, &[0.1], 400).unwrap();
    let chat_01 = single.estimated_constant.unwrap();
    c.check(
        (chat_01 - 0.3640351061).abs() <= 1e-6,
        format!("single-parameter constant at a=0.1: {chat_01:.9} (frozen 0.3640351061)"),
    );
    let elapsed = t0.elapsed();
    c.check(
        elapsed < Duration::from_secs(30),
        format!("elapsed {elapsed:.2?} (budget 30 s)"),
    );
    c.finish("criterion 04 (scan suite at resolution 400)");
}

// ---------------------------------------------------------------------------
// Criterion 5: frozen point values of the pairing integrands.
// ---------------------------------------------------------------------------

#[test]
fn criterion_05_kernel_point_values() {
    let mut c = Criterion::new();
    let l = 1.0;

    let f = kernels::eval_f_periodic(l / 6.0, l / 3.0, 0.1, l);
    c.check(
        (f - (-0.723477)).abs() <= 1e-5,
        format!("F(L/6, L/3, a=0.1) = {f:.7} vs -0.723477 (tol 1e-5)"),
    );

    let k = kernels::eval_k(l / 6.0, l / 3.0, l);
    let k_exact = 3.0 * std::f64::consts::LN_2;
    c.check(
        (k - k_exact).abs() <= 1e-12,
        format!("K(L/6, L/3) = {k:.15} vs 3 ln 2 (tol 1e-12)"),
    );

    let fr = kernels::eval_f_realline(1.0, 2.0, 1.0);
    let fr_exact = 2.0 * (5.0_f64 / 9.0).ln();
    c.check(
        (fr - fr_exact).abs() <= 1e-12,
        format!("F_line(1, 2, a=1) = {fr:.15} vs 2 ln(5/9) (tol 1e-12)"),
    );

    c.finish("criterion 05 (frozen kernel point values)");
}

// ---------------------------------------------------------------------------
// Shared blow-up run used by criteria 6 and 7: half-period bump data under
// the regularized kernel, integrated until the gradient integral hits 5.
// ---------------------------------------------------------------------------

struct SharedRun {
    traj: Trajectory,
    elapsed: Duration,
    a: f64,
    theta_sup: f64,
    l: f64,
}

static SHARED: OnceLock<SharedRun> = OnceLock::new();

fn shared_run() -> &'static SharedRun {
    SHARED.get_or_init(|| {
        let t0 = Instant::now();
        let l = 1.0;
        let a = 0.1;
        let d = Domain::periodic(l, 1024).unwrap();
        let spec = HalfPeriodSpec {
            domain: d,
            kernel: KernelSpec::modified(a).unwrap(),
            theta_sup: 1.0,
            omega_max: 6.0,
            support_offset: 0.2 * l,
            support_width: 0.3 * l,
        };
        let state = build_half_period(&spec).unwrap();
        let mut ctrl = StepControl::new(2.0);
        ctrl.bkm_stop = 5.0;
        ctrl.store_states = true;
        let traj = run(&state, &ctrl).unwrap();
        SharedRun {
            traj,
            elapsed: t0.elapsed(),
            a,
            theta_sup: 1.0,
            l,
        }
    })
}

/// Rebuilds a full system state from a stored snapshot of the shared run.
fn shared_state_at(sh: &SharedRun, k: usize) -> SystemState {
    let st = &sh.traj.states[k];
    SystemState {
        t: st.t,
        omega: st.omega.clone(),
        theta: st.theta.clone(),
        kernel: KernelSpec::modified(sh.a).unwrap(),
        symmetric: true,
    }
}

// ---------------------------------------------------------------------------
// Criterion 6: transport invariants hold along the blow-up run.
// ---------------------------------------------------------------------------

#[test]
fn criterion_06_transport_invariants_hold_to_blowup() {
    let sh = shared_run();
    let mut c = Criterion::new();
    let def = &sh.traj.defects;

    c.check(
        sh.traj.termination == Termination::BkmStop,
        format!("termination {:?} (want bkm-stop)", sh.traj.termination),
    );
    c.check(
        def.theta_sup_drift <= 1e-6,
        format!("relative sup drift {:.3e} (gate 1e-6)", def.theta_sup_drift),
    );
    c.check(
        def.worst_mean <= 1e-8,
        format!("worst pre-projection mean {:.3e} (gate 1e-8)", def.worst_mean),
    );
    c.check(
        def.worst_parity <= 1e-8,
        format!("worst pre-projection symmetry defect {:.3e} (gate 1e-8)", def.worst_parity),
    );
    c.check(
        def.worst_theta_zero <= 1e-8,
        format!("worst relative scalar value at the origin {:.3e} (gate 1e-8)", def.worst_theta_zero),
    );
    c.check(
        sh.elapsed < Duration::from_secs(120),
        format!(
            "run: {} steps to t={:.4}, elapsed {:.2?} (budget 120 s)",
            sh.traj.steps,
            sh.traj.final_time(),
            sh.elapsed
        ),
    );
    c.finish("criterion 06 (transport invariants to the gradient stop)");
}

// ---------------------------------------------------------------------------
// Criterion 7: the monitored functional grows, its measured rate matches the
// closed-form rate, dominates the scan-constant bound, and the pairing
// bracket stays nonnegative; the run reaches the gradient stop early.
// ---------------------------------------------------------------------------

#[test]
fn criterion_07_monitored_functional_chain() {
    let sh = shared_run();
    let mut c = Criterion::new();
    let samples = &sh.traj.samples;
    let ts: Vec<f64> = samples.iter().map(|s| s.t).collect();
    let is: Vec<f64> = samples.iter().map(|s| s.i).collect();

    // The data threshold: with no kernel perturbation the required starting
    // level is zero, so any admissible bump qualifies.
    let req = required_i0(0.0, sh.theta_sup, sh.l);
    c.check(
        is[0] > req,
        format!("I(0) = {:.6} > required level {:.6}", is[0], req),
    );

    let strictly_up = is.windows(2).all(|w| w[1] > w[0]);
    c.check(
        strictly_up,
        format!("I strictly increasing across {} samples", is.len()),
    );

    // Scan-estimated pairing constant at the run's parameter.
    let sign = scans::scan_f_sign(sh.l, &[sh.a], 64).unwrap();
    let chat = sign.estimated_constant.unwrap();
    c.check(
        chat > 0.0,
        format!("scan-estimated pairing constant {chat:.6}"),
    );

    let probes = probe_indices(&ts, 10);
    c.check(probes.len() >= 8, format!("{} probe times", probes.len()));
    let mut worst_consistency = 0.0_f64;
    let mut worst_bound = f64::INFINITY;
    let mut worst_bracket = f64::INFINITY;
    for &k in &probes {
        if (sh.traj.states[k].t - ts[k]).abs() >= 1e-12 {
            c.check(false, format!("stored state misaligned with sample at probe {k}"));
        }
        let state = shared_state_at(sh, k);
        let formula = di_dt_formula(&state).unwrap();
        let measured = centered_rate(&ts, &is, k).unwrap();
        let scale = formula.abs().max(measured.abs()).max(1.0);
        worst_consistency = worst_consistency.max((measured - formula).abs() / scale);
        let bound = chat / std::f64::consts::PI * samples[k].j;
        worst_bound = worst_bound.min(measured - bound + 1e-6 * scale);
        for &y in &[sh.l / 16.0, sh.l / 8.0, sh.l / 4.0] {
            let b = bracket_positivity(&state, y).unwrap();
            worst_bracket = worst_bracket.min(b);
        }
    }
    c.check(
        worst_consistency <= 1e-4,
        format!("worst relative rate mismatch {worst_consistency:.3e} (gate 1e-4)"),
    );
    c.check(
        worst_bound >= 0.0,
        format!("rate-vs-constant margin (with slack) {worst_bound:.3e} >= 0"),
    );
    c.check(
        worst_bracket >= -1e-8,
        format!("worst pairing bracket {worst_bracket:.3e} (gate -1e-8)"),
    );
    c.check(
        sh.traj.termination == Termination::BkmStop && sh.traj.final_time() < 2.0,
        format!(
            "gradient stop at t={:.4} before t_max=2",
            sh.traj.final_time()
        ),
    );
    c.finish("criterion 07 (monitored functional chain)");
}

// ---------------------------------------------------------------------------
// Criterion 8: the comparison ODE hits its closed-form blow-up clock, halving
// the step barely moves it, and quadrupling the start halves the clock.
// ---------------------------------------------------------------------------

#[test]
fn criterion_08_ode_clock_matches_closed_form() {
    let t0 = Instant::now();
    let mut c = Criterion::new();
    // Closed-form blow-up time of i'' = c i^2 from rest at i(0) = 1, c = 1,
    // via the Beta-integral reduction of the energy quadrature.
    let oracle = 2.9744774254021756;
    let base = ode_comparator(1.0, 1.0, 1e-3).unwrap();
    c.check(
        (base.t_blowup - oracle).abs() <= 0.01,
        format!("T(1,1) = {:.6} vs closed form {:.6} (tol 0.01)", base.t_blowup, oracle),
    );
    let halved = ode_comparator(1.0, 1.0, 5e-4).unwrap();
    c.check(
        (base.t_blowup - halved.t_blowup).abs() <= 1e-3,
        format!(
            "step-halving shift {:.3e} (gate 1e-3)",
            (base.t_blowup - halved.t_blowup).abs()
        ),
    );
    let quad = ode_comparator(1.0, 4.0, 1e-3).unwrap();
    let target = base.t_blowup / 2.0;
    c.check(
        (quad.t_blowup - target).abs() <= 0.01 * target,
        format!(
            "T(1, 4 I0) = {:.6} vs T/2 = {:.6} (tol 1%)",
            quad.t_blowup, target
        ),
    );
    let elapsed = t0.elapsed();
    c.check(
        elapsed < Duration::from_secs(1),
        format!("elapsed {elapsed:.2?} (budget 1 s)"),
    );
    c.finish("criterion 08 (comparison ODE clock)");
}

// ---------------------------------------------------------------------------
// Criterion 9: small-support data under a perturbed kernel — mass drift
// bounded, support confined while the velocity points inward, and the drift
// inequalities audited along the run.
// ---------------------------------------------------------------------------

#[test]
fn criterion_09_perturbed_small_support_run() {
    let t0 = Instant::now();
    let mut c = Criterion::new();
    let l = 1.0;
    let theta_sup = 0.1;
    let d = Domain::periodic(l, 16384).unwrap();
    let f = PerturbationFn::cos_shift_with_c1(1.0, l).unwrap();
    let spec = CompactSupportSpec {
        domain: d,
        f: f.clone(),
        theta_sup,
        omega_max: 1.0,
        epsilon: None,
        amplitude: AmplitudeMode::Fixed,
        scan_resolution: 256,
    };
    let (state, report): (SystemState, CompactReport) = build_compact_support(&spec).unwrap();

    // Closed-form admissibility radius for the unit-C1 translate kernel.
    let mu = d.mu();
    let eps2_exact = (0.5_f64).atan() / (2.0 * mu);
    c.check(
        (report.eps2 - eps2_exact).abs() <= 1e-3 * eps2_exact,
        format!("eps2 = {:.7} vs closed form {:.7}", report.eps2, eps2_exact),
    );
    c.check(
        (report.epsilon - 0.5 * report.eps1.min(report.eps2)).abs() <= 1e-15,
        format!("support radius {:.7} = half the admissible bound", report.epsilon),
    );

    let mut ctrl = StepControl::new(0.1);
    ctrl.store_states = true;
    ctrl.diag_every = 2;
    let traj = run(&state, &ctrl).unwrap();
    c.check(
        traj.termination == Termination::TMax,
        format!("termination {:?} (want t-max)", traj.termination),
    );

    // Half-cell mass drift bound: mass(t) <= mass(0) + M t + 1e-6.
    let mass0 = traj.samples[0].mass_half;
    let mut worst_mass = f64::NEG_INFINITY;
    for s in &traj.samples {
        worst_mass = worst_mass.max(s.mass_half - (mass0 + theta_sup * s.t + 1e-6));
    }
    c.check(
        worst_mass <= 0.0,
        format!("worst mass-drift excess {worst_mass:.3e} (bound M t + 1e-6)"),
    );

    // Support confinement while the velocity points inward on (0, eps].
    let eps = report.epsilon;
    let h = d.spacing();
    let kernel = KernelSpec::Perturbed { f };
    let mut inward_until = None;
    let mut worst_edge = f64::NEG_INFINITY;
    let mut checked = 0usize;
    for (k, st) in traj.states.iter().enumerate() {
        let u = velocity(&st.omega, &kernel).unwrap();
        let inward = (0..d.n).all(|j| {
            let x = d.node(j);
            !(x > 0.0 && x <= eps) || u.values[j] < 0.0
        });
        if !inward {
            inward_until = Some(st.t);
            break;
        }
        let s = &traj.samples[k];
        assert!((s.t - st.t).abs() < 1e-12, "sample/state cadence mismatch");
        worst_edge = worst_edge.max(s.supp_edge - (eps + 2.0 * h));
        checked += 1;
    }
    c.check(
        checked > 0,
        format!(
            "inward-velocity window covered {checked}/{} states{}",
            traj.states.len(),
            match inward_until {
                Some(t) => format!(" (window ends at t={t:.4})"),
                None => String::new(),
            }
        ),
    );
    c.check(
        worst_edge <= 1e-12,
        format!("worst support-edge excess over eps + 2 dx: {worst_edge:.3e}"),
    );

    // Drift-inequality audit at ten interior probes.
    let ts: Vec<f64> = traj.samples.iter().map(|s| s.t).collect();
    let probes = probe_indices(&ts, 10);
    let audit = perturbed_inequality_audit(&traj.samples, &probes, report.c_f, theta_sup, l).unwrap();
    c.check(
        audit.pass,
        format!(
            "audit margins: min I-margin {:.3e}, min J-margin {:.3e}",
            audit.min_margin_i, audit.min_margin_j
        ),
    );

    let elapsed = t0.elapsed();
    c.check(
        elapsed < Duration::from_secs(120),
        format!("elapsed {elapsed:.2?} (budget 120 s)"),
    );
    c.finish("criterion 09 (perturbed small-support run)");
}

// ---------------------------------------------------------------------------
// Criterion 10: repeated runs are byte-identical.
// ---------------------------------------------------------------------------

#[test]
fn criterion_10_deterministic_series_output() {
    let mut c = Criterion::new();
    let toml = r#"
        experiment = "simulate"

        [grid]
        n = 512
        length = 1.0

        [kernel]
        family = "regularized"
        a = 0.1

        [data]
        scenario = "half-period"
        theta-sup = 1.0
        omega-max = 4.0
        support-offset = 0.2
        support-width = 0.3

        [control]
        t-max = 0.1
        snapshots = 2
    "#;
    let cfg = Config::from_toml(toml).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("run-a");
    let out_b = dir.path().join("run-b");
    run_experiment(&cfg, &out_a).unwrap();
    run_experiment(&cfg, &out_b).unwrap();
    let series_a = std::fs::read(out_a.join("series.csv")).unwrap();
    let series_b = std::fs::read(out_b.join("series.csv")).unwrap();
    c.check(
        series_a == series_b,
        format!("series.csv byte-identical across reruns ({} bytes)", series_a.len()),
    );
    let man_a = std::fs::read(out_a.join("manifest.json")).unwrap();
    let man_b = std::fs::read(out_b.join("manifest.json")).unwrap();
    c.check(
        man_a == man_b,
        format!("manifest.json byte-identical across reruns ({} bytes)", man_a.len()),
    );
    c.finish("criterion 10 (deterministic outputs)");
}
