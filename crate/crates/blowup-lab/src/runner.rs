//! Config-file driven experiments with deterministic file output.
//!
//! A run is described by one TOML file with nested sections; every field
//! has a default, and the fully resolved configuration is materialized
//! into `manifest.json` so a run can be replayed exactly. Output files
//! carry no wall-clock data and floats are written in shortest
//! round-trip form, so reruns with the same config are byte-identical.
//!
//! Experiments:
//!
//! * `simulate` — build initial data, step it, write `series.csv`
//!   (columns `t,I,J,bkm,max_ux,max_omega,mass_half,supp_edge`) plus
//!   optional `snapshots/*.csv`;
//! * `verify-lemmas` — run the scan suite, one JSON report per property
//!   under `reports/`;
//! * `ode-compare` — integrate the comparison system at `dt`, `dt/2`,
//!   and quadrupled initial value, and report the blow-up times;
//! * `sweep` — repeat `simulate` over a declared parameter grid, one
//!   subdirectory per row plus an aggregated `summary.csv`;
//! * `derive-kernel` — cross-check the kernel construction (periodic
//!   image sums and the defining gradient-trace integral).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::diagnostics::{estimate_blowup_time, ode_comparator, BlowupFit, DiagnosticsSample};
use crate::evolution::{run, ProductFilter, StepControl, SystemState, Termination, Trajectory};
use crate::grid::{Domain, GridField, GridMode};
use crate::kernels::{greens_check, periodization_check};
use crate::scans::{default_suite, SuiteConfig};
use crate::scenarios::{
    build_compact_support, build_half_period, AmplitudeMode, CompactReport, CompactSupportSpec,
    HalfPeriodSpec, PerturbationFn,
};
use crate::velocity::KernelSpec;
use crate::{Error, Result};

/// Which experiment a config file declares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Simulate,
    VerifyLemmas,
    OdeCompare,
    Sweep,
    DeriveKernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelFamily {
    /// Pure logarithmic kernel.
    Log,
    /// Regularized kernel with parameter `a`.
    Regularized,
    /// Logarithmic kernel plus a two-point perturbation.
    Perturbed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerturbationChoice {
    None,
    CosShift,
    SmoothLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioChoice {
    /// Identically zero fields.
    Zero,
    /// Bump vorticity/scalar supported in one half-period.
    HalfPeriod,
    /// Small-support data for the perturbed-kernel argument.
    CompactSupport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields, default)]
pub struct GridSection {
    pub n: usize,
    /// Period of the cell (periodic mode) or window half-width (real-line
    /// mode).
    pub length: f64,
    pub mode: GridMode,
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection {
            n: 1024,
            length: 1.0,
            mode: GridMode::Periodic,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields, default)]
pub struct KernelSection {
    pub family: KernelFamily,
    /// Regularization parameter (regularized family, and the smooth-log
    /// perturbation).
    pub a: f64,
    /// Perturbation shape (perturbed family only).
    pub perturbation: PerturbationChoice,
    /// Raw cosine-shift amplitude; ignored when `c1-target` is positive.
    pub amplitude: f64,
    /// When positive, scale the cosine shift so its C1 norm equals this.
    pub c1_target: f64,
}

impl Default for KernelSection {
    fn default() -> Self {
        KernelSection {
            family: KernelFamily::Regularized,
            a: 0.1,
            perturbation: PerturbationChoice::None,
            amplitude: 0.0,
            c1_target: 0.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields, default)]
pub struct DataSection {
    pub scenario: ScenarioChoice,
    /// Sup-norm of the scalar.
    pub theta_sup: f64,
    /// Peak vorticity.
    pub omega_max: f64,
    /// Bump support left edge, as a fraction of the period.
    pub support_offset: f64,
    /// Bump support width, as a fraction of the period.
    pub support_width: f64,
    /// Small-support radius; `0` lets the builder pick half the scanned
    /// admissible bound.
    pub epsilon: f64,
    /// Scalar-layer policy for small-support data.
    pub amplitude_mode: AmplitudeChoice,
    /// Resolution of the admissibility scans.
    pub scan_resolution: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmplitudeChoice {
    Fixed,
    AutoThreshold,
}

impl Default for DataSection {
    fn default() -> Self {
        DataSection {
            scenario: ScenarioChoice::HalfPeriod,
            theta_sup: 1.0,
            omega_max: 6.0,
            support_offset: 0.2,
            support_width: 0.3,
            epsilon: 0.0,
            amplitude_mode: AmplitudeChoice::Fixed,
            scan_resolution: 64,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields, default)]
pub struct ControlSection {
    pub t_max: f64,
    pub cfl: f64,
    pub dt_min: f64,
    pub bkm_stop: f64,
    pub dealias: ProductFilter,
    pub diag_every: usize,
    /// Number of evenly spaced field snapshots to write (0 = none).
    pub snapshots: usize,
}

impl Default for ControlSection {
    fn default() -> Self {
        ControlSection {
            t_max: 0.1,
            cfl: 0.4,
            dt_min: 1e-10,
            bkm_stop: 20.0,
            dealias: ProductFilter::Smooth,
            diag_every: 1,
            snapshots: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields, default)]
pub struct OdeSection {
    pub c: f64,
    pub i0: f64,
    pub dt: f64,
}

impl Default for OdeSection {
    fn default() -> Self {
        OdeSection {
            c: 1.0,
            i0: 1.0,
            dt: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields, default)]
pub struct LemmaSection {
    pub resolution: usize,
    pub a_values: Vec<f64>,
    /// Half-width of the real-line scan window.
    pub x_half: f64,
}

impl Default for LemmaSection {
    fn default() -> Self {
        LemmaSection {
            resolution: 400,
            a_values: vec![0.01, 0.1, 1.0, 10.0],
            x_half: 1.0,
        }
    }
}

/// Which knob a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepParameter {
    /// Kernel regularization parameter.
    A,
    /// Small-support radius.
    Epsilon,
    /// Peak vorticity of the initial data.
    Amplitude,
    /// Grid size.
    N,
    /// Perturbation shape (uses `choices`).
    Perturbation,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields, default)]
pub struct SweepSection {
    pub parameter: SweepParameter,
    /// Numeric grid (all parameters except `perturbation`).
    pub values: Vec<f64>,
    /// Shape names for `parameter = "perturbation"`: `none`, `cos-shift`,
    /// `smooth-log`.
    pub choices: Vec<String>,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            parameter: SweepParameter::A,
            values: Vec::new(),
            choices: Vec::new(),
        }
    }
}

/// Fully resolved run configuration; parses from TOML with every field
/// optional.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields, default)]
pub struct Config {
    pub experiment: ExperimentKind,
    pub grid: GridSection,
    pub kernel: KernelSection,
    pub data: DataSection,
    pub control: ControlSection,
    pub ode: OdeSection,
    pub lemmas: LemmaSection,
    pub sweep: SweepSection,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            experiment: ExperimentKind::Simulate,
            grid: GridSection::default(),
            kernel: KernelSection::default(),
            data: DataSection::default(),
            control: ControlSection::default(),
            ode: OdeSection::default(),
            lemmas: LemmaSection::default(),
            sweep: SweepSection::default(),
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config> {
        let cfg: Config = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Config> {
        let text = fs::read_to_string(path)?;
        Config::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.grid.length > 0.0 && self.grid.length.is_finite()) {
            return Err(Error::InvalidConfig("grid length must be positive".into()));
        }
        if self.kernel.family == KernelFamily::Regularized && !(self.kernel.a > 0.0) {
            return Err(Error::InvalidConfig(
                "the regularized kernel needs a > 0".into(),
            ));
        }
        if self.data.scenario == ScenarioChoice::CompactSupport
            && self.kernel.family != KernelFamily::Perturbed
        {
            return Err(Error::InvalidConfig(
                "compact-support data is built for the perturbed kernel family; \
                 set kernel.family = \"perturbed\""
                    .into(),
            ));
        }
        Ok(())
    }

    fn domain(&self) -> Result<Domain> {
        match self.grid.mode {
            GridMode::Periodic => Domain::periodic(self.grid.length, self.grid.n),
            GridMode::RealLine => Domain::real_line(self.grid.length, self.grid.n),
        }
    }

    fn perturbation(&self) -> Result<PerturbationFn> {
        let l = self.grid.length;
        match self.kernel.perturbation {
            PerturbationChoice::None => Ok(PerturbationFn::zero(l)),
            PerturbationChoice::CosShift => {
                if self.kernel.c1_target > 0.0 {
                    PerturbationFn::cos_shift_with_c1(self.kernel.c1_target, l)
                } else {
                    PerturbationFn::cos_shift(self.kernel.amplitude, l)
                }
            }
            PerturbationChoice::SmoothLog => PerturbationFn::smooth_log(self.kernel.a, l),
        }
    }

    fn kernel_spec(&self) -> Result<KernelSpec> {
        match self.kernel.family {
            KernelFamily::Log => Ok(KernelSpec::Hl),
            KernelFamily::Regularized => KernelSpec::modified(self.kernel.a),
            KernelFamily::Perturbed => Ok(KernelSpec::Perturbed {
                f: self.perturbation()?,
            }),
        }
    }

    fn initial_state(&self) -> Result<(SystemState, Option<CompactReport>)> {
        let d = self.domain()?;
        let l = self.grid.length;
        match self.data.scenario {
            ScenarioChoice::Zero => {
                let state = SystemState {
                    t: 0.0,
                    omega: GridField::zeros(d),
                    theta: GridField::zeros(d),
                    kernel: self.kernel_spec()?,
                    symmetric: true,
                };
                state.validate()?;
                Ok((state, None))
            }
            ScenarioChoice::HalfPeriod => {
                let spec = HalfPeriodSpec {
                    domain: d,
                    kernel: self.kernel_spec()?,
                    theta_sup: self.data.theta_sup,
                    omega_max: self.data.omega_max,
                    support_offset: self.data.support_offset * l,
                    support_width: self.data.support_width * l,
                };
                Ok((build_half_period(&spec)?, None))
            }
            ScenarioChoice::CompactSupport => {
                let spec = CompactSupportSpec {
                    domain: d,
                    f: self.perturbation()?,
                    theta_sup: self.data.theta_sup,
                    omega_max: self.data.omega_max,
                    epsilon: (self.data.epsilon > 0.0).then_some(self.data.epsilon),
                    amplitude: match self.data.amplitude_mode {
                        AmplitudeChoice::Fixed => AmplitudeMode::Fixed,
                        AmplitudeChoice::AutoThreshold => AmplitudeMode::AutoThreshold,
                    },
                    scan_resolution: self.data.scan_resolution,
                };
                let (state, report) = build_compact_support(&spec)?;
                Ok((state, Some(report)))
            }
        }
    }

    fn step_control(&self) -> StepControl {
        let mut ctrl = StepControl::new(self.control.t_max);
        ctrl.cfl = self.control.cfl;
        ctrl.dt_min = self.control.dt_min;
        ctrl.bkm_stop = self.control.bkm_stop;
        ctrl.dealias = self.control.dealias;
        ctrl.diag_every = self.control.diag_every;
        ctrl.store_states = self.control.snapshots > 0;
        ctrl
    }
}

/// What an experiment produced.
#[derive(Debug)]
pub struct RunOutcome {
    pub out_dir: PathBuf,
    pub termination: Option<Termination>,
    /// Report files written under `reports/`.
    pub report_files: Vec<PathBuf>,
    /// Rows in `series.csv` (simulate) or `summary.csv` (sweep).
    pub rows: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct Manifest<'a> {
    experiment: ExperimentKind,
    crate_version: &'static str,
    config: &'a Config,
    termination: Option<Termination>,
    steps: usize,
    final_time: Option<f64>,
    final_bkm: Option<f64>,
    defects: Option<crate::evolution::RunDefects>,
    blowup_fit: Option<BlowupFit>,
    data_report: Option<&'a CompactReport>,
    reports: Vec<String>,
    rows: usize,
}

impl<'a> Manifest<'a> {
    fn new(cfg: &'a Config) -> Self {
        Manifest {
            experiment: cfg.experiment,
            crate_version: env!("CARGO_PKG_VERSION"),
            config: cfg,
            termination: None,
            steps: 0,
            final_time: None,
            final_bkm: None,
            defects: None,
            blowup_fit: None,
            data_report: None,
            reports: Vec::new(),
            rows: 0,
        }
    }
}

/// Shortest round-trip decimal form of a float (the default `Display`
/// of `f64` is exactly that), so identical runs produce identical bytes.
fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

fn write_series(path: &Path, samples: &[DiagnosticsSample]) -> Result<usize> {
    let mut text = String::from("t,I,J,bkm,max_ux,max_omega,mass_half,supp_edge\n");
    for s in samples {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{},{},{}",
            fmt_f64(s.t),
            fmt_f64(s.i),
            fmt_f64(s.j),
            fmt_f64(s.bkm),
            fmt_f64(s.max_ux),
            fmt_f64(s.max_omega),
            fmt_f64(s.mass_half),
            fmt_f64(s.supp_edge),
        );
    }
    fs::write(path, text)?;
    Ok(samples.len())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn write_snapshots(dir: &Path, traj: &Trajectory, count: usize) -> Result<()> {
    if count == 0 || traj.states.is_empty() {
        return Ok(());
    }
    fs::create_dir_all(dir)?;
    let n_states = traj.states.len();
    let picks: Vec<usize> = if count == 1 {
        vec![n_states - 1]
    } else {
        (0..count)
            .map(|k| (k * (n_states - 1)) / (count - 1))
            .collect()
    };
    let mut last = usize::MAX;
    for (snap_idx, &si) in picks.iter().enumerate() {
        if si == last {
            continue;
        }
        last = si;
        let st = &traj.states[si];
        let d = st.omega.domain;
        let mut text = String::from("t,x,omega,theta\n");
        for i in 0..d.n {
            let _ = writeln!(
                text,
                "{},{},{},{}",
                fmt_f64(st.t),
                fmt_f64(d.node(i)),
                fmt_f64(st.omega.values[i]),
                fmt_f64(st.theta.values[i]),
            );
        }
        fs::write(dir.join(format!("snap-{snap_idx:03}.csv")), text)?;
    }
    Ok(())
}

fn simulate(cfg: &Config, out: &Path) -> Result<RunOutcome> {
    let (state, data_report) = cfg.initial_state()?;
    let ctrl = cfg.step_control();
    let traj = run(&state, &ctrl)?;
    let rows = write_series(&out.join("series.csv"), &traj.samples)?;
    write_snapshots(&out.join("snapshots"), &traj, cfg.control.snapshots)?;
    let ts: Vec<f64> = traj.samples.iter().map(|s| s.t).collect();
    let is: Vec<f64> = traj.samples.iter().map(|s| s.i).collect();
    let fit = estimate_blowup_time(&ts, &is).ok();

    let mut manifest = Manifest::new(cfg);
    manifest.termination = Some(traj.termination);
    manifest.steps = traj.steps;
    manifest.final_time = Some(traj.final_time());
    manifest.final_bkm = Some(traj.final_bkm());
    manifest.defects = Some(traj.defects);
    manifest.blowup_fit = fit;
    manifest.data_report = data_report.as_ref();
    manifest.rows = rows;
    write_json(&out.join("manifest.json"), &manifest)?;

    Ok(RunOutcome {
        out_dir: out.to_path_buf(),
        termination: Some(traj.termination),
        report_files: Vec::new(),
        rows,
    })
}

fn verify_lemmas(cfg: &Config, out: &Path) -> Result<RunOutcome> {
    let suite_cfg = SuiteConfig {
        l: cfg.grid.length,
        x_half: cfg.lemmas.x_half,
        resolution: cfg.lemmas.resolution,
        a_values: cfg.lemmas.a_values.clone(),
    };
    let reports = default_suite(&suite_cfg)?;
    let rep_dir = out.join("reports");
    fs::create_dir_all(&rep_dir)?;
    let mut files = Vec::new();
    let mut names = Vec::new();
    for r in &reports {
        let path = rep_dir.join(format!("{}.json", r.property_id));
        write_json(&path, r)?;
        names.push(format!("reports/{}.json", r.property_id));
        files.push(path);
    }

    let mut manifest = Manifest::new(cfg);
    manifest.reports = names;
    manifest.rows = reports.len();
    write_json(&out.join("manifest.json"), &manifest)?;

    Ok(RunOutcome {
        out_dir: out.to_path_buf(),
        termination: None,
        report_files: files,
        rows: reports.len(),
    })
}

fn ode_compare(cfg: &Config, out: &Path) -> Result<RunOutcome> {
    let base = ode_comparator(cfg.ode.c, cfg.ode.i0, cfg.ode.dt)?;
    let half = ode_comparator(cfg.ode.c, cfg.ode.i0, 0.5 * cfg.ode.dt)?;
    let quad = ode_comparator(cfg.ode.c, 4.0 * cfg.ode.i0, cfg.ode.dt)?;

    #[derive(Serialize)]
    #[serde(rename_all = "kebab-case")]
    struct OdeReport {
        base: crate::diagnostics::OdeRun,
        half_dt: crate::diagnostics::OdeRun,
        quadrupled_i0: crate::diagnostics::OdeRun,
        /// |T(dt) - T(dt/2)|: step-size sensitivity of the blow-up time.
        dt_shift: f64,
        /// T(C, 4 I0) / T(C, I0); the scaling law says exactly 1/2.
        quadrupling_ratio: f64,
    }
    let report = OdeReport {
        dt_shift: (base.t_blowup - half.t_blowup).abs(),
        quadrupling_ratio: quad.t_blowup / base.t_blowup,
        base,
        half_dt: half,
        quadrupled_i0: quad,
    };
    let rep_dir = out.join("reports");
    fs::create_dir_all(&rep_dir)?;
    let path = rep_dir.join("ode-comparison.json");
    write_json(&path, &report)?;

    let mut manifest = Manifest::new(cfg);
    manifest.reports = vec!["reports/ode-comparison.json".into()];
    manifest.rows = 3;
    write_json(&out.join("manifest.json"), &manifest)?;

    Ok(RunOutcome {
        out_dir: out.to_path_buf(),
        termination: None,
        report_files: vec![path],
        rows: 3,
    })
}

fn derive_kernel(cfg: &Config, out: &Path) -> Result<RunOutcome> {
    let l = cfg.grid.length;

    #[derive(Serialize)]
    #[serde(rename_all = "kebab-case")]
    struct PeriodizationRow {
        depth: f64,
        z: f64,
        truncated_sum: f64,
        closed_form: f64,
        abs_diff: f64,
        pass: bool,
    }
    #[derive(Serialize)]
    #[serde(rename_all = "kebab-case")]
    struct GreensRow {
        x: f64,
        depth: f64,
        kernel_value: f64,
        quadrature_value: f64,
        abs_diff: f64,
        pass: bool,
    }
    #[derive(Serialize)]
    #[serde(rename_all = "kebab-case")]
    struct DerivationReport {
        periodization: Vec<PeriodizationRow>,
        greens: Vec<GreensRow>,
        pass: bool,
    }

    // The truncated image sum carries an O(depth^2 / n_max) tail, so the
    // 1e-6 gate at n_max = 1e4 limits the probe depths to ~0.1.
    let mut periodization = Vec::new();
    for &depth in &[0.02, 0.05, 0.1] {
        for &zf in &[0.1, 0.25, 0.45] {
            let z = zf * l;
            let c = periodization_check(depth, z, l, 10_000)?;
            periodization.push(PeriodizationRow {
                depth,
                z,
                truncated_sum: c.truncated_sum,
                closed_form: c.closed_form,
                abs_diff: c.abs_diff,
                pass: c.abs_diff <= 1e-6,
            });
        }
    }
    let mut greens = Vec::new();
    for &x in &[0.1, 0.5, 1.0, 2.0, 3.0] {
        for &depth in &[0.05, 0.3, 1.0] {
            let c = greens_check(x, depth, 10_000)?;
            greens.push(GreensRow {
                x,
                depth,
                kernel_value: c.kernel_value,
                quadrature_value: c.quadrature_value,
                abs_diff: c.abs_diff,
                pass: c.abs_diff <= 1e-8,
            });
        }
    }
    let pass =
        periodization.iter().all(|r| r.pass) && greens.iter().all(|r| r.pass);
    let report = DerivationReport {
        periodization,
        greens,
        pass,
    };
    let rep_dir = out.join("reports");
    fs::create_dir_all(&rep_dir)?;
    let path = rep_dir.join("kernel-derivation.json");
    write_json(&path, &report)?;

    let mut manifest = Manifest::new(cfg);
    manifest.reports = vec!["reports/kernel-derivation.json".into()];
    write_json(&out.join("manifest.json"), &manifest)?;

    Ok(RunOutcome {
        out_dir: out.to_path_buf(),
        termination: None,
        report_files: vec![path],
        rows: 0,
    })
}

/// One sweep row: the label written into `summary.csv` and the modified
/// config.
fn sweep_rows(cfg: &Config) -> Result<Vec<(String, Config)>> {
    let sw = &cfg.sweep;
    let mut rows = Vec::new();
    if sw.parameter == SweepParameter::Perturbation {
        if sw.choices.is_empty() {
            return Err(Error::InvalidConfig(
                "sweep over perturbation shapes needs a non-empty `choices` list".into(),
            ));
        }
        for name in &sw.choices {
            let mut row = cfg.clone();
            row.experiment = ExperimentKind::Simulate;
            row.kernel.family = KernelFamily::Perturbed;
            row.kernel.perturbation = match name.as_str() {
                "none" => PerturbationChoice::None,
                "cos-shift" => PerturbationChoice::CosShift,
                "smooth-log" => PerturbationChoice::SmoothLog,
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "unknown perturbation choice '{other}' (expected none, cos-shift \
                         or smooth-log)"
                    )))
                }
            };
            rows.push((name.clone(), row));
        }
        return Ok(rows);
    }
    if sw.values.is_empty() {
        return Err(Error::InvalidConfig(
            "sweep needs a non-empty `values` list".into(),
        ));
    }
    for &v in &sw.values {
        let mut row = cfg.clone();
        row.experiment = ExperimentKind::Simulate;
        match sw.parameter {
            SweepParameter::A => row.kernel.a = v,
            SweepParameter::Epsilon => row.data.epsilon = v,
            SweepParameter::Amplitude => row.data.omega_max = v,
            SweepParameter::N => {
                if !(v.fract() == 0.0 && v >= 8.0) {
                    return Err(Error::InvalidConfig(format!(
                        "grid-size sweep value {v} is not an integer >= 8"
                    )));
                }
                row.grid.n = v as usize;
            }
            SweepParameter::Perturbation => unreachable!(),
        }
        rows.push((fmt_f64(v), row));
    }
    Ok(rows)
}

fn sweep(cfg: &Config, out: &Path) -> Result<RunOutcome> {
    let rows = sweep_rows(cfg)?;
    let param_label = serde_json::to_value(cfg.sweep.parameter)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();

    let mut summary = String::from(
        "row,parameter,value,termination,final_bkm,t_est,fit_quality,error\n",
    );
    for (idx, (label, row_cfg)) in rows.iter().enumerate() {
        let sub = out.join(format!("run-{idx:03}"));
        fs::create_dir_all(&sub)?;
        match simulate(row_cfg, &sub) {
            Ok(_) => {
                // The row's manifest is the canonical record; pull the
                // summary fields back out of it.
                let manifest_text = fs::read_to_string(sub.join("manifest.json"))?;
                let m: serde_json::Value = serde_json::from_str(&manifest_text)?;
                let term = m["termination"].as_str().unwrap_or("").to_string();
                let bkm = m["final-bkm"].as_f64();
                let fit_t = m["blowup-fit"]["t_blowup"].as_f64();
                let fit_q = m["blowup-fit"]["fit_quality"].as_f64();
                let _ = writeln!(
                    summary,
                    "{idx},{param_label},{label},{term},{},{},{},",
                    bkm.map(fmt_f64).unwrap_or_default(),
                    fit_t.map(fmt_f64).unwrap_or_default(),
                    fit_q.map(fmt_f64).unwrap_or_default(),
                );
            }
            Err(e) => {
                // Partial failure: record and continue with later rows.
                let msg = e.to_string().replace([',', '\n'], ";");
                let _ = writeln!(summary, "{idx},{param_label},{label},,,,,{msg}");
            }
        }
    }
    fs::write(out.join("summary.csv"), &summary)?;

    let mut manifest = Manifest::new(cfg);
    manifest.rows = rows.len();
    write_json(&out.join("manifest.json"), &manifest)?;

    Ok(RunOutcome {
        out_dir: out.to_path_buf(),
        termination: None,
        report_files: Vec::new(),
        rows: rows.len(),
    })
}

/// Executes the experiment a config declares, writing all artifacts under
/// `out`. The caller maps the outcome to a process exit code: errors carry
/// [`Error::exit_code`]; a completed run that stopped on a non-finite
/// field reports [`Termination::NonFinite`] here and exits 3.
pub fn run_experiment(cfg: &Config, out: &Path) -> Result<RunOutcome> {
    cfg.validate()?;
    fs::create_dir_all(out)?;
    match cfg.experiment {
        ExperimentKind::Simulate => simulate(cfg, out),
        ExperimentKind::VerifyLemmas => verify_lemmas(cfg, out),
        ExperimentKind::OdeCompare => ode_compare(cfg, out),
        ExperimentKind::Sweep => sweep(cfg, out),
        ExperimentKind::DeriveKernel => derive_kernel(cfg, out),
    }
}
