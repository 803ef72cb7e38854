//! Monitored functionals and blow-up diagnostics.
//!
//! The central objects are two weighted integrals of the scalar over the
//! half cell,
//!
//! ```text
//!     I = integral_0^{L/2} th(x) cot(mu x) dx,
//!     J = (2/pi) integral_0^{L/2} th(x) w(x) cot(mu x) dx,
//! ```
//!
//! (with `cot(mu x)` replaced by `1/x` on the real line), the accumulated
//! gradient integral `integral_0^t max|u_x| ds` used as the blow-up
//! indicator, and a small toolbox for turning a time series of `I` into a
//! blow-up time estimate: an inverse-square-root fit plus a comparison ODE
//! integrated to its pole.
//!
//! Half-cell integrals use the midpoint rule with an Euler–Maclaurin end
//! correction built from one-sided parabolic slopes, which restores
//! O(h^4) accuracy for the non-periodic integrands involved here.

use crate::evolution::SystemState;
use crate::grid::{GridField, GridMode};
use crate::velocity::cot_weighted_velocity;
use crate::{Error, Result};

/// One diagnostics row; field order matches the run series output.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct DiagnosticsSample {
    pub t: f64,
    pub i: f64,
    pub j: f64,
    /// Accumulated `integral max|u_x|` up to `t`.
    pub bkm: f64,
    pub max_ux: f64,
    pub max_omega: f64,
    /// Vorticity mass over the half cell.
    pub mass_half: f64,
    /// Outer edge of the (half-cell) vorticity support.
    pub supp_edge: f64,
}

/// Midpoint sum over `m` cells of width `h` plus the Euler–Maclaurin end
/// correction `(h^2/24) (g'(b) - g'(a))` with one-sided parabolic slope
/// estimates at both ends.
fn half_integral_em(h: f64, g: &[f64]) -> f64 {
    let m = g.len();
    assert!(m >= 3, "end-corrected integral needs at least 3 cells");
    let sum: f64 = g.iter().sum();
    let gp_a = (3.0 * g[1] - 2.0 * g[0] - g[2]) / h;
    let gp_b = -(3.0 * g[m - 2] - 2.0 * g[m - 1] - g[m - 3]) / h;
    h * sum + h * h / 24.0 * (gp_b - gp_a)
}

/// Nodes and weight values of the half-cell window: the first `N/2` nodes
/// on a periodic grid (weight `cot(mu x)`), the positive-`x` half on the
/// real line (weight `1/x`).
fn half_window(field: &GridField) -> (usize, usize, Vec<f64>) {
    let d = field.domain;
    let n = d.n;
    match d.mode {
        GridMode::Periodic => {
            let mu = d.mu();
            let w = (0..n / 2).map(|j| 1.0 / (mu * d.node(j)).tan()).collect();
            (0, n / 2, w)
        }
        GridMode::RealLine => {
            let w = (n / 2..n).map(|j| 1.0 / d.node(j)).collect();
            (n / 2, n, w)
        }
    }
}

/// The monitored functional `I` (see module docs).
pub fn compute_i(theta: &GridField) -> Result<f64> {
    let (lo, hi, w) = half_window(theta);
    let g: Vec<f64> = (lo..hi).map(|j| theta.values[j] * w[j - lo]).collect();
    let v = half_integral_em(theta.domain.spacing(), &g);
    if !v.is_finite() {
        return Err(Error::NonFinite("monitored functional I".into()));
    }
    Ok(v)
}

/// The monitored functional `J` (see module docs).
pub fn compute_j(theta: &GridField, omega: &GridField) -> Result<f64> {
    if theta.domain != omega.domain {
        return Err(Error::InvalidConfig(
            "J needs the scalar and vorticity on one grid".into(),
        ));
    }
    let (lo, hi, w) = half_window(theta);
    let g: Vec<f64> = (lo..hi)
        .map(|j| theta.values[j] * omega.values[j] * w[j - lo])
        .collect();
    let v = 2.0 / std::f64::consts::PI * half_integral_em(theta.domain.spacing(), &g);
    if !v.is_finite() {
        return Err(Error::NonFinite("monitored functional J".into()));
    }
    Ok(v)
}

/// Instantaneous drift of `I` evaluated from the transport identity:
/// `dI/dt = -integral_0^{L/2} u(x) th_x(x) cot(mu x) dx`, with the
/// cot-weighted velocity evaluated by its dedicated quadrature. Periodic
/// grids only.
pub fn di_dt_formula(state: &SystemState) -> Result<f64> {
    if state.omega.domain.mode != GridMode::Periodic {
        return Err(Error::InvalidConfig(
            "the drift identity is implemented on periodic grids".into(),
        ));
    }
    let ucot = cot_weighted_velocity(&state.omega, &state.kernel)?;
    let thx = state.theta.spectral_derivative()?;
    let n = state.omega.domain.n;
    let g: Vec<f64> = (0..n / 2).map(|j| -thx.values[j] * ucot.values[j]).collect();
    Ok(half_integral_em(state.omega.domain.spacing(), &g))
}

/// Half-cell bracket `B(y) = integral_y^{L/2} w (u cot)_x dx`, whose
/// nonnegativity over `y` is the discrete form of the drift comparison the
/// monitored functionals rely on. `B(L/2) = 0` by convention.
pub fn bracket_positivity(state: &SystemState, y: f64) -> Result<f64> {
    let d = state.omega.domain;
    if d.mode != GridMode::Periodic {
        return Err(Error::InvalidConfig(
            "the bracket is implemented on periodic grids".into(),
        ));
    }
    let half = 0.5 * d.length;
    if !(0.0..=half).contains(&y) {
        return Err(Error::InvalidConfig(format!(
            "bracket base {y} outside [0, L/2]"
        )));
    }
    if y >= half - 1e-14 * d.length {
        return Ok(0.0);
    }
    let ucot = cot_weighted_velocity(&state.omega, &state.kernel)?;
    let ucx = ucot.spectral_derivative()?;
    let prod = GridField {
        domain: d,
        values: state
            .omega
            .values
            .iter()
            .zip(ucx.values.iter())
            .map(|(w, g)| w * g)
            .collect(),
    };
    prod.integrate(y, half)
}

/// Full diagnostics row for a state; `max_ux` and `bkm` are supplied by
/// the caller (the run loop already has them).
pub fn sample(state: &SystemState, max_ux: f64, bkm: f64) -> Result<DiagnosticsSample> {
    let d = state.omega.domain;
    let (half, supp_window): (f64, Box<dyn Fn(usize) -> Option<f64>>) = match d.mode {
        GridMode::Periodic => {
            let half = 0.5 * d.length;
            (half, Box::new(move |j| (j < d.n / 2).then(|| d.node(j))))
        }
        GridMode::RealLine => {
            let half = d.half_width();
            (half, Box::new(move |j| Some(d.node(j).abs())))
        }
    };
    // Support detection threshold. The spectral integrator lays down a flat
    // round-off carpet of ~1e-13 relative after a few hundred steps (FFT and
    // product round-off), so the threshold sits two orders above it while
    // staying ten orders below any physical value.
    let thr = 1e-11 * state.omega.max_abs().max(1.0);
    let mut edge = 0.0_f64;
    for j in 0..d.n {
        if state.omega.values[j].abs() > thr {
            if let Some(x) = supp_window(j) {
                edge = edge.max(x + 0.5 * d.spacing());
            }
        }
    }
    Ok(DiagnosticsSample {
        t: state.t,
        i: compute_i(&state.theta)?,
        j: compute_j(&state.theta, &state.omega)?,
        bkm,
        max_ux,
        max_omega: state.omega.max_abs(),
        mass_half: state.omega.integrate(0.0, half)?,
        supp_edge: edge.min(half),
    })
}

/// Centered finite-difference rate of a sampled quantity at index `k`.
pub fn centered_rate(ts: &[f64], vs: &[f64], k: usize) -> Result<f64> {
    if k == 0 || k + 1 >= ts.len() {
        return Err(Error::InvalidConfig(format!(
            "centered rate needs an interior index, got {k} of {}",
            ts.len()
        )));
    }
    let dt = ts[k + 1] - ts[k - 1];
    if dt <= 0.0 {
        return Err(Error::InvalidConfig("times not increasing".into()));
    }
    Ok((vs[k + 1] - vs[k - 1]) / dt)
}

/// Indices of samples nearest to the equispaced probe times
/// `k * t_end / (count + 1)`, `k = 1..=count`, clamped to interior indices
/// and deduplicated.
pub fn probe_indices(ts: &[f64], count: usize) -> Vec<usize> {
    if ts.len() < 3 || count == 0 {
        return Vec::new();
    }
    let t_end = *ts.last().unwrap();
    let mut out: Vec<usize> = Vec::new();
    for k in 1..=count {
        let target = k as f64 * t_end / (count + 1) as f64;
        let mut idx = match ts.binary_search_by(|t| t.partial_cmp(&target).unwrap()) {
            Ok(i) => i,
            Err(i) => {
                if i == 0 {
                    0
                } else if i >= ts.len() {
                    ts.len() - 1
                } else if (ts[i] - target).abs() < (target - ts[i - 1]).abs() {
                    i
                } else {
                    i - 1
                }
            }
        };
        idx = idx.clamp(1, ts.len() - 2);
        if out.last() != Some(&idx) {
            out.push(idx);
        }
    }
    out
}

/// Inverse-square-root blow-up fit.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BlowupFit {
    pub t_blowup: f64,
    /// RMS residual of the linear fit, relative to the mean fitted value.
    pub fit_quality: f64,
    /// Time window the fit used.
    pub window: (f64, f64),
}

/// Fits `1/sqrt(I)` linearly over the last quartile of the series and
/// extrapolates its zero crossing. Refuses series that are too short, not
/// monotone, have grown by less than 4x, or whose fit does not point at a
/// finite future time.
pub fn estimate_blowup_time(ts: &[f64], is: &[f64]) -> Result<BlowupFit> {
    let n = ts.len();
    if n != is.len() || n < 8 {
        return Err(Error::FitFailed(format!(
            "need at least 8 samples, got {n}"
        )));
    }
    for k in 1..n {
        if ts[k] <= ts[k - 1] {
            return Err(Error::FitFailed("times not strictly increasing".into()));
        }
        if is[k] < is[k - 1] - 1e-12 * is[k - 1].abs() {
            return Err(Error::FitFailed(format!(
                "series not monotone at t = {}",
                ts[k]
            )));
        }
        if !(is[k].is_finite() && is[k] > 0.0) {
            return Err(Error::FitFailed("series must stay positive".into()));
        }
    }
    if is[0] <= 0.0 {
        return Err(Error::FitFailed("series must stay positive".into()));
    }
    if is[n - 1] < 4.0 * is[0] {
        return Err(Error::FitFailed(format!(
            "series grew only {:.2}x; the fit needs at least 4x",
            is[n - 1] / is[0]
        )));
    }
    let k0 = (3 * n / 4).min(n - 4);
    let (tw, yw): (Vec<f64>, Vec<f64>) = ts[k0..]
        .iter()
        .zip(is[k0..].iter())
        .map(|(&t, &i)| (t, 1.0 / i.sqrt()))
        .unzip();
    let m = tw.len() as f64;
    let st: f64 = tw.iter().sum::<f64>() / m;
    let sy: f64 = yw.iter().sum::<f64>() / m;
    let sxx: f64 = tw.iter().map(|t| (t - st) * (t - st)).sum();
    let sxy: f64 = tw.iter().zip(yw.iter()).map(|(t, y)| (t - st) * (y - sy)).sum();
    if sxx <= 0.0 {
        return Err(Error::FitFailed("degenerate fit window".into()));
    }
    let slope = sxy / sxx;
    let intercept = sy - slope * st;
    if !(slope < 0.0) {
        return Err(Error::FitFailed(format!(
            "inverse-root series is not decreasing (slope {slope:.3e})"
        )));
    }
    let t_star = -intercept / slope;
    if !(t_star.is_finite() && t_star > ts[n - 1]) {
        return Err(Error::FitFailed(format!(
            "extrapolated time {t_star} does not lie beyond the data"
        )));
    }
    let rms = (tw
        .iter()
        .zip(yw.iter())
        .map(|(t, y)| {
            let r = y - (intercept + slope * t);
            r * r
        })
        .sum::<f64>()
        / m)
        .sqrt();
    Ok(BlowupFit {
        t_blowup: t_star,
        fit_quality: rms / sy.abs().max(1e-300),
        window: (tw[0], *tw.last().unwrap()),
    })
}

/// Result of integrating the comparison system `I' = C Q`, `Q' = I^2`
/// (with `Q(0) = 0`) to its pole.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct OdeRun {
    pub c: f64,
    pub i0: f64,
    pub dt: f64,
    pub t_blowup: f64,
    pub steps: usize,
    /// `I` at the cutoff where the pole asymptotics take over.
    pub i_final: f64,
}

/// Integrates the comparison system with RK4 and a step that contracts
/// like `dt / (1 + sqrt(I))`, stopping at `I = 1e12` and closing the gap
/// to the pole with the exact leading asymptotics `T - t = 2 I / (C Q)`.
pub fn ode_comparator(c: f64, i0: f64, dt: f64) -> Result<OdeRun> {
    if !(c > 0.0 && c.is_finite() && i0 > 0.0 && i0.is_finite() && dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "comparison system needs positive c, i0, dt; got c = {c}, i0 = {i0}, dt = {dt}"
        )));
    }
    let mut i = i0;
    let mut q = 0.0_f64;
    let mut t = 0.0_f64;
    let mut steps = 0_usize;
    let f = |i: f64, q: f64| (c * q, i * i);
    while i < 1e12 {
        let h = dt / (1.0 + i.sqrt());
        let (k1i, k1q) = f(i, q);
        let (k2i, k2q) = f(i + 0.5 * h * k1i, q + 0.5 * h * k1q);
        let (k3i, k3q) = f(i + 0.5 * h * k2i, q + 0.5 * h * k2q);
        let (k4i, k4q) = f(i + h * k3i, q + h * k3q);
        i += h / 6.0 * (k1i + 2.0 * k2i + 2.0 * k3i + k4i);
        q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        t += h;
        steps += 1;
        if !(i.is_finite() && q.is_finite()) {
            return Err(Error::NonFinite("comparison system state".into()));
        }
        if steps > 200_000_000 {
            return Err(Error::FitFailed(
                "comparison system did not reach the pole within the step budget".into(),
            ));
        }
    }
    Ok(OdeRun {
        c,
        i0,
        dt,
        t_blowup: t + 2.0 * i / (c * q),
        steps,
        i_final: i,
    })
}

/// One audited probe of the drift inequalities.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct AuditRow {
    pub t: f64,
    pub di_dt: f64,
    pub dj_dt: f64,
    pub rhs_i: f64,
    pub rhs_j: f64,
    pub margin_i: f64,
    pub margin_j: f64,
}

/// Outcome of auditing the two drift inequalities along a run.
#[derive(Debug, Clone, serde::Serialize)]
pub struct AuditReport {
    pub c_f: f64,
    pub theta_sup: f64,
    pub rows: Vec<AuditRow>,
    pub min_margin_i: f64,
    pub min_margin_j: f64,
    pub pass: bool,
}

/// Audits, at the probe indices, the discrete drift inequalities
///
/// ```text
///     dI/dt >= J     - C(f) M mass,
///     dJ/dt >= (2/L^2) I^2 - C(f) M mass^2,
/// ```
///
/// with rates taken by centered differences on the sampled series. `pass`
/// allows a relative slack of 1e-6 on each margin.
pub fn perturbed_inequality_audit(
    samples: &[DiagnosticsSample],
    probes: &[usize],
    c_f: f64,
    theta_sup: f64,
    l: f64,
) -> Result<AuditReport> {
    if samples.len() < 3 {
        return Err(Error::InvalidConfig(
            "the audit needs at least three samples".into(),
        ));
    }
    let ts: Vec<f64> = samples.iter().map(|s| s.t).collect();
    let is: Vec<f64> = samples.iter().map(|s| s.i).collect();
    let js: Vec<f64> = samples.iter().map(|s| s.j).collect();
    let mut rows = Vec::with_capacity(probes.len());
    let mut min_i = f64::INFINITY;
    let mut min_j = f64::INFINITY;
    let mut pass = true;
    for &k in probes {
        let di = centered_rate(&ts, &is, k)?;
        let dj = centered_rate(&ts, &js, k)?;
        let s = &samples[k];
        let rhs_i = js[k] - c_f * theta_sup * s.mass_half;
        let rhs_j = 2.0 / (l * l) * is[k] * is[k] - c_f * theta_sup * s.mass_half * s.mass_half;
        let margin_i = di - rhs_i;
        let margin_j = dj - rhs_j;
        min_i = min_i.min(margin_i);
        min_j = min_j.min(margin_j);
        pass &= margin_i >= -1e-6 * rhs_i.abs().max(1.0);
        pass &= margin_j >= -1e-6 * rhs_j.abs().max(1.0);
        rows.push(AuditRow {
            t: ts[k],
            di_dt: di,
            dj_dt: dj,
            rhs_i,
            rhs_j,
            margin_i,
            margin_j,
        });
    }
    Ok(AuditReport {
        c_f,
        theta_sup,
        rows,
        min_margin_i: min_i,
        min_margin_j: min_j,
        pass,
    })
}
