//! Validated initial data and the admissibility estimates that guard it.
//!
//! Two data classes are built here:
//!
//! * **half-period data** — odd vorticity and odd scalar-slope bumps
//!   supported inside `(0, L/2)`, the configuration whose collapse at the
//!   origin is the crate's main experiment;
//! * **small-support data** — the same picture compressed into `(0, eps)`,
//!   used with perturbed kernels, where `eps` must stay below two scanned
//!   admissibility radii for the sign structure of the velocity to survive
//!   the perturbation.
//!
//! Both builders construct the scalar as the cumulative-trapezoid
//! antiderivative of an exactly odd slope profile, mirrored across the
//! half-period, which keeps the scalar exactly even, exactly nondecreasing
//! over `(0, L/2)`, zero at the origin to round-off, and its sup-norm
//! exactly the requested value.

use crate::diagnostics::compute_i;
use crate::evolution::SystemState;
use crate::grid::{Domain, GridField, GridMode, Parity};
use crate::velocity::KernelSpec;
use crate::{Error, Result};
use std::sync::Arc;

/// The standard compactly supported bump `exp(1 - 1/(1 - r^2))` on
/// `|r| < 1`, normalized to peak value 1.
pub fn bump01(r: f64) -> f64 {
    if r.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - r * r)).exp()
    }
}

/// A validated two-point kernel perturbation `f(x, y)`.
///
/// Admissible perturbations are smooth, `L`-periodic in each argument, and
/// centrally symmetric (`f(x, y) = f(-x, -y)`), which is exactly what the
/// odd-velocity structure needs. Construction runs the validation; the
/// stored norms are the scanned estimates.
#[derive(Clone)]
pub struct PerturbationFn {
    kind: PerturbationKind,
    l: f64,
    c1: f64,
    c2: f64,
}

#[derive(Clone)]
enum PerturbationKind {
    Zero,
    /// `amplitude * cos(2 mu (x - y))`.
    CosShift { amplitude: f64 },
    /// `-log sqrt(sin^2(mu (x - y)) + a)`: turns the perturbed law into the
    /// regularized kernel exactly.
    SmoothLog { a: f64 },
    Custom {
        name: String,
        f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    },
}

impl std::fmt::Debug for PerturbationFn {
    fn fmt(&self, g: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(g, "PerturbationFn({}, c1={:.3e})", self.label(), self.c1)
    }
}

impl PerturbationFn {
    pub fn zero(l: f64) -> Self {
        PerturbationFn {
            kind: PerturbationKind::Zero,
            l,
            c1: 0.0,
            c2: 0.0,
        }
    }

    /// `amplitude * cos(2 mu (x - y))`; C1 norm is
    /// `|amplitude| * max(1, 2 mu)` exactly.
    pub fn cos_shift(amplitude: f64, l: f64) -> Result<Self> {
        if !amplitude.is_finite() || l <= 0.0 {
            return Err(Error::InvalidConfig("cos-shift needs finite amplitude".into()));
        }
        let mu = std::f64::consts::PI / l;
        let c1 = amplitude.abs() * (2.0 * mu).max(1.0);
        let c2 = amplitude.abs() * (4.0 * mu * mu).max(c1 / amplitude.abs().max(1e-300));
        Ok(PerturbationFn {
            kind: PerturbationKind::CosShift { amplitude },
            l,
            c1,
            c2,
        })
    }

    /// Cos-shift scaled so its C1 norm equals `target`.
    pub fn cos_shift_with_c1(target: f64, l: f64) -> Result<Self> {
        if !(target.is_finite() && target > 0.0) {
            return Err(Error::InvalidConfig("target C1 norm must be positive".into()));
        }
        let mu = std::f64::consts::PI / l;
        Self::cos_shift(target / (2.0 * mu).max(1.0), l)
    }

    /// `-log sqrt(sin^2(mu (x - y)) + a)`, `a > 0`.
    pub fn smooth_log(a: f64, l: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "smooth-log parameter must be positive, got {a}"
            )));
        }
        let mu = std::f64::consts::PI / l;
        let eval = move |z: f64| -0.5 * ((mu * z).sin().powi(2) + a).ln();
        // Univariate profile: estimate norms by dense scan plus centered
        // differences.
        let m = 4096;
        let mut sup = 0.0_f64;
        let mut sup1 = 0.0_f64;
        let mut sup2 = 0.0_f64;
        let h = l / m as f64;
        let d = h / 4.0;
        for j in 0..m {
            let z = (j as f64 + 0.5) * h;
            sup = sup.max(eval(z).abs());
            sup1 = sup1.max(((eval(z + d) - eval(z - d)) / (2.0 * d)).abs());
            sup2 = sup2.max(((eval(z + d) - 2.0 * eval(z) + eval(z - d)) / (d * d)).abs());
        }
        Ok(PerturbationFn {
            kind: PerturbationKind::SmoothLog { a },
            l,
            c1: sup.max(sup1),
            c2: sup.max(sup1).max(sup2),
        })
    }

    /// A user-supplied perturbation; runs the full validation scan
    /// (symmetry, periodicity, norm stability under refinement). The
    /// closure must be defined for all real arguments.
    pub fn custom(
        name: &str,
        l: f64,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let f = Arc::new(f);
        let (c1, c2) = validate_two_point(l, f.as_ref())?;
        Ok(PerturbationFn {
            kind: PerturbationKind::Custom {
                name: name.to_string(),
                f,
            },
            l,
            c1,
            c2,
        })
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mu = std::f64::consts::PI / self.l;
        match &self.kind {
            PerturbationKind::Zero => 0.0,
            PerturbationKind::CosShift { amplitude } => amplitude * (2.0 * mu * (x - y)).cos(),
            PerturbationKind::SmoothLog { a } => {
                let s = (mu * (x - y)).sin();
                -0.5 * (s * s + a).ln()
            }
            PerturbationKind::Custom { f, .. } => f(x, y),
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            PerturbationKind::Zero => "zero".into(),
            PerturbationKind::CosShift { amplitude } => format!("cos-shift(amp={amplitude})"),
            PerturbationKind::SmoothLog { a } => format!("smooth-log(a={a})"),
            PerturbationKind::Custom { name, .. } => name.clone(),
        }
    }

    pub fn period(&self) -> f64 {
        self.l
    }

    /// Scanned (or exact, where available) C1 norm `max(sup|f|, sup|Df|)`.
    pub fn c1_norm(&self) -> f64 {
        self.c1
    }

    pub fn c2_norm(&self) -> f64 {
        self.c2
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, PerturbationKind::Zero)
    }

    pub(crate) fn cos_shift_amplitude(&self) -> Option<f64> {
        match self.kind {
            PerturbationKind::CosShift { amplitude } => Some(amplitude),
            _ => None,
        }
    }

    pub(crate) fn is_translation_invariant(&self) -> bool {
        matches!(
            self.kind,
            PerturbationKind::Zero | PerturbationKind::CosShift { .. } | PerturbationKind::SmoothLog { .. }
        )
    }
}

/// Validation scan for a general two-point perturbation: central symmetry
/// and periodicity to 1e-10 (relative to the sampled magnitude), and C1/C2
/// norm estimates that must agree within 5% between a 128^2 and a 256^2
/// finite-difference scan. Returns the finer `(c1, c2)`.
pub fn validate_two_point(l: f64, f: &(impl Fn(f64, f64) -> f64 + ?Sized)) -> Result<(f64, f64)> {
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::InvalidConfig("period must be positive".into()));
    }
    let res = 256;
    let node = |i: usize, m: usize| -> f64 { -0.5 * l + (i as f64 + 0.5) * l / m as f64 };
    let mut scale = 1e-300_f64;
    for i in 0..res {
        for j in 0..res {
            scale = scale.max(f(node(i, res), node(j, res)).abs());
        }
    }
    let tol = 1e-10 * scale.max(1.0);
    for i in 0..res {
        for j in 0..res {
            let (x, y) = (node(i, res), node(j, res));
            let v = f(x, y);
            if (v - f(-x, -y)).abs() > tol {
                return Err(Error::PerturbationInvalid(format!(
                    "not centrally symmetric at ({x:.4}, {y:.4}): f = {v:.6e}, f(-x,-y) = {:.6e}",
                    f(-x, -y)
                )));
            }
        }
    }
    for i in 0..res {
        let (x, y) = (node(i, res), node((i * 7 + 3) % res, res));
        if (f(x + l, y) - f(x, y)).abs() > tol || (f(x, y + l) - f(x, y)).abs() > tol {
            return Err(Error::PerturbationInvalid(format!(
                "not {l}-periodic at ({x:.4}, {y:.4})"
            )));
        }
    }
    let norms = |m: usize| -> (f64, f64) {
        let d = l / (4 * m) as f64;
        let mut c1 = 0.0_f64;
        let mut c2 = 0.0_f64;
        for i in 0..m {
            for j in 0..m {
                let (x, y) = (node(i, m), node(j, m));
                let v = f(x, y).abs();
                let fx = (f(x + d, y) - f(x - d, y)) / (2.0 * d);
                let fy = (f(x, y + d) - f(x, y - d)) / (2.0 * d);
                let fxx = (f(x + d, y) - 2.0 * f(x, y) + f(x - d, y)) / (d * d);
                let fyy = (f(x, y + d) - 2.0 * f(x, y) + f(x, y - d)) / (d * d);
                c1 = c1.max(v).max(fx.abs()).max(fy.abs());
                c2 = c2.max(fxx.abs()).max(fyy.abs());
            }
        }
        (c1, c2.max(c1))
    };
    let (c1a, c2a) = norms(128);
    let (c1b, c2b) = norms(256);
    if (c1a - c1b).abs() > 0.05 * c1b.max(1e-12) || (c2a - c2b).abs() > 0.05 * c2b.max(1e-12) {
        return Err(Error::PerturbationInvalid(format!(
            "norm estimates do not stabilize under refinement: C1 {c1a:.4e} vs {c1b:.4e}, \
             C2 {c2a:.4e} vs {c2b:.4e}"
        )));
    }
    Ok((c1b, c2b))
}

/// Largest support radius on which the perturbed odd-pairing kernel keeps
/// its sign: the scanned condition is
///
/// ```text
///     log| (tan(mu x) - tan(mu y)) / (tan(mu x) + tan(mu y)) |
///         + f(x, y) - f(x, -y)  <  0      for all 0 < x, y <= eps, x != y,
/// ```
///
/// checked on an endpoint-inclusive `resolution^2` grid and bisected to a
/// relative width of 1e-3 between the floor `1e-6 L` and the cap `L/4`.
/// Returns the floor if even that fails, the cap if the condition holds
/// there.
pub fn estimate_eps1(f: &PerturbationFn, resolution: usize) -> f64 {
    let l = f.l;
    let mu = std::f64::consts::PI / l;
    let res = resolution.max(8);
    let holds = |eps: f64| -> bool {
        for i in 0..res {
            let x = (i as f64 + 1.0) * eps / res as f64;
            let tx = (mu * x).tan();
            for j in 0..res {
                if i == j {
                    continue; // x = y: the log is -inf, condition holds
                }
                let y = (j as f64 + 1.0) * eps / res as f64;
                let ty = (mu * y).tan();
                let g = ((tx - ty) / (tx + ty)).abs().ln() + f.eval(x, y) - f.eval(x, -y);
                if g >= 0.0 {
                    return false;
                }
            }
        }
        true
    };
    let floor = 1e-6 * l;
    let cap = 0.25 * l;
    if holds(cap) {
        return cap;
    }
    if !holds(floor) {
        return floor;
    }
    let (mut lo, mut hi) = (floor, cap);
    while (hi - lo) > 1e-3 * hi {
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Largest support radius on which the drift bound
/// `cot(mu (x + y)) > 2 ||f||_C1` holds for all `0 < x, y <= eps`, scanned
/// and bisected the same way as [`estimate_eps1`]. For the zero
/// perturbation this approaches `L/4`; in general it is close to
/// `atan(1 / (2 ||f||_C1)) / (2 mu)`.
pub fn estimate_eps2(f: &PerturbationFn, resolution: usize) -> f64 {
    let l = f.l;
    let mu = std::f64::consts::PI / l;
    let res = resolution.max(8);
    let bound = 2.0 * f.c1;
    let holds = |eps: f64| -> bool {
        for i in 0..res {
            let x = (i as f64 + 1.0) * eps / res as f64;
            for j in 0..res {
                let y = (j as f64 + 1.0) * eps / res as f64;
                let arg = mu * (x + y);
                if arg >= 0.5 * std::f64::consts::PI {
                    return false;
                }
                if 1.0 / arg.tan() <= bound {
                    return false;
                }
            }
        }
        true
    };
    let floor = 1e-6 * l;
    let cap = 0.25 * l;
    if holds(cap) {
        return cap;
    }
    if !holds(floor) {
        return floor;
    }
    let (mut lo, mut hi) = (floor, cap);
    while (hi - lo) > 1e-3 * hi {
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Scanned constant `C(f) = sup max(|h|, |d h / d x|)` over
/// `(0, L/2)^2`, where `h(x, y) = cot(mu x) (f(x, y) - f(x, -y))` is the
/// odd-pairing weight the perturbation contributes to the drift of the
/// monitored functionals. Central symmetry makes `h` bounded as `x -> 0`.
pub fn estimate_cf(f: &PerturbationFn, resolution: usize) -> f64 {
    if f.is_zero() {
        return 0.0;
    }
    let l = f.l;
    let mu = std::f64::consts::PI / l;
    let res = resolution.max(8);
    let half = 0.5 * l;
    let spacing = half / res as f64;
    let d = 0.25 * spacing;
    let h = |x: f64, y: f64| (f.eval(x, y) - f.eval(x, -y)) / (mu * x).tan();
    let mut c = 0.0_f64;
    for i in 0..res {
        let x = (i as f64 + 0.5) * spacing;
        for j in 0..res {
            let y = (j as f64 + 0.5) * spacing;
            let v = h(x, y);
            let dv = (h(x + d, y) - h(x - d, y)) / (2.0 * d);
            c = c.max(v.abs()).max(dv.abs());
        }
    }
    c
}

/// Threshold value of the monitored functional `I` above which the
/// perturbed comparison argument closes:
/// `C m^2 (1/2 + m/12) + L sqrt(C m^2 + C m^3 / 3)`, where `C` is the
/// scanned perturbation constant and `m` the scalar sup-norm. Zero for the
/// unperturbed kernel.
pub fn required_i0(c_f: f64, theta_sup: f64, l: f64) -> f64 {
    let m = theta_sup;
    c_f * m * m * (0.5 + m / 12.0) + l * (c_f * m * m + c_f * m * m * m / 3.0).sqrt()
}

/// Antiderivative of an exactly odd slope profile by cumulative trapezoid
/// over the first half-period, mirrored onto the second half so the result
/// is exactly even. Nonnegative slopes give exactly nondecreasing values
/// (each increment is `h/2 (s_i + s_{i+1}) >= 0`), which a spectral
/// antiderivative cannot promise — band-limited interpolants of compact
/// bumps ripple slightly negative. Shifted so the trigonometric
/// interpolant vanishes at the origin, then scaled so the node maximum is
/// exactly `sup`.
fn antiderivative_scaled(profile: &GridField, sup: f64) -> Result<GridField> {
    let d = profile.domain;
    let n = d.n;
    let h = d.spacing();
    let half = n / 2;
    let s = &profile.values;
    let mut values = vec![0.0; n];
    // First node sits half a cell from the origin, where the odd slope
    // vanishes.
    values[0] = 0.25 * h * s[0];
    for i in 1..half {
        values[i] = values[i - 1] + 0.5 * h * (s[i - 1] + s[i]);
    }
    for i in half..n {
        values[i] = values[n - 1 - i];
    }
    let mut th = GridField { domain: d, values };
    let at_zero = th.trig_interp_zero()?;
    for v in th.values.iter_mut() {
        *v -= at_zero;
    }
    let peak = th.values.iter().fold(0.0_f64, |m, &v| m.max(v));
    if peak <= 0.0 {
        return Err(Error::InvalidConfig(
            "slope profile produced a non-positive scalar".into(),
        ));
    }
    let s = sup / peak;
    for v in th.values.iter_mut() {
        *v *= s;
    }
    Ok(th)
}

/// Specification of half-period bump data.
#[derive(Debug, Clone)]
pub struct HalfPeriodSpec {
    pub domain: Domain,
    pub kernel: KernelSpec,
    /// Sup-norm of the scalar (attained exactly).
    pub theta_sup: f64,
    /// Peak vorticity.
    pub omega_max: f64,
    /// Left edge of the bump support, absolute.
    pub support_offset: f64,
    /// Width of the bump support, absolute; support is
    /// `(offset, offset + width) ⊂ (0, L/2]`.
    pub support_width: f64,
}

/// Builds odd vorticity and even scalar from matching bump profiles on
/// `(0, L/2)`, validates every structural requirement, and returns the
/// assembled state at `t = 0`.
pub fn build_half_period(spec: &HalfPeriodSpec) -> Result<SystemState> {
    let d = spec.domain;
    if d.mode != GridMode::Periodic {
        return Err(Error::InvalidConfig(
            "half-period data lives on a periodic grid".into(),
        ));
    }
    let l = d.length;
    let h = d.spacing();
    if !(spec.theta_sup > 0.0 && spec.omega_max > 0.0) {
        return Err(Error::InvalidConfig(
            "theta_sup and omega_max must be positive".into(),
        ));
    }
    if spec.support_offset < 0.0
        || spec.support_width <= 0.0
        || spec.support_offset + spec.support_width > 0.5 * l + 1e-12 * l
    {
        return Err(Error::InvalidConfig(format!(
            "bump support ({}, {}) must sit inside (0, L/2)",
            spec.support_offset,
            spec.support_offset + spec.support_width
        )));
    }
    if spec.support_width < 8.0 * h {
        return Err(Error::InvalidConfig(format!(
            "bump width {} under-resolved: fewer than 8 cells",
            spec.support_width
        )));
    }
    let half_profile = |x: f64| {
        let r = 2.0 * (x - spec.support_offset) / spec.support_width - 1.0;
        bump01(r)
    };
    let odd_profile = |x: f64| {
        if x < 0.5 * l {
            half_profile(x)
        } else {
            -half_profile(l - x)
        }
    };
    let omega = GridField::from_fn(d, |x| spec.omega_max * odd_profile(x));
    let slope = GridField::from_fn(d, odd_profile);
    let theta = antiderivative_scaled(&slope, spec.theta_sup)?;

    omega.check_parity(Parity::Odd)?;
    theta.check_parity(Parity::Even)?;
    let mean = omega.mean().abs();
    if mean > 1e-13 * omega.max_abs().max(1.0) {
        return Err(Error::MeanNotZero {
            mean,
            tol: 1e-13 * omega.max_abs().max(1.0),
        });
    }
    let th0 = theta.trig_interp_zero()?.abs();
    if th0 > 1e-11 * spec.theta_sup {
        return Err(Error::InvalidConfig(format!(
            "scalar does not vanish at the origin: {th0:e}"
        )));
    }
    // The scalar must be (weakly) nondecreasing across the first half;
    // the cumulative construction guarantees this to round-off.
    let min_step = theta.values[..d.n / 2]
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    if min_step < -1e-14 * spec.theta_sup {
        return Err(Error::InvalidConfig(format!(
            "scalar dips on (0, L/2): worst node step {min_step:e}"
        )));
    }
    Ok(SystemState {
        t: 0.0,
        omega,
        theta,
        kernel: spec.kernel.clone(),
        symmetric: true,
    })
}

/// How the small-support builder chooses the scalar transition layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmplitudeMode {
    /// Use the full support width as the transition layer.
    Fixed,
    /// Halve the transition layer until the monitored functional `I(0)`
    /// reaches the perturbed-argument threshold, or fail when the layer
    /// hits the 8-cell resolution guard.
    AutoThreshold,
}

/// Specification of small-support data for a perturbed kernel.
#[derive(Debug, Clone)]
pub struct CompactSupportSpec {
    pub domain: Domain,
    pub f: PerturbationFn,
    pub theta_sup: f64,
    pub omega_max: f64,
    /// Support radius; `None` picks `min(eps1, eps2) / 2`.
    pub epsilon: Option<f64>,
    pub amplitude: AmplitudeMode,
    /// Resolution for the admissibility scans.
    pub scan_resolution: usize,
}

/// What the small-support builder measured and chose.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CompactReport {
    pub epsilon: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub c_f: f64,
    /// Scalar transition-layer width actually used.
    pub layer: f64,
    /// Achieved `I(0)`.
    pub i0: f64,
    /// Threshold the perturbed argument asks for.
    pub required_i0: f64,
    /// Initial half-cell vorticity mass.
    pub mass0: f64,
}

/// Builds small-support data: vorticity bump on `(0, 0.99 eps)` and scalar
/// rising to its sup over a transition layer, both odd/even as required.
/// Fails if `eps` exceeds the scanned admissibility bound, if the support
/// is under-resolved, or (in [`AmplitudeMode::AutoThreshold`]) if the layer
/// compression hits the resolution guard before `I(0)` reaches the
/// threshold.
pub fn build_compact_support(spec: &CompactSupportSpec) -> Result<(SystemState, CompactReport)> {
    let d = spec.domain;
    if d.mode != GridMode::Periodic {
        return Err(Error::InvalidConfig(
            "small-support data lives on a periodic grid".into(),
        ));
    }
    let l = d.length;
    let h = d.spacing();
    if (spec.f.period() - l).abs() > 1e-12 * l {
        return Err(Error::InvalidConfig(
            "perturbation period does not match the domain".into(),
        ));
    }
    if !(spec.theta_sup > 0.0 && spec.omega_max > 0.0) {
        return Err(Error::InvalidConfig(
            "theta_sup and omega_max must be positive".into(),
        ));
    }
    let eps1 = estimate_eps1(&spec.f, spec.scan_resolution);
    let eps2 = estimate_eps2(&spec.f, spec.scan_resolution);
    let admissible = eps1.min(eps2);
    let eps = spec.epsilon.unwrap_or(0.5 * admissible);
    if eps > admissible {
        return Err(Error::EpsTooLarge {
            eps,
            eps1,
            eps2,
        });
    }
    let width = 0.99 * eps;
    if width < 8.0 * h {
        return Err(Error::SupportViolation(format!(
            "support radius {eps} under-resolved: bump width {width} spans fewer than 8 cells"
        )));
    }
    let c_f = estimate_cf(&spec.f, spec.scan_resolution);
    let required = required_i0(c_f, spec.theta_sup, l);

    let odd_bump = |x: f64, w: f64| {
        let pos = |t: f64| bump01(2.0 * t / w - 1.0);
        if x < 0.5 * l {
            pos(x)
        } else {
            -pos(l - x)
        }
    };
    let omega = GridField::from_fn(d, |x| spec.omega_max * odd_bump(x, width));

    let build_theta = |layer: f64| -> Result<GridField> {
        let slope = GridField::from_fn(d, |x| odd_bump(x, layer));
        antiderivative_scaled(&slope, spec.theta_sup)
    };

    let mut layer = width;
    let mut theta = build_theta(layer)?;
    let mut i0 = compute_i(&theta)?;
    if spec.amplitude == AmplitudeMode::AutoThreshold {
        while i0 < required {
            let next = 0.5 * layer;
            if next < 8.0 * h {
                return Err(Error::SupportViolation(format!(
                    "transition layer hit the 8-cell resolution guard at width {layer:.3e} \
                     with I(0) = {i0:.6} still below the threshold {required:.6}"
                )));
            }
            layer = next;
            theta = build_theta(layer)?;
            i0 = compute_i(&theta)?;
        }
    }

    omega.check_parity(Parity::Odd)?;
    theta.check_parity(Parity::Even)?;
    let mass0 = omega.integrate(0.0, 0.5 * l)?;
    let state = SystemState {
        t: 0.0,
        omega,
        theta,
        kernel: KernelSpec::Perturbed { f: spec.f.clone() },
        symmetric: true,
    };
    state.validate()?;
    Ok((
        state,
        CompactReport {
            epsilon: eps,
            eps1,
            eps2,
            c_f,
            layer,
            i0,
            required_i0: required,
            mass0,
        },
    ))
}
