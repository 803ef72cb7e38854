//! Staggered grids, quadrature, parity projections and spectral operators.
//!
//! All fields live on cell midpoints: `x_j = (j + 1/2) L / N` on the periodic
//! cell `[0, L)`, or `x_j = -X + (j + 1/2) (2X) / N` on the real-line window
//! `[-X, X]`. The midpoint layout avoids placing a node on the singular point
//! `x = 0` and makes the reflection `x -> -x` an exact index reversal
//! `j <-> N - 1 - j` in both geometries, so parity projections never resample.

use crate::{Error, Result};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use std::sync::{Mutex, OnceLock};

/// Relative tolerance used when checking declared symmetry of a field.
pub const TOL_SYM: f64 = 1e-12;

/// Geometry of the computational domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridMode {
    /// Periodic cell `[0, L)`.
    Periodic,
    /// Truncated real line `[-X, X]` (compactly supported fields only).
    RealLine,
}

/// Parity class of a field under `x -> -x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// Discretized domain: geometry plus grid size.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Domain {
    pub mode: GridMode,
    /// Total length of the window: the period `L`, or `2X` on the real line.
    pub length: f64,
    /// Number of cells; even and at least 16.
    pub n: usize,
}

impl Domain {
    pub fn periodic(length: f64, n: usize) -> Result<Self> {
        Self::new(GridMode::Periodic, length, n)
    }

    /// Real-line window `[-half_width, half_width]`.
    pub fn real_line(half_width: f64, n: usize) -> Result<Self> {
        Self::new(GridMode::RealLine, 2.0 * half_width, n)
    }

    fn new(mode: GridMode, length: f64, n: usize) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "domain length must be positive and finite, got {length}"
            )));
        }
        if n < 16 || n % 2 != 0 {
            return Err(Error::InvalidConfig(format!(
                "grid size must be even and at least 16, got {n}"
            )));
        }
        Ok(Domain { mode, length, n })
    }

    /// Cell width.
    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Coordinate of the j-th cell midpoint.
    pub fn node(&self, j: usize) -> f64 {
        let h = self.spacing();
        match self.mode {
            GridMode::Periodic => (j as f64 + 0.5) * h,
            GridMode::RealLine => (j as f64 + 0.5) * h - 0.5 * self.length,
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    /// Lower edge of the window (0 or -X).
    pub fn lower(&self) -> f64 {
        match self.mode {
            GridMode::Periodic => 0.0,
            GridMode::RealLine => -0.5 * self.length,
        }
    }

    pub fn upper(&self) -> f64 {
        self.lower() + self.length
    }

    /// Half-width `X` of a real-line window.
    pub fn half_width(&self) -> f64 {
        0.5 * self.length
    }

    /// Wavenumber scale `2 pi / L` (periodic grids).
    pub fn k0(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.length
    }

    /// `mu = pi / L`, the half-wavenumber entering every kernel formula.
    pub fn mu(&self) -> f64 {
        std::f64::consts::PI / self.length
    }
}

/// A scalar field sampled on the cell midpoints of a [`Domain`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub domain: Domain,
    pub values: Vec<f64>,
}

impl GridField {
    pub fn new(domain: Domain, values: Vec<f64>) -> Result<Self> {
        if values.len() != domain.n {
            return Err(Error::InvalidConfig(format!(
                "field length {} does not match grid size {}",
                values.len(),
                domain.n
            )));
        }
        Ok(GridField { domain, values })
    }

    pub fn zeros(domain: Domain) -> Self {
        GridField {
            domain,
            values: vec![0.0; domain.n],
        }
    }

    pub fn from_fn(domain: Domain, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..domain.n).map(|j| f(domain.node(j))).collect();
        GridField { domain, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Midpoint-rule integral over `[a, b]`, which must be a non-empty
    /// sub-interval of the domain window. Cells partially covered by `[a, b]`
    /// contribute proportionally to the overlap, which makes the rule exactly
    /// additive across interior split points.
    pub fn integrate(&self, a: f64, b: f64) -> Result<f64> {
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(Error::InvalidConfig(format!(
                "integration interval [{a}, {b}] is empty or not finite"
            )));
        }
        let (lo, hi) = (self.domain.lower(), self.domain.upper());
        if a < lo - 1e-12 * self.domain.length || b > hi + 1e-12 * self.domain.length {
            return Err(Error::InvalidConfig(format!(
                "integration interval [{a}, {b}] leaves the domain window [{lo}, {hi}]"
            )));
        }
        let h = self.domain.spacing();
        let mut sum = 0.0;
        for (j, &v) in self.values.iter().enumerate() {
            let cell_lo = lo + j as f64 * h;
            let cell_hi = cell_lo + h;
            let overlap = (b.min(cell_hi) - a.max(cell_lo)).max(0.0);
            if overlap > 0.0 {
                sum += v * overlap;
            }
        }
        Ok(sum)
    }

    /// Odd part `(v(x) - v(-x)) / 2`, computed by exact index reversal.
    pub fn project_odd(&self) -> GridField {
        let n = self.len();
        let values = (0..n)
            .map(|j| 0.5 * (self.values[j] - self.values[n - 1 - j]))
            .collect();
        GridField {
            domain: self.domain,
            values,
        }
    }

    /// Even part `(v(x) + v(-x)) / 2`.
    pub fn project_even(&self) -> GridField {
        let n = self.len();
        let values = (0..n)
            .map(|j| 0.5 * (self.values[j] + self.values[n - 1 - j]))
            .collect();
        GridField {
            domain: self.domain,
            values,
        }
    }

    /// Relative size of the component violating the declared parity:
    /// `max_j |v_j -/+ v_{N-1-j}| / (2 max|v|)`, zero for the zero field.
    pub fn symmetry_defect(&self, parity: Parity) -> f64 {
        let n = self.len();
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0_f64;
        for j in 0..n {
            let d = match parity {
                Parity::Odd => self.values[j] + self.values[n - 1 - j],
                Parity::Even => self.values[j] - self.values[n - 1 - j],
            };
            worst = worst.max(d.abs());
        }
        worst / (2.0 * scale)
    }

    /// Error if the field's declared parity is violated beyond `TOL_SYM`.
    pub fn check_parity(&self, parity: Parity) -> Result<()> {
        let defect = self.symmetry_defect(parity);
        if defect > TOL_SYM {
            return Err(Error::SymmetryViolation(format!(
                "{parity:?} parity defect {defect:e} exceeds {TOL_SYM:e}"
            )));
        }
        Ok(())
    }

    /// Spectral derivative on a periodic grid (Nyquist mode zeroed).
    pub fn spectral_derivative(&self) -> Result<GridField> {
        if self.domain.mode != GridMode::Periodic {
            return Err(Error::InvalidConfig(
                "spectral derivative requires a periodic grid".into(),
            ));
        }
        let n = self.len();
        let k0 = self.domain.k0();
        let mut spec = fft_forward(&self.values);
        for (k, c) in spec.iter_mut().enumerate() {
            let m = signed_index(k, n);
            *c *= Complex::new(0.0, k0 * m as f64);
        }
        Ok(GridField {
            domain: self.domain,
            values: fft_inverse_re(spec),
        })
    }

    /// Fourth-order centered finite-difference derivative. Periodic grids
    /// wrap; real-line grids treat the field as zero beyond the window, which
    /// is exact for the compactly supported data this geometry carries.
    pub fn fd4_derivative(&self) -> GridField {
        let n = self.len();
        let h = self.domain.spacing();
        let get = |i: isize| -> f64 {
            match self.domain.mode {
                GridMode::Periodic => self.values[i.rem_euclid(n as isize) as usize],
                GridMode::RealLine => {
                    if i < 0 || i >= n as isize {
                        0.0
                    } else {
                        self.values[i as usize]
                    }
                }
            }
        };
        let values = (0..n as isize)
            .map(|i| (get(i - 2) - 8.0 * get(i - 1) + 8.0 * get(i + 1) - get(i + 2)) / (12.0 * h))
            .collect();
        GridField {
            domain: self.domain,
            values,
        }
    }

    /// Value at `x = 0` of the trigonometric interpolant through the samples
    /// (periodic grids). The staggered layout has no node at the origin, so
    /// boundary values of the advected scalar are read off this way.
    pub fn trig_interp_zero(&self) -> Result<f64> {
        if self.domain.mode != GridMode::Periodic {
            return Err(Error::InvalidConfig(
                "trigonometric interpolation requires a periodic grid".into(),
            ));
        }
        let n = self.len();
        let spec = fft_forward(&self.values);
        // Samples sit at x_j = (j + 1/2) h, so the interpolant evaluated at
        // x = 0 picks up the half-cell phase e^{-i pi m / N} on each mode.
        let mut sum = 0.0;
        for (k, c) in spec.iter().enumerate() {
            let m = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
            let phase = -std::f64::consts::PI * m / n as f64;
            sum += c.re * phase.cos() - c.im * phase.sin();
        }
        Ok(sum / n as f64)
    }
}

/// Signed wavenumber index for differentiation: `k` for `k < N/2`, `k - N`
/// for `k > N/2`, and 0 at the Nyquist bin (its derivative is not
/// representable on the grid).
pub fn signed_index(k: usize, n: usize) -> i64 {
    if 2 * k < n {
        k as i64
    } else if 2 * k == n {
        0
    } else {
        k as i64 - n as i64
    }
}

/// Absolute wavenumber `min(k, N - k)`, used by velocity multipliers where
/// the Nyquist bin keeps its physical modulus.
pub fn abs_index(k: usize, n: usize) -> usize {
    k.min(n - k)
}

static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();

fn planner() -> &'static Mutex<FftPlanner<f64>> {
    PLANNER.get_or_init(|| Mutex::new(FftPlanner::new()))
}

/// Forward FFT of a real sequence (unnormalized, rustfft convention).
pub(crate) fn fft_forward(v: &[f64]) -> Vec<Complex<f64>> {
    let mut buf: Vec<Complex<f64>> = v.iter().map(|&x| Complex::new(x, 0.0)).collect();
    let plan = planner().lock().unwrap().plan_fft_forward(buf.len());
    plan.process(&mut buf);
    buf
}

/// Inverse FFT, returning the real part scaled by 1/N.
pub(crate) fn fft_inverse_re(mut buf: Vec<Complex<f64>>) -> Vec<f64> {
    let n = buf.len();
    let plan = planner().lock().unwrap().plan_fft_inverse(n);
    plan.process(&mut buf);
    buf.into_iter().map(|c| c.re / n as f64).collect()
}
