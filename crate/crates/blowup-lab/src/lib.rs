//! Numerical laboratory for a one-dimensional transport system whose velocity
//! is reconstructed from the advected vorticity through a logarithmic kernel.
//!
//! The system couples a vorticity field `w` and a scalar `theta` on a periodic
//! cell (or an interval of the real line):
//!
//! ```text
//!     w_t  + u w_x  = theta_x
//!     th_t + u th_x = 0
//!     u    = convolution of w with a log-type kernel
//! ```
//!
//! Odd initial vorticity and even scalar drive a stagnation-point collapse at
//! the origin and the solution blows up in finite time. The crate provides the
//! building blocks to simulate that collapse, to verify the sign/monotonicity
//! inequalities behind the blow-up argument by exhaustive scanning, and to
//! compare the observed growth against the Riccati-type comparison system
//! `I' = C Q`, `Q' = I^2`.
//!
//! Module map:
//!
//! * [`grid`] — staggered grids, integration, parity projections, spectral
//!   derivatives and interpolation.
//! * [`kernels`] — closed forms of the kernel family, the two-point
//!   interaction functions `F`, `K`, `G`, and their quadratic-in-`a`
//!   coefficient decomposition.
//! * [`velocity`] — velocity reconstruction for each kernel family (spectral
//!   multipliers, smooth-correction quadrature, perturbed double sums,
//!   real-line quadrature with singularity splitting).
//! * [`evolution`] — dealiased RK4 time stepping with parity enforcement and
//!   termination bookkeeping.
//! * [`diagnostics`] — the monitored functionals `I`, `J`, the accumulated
//!   gradient integral, blow-up time fits, and the comparison-system solver.
//! * [`scans`] — grid scans that certify the pointwise inequalities used by
//!   the blow-up argument, with refinement checks.
//! * [`scenarios`] — validated initial-data builders (half-period data and
//!   small-support data with perturbed kernels) and the admissible-support
//!   estimators.
//! * [`runner`] — config-file driven experiments writing `series.csv`,
//!   `manifest.json` and JSON scan reports; used by the CLI binary.

pub mod diagnostics;
pub mod evolution;
pub mod grid;
pub mod kernels;
pub mod runner;
pub mod scans;
pub mod scenarios;
pub mod velocity;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A constructor or experiment received parameters outside its contract.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    /// An evaluation point sits on (or too close to) a singular locus.
    #[error("singular evaluation: {0}")]
    Singular(String),
    /// Velocity reconstruction requires mean-zero vorticity.
    #[error("vorticity mean {mean:e} exceeds tolerance {tol:e}")]
    MeanNotZero { mean: f64, tol: f64 },
    /// A field violated its declared parity class.
    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),
    /// Data support touches a boundary it must stay away from.
    #[error("support violation: {0}")]
    SupportViolation(String),
    /// Requested support radius exceeds the admissible bound.
    #[error(
        "support radius {eps:.6} exceeds the admissible support-size bound \
         min(eps1, eps2) = min({eps1:.6}, {eps2:.6})"
    )]
    EpsTooLarge { eps: f64, eps1: f64, eps2: f64 },
    /// A user-supplied kernel perturbation failed validation.
    #[error("perturbation rejected: {0}")]
    PerturbationInvalid(String),
    /// A curve fit did not meet its quality guard.
    #[error("fit failed: {0}")]
    FitFailed(String),
    /// A field or functional became non-finite.
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("config parse failure: {0}")]
    ConfigParse(#[from] toml::de::Error),
    #[error("report serialization failure: {0}")]
    ReportWrite(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code the CLI maps this error to: `3` for numerical
    /// failures (non-finite values), `2` for everything else (validation,
    /// configuration, i/o).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonFinite(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
