use alloc::string::String;
use core::fmt;

/// Errors raised by profile construction, the integrators, and the solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constructor argument violates its domain.
    InvalidParameter(String),
    /// An operation needs the `-kappa + beta/r^2` tail, but the profile is a
    /// tabulated one without tail parameters.
    MissingTail(&'static str),
    /// Point evaluation outside the solved/tabulated range.
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    /// The Riccati variable `S = J'/J` crossed zero. Nonpositive curvature
    /// rules this out, so it indicates a corrupted profile or integrator.
    ConjugatePoint { t: f64 },
    /// The integrator ran out of its step budget.
    StepBudget { t: f64 },
    /// Error control pushed the step size to the rounding floor.
    StepUnderflow { t: f64, h: f64 },
    /// No sign change / node-count transition found while expanding a bracket.
    BracketFailure(String),
    /// An iteration failed to converge within its budget.
    NoConvergence(String),
    /// The two-term tail fit left a residual too large to trust; the fit
    /// window starts before the asymptote has set in.
    TailNotAsymptotic { residual: f64, threshold: f64 },
    /// Adaptive quadrature exceeded its panel budget.
    Quadrature(String),
    /// The target curvature drops below the model lower bound somewhere on
    /// the transplantation range.
    DominationViolated { r: f64, target: f64, bound: f64 },
    /// A documented precondition of an experiment does not hold.
    Precondition(String),
    /// Results are internally inconsistent (signals numerical trouble, not a
    /// violated theorem).
    Inconsistent(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::MissingTail(op) => {
                write!(f, "{op} requires a profile with (kappa, beta) tail parameters")
            }
            Error::OutOfRange { what, value, lo, hi } => {
                write!(f, "{what} = {value} outside [{lo}, {hi}]")
            }
            Error::ConjugatePoint { t } => {
                write!(f, "S = J'/J crossed zero at t = {t} (conjugate point)")
            }
            Error::StepBudget { t } => write!(f, "step budget exhausted at t = {t}"),
            Error::StepUnderflow { t, h } => {
                write!(f, "step size underflow at t = {t} (h = {h:e}); tolerance unachievable")
            }
            Error::BracketFailure(msg) => write!(f, "bracketing failed: {msg}"),
            Error::NoConvergence(msg) => write!(f, "no convergence: {msg}"),
            Error::TailNotAsymptotic { residual, threshold } => write!(
                f,
                "tail fit residual {residual:e} above {threshold:e}; move the fit window outward"
            ),
            Error::Quadrature(msg) => write!(f, "quadrature failed: {msg}"),
            Error::DominationViolated { r, target, bound } => write!(
                f,
                "curvature domination fails at r = {r}: target {target} < model bound {bound}"
            ),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Inconsistent(msg) => write!(f, "inconsistent result: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
