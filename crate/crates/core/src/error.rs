use thiserror::Error;

/// Errors raised by the numerical operations of this crate.
///
/// Divergent suprema are results, not errors: they are reported through
/// [`crate::weighted::SupremumReport`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("curvature profile is not Cartan-Hadamard: K(r) = {k} < 0 at r = {r}")]
    NonHadamardProfile { r: f64, k: f64 },
    #[error(
        "grid too coarse: local error estimate {estimate:e} exceeds {tolerance:e} near r = {r}"
    )]
    GridTooCoarse {
        r: f64,
        estimate: f64,
        tolerance: f64,
    },
    #[error("radius {r} outside model domain (0, {r_max}]")]
    OutOfDomain { r: f64, r_max: f64 },
    #[error("Ricci curvature does not vanish at infinity (decay ratio {decay_ratio} over the last octave)")]
    CurvatureNotVanishing { decay_ratio: f64 },
    #[error("profile is flat outside B_R: uniformization radius is infinite")]
    FlatProfile,
    #[error("tail growth of psi fits neither exponential nor power model (relative residual {residual:e})")]
    TailUnclassifiable { residual: f64 },
    #[error("exponent p = {p} outside the admissible range {range}")]
    InvalidExponent { p: f64, range: &'static str },
    #[error("exponent p = {p} below the critical exponent {critical}")]
    BelowCriticalExponent { p: f64, critical: f64 },
    #[error("supremum diverges at p = {p}")]
    DivergentPoint { p: f64 },
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("explicit scheme lost stability at t = {t}")]
    StabilityFailure { t: f64 },
    #[error("time step budget of {steps} exhausted at t = {t}")]
    StepLimit { steps: usize, t: f64 },
    #[error("fit window spans {decades:.3} decades, need {needed}")]
    InsufficientWindow { decades: f64, needed: f64 },
    #[error("parameter `{name}` = {value} out of range: {reason}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("malformed model table: {0}")]
    Table(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}
