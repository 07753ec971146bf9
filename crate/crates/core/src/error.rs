use alloc::string::String;
use core::fmt;

/// Failure modes shared by every numeric routine in the crate.
///
/// Variants that mean "a proved inequality failed" (`InequalityViolated`,
/// `StructureViolation`, `NegativeGap`, `MethodDisagreement`) indicate a defect
/// in this library, not a mathematical discovery.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    TailNotDecaying { index: u64 },
    NoConvergence { what: &'static str, detail: String },
    TailBoundMissing,
    SuspectedTangency { location: f64, min_abs: f64 },
    IllConditioned { relative_error: f64 },
    ZeroLeadingCoefficient,
    InsufficientData { needed: usize, available: usize },
    NonRealMultiplier,
    ZeroInExclusionInterval { d: usize },
    RootFindingNoConvergence { degree: usize },
    ZeroAtOrigin,
    CommonZero,
    BoundaryZeroSuspected { re: f64, im: f64 },
    StructureViolation { interval: usize, detail: String },
    InequalityViolated { name: &'static str, t: f64, margin: f64 },
    MethodDisagreement { z: f64, difference: f64, tolerance: f64 },
    StripViolation { im: f64 },
    NegativeGap { n: usize, gap: f64 },
    InvalidArgument(String),
}

impl Error {
    /// True for errors that report a failed proved inequality or structural theorem.
    pub fn is_violation(&self) -> bool {
        matches!(
            self,
            Error::InequalityViolated { .. }
                | Error::StructureViolation { .. }
                | Error::NegativeGap { .. }
                | Error::MethodDisagreement { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TailNotDecaying { index } => {
                write!(f, "series tail did not meet tolerance by index {index}")
            }
            Error::NoConvergence { what, detail } => write!(f, "{what} did not converge: {detail}"),
            Error::TailBoundMissing => write!(f, "infinite interval requires a tail bound"),
            Error::SuspectedTangency { location, min_abs } => write!(
                f,
                "suspected tangency near {location}: |f| = {min_abs:e} without a sign change"
            ),
            Error::IllConditioned { relative_error } => {
                write!(f, "ill-conditioned determinant (relative error {relative_error:e})")
            }
            Error::ZeroLeadingCoefficient => write!(f, "leading coefficient c0 is zero"),
            Error::InsufficientData { needed, available } => {
                write!(f, "need {needed} terms, only {available} available")
            }
            Error::NonRealMultiplier => write!(f, "multiplier polynomial has nonreal zeros"),
            Error::ZeroInExclusionInterval { d } => {
                write!(f, "multiplier polynomial has a zero in [0, {d}]")
            }
            Error::RootFindingNoConvergence { degree } => {
                write!(f, "simultaneous root iteration failed for degree {degree}")
            }
            Error::ZeroAtOrigin => write!(f, "canonical product zero list contains 0"),
            Error::CommonZero => write!(f, "P and Q have a common zero"),
            Error::BoundaryZeroSuspected { re, im } => {
                write!(f, "function nearly vanishes on the contour near {re}{im:+}i")
            }
            Error::StructureViolation { interval, detail } => {
                write!(f, "ambient interval {interval}: {detail}")
            }
            Error::InequalityViolated { name, t, margin } => {
                write!(f, "inequality {name} fails at t = {t} (margin {margin:e})")
            }
            Error::MethodDisagreement { z, difference, tolerance } => write!(
                f,
                "series and integral disagree at z = {z}: {difference:e} > {tolerance:e}"
            ),
            Error::StripViolation { im } => write!(f, "|Im z| = {im} exceeds 1"),
            Error::NegativeGap { n, gap } => write!(f, "sum rule gap negative at N = {n}: {gap:e}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
