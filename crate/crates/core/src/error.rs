use core::fmt;

use crate::C64;

/// Reasons a measure description is rejected at construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MeasureDefect {
    NonFinite,
    NegativePosition(f64),
    NonPositiveMass { position: f64, mass: f64 },
    DuplicateAtom(f64),
    EmptySegment { start: f64, end: f64 },
    NegativeDensity(f64),
    OverlappingSegments { first_end: f64, second_start: f64 },
    OutsideRepresentation { position: f64, b_rep: f64 },
    NegativeTail(f64),
}

impl fmt::Display for MeasureDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MeasureDefect::NonFinite => write!(f, "non-finite value in measure description"),
            MeasureDefect::NegativePosition(p) => write!(f, "negative position {p}"),
            MeasureDefect::NonPositiveMass { position, mass } => {
                write!(f, "atom at {position} has non-positive mass {mass}")
            }
            MeasureDefect::DuplicateAtom(p) => write!(f, "two atoms at position {p}"),
            MeasureDefect::EmptySegment { start, end } => {
                write!(f, "segment [{start}, {end}) is empty")
            }
            MeasureDefect::NegativeDensity(d) => write!(f, "negative density {d}"),
            MeasureDefect::OverlappingSegments {
                first_end,
                second_start,
            } => write!(
                f,
                "segments overlap: one ends at {first_end}, the next starts at {second_start}"
            ),
            MeasureDefect::OutsideRepresentation { position, b_rep } => {
                write!(f, "point {position} lies beyond b_rep = {b_rep}")
            }
            MeasureDefect::NegativeTail(d) => write!(f, "negative tail density {d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(MeasureDefect),
    #[error("measure is identically zero")]
    ZeroMeasure,
    #[error("R1 and R2 share an atom at {0}")]
    CommonAtom(f64),
    #[error("1 and R1 are linearly dependent in L2(R2) on every initial interval")]
    Indefinite,
    #[error("invalid endpoint {endpoint}: {reason}")]
    InvalidEndpoint { endpoint: f64, reason: &'static str },
    #[error("system is not regular")]
    NotRegular,
    #[error("system is not singular")]
    NotSingular,
    #[error("dR1 and dR2 both carry density on [{start}, {end})")]
    NonAtomicRegion { start: f64, end: f64 },
    #[error("denominator of the m-coefficient vanishes")]
    DivisionDegenerate,
    #[error("spectral parameter must have nonzero imaginary part")]
    ImaginaryPartRequired,
    #[error("tolerance unreachable after {iterations} steps (last radius {last_radius:e})")]
    ToleranceUnreachable { iterations: usize, last_radius: f64 },
    #[error("R2(b) is infinite")]
    InfiniteR2Total,
    #[error("excluded point: lambda = {0}")]
    ExcludedPoint(C64),
    #[error("probe not applicable: {0}")]
    ProbeNotApplicable(&'static str),
    #[error("point {x} lies outside [0, {limit}]")]
    OutOfRange { x: f64, limit: f64 },
    #[error("invalid piecewise polynomial: {0}")]
    InvalidPieces(&'static str),
}

impl From<MeasureDefect> for Error {
    fn from(defect: MeasureDefect) -> Self {
        Error::InvalidMeasure(defect)
    }
}

pub type Result<T> = core::result::Result<T, Error>;
