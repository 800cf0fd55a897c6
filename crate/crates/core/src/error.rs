use core::fmt;

/// Errors raised by the algebraic and numeric routines of this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two projective points (or a point and an operation) disagree on dimension.
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// A coordinate tuple with every entry zero (or below the float floor).
    ZeroPoint,
    /// The modulus is not an odd prime below 2^61.
    InvalidModulus(u64),
    /// Tolerances must be positive with `proj >= abs`.
    InvalidTolerance,
    /// Jacobi parameters with u, v or u + v zero.
    SingularParameters,
    /// A coordinate tuple that fails the curve equations.
    NotOnCurve,
    /// Every addition law vanished on an on-curve pair; completeness is broken.
    AllLawsVanish,
    NonDistinctCoefficients,
    SquareRootUnavailable,
    ImaginaryUnitUnavailable,
    ExceptionalPair,
    WrongClass,
    AllZeroCoefficients,
    /// A numeric solve did not reach its residual floor.
    SolverFailure,
    RamificationAtZeroCoordinate,
    NotOnQuartic,
    /// The representative pair lies on (or too close to) a graph Q = g.P.
    NearRamification,
    CoincidentProjections,
    TangentLine,
    MatchFailure,
    DegenerateContact,
    SamplerExhausted,
    InvalidParams,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ZeroPoint => write!(f, "all coordinates vanish"),
            Error::InvalidModulus(p) => write!(f, "{p} is not an odd prime below 2^61"),
            Error::InvalidTolerance => write!(f, "tolerances must be positive with proj >= abs"),
            Error::SingularParameters => write!(f, "u, v and u+v must all be nonzero"),
            Error::NotOnCurve => write!(f, "point does not lie on the curve"),
            Error::AllLawsVanish => write!(f, "all four addition laws vanish (completeness violated)"),
            Error::NonDistinctCoefficients => write!(f, "diagonal coefficients are not pairwise distinct"),
            Error::SquareRootUnavailable => write!(f, "square root does not exist in this field"),
            Error::ImaginaryUnitUnavailable => write!(f, "field has no square root of -1"),
            Error::ExceptionalPair => write!(f, "pair lies in the exceptional locus"),
            Error::WrongClass => write!(f, "slice has the wrong geometric class"),
            Error::AllZeroCoefficients => write!(f, "all coefficients are zero"),
            Error::SolverFailure => write!(f, "numeric solver did not converge"),
            Error::RamificationAtZeroCoordinate => write!(f, "point has a zero coordinate; lift is ramified"),
            Error::NotOnQuartic => write!(f, "point does not lie on the plane quartic"),
            Error::NearRamification => write!(f, "pair is on or near the ramification locus"),
            Error::CoincidentProjections => write!(f, "both points have the same image on the quartic"),
            Error::TangentLine => write!(f, "line is tangent to the quartic"),
            Error::MatchFailure => write!(f, "could not match roots to the given points"),
            Error::DegenerateContact => write!(f, "bitangent contact points coincide"),
            Error::SamplerExhausted => write!(f, "sampler exhausted its attempts"),
            Error::InvalidParams => write!(f, "invalid parameters"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
