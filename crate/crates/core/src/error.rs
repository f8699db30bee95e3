use alloc::string::String;

/// Errors raised by the invariant engine.
///
/// Parameter errors are user-facing; [`Error::Consistency`] is a tripwire
/// that fires when two independent routes to the same invariant disagree.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("genus must be positive")]
    ZeroGenus,
    #[error("expected a vector of length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("homology class is not primitive (gcd of entries is {gcd})")]
    NotPrimitive { gcd: i64 },
    #[error("twist exponents must be nonzero")]
    ZeroExponent,
    #[error("parameters must satisfy 0 <= d <= k <= g with g >= 1 (got d={d}, k={k}, g={g})")]
    ParameterOrder { d: u32, k: u32, g: u32 },
    #[error("invalid Euler class: {0}")]
    EulerClass(EulerClassError),
    #[error("invalid fiber sum: {0}")]
    FiberSum(&'static str),
    #[error("invalid elliptic surface: {0}")]
    EllipticSurface(&'static str),
    #[error("triple ({a}, {b}, {c}) is not admissible: {reason}")]
    Inadmissible {
        a: i64,
        b: i64,
        c: i64,
        reason: &'static str,
    },
    #[error("signature {0} is not a negative multiple of 8")]
    Signature(i64),
    #[error("genus {requested} is below the minimum {minimum} for this recipe")]
    Genus { requested: u32, minimum: u32 },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("matrix dimensions do not match")]
    Dimension,
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

/// Ways an Euler class can fail to match its tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum EulerClassError {
    #[error("tag must be 0, 1 or 2")]
    UnknownTag,
    #[error("tag 1 requires d != 0")]
    TagOneWithoutTwistedHandles,
    #[error("tag 2 requires d != k")]
    TagTwoWithoutFixedHandles,
    #[error("class does not restrict to zero on the fiber")]
    NonzeroFiberRestriction,
    #[error("tag 0 requires the zero class")]
    NonzeroForTagZero,
    #[error("tag 1 requires a single basis class alpha_i ^ theta with i <= d")]
    NotTwistedBasisVector,
    #[error("tag 2 requires a class supported on the d < i <= k block")]
    OutsideFixedBlock,
    #[error("tag 2 requires a primitive class")]
    NotPrimitive,
}

impl From<EulerClassError> for Error {
    fn from(e: EulerClassError) -> Self {
        Error::EulerClass(e)
    }
}

pub type Result<T> = core::result::Result<T, Error>;
