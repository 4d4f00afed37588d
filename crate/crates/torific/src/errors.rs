//! Crate-wide error type.
//!
//! Each failure carries the module it originated from so the CLI can emit a
//! machine-readable envelope `{code, module, message, context}`.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("series: negative power of a non-unit series")]
    NegativePowerOfNonUnit,
    #[error("series: incompatible variable tags `{0}` and `{1}`")]
    IncompatibleVariableTags(String, String),
    #[error("series: constant term {0} is not a rational {1}-th power")]
    ConstantTermNotNthPower(String, u32),
    #[error("{0}: truncation insufficient ({1})")]
    TruncationInsufficient(&'static str, String),

    #[error("lattice: zero vector where a nonzero one is required")]
    ZeroVector,
    #[error("lattice: vectors are not part of a lattice basis")]
    NotPartOfBasis,
    #[error("lattice: cone has dimension {0} > 2, cannot regularize")]
    ConeDimensionTooHigh(usize),
    #[error("lattice: cone is not a member of the fan")]
    ConeNotInFan,
    #[error("lattice: two theta cones coincide (hypotheses violated)")]
    ThetaConesCoincide,
    #[error("lattice: cone collection is not a fan ({0})")]
    NotAFan(String),

    #[error("branch: a Newton polygon step requires an irrational root ({0})")]
    NeedsFieldExtension(String),
    #[error("branch: polynomial is not square-free")]
    NotSquareFree,
    #[error("branch: curve has a vertical-tangent branch; swap X and Y first")]
    NeedsCoordinateSwap,
    #[error("branch: {0} is not a characteristic sequence ({1})")]
    NotCharacteristicSequence(String, String),
    #[error("branch: genericity search exhausted coefficient range {0}")]
    GenericityExhausted(i64),
    #[error("branch: invalid branch data ({0})")]
    InvalidBranch(String),

    #[error("eggers: pairwise contact data violates tree constraints ({0})")]
    InconsistentContacts(String),
    #[error("eggers: point is not a rational interior point")]
    NotRationalPoint,

    #[error("resolution: adic expansion degree ladder violated ({0})")]
    DegreeLadderViolation(String),
    #[error("resolution: prefix is not a generating sequence for the divisor")]
    PrefixNotGeneratingSequence,
    #[error("resolution: initial form deviates from the certified shape ({0})")]
    ShapeViolation(String),
    #[error("resolution: chart ray does not match any branch order vector")]
    OrderVectorMismatch,
    #[error("resolution: two branches attach at the same point ({0})")]
    AttachmentCollision(String),
    #[error("resolution: finite orders have gcd {0} != 1")]
    SemigroupNotGeneratingZ(String),

    #[error("input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Module the error originates from, for the CLI error envelope.
    pub fn module(&self) -> &'static str {
        use Error::*;
        match self {
            NegativePowerOfNonUnit
            | IncompatibleVariableTags(..)
            | ConstantTermNotNthPower(..)
            | TruncationInsufficient(..) => "exactmath",
            ZeroVector | NotPartOfBasis | ConeDimensionTooHigh(..) | ConeNotInFan
            | ThetaConesCoincide | NotAFan(..) => "lattice",
            NeedsFieldExtension(..) | NotSquareFree | NeedsCoordinateSwap
            | NotCharacteristicSequence(..) | GenericityExhausted(..) | InvalidBranch(..) => {
                "branch"
            }
            InconsistentContacts(..) | NotRationalPoint => "eggers_wall",
            DegreeLadderViolation(..) | PrefixNotGeneratingSequence | ShapeViolation(..)
            | OrderVectorMismatch | AttachmentCollision(..) | SemigroupNotGeneratingZ(..) => {
                "resolution"
            }
            InvalidInput(..) => "cli",
        }
    }

    /// Stable machine-readable code for the CLI error envelope.
    pub fn code(&self) -> &'static str {
        use Error::*;
        match self {
            NegativePowerOfNonUnit => "NEGATIVE_POWER_OF_NON_UNIT",
            IncompatibleVariableTags(..) => "INCOMPATIBLE_VARIABLE_TAGS",
            ConstantTermNotNthPower(..) => "CONSTANT_TERM_NOT_NTH_POWER",
            TruncationInsufficient(..) => "TRUNCATION_INSUFFICIENT",
            ZeroVector => "ZERO_VECTOR",
            NotPartOfBasis => "NOT_PART_OF_BASIS",
            ConeDimensionTooHigh(..) => "CONE_DIMENSION_TOO_HIGH",
            ConeNotInFan => "CONE_NOT_IN_FAN",
            ThetaConesCoincide => "THETA_CONES_COINCIDE",
            NotAFan(..) => "NOT_A_FAN",
            NeedsFieldExtension(..) => "NEEDS_FIELD_EXTENSION",
            NotSquareFree => "NOT_SQUARE_FREE",
            NeedsCoordinateSwap => "NEEDS_COORDINATE_SWAP",
            NotCharacteristicSequence(..) => "NOT_CHARACTERISTIC_SEQUENCE",
            GenericityExhausted(..) => "GENERICITY_EXHAUSTED",
            InvalidBranch(..) => "INVALID_BRANCH",
            InconsistentContacts(..) => "INCONSISTENT_CONTACTS",
            NotRationalPoint => "NOT_RATIONAL_POINT",
            DegreeLadderViolation(..) => "DEGREE_LADDER_VIOLATION",
            PrefixNotGeneratingSequence => "PREFIX_NOT_GENERATING_SEQUENCE",
            ShapeViolation(..) => "SHAPE_VIOLATION",
            OrderVectorMismatch => "ORDER_VECTOR_MISMATCH",
            AttachmentCollision(..) => "ATTACHMENT_COLLISION",
            SemigroupNotGeneratingZ(..) => "SEMIGROUP_NOT_GENERATING_Z",
            InvalidInput(..) => "INVALID_INPUT",
        }
    }
}
