use bitangent_numeric::NumericError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("invalid quartic: {0}")]
    InvalidQuartic(String),
    #[error("invalid line: all coordinates are zero")]
    ZeroLine,
    #[error("singular matrix")]
    SingularMap,
    #[error("quartic is not smooth")]
    NotSmooth,
    #[error("line contained in curve")]
    LineContainedInCurve,
    #[error("genericity failure after {0} coordinate changes")]
    GenericityFailure(usize),
    #[error("Z meets line at infinity")]
    TangencyOnLineAtInfinity,
    #[error("L_inf meets a tangency point")]
    LineAtInfinityMeetsTangency,
    #[error("line at infinity coincides with the bitangent")]
    LineAtInfinityIsBitangent,
    #[error("line at infinity passes through a grate endpoint")]
    WallCrossing,
    #[error("non-simple zero: local index determinant vanishes")]
    NonSimpleZero,
    #[error("operation needs a real bitangent")]
    NotReal,
    #[error("line is not a bitangent of the quartic")]
    NotABitangent,
    #[error("tangency formula degenerate: a_1020 = 0")]
    TangencyFormulaDegenerate,
    #[error("pointed cubic violates the normalization conditions: {0}")]
    InvalidCubic(String),
    #[error("undecidable at cap of {0} bits")]
    Undecidable(u32),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

pub type Result<T> = std::result::Result<T, CoreError>;
