use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("nothing to eliminate: polynomial has degree 0 in variable {0}")]
    NothingToEliminate(usize),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("not isolating: no sign change on the interval")]
    NotIsolating,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("root iteration did not converge after {iterations} iterations (max correction {max_correction:e})")]
    NoConvergence {
        iterations: usize,
        max_correction: f64,
    },
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("undecidable at precision cap of {0} bits")]
    Undecidable(u32),
}
