//! Error type shared by the engine.

/// Errors surfaced by the construction pipeline.
///
/// Structural misuse (mismatched dimensions, legs or caps between operands)
/// is a programming error and panics instead.
#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("tensor shape mismatch: {0}")]
    Shape(String),

    #[error("input fails the bialgebra validation gate: {0}")]
    Validation(String),

    #[error("star operand must have filtration degree >= 2 (got {0})")]
    StarOperand(usize),

    #[error("only derivations with filtration shift >= 1 can be exponentiated")]
    ExpShift,

    #[error("coboundary solve needs cochain degree >= 3 (got {0})")]
    CochainDegree(usize),

    #[error("cocycle conditions violated: {0}")]
    CocycleCondition(String),

    #[error("linear system inconsistent while solving coboundary equations")]
    InconsistentSystem,

    #[error("coproduct cross-check against the enveloping-algebra transpose failed: {0}")]
    CrossCheck(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;
