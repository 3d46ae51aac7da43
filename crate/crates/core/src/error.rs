use thiserror::Error;

/// Errors produced by any operation in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: symmetry residual {residual:e} exceeds tolerance {tol:e}")]
    NotHermitian { residual: f64, tol: f64 },
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("degenerate equation: no isolated roots")]
    DegenerateEquation,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular to working precision")]
    SingularMatrix,
    #[error("zero vector is not admissible here")]
    ZeroVector,
    #[error("Gram matrix is degenerate: |eigenvalue| ratio {ratio:e} below threshold")]
    Degenerate { ratio: f64 },
    #[error("inner product is definite on this space; both signs are required")]
    NotIndefinite,
    #[error("candidate basis has {got} columns, expected {expected}")]
    WrongRank { expected: usize, got: usize },
    #[error("candidate subspace is not uniformly positive (restricted Gram eigenvalue {min_eigenvalue:e})")]
    NotUniformlyPositive { min_eigenvalue: f64 },
    #[error("orthogonal companion is not negative definite (eigenvalue {max_eigenvalue:e})")]
    CompanionNotNegative { max_eigenvalue: f64 },
    #[error("projection onto a neutral line is undefined")]
    NeutralAxis,
    #[error("symmetry axiom violated: residual {residual:e}")]
    AxiomViolation { residual: f64 },
    #[error("J-norm radicand {radicand:e} is negative: invalid symmetry")]
    NegativeRadicand { radicand: f64 },
    #[error("vector is not neutral")]
    NotNeutral,
    #[error("no vector pairs non-degenerately with the input; space is numerically degenerate")]
    DegeneratePairing,
    #[error("no root found in the unit interval; sign classification has drifted")]
    NoRootInUnitInterval,
    #[error("target norm {target} lies below the attainable range [{lower}, inf)")]
    TargetBelowRange { target: f64, lower: f64 },
    #[error("construction needs both positive and negative vectors in the space")]
    NeedsBothSigns,
    #[error("space is too small for this construction")]
    InsufficientDimension,
    #[error("the two norms coincide; no strict gap to fill")]
    EmptyGap,
    #[error("epsilon {eps} violates the hypothesis bound {bound}")]
    HypothesisViolated { eps: f64, bound: f64 },
    #[error("vectors are not orthogonal: |[x,y]| = {inner:e}")]
    NotOrthogonal { inner: f64 },
    #[error("neither dimension condition holds for the ratio construction")]
    DimensionCondition,
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("vectors are orthogonal; a non-zero pairing is required")]
    Orthogonal,
    #[error("parameter {param} is out of range: {reason}")]
    ParamOutOfRange { param: f64, reason: &'static str },
    #[error("unknown catalog entry: {0}")]
    UnknownCatalogEntry(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
