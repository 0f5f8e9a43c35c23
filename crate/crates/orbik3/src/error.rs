use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("degenerate gram matrix (zero determinant)")]
    Degenerate,
    #[error("lattice is not integral")]
    NonIntegral,
    #[error("lattice is not definite")]
    Indefinite,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("lattice has no ambient embedding")]
    NoAmbient,
    #[error("vector is not in the dual lattice")]
    NotInDual,
    #[error("index identity violated: |disc S| = {sub}, |disc L|·index² = {expected}")]
    IndexIdentity { sub: String, expected: String },
    #[error("generators do not form a basis of the discriminant group")]
    BadGenerators,
    #[error("discriminant group too large for explicit tables ({0} elements)")]
    GroupTooLarge(String),
    #[error("malformed lattice document: {0}")]
    Format(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlueError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("glue map is not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("glue map violates q_Λ = −q_V∘γ on {0}")]
    FormMismatch(String),
    #[error("map is not an isometry of the lattice")]
    NotIsometry,
    #[error("glued components do not share an ambient space")]
    AmbientMismatch,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("expected {expected} entries, found {found}")]
    Length { expected: usize, found: usize },
    #[error("label {0} out of range")]
    Label(usize),
    #[error("the points lie in no octad")]
    NoOctad,
    #[error("invalid word syntax: {0}")]
    Syntax(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    Degree { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("octad propagation stalled with {0} unresolved points")]
    Stalled(usize),
    #[error("octad propagation reached a contradiction at octad #{0}")]
    Contradiction(usize),
    #[error("extension is not a code automorphism")]
    NotAutomorphism,
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("leading coefficient of the divisor is not invertible")]
    NonInvertibleLeading,
    #[error("division by the zero series")]
    ZeroDivisor,
    #[error("truncation order {have} too low, need {need} (q^(1/24) units)")]
    Truncation { have: i64, need: i64 },
    #[error("series has a non-integral coefficient")]
    NotRational,
}
