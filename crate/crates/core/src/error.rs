use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(crate::FieldSpec, crate::FieldSpec),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator directions do not span the ambient space (rank {rank} < {ambient})")]
    NotFullRank { rank: usize, ambient: usize },
    #[error("presentation entry ({row},{col}) is not homogeneous of nonnegative degree")]
    NotHomogeneous { row: usize, col: usize },
    #[error("localization data is inconsistent with the relations: {0}")]
    InconsistentTypes(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("morphisms are not composable: {0}")]
    Composability(String),
    #[error("product of two Ext^1 classes lands in Ext^2, which vanishes")]
    Degree2NotSupported,
    #[error("object is not indecomposable: {0}")]
    NotIndecomposable(String),
    #[error("decomposition search exhausted: {0}")]
    DecompositionFailure(String),
    #[error("object does not match any indecomposable shape: {0}")]
    UnrecognizedShape(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("no witness found up to n = {0}")]
    WitnessNotFound(i64),
    #[error("not a morphism between torsion-free objects")]
    NotLatticeMorphism,
    #[error("mixed singularity indices {0} and {1}")]
    MixedIndex(u32, u32),
    #[error("value out of range: {0}")]
    Range(String),
    #[error("object must be torsion-free")]
    NotTorsionFree,
}
