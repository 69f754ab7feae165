//! Gluing matrices, presentations of the fundamental groups, certificate
//! words and abelianization.

mod abelian;
mod gluing;
mod presentation;
mod word;

pub use abelian::{abelianization_image, relator_matrix, AbelianImage, AbelianizedGroup};
pub use gluing::{certificate_words, normalize_gluing, npc_check, Case, GluingMatrix, Move, Normalized};
pub use presentation::{build_presentation, heisenberg_presentation, Presentation, Relator};
pub use word::Word;
pub(crate) use word::is_symbol;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ManifoldError {
    #[error("invalid gluing matrix: {0}")]
    InvalidGluing(String),
    #[error("unknown case {0:?}, expected loop or edge")]
    UnknownCase(String),
    #[error("NPC: no certificate normal form (a = d = 0)")]
    NpcNoNormalForm,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid genus: {0}")]
    InvalidGenus(String),
    #[error("malformed word {0:?}")]
    MalformedWord(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("gluing matrix case does not match")]
    CaseMismatch,
}
