//! Surface-group combinatorics: free-group words, the mapping class group
//! catalog and the homology representation of Dehn twists.

mod groups;
mod homology;
mod word;

use thiserror::Error;

pub use groups::{
    mcg_structure, pmod_generators, symplectic_surface_picard_report, GroupAtom,
    GroupDescription, PicValue, SurfaceType, SymplecticReport,
};
pub use homology::{
    homology_action, intersection_form, is_unimodular, pairing, preserves_form,
    transvection_matrix, twist_transvection, IntMatrix, TwistLetter,
};
pub use word::{
    commutes_with_generator, free_reduce, is_power_of_generator, reduced_words, FreeWord, Letter,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McgError {
    #[error("generator {generator} out of range for rank {rank}")]
    GeneratorOutOfRange { generator: usize, rank: usize },
    #[error("letter exponent must be +1 or -1, got {0}")]
    BadExponent(i8),
    #[error("no cataloged mapping class group for {0}")]
    Uncataloged(SurfaceType),
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}
