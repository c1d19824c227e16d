//! Fractality of self-similar groups.
//!
//! Every check returns a [`Verdict`]: a certified pass backed by witness
//! words, a certified failure backed by a proper image in a finite quotient,
//! or a pass up to the depth that was examined.

mod checks;
mod quotient;
mod relators;
mod verdict;
mod witness;

pub use checks::{
    check, check_fractal, check_level_transitive, check_self_similar_verdict, check_strongly_fractal,
    check_super_strongly_fractal, default_depth, root_labels_in_cyclic_sylow, CheckOptions,
};
pub use quotient::{LevelQuotient, Tower};
pub use relators::{section_closure_bound, stab1_from_relators, ClosureReport, RelatorReport};
pub use verdict::{Certificate, CertificateKind, ProperImage, Property, Status, Verdict, Witness};
pub use witness::{verify_witness, verify_witness_in, witness_search, SearchOptions, Stabilize};

use alloc::string::String;

use crate::permgroup::GroupError;
use crate::tree::{TreeError, Vertex};
use crate::wreath::WreathError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FractalError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Wreath(#[from] WreathError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("level {level} exceeds depth {depth}")]
    LevelOutOfRange { level: usize, depth: usize },
    #[error("subgroup does not stabilize vertex {0}")]
    NotStabilizing(Vertex),
    #[error("word {word} does not stabilize level {level}")]
    NotStabilizingLevel { word: String, level: usize },
    #[error("not self-similar: section {position} of {generator} is external")]
    NotSelfSimilar { generator: String, position: usize },
    #[error("root label of the image of {generator} differs from its presentation image")]
    RelatorMismatch { generator: String },
    #[error("invalid options: {0}")]
    InvalidOptions(String),
}
