//! Self-similar groups of rooted-tree automorphisms.
//!
//! Groups are given by wreath recursion ([`wreath::GroupDef`]), unfolded to
//! finite truncations ([`aut::TruncatedAut`]) and studied through their level
//! quotients with a deterministic Schreier–Sims engine ([`permgroup`]). The
//! [`fractality`] module decides the fractality properties with certificates.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod aut;
pub mod families;
pub mod fractality;
pub mod permgroup;
pub mod permutation;
pub mod tree;
pub mod word;
pub mod wreath;

pub use aut::TruncatedAut;
pub use families::{ggs, grigorchuk, hanoi, hanoi_chain, FamilyError, GgsFlags, GgsParams};
pub use fractality::{Certificate, CertificateKind, LevelQuotient, Property, Status, Verdict};
pub use permgroup::{GroupError, PermGroup};
pub use permutation::Permutation;
pub use tree::{TreeError, TreeShape, Vertex};
pub use word::{parse_word, Word, WordParseError};
pub use wreath::{DefError, GroupDef, Presentation, RelatorSet, Section, WreathError};
