use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::tree::Vertex;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Fractal,
    StronglyFractal,
    SuperStronglyFractal,
    LevelTransitive,
    SelfSimilar,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Fractal,
        Property::StronglyFractal,
        Property::SuperStronglyFractal,
        Property::LevelTransitive,
        Property::SelfSimilar,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Property::Fractal => "fractal",
            Property::StronglyFractal => "strongly_fractal",
            Property::SuperStronglyFractal => "super_strongly_fractal",
            Property::LevelTransitive => "level_transitive",
            Property::SelfSimilar => "self_similar",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == s || p.as_str().replace('_', "-") == s)
            .ok_or_else(|| alloc::format!("unknown property '{}'", s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    CertifiedPass,
    CertifiedFail,
    PassUpToDepth,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::CertifiedPass => "CERTIFIED_PASS",
            Status::CertifiedFail => "CERTIFIED_FAIL",
            Status::PassUpToDepth => "PASS_UP_TO_DEPTH",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    WitnessSet,
    ProperImage,
    ObstructionHomomorphism,
    /// No certificate beyond the depth that was searched.
    DepthBound,
}

impl CertificateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertificateKind::WitnessSet => "witness_set",
            CertificateKind::ProperImage => "proper_image",
            CertificateKind::ObstructionHomomorphism => "obstruction_homomorphism",
            CertificateKind::DepthBound => "depth_bound",
        }
    }
}

/// `word` fixes `vertex` and its section there is `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub word: Word,
    pub vertex: Vertex,
    pub target: Word,
}

/// In `π_depth(G)`, the image under `ψ_vertex` of the relevant stabilizer
/// (of `vertex`, or of level `level`) misses `excluded_generator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperImage {
    pub depth: usize,
    pub vertex: Vertex,
    pub level: usize,
    pub excluded_generator: Option<usize>,
    pub image_order: u128,
    pub quotient_order: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub witnesses: Vec<Witness>,
    pub proper_image: Option<ProperImage>,
    pub description: Option<String>,
}

impl Certificate {
    pub fn depth_bound() -> Self {
        Certificate { kind: CertificateKind::DepthBound, witnesses: Vec::new(), proper_image: None, description: None }
    }

    pub fn witnesses(witnesses: Vec<Witness>) -> Self {
        Certificate { kind: CertificateKind::WitnessSet, witnesses, proper_image: None, description: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub property: Property,
    pub status: Status,
    pub depth_checked: usize,
    pub certificate: Certificate,
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        self.status == Status::CertifiedFail
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::CertifiedPass
    }
}
