//! The `d`-adic rooted tree: shapes, vertices and the breadth-first
//! numbering shared by truncated automorphisms and permutation groups.
//!
//! Vertices of levels `1..=n` are numbered in BFS order (level first, then
//! lexicographic). The root is never stored; it is fixed by every
//! automorphism.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("tree degree must be at least 2, got {0}")]
    InvalidDegree(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("vertex at level {level} exceeds truncation depth {depth}")]
    DepthExceeded { level: usize, depth: usize },
    #[error("depth mismatch: {left} vs {right}")]
    DepthMismatch { left: usize, right: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("map is not a bijection")]
    NotBijective,
    #[error("map is not prefix-preserving at vertex {0}")]
    NotPrefixPreserving(Vertex),
    #[error("malformed cycle notation: {0}")]
    BadCycleNotation(String),
    #[error("malformed vertex: {0}")]
    BadVertex(String),
}

/// Shape of a regular rooted tree: the degree `d` and alphabet `x_1..x_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeShape {
    degree: usize,
}

impl TreeShape {
    pub fn new(degree: usize) -> Result<Self, TreeError> {
        if degree < 2 {
            return Err(TreeError::InvalidDegree(degree));
        }
        Ok(TreeShape { degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `d^k`, the number of vertices on level `k`.
    pub fn level_size(&self, k: usize) -> usize {
        self.degree.pow(k as u32)
    }

    /// BFS index of the first vertex of level `k >= 1`.
    pub fn level_offset(&self, k: usize) -> usize {
        // d + d^2 + ... + d^(k-1)
        (1..k).map(|j| self.level_size(j)).sum()
    }

    /// Number of vertices on levels `1..=n`.
    pub fn domain_size(&self, n: usize) -> usize {
        self.level_offset(n + 1)
    }

    /// BFS index of a non-root vertex.
    pub fn index_of(&self, v: &Vertex) -> usize {
        debug_assert!(v.level() >= 1);
        self.level_offset(v.level()) + self.rank(v)
    }

    /// Lexicographic rank of a vertex inside its level.
    pub fn rank(&self, v: &Vertex) -> usize {
        v.letters.iter().fold(0, |acc, &x| acc * self.degree + x)
    }

    pub fn vertex_from_rank(&self, level: usize, mut rank: usize) -> Vertex {
        let mut letters = alloc::vec![0; level];
        for slot in letters.iter_mut().rev() {
            *slot = rank % self.degree;
            rank /= self.degree;
        }
        Vertex { letters }
    }

    /// Level and in-level rank of a BFS index.
    pub fn locate(&self, index: usize) -> (usize, usize) {
        let mut level = 1;
        let mut offset = 0;
        loop {
            let size = self.level_size(level);
            if index < offset + size {
                return (level, index - offset);
            }
            offset += size;
            level += 1;
        }
    }

    pub fn vertex_at(&self, index: usize) -> Vertex {
        let (level, rank) = self.locate(index);
        self.vertex_from_rank(level, rank)
    }

    /// All vertices of level `k` in lexicographic order.
    pub fn level(&self, k: usize) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.level_size(k)).map(move |r| self.vertex_from_rank(k, r))
    }

    /// Check a vertex is a word over this alphabet.
    pub fn validate(&self, v: &Vertex) -> Result<(), TreeError> {
        match v.letters.iter().find(|&&x| x >= self.degree) {
            Some(&x) => Err(TreeError::PointOutOfRange { point: x + 1, degree: self.degree }),
            None => Ok(()),
        }
    }
}

/// A vertex of the tree: a word over the alphabet. Letters are stored
/// 0-based (`x_1` is `0`); display and parsing are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vertex {
    letters: Vec<usize>,
}

impl Vertex {
    pub fn root() -> Self {
        Vertex { letters: Vec::new() }
    }

    /// From 0-based letters.
    pub fn from_letters(letters: Vec<usize>) -> Self {
        Vertex { letters }
    }

    /// From 1-based indices, e.g. `&[2, 2, 1]` for `x_2 x_2 x_1`.
    pub fn from_one_based(indices: &[usize]) -> Self {
        Vertex { letters: indices.iter().map(|&i| i.saturating_sub(1)).collect() }
    }

    /// Parse `2.2.1`, `root` or the empty string.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let text = text.trim();
        if text.is_empty() || text == "root" {
            return Ok(Vertex::root());
        }
        let mut letters = Vec::new();
        for tok in text.split('.') {
            let i: usize = tok.trim().parse().map_err(|_| TreeError::BadVertex(String::from(text)))?;
            if i == 0 {
                return Err(TreeError::BadVertex(String::from(text)));
            }
            letters.push(i - 1);
        }
        Ok(Vertex { letters })
    }

    pub fn level(&self) -> usize {
        self.letters.len()
    }

    pub fn is_root(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn child(&self, x: usize) -> Vertex {
        let mut letters = self.letters.clone();
        letters.push(x);
        Vertex { letters }
    }

    pub fn parent(&self) -> Option<Vertex> {
        if self.letters.is_empty() {
            None
        } else {
            Some(Vertex { letters: self.letters[..self.letters.len() - 1].to_vec() })
        }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Vertex) -> Vertex {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Vertex { letters }
    }

    pub fn split_first(&self) -> Option<(usize, Vertex)> {
        self.letters.split_first().map(|(&x, rest)| (x, Vertex { letters: rest.to_vec() }))
    }

    pub fn starts_with(&self, prefix: &Vertex) -> bool {
        self.letters.starts_with(&prefix.letters)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("root");
        }
        for (i, x) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{}", x + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({})", self)
    }
}
