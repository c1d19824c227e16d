//! Permutations of the alphabet `{1, ..., d}`.
//!
//! Internally points are 0-based; everything user-facing (cycle notation,
//! `Display`) is 1-based so that `(1 2 3)` reads like `(x_1 x_2 x_3)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::tree::TreeError;

/// A bijection of `{0, ..., d-1}`, displayed 1-based.
///
/// Products follow the left-to-right convention used for tree automorphisms:
/// `a.then(&b)` first applies `a`, then `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Build from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, TreeError> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(TreeError::NotBijective);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from 1-based disjoint or overlapping cycles, composed left to right.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, TreeError> {
        let mut p = Permutation::identity(degree);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            for (i, &pt) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                if pt == 0 || pt > degree || next == 0 || next > degree {
                    return Err(TreeError::PointOutOfRange { point: pt.max(next), degree });
                }
                images[pt - 1] = next - 1;
            }
            let c = Permutation::from_images(images)?;
            p = p.then(&c);
        }
        Ok(p)
    }

    /// The transposition `(i j)`, 1-based.
    pub fn transposition(degree: usize, i: usize, j: usize) -> Result<Self, TreeError> {
        Permutation::from_cycles(degree, &[&[i, j]])
    }

    /// The long cycle `(1 2 ... d)`.
    pub fn long_cycle(degree: usize) -> Self {
        Permutation { images: (0..degree).map(|x| (x + 1) % degree).collect() }
    }

    /// Parse cycle notation such as `(1 2 3)(4 5)`, or `e` for the identity.
    pub fn parse(degree: usize, text: &str) -> Result<Self, TreeError> {
        let text = text.trim();
        if text == "e" || text == "1" || text == "()" {
            return Ok(Permutation::identity(degree));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad_cycle(text))?;
            let close = open.find(')').ok_or_else(|| bad_cycle(text))?;
            let body = &open[..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let pt: usize = tok.parse().map_err(|_| bad_cycle(text))?;
                if cycle.contains(&pt) {
                    return Err(TreeError::NotBijective);
                }
                cycle.push(pt);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Disjoint cycles of length at least two, 1-based, each starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// True when `self` is a `d`-cycle.
    pub fn is_full_cycle(&self) -> bool {
        let c = self.cycles();
        c.len() == 1 && c[0].len() == self.degree()
    }
}

fn bad_cycle(text: &str) -> TreeError {
    TreeError::BadCycleNotation(String::from(text))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("e");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", pt)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self)
    }
}
