//! Automorphisms of the finite tree `T_n`.
//!
//! A [`TruncatedAut`] stores the image of every vertex of levels `1..=n` as a
//! BFS index. Truncation to a smaller depth is then a prefix of the map, and
//! composition is a pointwise lookup.

use alloc::vec::Vec;
use core::fmt;

use crate::permutation::Permutation;
use crate::tree::{TreeError, TreeShape, Vertex};

/// The restriction of a tree automorphism to the vertices of levels `1..=depth`.
///
/// Products follow the convention `fg = g ∘ f`: `f.compose(&g)` maps `u` to
/// `g(f(u))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedAut {
    shape: TreeShape,
    depth: usize,
    map: Vec<u32>,
}

impl TruncatedAut {
    pub fn identity(shape: TreeShape, depth: usize) -> Self {
        let n = shape.domain_size(depth);
        TruncatedAut { shape, depth, map: (0..n as u32).collect() }
    }

    /// Build from BFS-indexed images, checking that every level is permuted
    /// and that prefixes are preserved.
    pub fn from_vertex_map(shape: TreeShape, depth: usize, map: Vec<u32>) -> Result<Self, TreeError> {
        if map.len() != shape.domain_size(depth) {
            return Err(TreeError::NotBijective);
        }
        let d = shape.degree();
        for level in 1..=depth {
            let off = shape.level_offset(level);
            let size = shape.level_size(level);
            let mut seen = alloc::vec![false; size];
            for r in 0..size {
                let img = map[off + r] as usize;
                if img < off || img >= off + size || seen[img - off] {
                    return Err(TreeError::NotBijective);
                }
                seen[img - off] = true;
                if level > 1 {
                    let parent_off = shape.level_offset(level - 1);
                    let parent_img = map[parent_off + r / d] as usize - parent_off;
                    if (img - off) / d != parent_img {
                        return Err(TreeError::NotPrefixPreserving(shape.vertex_from_rank(level, r)));
                    }
                }
            }
        }
        Ok(TruncatedAut { shape, depth, map })
    }

    /// Rebuild an automorphism from its labels at the vertices of levels
    /// `0..depth`, listed in BFS order (root first).
    pub fn from_portrait(shape: TreeShape, depth: usize, labels: &[Permutation]) -> Result<Self, TreeError> {
        let d = shape.degree();
        let expected = if depth == 0 { 0 } else { 1 + shape.domain_size(depth - 1) };
        if labels.len() != expected {
            return Err(TreeError::DepthMismatch { left: labels.len(), right: expected });
        }
        if let Some(p) = labels.iter().find(|p| p.degree() != d) {
            return Err(TreeError::DegreeMismatch { left: p.degree(), right: d });
        }
        let mut map = alloc::vec![0u32; shape.domain_size(depth)];
        // rank images of the previous level; the root maps to itself
        let mut prev: Vec<usize> = alloc::vec![0];
        for level in 1..=depth {
            let off = shape.level_offset(level);
            let label_base = if level == 1 { 0 } else { 1 + shape.level_offset(level - 1) };
            let mut cur = alloc::vec![0usize; shape.level_size(level)];
            for (p, &p_img) in prev.iter().enumerate() {
                let label = &labels[label_base + p];
                for x in 0..d {
                    let img = p_img * d + label.apply(x);
                    cur[p * d + x] = img;
                    map[off + p * d + x] = (off + img) as u32;
                }
            }
            prev = cur;
        }
        Ok(TruncatedAut { shape, depth, map })
    }

    /// The automorphism with root label `root` and first-level sections
    /// `sections` (all of the same depth, one per letter).
    pub fn from_root_and_sections(root: &Permutation, sections: &[TruncatedAut]) -> Result<Self, TreeError> {
        let d = root.degree();
        if sections.len() != d {
            return Err(TreeError::DegreeMismatch { left: sections.len(), right: d });
        }
        let shape = sections[0].shape;
        if shape.degree() != d {
            return Err(TreeError::DegreeMismatch { left: shape.degree(), right: d });
        }
        let sub = sections[0].depth;
        if let Some(s) = sections.iter().find(|s| s.depth != sub || s.shape != shape) {
            return Err(TreeError::DepthMismatch { left: s.depth, right: sub });
        }
        let depth = sub + 1;
        let mut map = alloc::vec![0u32; shape.domain_size(depth)];
        for x in 0..d {
            map[x] = root.apply(x) as u32;
        }
        for j in 1..=sub {
            let width = shape.level_size(j);
            let off_full = shape.level_offset(j + 1);
            let off_sub = shape.level_offset(j);
            for x in 0..d {
                let sec = &sections[x];
                for r in 0..width {
                    let sec_img = sec.map[off_sub + r] as usize - off_sub;
                    let img = root.apply(x) * width + sec_img;
                    map[off_full + x * width + r] = (off_full + img) as u32;
                }
            }
        }
        Ok(TruncatedAut { shape, depth, map })
    }

    /// The rooted automorphism acting as `root` on the first level and trivially below.
    pub fn rooted(shape: TreeShape, root: &Permutation, depth: usize) -> Result<Self, TreeError> {
        if depth == 0 {
            return Ok(TruncatedAut::identity(shape, 0));
        }
        let id = TruncatedAut::identity(shape, depth - 1);
        let sections: Vec<TruncatedAut> = (0..shape.degree()).map(|_| id.clone()).collect();
        TruncatedAut::from_root_and_sections(root, &sections)
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn degree(&self) -> usize {
        self.shape.degree()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Images of the BFS domain, as BFS indices.
    pub fn images(&self) -> &[u32] {
        &self.map
    }

    #[inline]
    pub fn image_index(&self, index: usize) -> usize {
        self.map[index] as usize
    }

    pub fn apply(&self, u: &Vertex) -> Result<Vertex, TreeError> {
        self.check_vertex(u, self.depth)?;
        if u.is_root() {
            return Ok(Vertex::root());
        }
        let img = self.map[self.shape.index_of(u)] as usize;
        Ok(self.shape.vertex_at(img))
    }

    /// The product `fg`, i.e. `f` first and then `g`.
    pub fn compose(&self, g: &TruncatedAut) -> Result<TruncatedAut, TreeError> {
        self.check_compatible(g)?;
        Ok(self.compose_unchecked(g))
    }

    pub(crate) fn compose_unchecked(&self, g: &TruncatedAut) -> TruncatedAut {
        let map = self.map.iter().map(|&x| g.map[x as usize]).collect();
        TruncatedAut { shape: self.shape, depth: self.depth, map }
    }

    pub fn invert(&self) -> TruncatedAut {
        let mut inv = alloc::vec![0u32; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        TruncatedAut { shape: self.shape, depth: self.depth, map: inv }
    }

    /// `f^g = g^{-1} f g`.
    pub fn conjugate(&self, g: &TruncatedAut) -> Result<TruncatedAut, TreeError> {
        self.check_compatible(g)?;
        Ok(g.invert().compose_unchecked(self).compose_unchecked(g))
    }

    /// `[f, g] = f^{-1} g^{-1} f g`.
    pub fn commutator(&self, g: &TruncatedAut) -> Result<TruncatedAut, TreeError> {
        self.check_compatible(g)?;
        Ok(self.invert().compose_unchecked(&g.invert()).compose_unchecked(self).compose_unchecked(g))
    }

    pub fn pow(&self, k: i64) -> TruncatedAut {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut acc = TruncatedAut::identity(self.shape, self.depth);
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose_unchecked(&base);
        }
        acc
    }

    /// The section `f_u`, defined by `f(uv) = f(u) f_u(v)`; of depth `depth - |u|`.
    pub fn section(&self, u: &Vertex) -> Result<TruncatedAut, TreeError> {
        self.check_vertex(u, self.depth)?;
        let k = u.level();
        if k == 0 {
            return Ok(self.clone());
        }
        let sub = self.depth - k;
        let rank_u = self.shape.rank(u);
        let mut map = alloc::vec![0u32; self.shape.domain_size(sub)];
        for j in 1..=sub {
            let width = self.shape.level_size(j);
            let off_full = self.shape.level_offset(k + j);
            let off_sub = self.shape.level_offset(j);
            for r in 0..width {
                let img = self.map[off_full + rank_u * width + r] as usize - off_full;
                map[off_sub + r] = (off_sub + img % width) as u32;
            }
        }
        Ok(TruncatedAut { shape: self.shape, depth: sub, map })
    }

    /// The label at `u`: how the children of `u` are permuted.
    pub fn label(&self, u: &Vertex) -> Result<Permutation, TreeError> {
        if u.level() >= self.depth {
            return Err(TreeError::DepthExceeded { level: u.level() + 1, depth: self.depth });
        }
        self.shape.validate(u)?;
        let d = self.degree();
        let level = u.level() + 1;
        let off = self.shape.level_offset(level);
        let base = self.shape.rank(u) * d;
        let images = (0..d).map(|x| (self.map[off + base + x] as usize - off) % d).collect();
        Permutation::from_images(images)
    }

    /// Root label; the identity at depth 0.
    pub fn root_label(&self) -> Permutation {
        if self.depth == 0 {
            return Permutation::identity(self.degree());
        }
        Permutation::from_images((0..self.degree()).map(|x| self.map[x] as usize).collect())
            .expect("level 1 is permuted")
    }

    /// Labels at all vertices of levels `0..depth`, in BFS order.
    pub fn portrait(&self) -> Vec<(Vertex, Permutation)> {
        let mut out = Vec::new();
        for level in 0..self.depth {
            for v in self.shape.level(level) {
                let label = self.label(&v).expect("level below depth");
                out.push((v, label));
            }
        }
        out
    }

    /// `π_m` of this automorphism, for `m <= depth`.
    pub fn truncate(&self, m: usize) -> Result<TruncatedAut, TreeError> {
        if m > self.depth {
            return Err(TreeError::DepthExceeded { level: m, depth: self.depth });
        }
        let n = self.shape.domain_size(m);
        Ok(TruncatedAut { shape: self.shape, depth: m, map: self.map[..n].to_vec() })
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn fixes(&self, u: &Vertex) -> Result<bool, TreeError> {
        self.check_vertex(u, self.depth)?;
        if u.is_root() {
            return Ok(true);
        }
        let i = self.shape.index_of(u);
        Ok(self.map[i] as usize == i)
    }

    /// True when every vertex of levels `1..=k` is fixed.
    pub fn fixes_levels(&self, k: usize) -> bool {
        let n = self.shape.domain_size(k.min(self.depth));
        self.map[..n].iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Equality that refuses to compare automorphisms of different depths.
    pub fn checked_eq(&self, other: &TruncatedAut) -> Result<bool, TreeError> {
        self.check_compatible(other)?;
        Ok(self.map == other.map)
    }

    /// Exhaustive prefix-preservation check over all stored vertices.
    pub fn is_prefix_preserving(&self) -> bool {
        TruncatedAut::from_vertex_map(self.shape, self.depth, self.map.clone()).is_ok()
    }

    fn check_vertex(&self, u: &Vertex, max_level: usize) -> Result<(), TreeError> {
        if u.level() > max_level {
            return Err(TreeError::DepthExceeded { level: u.level(), depth: self.depth });
        }
        self.shape.validate(u)
    }

    fn check_compatible(&self, other: &TruncatedAut) -> Result<(), TreeError> {
        if self.shape != other.shape {
            return Err(TreeError::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        if self.depth != other.depth {
            return Err(TreeError::DepthMismatch { left: self.depth, right: other.depth });
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedAut(d={}, n={}", self.degree(), self.depth)?;
        for (v, p) in self.portrait() {
            if !p.is_identity() {
                write!(f, ", {}: {}", v, p)?;
            }
        }
        f.write_str(")")
    }
}
