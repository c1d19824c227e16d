//! Permutation groups on the vertices of a truncated tree.
//!
//! The acting domain is every vertex of levels `1..=n` in BFS order, and the
//! base of the stabilizer chain is that whole order. Level `i` of the chain
//! holds the orbit of point `i` under the strong generators fixing points
//! `0..i`. Such an orbit lies among the siblings of the point, so it has at
//! most `d` elements and transversal representatives are stored explicitly.
//!
//! Schreier–Sims runs incrementally and deterministically: strong generators
//! are appended in a fixed order and every pair (orbit point, generator) is
//! tested exactly once, deepest level first.

use alloc::vec;
use alloc::vec::Vec;

use crate::aut::TruncatedAut;
use crate::tree::{TreeError, TreeShape, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("domain mismatch: degree {left_degree} depth {left_depth} vs degree {right_degree} depth {right_depth}")]
    DomainMismatch { left_degree: usize, left_depth: usize, right_degree: usize, right_depth: usize },
    #[error("generator is not prefix-preserving")]
    NotPrefixPreserving,
    #[error("group order exceeds the limit {limit}")]
    OrderLimit { limit: u128 },
    #[error("element does not lie in the group")]
    NotInGroup,
    #[error("vertex {0} is not in the domain")]
    OutOfDomain(Vertex),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Clone, Default)]
struct Level {
    /// Indices into the strong generators that fix all earlier base points.
    gens: Vec<usize>,
    /// Orbit of the base point, which is `orbit[0]`.
    orbit: Vec<u32>,
    /// `reps[k]` maps the base point to `orbit[k]`.
    reps: Vec<TruncatedAut>,
    reps_inv: Vec<TruncatedAut>,
    /// Untested `(orbit position, gens position)` pairs.
    pending: Vec<(u32, u32)>,
}

/// A subgroup of `Aut T_n` with a complete stabilizer chain along the BFS base.
#[derive(Debug, Clone)]
pub struct PermGroup {
    shape: TreeShape,
    depth: usize,
    generators: Vec<TruncatedAut>,
    strong: Vec<TruncatedAut>,
    strong_level: Vec<usize>,
    levels: Vec<Level>,
    limit: u128,
}

impl PermGroup {
    pub fn trivial(shape: TreeShape, depth: usize) -> Self {
        let points = shape.domain_size(depth);
        let levels = (0..points)
            .map(|i| Level {
                orbit: vec![i as u32],
                reps: vec![TruncatedAut::identity(shape, depth)],
                reps_inv: vec![TruncatedAut::identity(shape, depth)],
                ..Level::default()
            })
            .collect();
        PermGroup {
            shape,
            depth,
            generators: Vec::new(),
            strong: Vec::new(),
            strong_level: Vec::new(),
            levels,
            limit: u128::MAX,
        }
    }

    pub fn build(shape: TreeShape, depth: usize, generators: &[TruncatedAut]) -> Result<Self, GroupError> {
        Self::build_with_limit(shape, depth, generators, u128::MAX)
    }

    /// Build, failing with [`GroupError::OrderLimit`] as soon as the order
    /// provably exceeds `limit`.
    pub fn build_with_limit(
        shape: TreeShape,
        depth: usize,
        generators: &[TruncatedAut],
        limit: u128,
    ) -> Result<Self, GroupError> {
        let mut g = PermGroup::trivial(shape, depth);
        g.limit = limit;
        for s in generators {
            g.extend(s)?;
        }
        Ok(g)
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn point_count(&self) -> usize {
        self.levels.len()
    }

    pub fn limit(&self) -> u128 {
        self.limit
    }

    /// Generators that enlarged the group when added, in insertion order.
    pub fn generators(&self) -> &[TruncatedAut] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[TruncatedAut] {
        &self.strong
    }

    /// Orbit lengths along the base.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// `|G|`, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn is_trivial(&self) -> bool {
        self.strong.is_empty()
    }

    /// The identity of this group's domain.
    pub fn identity(&self) -> TruncatedAut {
        TruncatedAut::identity(self.shape, self.depth)
    }

    fn check_domain(&self, f: &TruncatedAut) -> Result<(), GroupError> {
        if f.shape() != self.shape || f.depth() != self.depth {
            return Err(GroupError::DomainMismatch {
                left_degree: self.shape.degree(),
                left_depth: self.depth,
                right_degree: f.degree(),
                right_depth: f.depth(),
            });
        }
        Ok(())
    }

    fn same_domain(&self, other: &PermGroup) -> Result<(), GroupError> {
        if other.shape != self.shape || other.depth != self.depth {
            return Err(GroupError::DomainMismatch {
                left_degree: self.shape.degree(),
                left_depth: self.depth,
                right_degree: other.shape.degree(),
                right_depth: other.depth,
            });
        }
        Ok(())
    }

    fn point_index(&self, v: &Vertex) -> Result<usize, GroupError> {
        if v.is_root() || v.level() > self.depth || self.shape.validate(v).is_err() {
            return Err(GroupError::OutOfDomain(v.clone()));
        }
        Ok(self.shape.index_of(v))
    }

    /// Sift `f` through levels `from..`; returns the residue and the level
    /// where sifting stopped (`point_count()` on success).
    fn sift_from(&self, f: &TruncatedAut, from: usize) -> (TruncatedAut, usize) {
        let mut h = f.clone();
        for i in from..self.levels.len() {
            let img = h.images()[i];
            if img as usize == i {
                continue;
            }
            let level = &self.levels[i];
            match level.orbit.iter().position(|&p| p == img) {
                Some(k) => h = h.compose_unchecked(&level.reps_inv[k]),
                None => return (h, i),
            }
            if h.is_identity() {
                return (h, self.levels.len());
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, f: &TruncatedAut) -> Result<bool, GroupError> {
        self.check_domain(f)?;
        Ok(self.sift_from(f, 0).0.is_identity())
    }

    /// Add a generator. Returns whether the group grew.
    pub fn extend(&mut self, f: &TruncatedAut) -> Result<bool, GroupError> {
        self.check_domain(f)?;
        if !f.is_prefix_preserving() {
            return Err(GroupError::NotPrefixPreserving);
        }
        let (residue, _) = self.sift_from(f, 0);
        if residue.is_identity() {
            return Ok(false);
        }
        self.generators.push(f.clone());
        self.add_strong(residue);
        self.complete()?;
        Ok(true)
    }

    fn add_strong(&mut self, s: TruncatedAut) {
        let tag = (0..self.levels.len()).find(|&i| s.images()[i] as usize != i).expect("nontrivial generator");
        let idx = self.strong.len();
        self.strong.push(s);
        self.strong_level.push(tag);
        for i in 0..=tag {
            let gpos = self.levels[i].gens.len() as u32;
            self.levels[i].gens.push(idx);
            let start = if i == tag { 0 } else { 1 };
            for pos in start..self.levels[i].orbit.len() {
                self.levels[i].pending.push((pos as u32, gpos));
            }
            self.close_orbit(i);
        }
    }

    fn close_orbit(&mut self, i: usize) {
        let level = &mut self.levels[i];
        let mut q = 0;
        while q < level.orbit.len() {
            for gpos in 0..level.gens.len() {
                let s = &self.strong[level.gens[gpos]];
                let image = s.images()[level.orbit[q] as usize];
                if !level.orbit.contains(&image) {
                    let rep = level.reps[q].compose_unchecked(s);
                    level.reps_inv.push(rep.invert());
                    level.reps.push(rep);
                    level.orbit.push(image);
                    let pos = (level.orbit.len() - 1) as u32;
                    for g in 0..level.gens.len() {
                        level.pending.push((pos, g as u32));
                    }
                }
            }
            q += 1;
        }
    }

    fn complete(&mut self) -> Result<(), GroupError> {
        if self.order() > self.limit {
            return Err(GroupError::OrderLimit { limit: self.limit });
        }
        while let Some(i) = (0..self.levels.len()).rev().find(|&i| !self.levels[i].pending.is_empty()) {
            let (pos, gpos) = self.levels[i].pending.pop().expect("nonempty");
            let level = &self.levels[i];
            let gen = level.gens[gpos as usize];
            if pos == 0 && self.strong_level[gen] > i {
                continue;
            }
            let s = &self.strong[gen];
            let image = s.images()[level.orbit[pos as usize] as usize];
            let target = level.orbit.iter().position(|&p| p == image).expect("orbit is closed");
            let y = level.reps[pos as usize].compose_unchecked(s).compose_unchecked(&level.reps_inv[target]);
            if y.is_identity() {
                continue;
            }
            let (residue, _) = self.sift_from(&y, i + 1);
            if !residue.is_identity() {
                self.add_strong(residue);
                if self.order() > self.limit {
                    return Err(GroupError::OrderLimit { limit: self.limit });
                }
            }
        }
        Ok(())
    }

    /// `st(L_k)`: the chain suffix starting at the first vertex of level `k + 1`.
    pub fn level_stabilizer(&self, k: usize) -> PermGroup {
        self.suffix_from(self.shape.domain_size(k.min(self.depth)))
    }

    /// `st(u)` for a single vertex, by orbit–stabilizer with Schreier generators.
    pub fn point_stabilizer(&self, u: &Vertex) -> Result<PermGroup, GroupError> {
        let p = self.point_index(u)?;
        if (0..p).all(|i| self.levels[i].orbit.len() == 1) {
            // every earlier base point is already fixed by the whole group
            return Ok(self.suffix_from(p + 1));
        }
        let gens = if self.generators.is_empty() { &self.strong } else { &self.generators };
        let mut orbit: Vec<u32> = vec![p as u32];
        let mut reps = vec![self.identity()];
        let mut q = 0;
        while q < orbit.len() {
            for s in gens {
                let image = s.images()[orbit[q] as usize];
                if !orbit.contains(&image) {
                    orbit.push(image);
                    reps.push(reps[q].compose_unchecked(s));
                }
            }
            q += 1;
        }
        let inv: Vec<TruncatedAut> = reps.iter().map(TruncatedAut::invert).collect();
        let mut out = PermGroup::trivial(self.shape, self.depth);
        out.limit = self.limit;
        for (k, &pt) in orbit.iter().enumerate() {
            for s in gens {
                let image = s.images()[pt as usize];
                let t = orbit.iter().position(|&x| x == image).expect("closed orbit");
                let y = reps[k].compose_unchecked(s).compose_unchecked(&inv[t]);
                if !y.is_identity() {
                    out.extend(&y)?;
                }
            }
        }
        Ok(out)
    }

    /// The stabilizer of base points `0..m`, valid when read off the chain.
    fn suffix_from(&self, m: usize) -> PermGroup {
        let keep: Vec<usize> = (0..self.strong.len()).filter(|&s| self.strong_level[s] >= m).collect();
        let mut out = PermGroup::trivial(self.shape, self.depth);
        out.limit = self.limit;
        let mut remap = vec![usize::MAX; self.strong.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        out.strong = keep.iter().map(|&s| self.strong[s].clone()).collect();
        out.strong_level = keep.iter().map(|&s| self.strong_level[s]).collect();
        out.generators = out.strong.clone();
        for i in 0..self.levels.len() {
            if i >= m {
                let src = &self.levels[i];
                out.levels[i] = Level {
                    gens: src.gens.iter().map(|&g| remap[g]).collect(),
                    orbit: src.orbit.clone(),
                    reps: src.reps.clone(),
                    reps_inv: src.reps_inv.clone(),
                    pending: Vec::new(),
                };
            } else {
                out.levels[i].gens = (0..keep.len()).collect();
            }
        }
        out
    }

    /// Subgroup fixing every listed vertex.
    pub fn pointwise_stabilizer(&self, points: &[Vertex]) -> Result<PermGroup, GroupError> {
        let mut idx: Vec<usize> = points.iter().map(|v| self.point_index(v)).collect::<Result<_, _>>()?;
        idx.sort_unstable();
        idx.dedup();
        if idx.iter().enumerate().all(|(k, &i)| k == i) {
            return Ok(self.suffix_from(idx.len()));
        }
        let mut h = self.clone();
        for &i in &idx {
            h = h.point_stabilizer(&self.shape.vertex_at(i))?;
        }
        Ok(h)
    }

    /// Orbit of a vertex, in discovery order.
    pub fn orbit(&self, u: &Vertex) -> Result<Vec<Vertex>, GroupError> {
        let p = self.point_index(u)? as u32;
        let mut orbit = vec![p];
        let mut q = 0;
        while q < orbit.len() {
            for s in &self.strong {
                let image = s.images()[orbit[q] as usize];
                if !orbit.contains(&image) {
                    orbit.push(image);
                }
            }
            q += 1;
        }
        Ok(orbit.into_iter().map(|i| self.shape.vertex_at(i as usize)).collect())
    }

    pub fn is_transitive_on(&self, points: &[Vertex]) -> Result<bool, GroupError> {
        let Some(first) = points.first() else {
            return Ok(true);
        };
        let mut orbit = self.orbit(first)?;
        let mut want: Vec<Vertex> = points.to_vec();
        orbit.sort();
        want.sort();
        want.dedup();
        Ok(orbit == want)
    }

    /// `<S>^G`, the smallest normal subgroup containing `S`.
    pub fn normal_closure(&self, elements: &[TruncatedAut]) -> Result<PermGroup, GroupError> {
        for s in elements {
            if !self.contains(s)? {
                return Err(GroupError::NotInGroup);
            }
        }
        let mut n = PermGroup::trivial(self.shape, self.depth);
        n.limit = self.limit;
        for s in elements {
            n.extend(s)?;
        }
        let conjugators = if self.generators.is_empty() { &self.strong } else { &self.generators };
        let mut k = 0;
        while k < n.generators.len() {
            let x = n.generators[k].clone();
            for g in conjugators {
                let c = g.invert().compose_unchecked(&x).compose_unchecked(g);
                n.extend(&c)?;
            }
            k += 1;
        }
        Ok(n)
    }

    /// `[G, G]`.
    pub fn derived_subgroup(&self) -> Result<PermGroup, GroupError> {
        let gens = self.generators.clone();
        let mut comms = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let c = gens[i].commutator(&gens[j])?;
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool, GroupError> {
        self.same_domain(other)?;
        for s in &self.strong {
            if !other.contains(s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as sets: equal orders and one contains the other's generators.
    pub fn equals(&self, other: &PermGroup) -> Result<bool, GroupError> {
        self.same_domain(other)?;
        Ok(self.order() == other.order() && other.is_subgroup_of(self)?)
    }

    /// Whether `self` is normalized by every generator of `other`.
    pub fn is_normalized_by(&self, other: &PermGroup) -> Result<bool, GroupError> {
        self.same_domain(other)?;
        for g in &other.generators {
            for x in &self.strong {
                if !self.contains(&x.conjugate(g)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every element, in a fixed order; intended for small groups.
    pub fn elements(&self) -> Vec<TruncatedAut> {
        let mut out = vec![self.identity()];
        for level in self.levels.iter().rev() {
            if level.orbit.len() == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for rep in &level.reps {
                for x in &out {
                    next.push(x.compose_unchecked(rep));
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::Permutation;
    use hashbrown::HashSet;

    fn rooted(d: usize, cycles: &str) -> TruncatedAut {
        let shape = TreeShape::new(d).unwrap();
        TruncatedAut::rooted(shape, &Permutation::parse(d, cycles).unwrap(), 1).unwrap()
    }

    fn sym(d: usize) -> PermGroup {
        let shape = TreeShape::new(d).unwrap();
        PermGroup::build(shape, 1, &[rooted(d, "(1 2)"), rooted(d, &alloc::format!("{}", Permutation::long_cycle(d)))])
            .unwrap()
    }

    #[test]
    fn symmetric_and_alternating() {
        let s3 = sym(3);
        assert_eq!(s3.order(), 6);
        let a3 = s3.normal_closure(&[rooted(3, "(1 2 3)")]).unwrap();
        assert_eq!(a3.order(), 3);
        assert!(!a3.contains(&rooted(3, "(1 2)")).unwrap());
        assert!(s3.normal_closure(&[rooted(3, "(1 2)")]).unwrap().equals(&s3).unwrap());
        assert!(s3.derived_subgroup().unwrap().equals(&a3).unwrap());
        assert!(!a3.equals(&s3).unwrap());
        assert!(s3.equals(&s3).unwrap());
        assert!(a3.derived_subgroup().unwrap().is_trivial());
        assert_eq!(sym(5).order(), 120);
    }

    #[test]
    fn trivial_group() {
        let shape = TreeShape::new(2).unwrap();
        let g = PermGroup::build(shape, 3, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.contains(&TruncatedAut::identity(shape, 3)).unwrap());
        let level1: Vec<Vertex> = shape.level(1).collect();
        assert!(!g.is_transitive_on(&level1).unwrap());
        assert!(g.pointwise_stabilizer(&[]).unwrap().equals(&g).unwrap());
    }

    #[test]
    fn order_limit() {
        let s5 = [rooted(5, "(1 2)"), rooted(5, "(1 2 3 4 5)")];
        let err = PermGroup::build_with_limit(TreeShape::new(5).unwrap(), 1, &s5, 100).unwrap_err();
        assert_eq!(err, GroupError::OrderLimit { limit: 100 });
    }

    #[test]
    fn domain_mismatch() {
        let g = sym(3);
        let other = TruncatedAut::identity(TreeShape::new(3).unwrap(), 2);
        assert!(matches!(g.contains(&other), Err(GroupError::DomainMismatch { .. })));
    }

    fn random_aut(shape: TreeShape, depth: usize, rng: &mut rand_chacha::ChaCha8Rng) -> TruncatedAut {
        use rand::seq::SliceRandom;
        let d = shape.degree();
        let labels: Vec<Permutation> = (0..shape.domain_size(depth.saturating_sub(1)) + 1)
            .map(|_| {
                let mut v: Vec<usize> = (0..d).collect();
                v.shuffle(rng);
                Permutation::from_images(v).unwrap()
            })
            .collect();
        TruncatedAut::from_portrait(shape, depth, &labels).unwrap()
    }

    fn closure(gens: &[TruncatedAut], id: TruncatedAut) -> HashSet<TruncatedAut> {
        let mut seen = HashSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.compose(g).unwrap();
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn random_groups_against_enumeration() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (d, depth) in [(2usize, 3usize), (2, 4), (3, 2)] {
            let shape = TreeShape::new(d).unwrap();
            for _ in 0..6 {
                let gens: Vec<TruncatedAut> = (0..2).map(|_| random_aut(shape, depth, &mut rng)).collect();
                let g = PermGroup::build(shape, depth, &gens).unwrap();
                if g.order() > 20_000 {
                    continue;
                }
                let all = closure(&gens, TruncatedAut::identity(shape, depth));
                assert_eq!(g.order(), all.len() as u128);
                let listed: HashSet<TruncatedAut> = g.elements().into_iter().collect();
                assert_eq!(listed, all);
                let level1: Vec<Vertex> = shape.level(1).collect();
                let st = g.pointwise_stabilizer(&level1).unwrap();
                assert_eq!(st.order(), all.iter().filter(|x| x.fixes_levels(1)).count() as u128);
                let u = Vertex::from_letters(vec![1, 0]);
                let su = g.point_stabilizer(&u).unwrap();
                assert_eq!(su.order(), all.iter().filter(|x| x.fixes(&u).unwrap()).count() as u128);
            }
        }
    }

    #[test]
    fn normal_closure_is_normal() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let shape = TreeShape::new(2).unwrap();
        for _ in 0..8 {
            let gens: Vec<TruncatedAut> = (0..2).map(|_| random_aut(shape, 3, &mut rng)).collect();
            let g = PermGroup::build(shape, 3, &gens).unwrap();
            let s = gens[0].commutator(&gens[1]).unwrap();
            let n = g.normal_closure(&[s.clone()]).unwrap();
            assert!(n.contains(&s).unwrap());
            assert!(n.is_normalized_by(&g).unwrap());
            assert!(n.is_subgroup_of(&g).unwrap());
            assert!(g.derived_subgroup().unwrap().is_normalized_by(&g).unwrap());
        }
    }
}
