//! Level quotients `π_n(G)` and the stabilizer and section maps on them.

use alloc::vec::Vec;

use super::FractalError;
use crate::aut::TruncatedAut;
use crate::permgroup::PermGroup;
use crate::tree::Vertex;
use crate::word::Word;
use crate::wreath::{GroupDef, Unfolder};

/// `π_n(G)` as a permutation group on the vertices of levels `1..=n`.
#[derive(Debug, Clone)]
pub struct LevelQuotient {
    def: GroupDef,
    depth: usize,
    group: PermGroup,
    gen_auts: Vec<TruncatedAut>,
    gen_words: Vec<Word>,
    unfolder: Unfolder,
}

impl LevelQuotient {
    pub fn project(def: &GroupDef, depth: usize) -> Result<Self, FractalError> {
        Self::project_with_limit(def, depth, u128::MAX)
    }

    pub fn project_with_limit(def: &GroupDef, depth: usize, limit: u128) -> Result<Self, FractalError> {
        let unfolder = def.unfolder(depth)?;
        let gen_words: Vec<Word> = (0..def.generator_count()).map(Word::generator).collect();
        let gen_auts: Vec<TruncatedAut> = (0..def.generator_count()).map(|g| unfolder.generator(g).clone()).collect();
        let group = PermGroup::build_with_limit(def.shape(), depth, &gen_auts, limit)?;
        Ok(LevelQuotient { def: def.clone(), depth, group, gen_auts, gen_words, unfolder })
    }

    pub fn def(&self) -> &GroupDef {
        &self.def
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    /// Truncations of the definition's generators, in declaration order.
    pub fn generator_images(&self) -> &[TruncatedAut] {
        &self.gen_auts
    }

    pub fn generator_words(&self) -> &[Word] {
        &self.gen_words
    }

    pub fn unfold(&self, w: &Word) -> TruncatedAut {
        self.unfolder.unfold(w)
    }

    pub fn unfolder(&self) -> &Unfolder {
        &self.unfolder
    }

    /// `st(L_k)` inside `π_n(G)`.
    pub fn stab_level(&self, k: usize) -> Result<PermGroup, FractalError> {
        if k > self.depth {
            return Err(FractalError::LevelOutOfRange { level: k, depth: self.depth });
        }
        Ok(self.group.level_stabilizer(k))
    }

    /// `st(u)` inside `π_n(G)`.
    pub fn stab_vertex(&self, u: &Vertex) -> Result<PermGroup, FractalError> {
        if u.level() > self.depth {
            return Err(FractalError::LevelOutOfRange { level: u.level(), depth: self.depth });
        }
        if u.is_root() {
            return Ok(self.group.clone());
        }
        Ok(self.group.point_stabilizer(u)?)
    }

    /// `ψ_u(H)` as a group at depth `n - |u|`, generated by the sections at `u`
    /// of the generators of `H`.
    pub fn psi_image(&self, h: &PermGroup, u: &Vertex) -> Result<PermGroup, FractalError> {
        if u.level() > self.depth {
            return Err(FractalError::LevelOutOfRange { level: u.level(), depth: self.depth });
        }
        let mut sections = Vec::with_capacity(h.generators().len());
        for g in h.generators() {
            if !g.fixes(u)? {
                return Err(FractalError::NotStabilizing(u.clone()));
            }
            sections.push(g.section(u)?);
        }
        Ok(PermGroup::build_with_limit(self.def.shape(), self.depth - u.level(), &sections, self.group.limit())?)
    }

    /// `π_m(G)` for `m <= n`, from truncated generators.
    pub fn truncated(&self, m: usize) -> Result<PermGroup, FractalError> {
        let gens: Vec<TruncatedAut> = self.gen_auts.iter().map(|g| g.truncate(m)).collect::<Result<_, _>>()?;
        Ok(PermGroup::build_with_limit(self.def.shape(), m, &gens, self.group.limit())?)
    }
}

/// Quotients `π_0(G), ..., π_n(G)` built once and shared by the checks.
#[derive(Debug, Clone)]
pub struct Tower {
    quotients: Vec<LevelQuotient>,
}

impl Tower {
    pub fn new(def: &GroupDef, max_depth: usize, limit: u128) -> Result<Self, FractalError> {
        let quotients = (0..=max_depth)
            .map(|n| LevelQuotient::project_with_limit(def, n, limit))
            .collect::<Result<_, _>>()?;
        Ok(Tower { quotients })
    }

    pub fn at(&self, n: usize) -> &LevelQuotient {
        &self.quotients[n]
    }

    pub fn max_depth(&self) -> usize {
        self.quotients.len() - 1
    }
}
