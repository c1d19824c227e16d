//! `st(L_1)` from a presentation of the root-label group, and the section
//! closure bound for normal closures inside level stabilizers.

use alloc::vec::Vec;

use super::quotient::LevelQuotient;
use super::FractalError;
use crate::aut::TruncatedAut;
use crate::permgroup::PermGroup;
use crate::tree::Vertex;
use crate::word::Word;
use crate::wreath::{GroupDef, Presentation};

#[derive(Debug, Clone)]
pub struct RelatorReport {
    /// `φ(r)` for each relator, reduced.
    pub relator_images: Vec<Word>,
    /// `(n, <φ(R)>^G == st(L_1))` in `π_n(G)`.
    pub depths: Vec<(usize, bool)>,
}

impl RelatorReport {
    pub fn holds(&self) -> bool {
        self.depths.iter().all(|&(_, ok)| ok)
    }
}

/// Check `ρ∘φ = θ` on the presentation generators, then compare the normal
/// closure of `φ(R)` with `st(L_1)` in `π_n(G)` for `n` in `depths`.
pub fn stab1_from_relators(
    def: &GroupDef,
    presentation: &Presentation,
    depths: core::ops::RangeInclusive<usize>,
) -> Result<RelatorReport, FractalError> {
    for (y, image) in presentation.generator_map.iter().enumerate() {
        if def.word_root_label(image) != presentation.images[y] {
            return Err(FractalError::RelatorMismatch { generator: presentation.names[y].clone() });
        }
    }
    let relator_images: Vec<Word> = presentation.relator_images().iter().map(|w| def.reduce(w)).collect();
    let mut report = RelatorReport { relator_images, depths: Vec::new() };
    for n in depths {
        let q = LevelQuotient::project(def, n)?;
        let elements: Vec<TruncatedAut> = report.relator_images.iter().map(|w| q.unfold(w)).collect();
        let closure = q.group().normal_closure(&elements)?;
        report.depths.push((n, closure.equals(&q.stab_level(1)?)?));
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    /// `N = <ψ_u(S) | u in L_k>^G` in `π_{depth-k}(G)`.
    pub bound: PermGroup,
    /// `ψ_u(<S>^G) ⊆ N` for every `u` in `L_k`.
    pub contained: bool,
    /// `ψ_u(<S>^G) = N` for every `u`, computed only when requested.
    pub equal: Option<bool>,
}

/// Bound `ψ_u(<S>^G)` by the normal closure of the sections of `S` at level `k`.
///
/// `check_equality` should be set only when the group is known to be
/// strongly fractal and transitive on the first level, with `k = 1`; then
/// equality is expected.
pub fn section_closure_bound(
    def: &GroupDef,
    s: &[Word],
    k: usize,
    depth: usize,
    check_equality: bool,
) -> Result<ClosureReport, FractalError> {
    if k > depth {
        return Err(FractalError::LevelOutOfRange { level: k, depth });
    }
    for w in s {
        if !def.word_stabilizes_level(w, k)? {
            return Err(FractalError::NotStabilizingLevel { word: def.display_word(w), level: k });
        }
    }
    let big = LevelQuotient::project(def, depth)?;
    let small = LevelQuotient::project(def, depth - k)?;
    let level: Vec<Vertex> = def.shape().level(k).collect();
    let mut sections = Vec::new();
    for w in s {
        for u in &level {
            sections.push(small.unfold(&def.word_section(w, u)?));
        }
    }
    let bound = small.group().normal_closure(&sections)?;
    let elements: Vec<TruncatedAut> = s.iter().map(|w| big.unfold(w)).collect();
    let k_group = big.group().normal_closure(&elements)?;
    let mut contained = true;
    let mut equal = true;
    for u in &level {
        let image = big.psi_image(&k_group, u)?;
        if !image.is_subgroup_of(&bound)? {
            contained = false;
        }
        if check_equality && !image.equals(&bound)? {
            equal = false;
        }
    }
    Ok(ClosureReport { bound, contained, equal: check_equality.then_some(equal) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn ggs_presentation() {
        let def = families::ggs(3, &[1, 1]).unwrap();
        let pres = def.annotations().presentation.clone().unwrap();
        let report = stab1_from_relators(&def, &pres, 1..=3).unwrap();
        assert!(report.holds());
        assert_eq!(report.relator_images.len(), 2);
        assert!(report.relator_images[0].is_identity());
    }

    #[test]
    fn mismatched_map_is_rejected() {
        let def = families::ggs(3, &[1, 1]).unwrap();
        let mut pres = def.annotations().presentation.clone().unwrap();
        pres.generator_map.swap(0, 1);
        assert!(matches!(stab1_from_relators(&def, &pres, 1..=1), Err(FractalError::RelatorMismatch { .. })));
    }

    #[test]
    fn trivial_presentation() {
        // all generators stabilize L_1: J is trivial and R = Y
        let def = GroupDef::builder(2)
            .generator("t", crate::permutation::Permutation::identity(2), &["t", "e"])
            .build()
            .unwrap();
        let pres = Presentation {
            names: alloc::vec!["y".into()],
            images: alloc::vec![crate::permutation::Permutation::identity(2)],
            relators: crate::wreath::RelatorSet::new(alloc::vec![Word::generator(0)]).unwrap(),
            generator_map: alloc::vec![Word::generator(0)],
        };
        let report = stab1_from_relators(&def, &pres, 1..=2).unwrap();
        assert!(report.holds());
    }

    #[test]
    fn identity_gives_trivial_bound() {
        let def = families::hanoi_chain(3).unwrap();
        let r = section_closure_bound(&def, &[Word::identity()], 1, 3, false).unwrap();
        assert!(r.bound.is_trivial());
        assert!(r.contained);
        assert!(section_closure_bound(&def, &[def.parse_word("b1").unwrap()], 1, 3, false).is_err());
    }
}
