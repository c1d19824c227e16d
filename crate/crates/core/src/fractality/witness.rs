//! Witness words: elements of a stabilizer whose section is a prescribed word.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use hashbrown::HashSet;

use super::FractalError;
use crate::aut::TruncatedAut;
use crate::tree::Vertex;
use crate::word::Word;
use crate::wreath::GroupDef;

/// Which stabilizer the witness must lie in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stabilize {
    /// `st(u)`.
    Vertex,
    /// `st(L_{|u|})`.
    Level,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_len: usize,
    /// Largest truncation depth the search may unfold to.
    pub depth: usize,
    pub visited_cap: usize,
    /// Budget for exact equality decisions in [`verify_witness`].
    pub decide_budget: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_len: 8, depth: 4, visited_cap: 100_000, decide_budget: 4096 }
    }
}

fn stabilizes(def: &GroupDef, w: &Word, u: &Vertex, mode: Stabilize) -> Result<bool, FractalError> {
    Ok(match mode {
        Stabilize::Vertex => def.word_apply(w, u)? == *u,
        Stabilize::Level => def.word_stabilizes_level(w, u.level())?,
    })
}

/// True when `w` fixes `u` and `w_u` equals `target`.
///
/// Equality is first tested on normal forms. Failing that, it is decided
/// exactly by exploring sections, as long as that terminates within the budget.
pub fn verify_witness(def: &GroupDef, w: &Word, u: &Vertex, target: &Word) -> bool {
    verify_witness_in(def, w, u, target, Stabilize::Vertex, SearchOptions::default().decide_budget)
}

pub fn verify_witness_in(def: &GroupDef, w: &Word, u: &Vertex, target: &Word, mode: Stabilize, budget: usize) -> bool {
    if def.shape().validate(u).is_err() {
        return false;
    }
    match stabilizes(def, w, u, mode) {
        Ok(true) => {}
        _ => return false,
    }
    let Ok(section) = def.word_section(w, u) else {
        return false;
    };
    let target = def.reduce(target);
    section == target || def.decide_equal(&section, &target, budget) == Some(true)
}

/// Shortlex-first word `w` with `w` in the requested stabilizer and `w_u`
/// reducing to `target`.
///
/// Words equal modulo `st(L_D)` are explored once, with `D = |u| + 2` capped
/// at `options.depth` (but never below `|u|`).
pub fn witness_search(
    def: &GroupDef,
    u: &Vertex,
    target: &Word,
    options: &SearchOptions,
    mode: Stabilize,
) -> Result<Option<Word>, FractalError> {
    def.shape().validate(u)?;
    let k = u.level();
    let dedup_depth = k.max((k + 2).min(options.depth));
    let unfolder = def.unfolder(dedup_depth)?;
    let target = def.reduce(target);

    let mut alphabet: Vec<(usize, i64)> = Vec::new();
    for (g, gen) in def.generators().iter().enumerate() {
        alphabet.push((g, 1));
        if gen.order() != Some(2) {
            alphabet.push((g, -1));
        }
    }

    let start = TruncatedAut::identity(def.shape(), dedup_depth);
    let mut visited: HashSet<TruncatedAut> = HashSet::new();
    visited.insert(start.clone());
    let mut queue: VecDeque<(Word, TruncatedAut)> = VecDeque::new();
    queue.push_back((Word::identity(), start));

    while let Some((w, aut)) = queue.pop_front() {
        let fixed = match mode {
            Stabilize::Vertex => aut.fixes(u)?,
            Stabilize::Level => aut.fixes_levels(k),
        };
        if fixed && def.word_section(&w, u)? == target && verify_witness_in(def, &w, u, &target, mode, options.decide_budget)
        {
            return Ok(Some(w));
        }
        let len = w.letter_len();
        if len >= options.max_len {
            continue;
        }
        for &(g, e) in &alphabet {
            let mut next = w.clone();
            next.push(g, e);
            let next = def.reduce(&next);
            if next.letter_len() != len + 1 {
                continue;
            }
            let next_aut = aut.compose_unchecked(unfolder.letter(g, e));
            if visited.len() >= options.visited_cap {
                return Ok(None);
            }
            if visited.insert(next_aut.clone()) {
                queue.push_back((next, next_aut));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn v(s: &str) -> Vertex {
        Vertex::parse(s).unwrap()
    }

    #[test]
    fn chain_conjugate_verifies() {
        let def = families::hanoi_chain(3).unwrap();
        let w = def.parse_word("b1^-1 b2^-1 b1 b2 b1").unwrap();
        let b1 = def.parse_word("b1").unwrap();
        assert!(verify_witness(&def, &w, &v("1"), &b1));
        assert!(!verify_witness(&def, &b1, &v("1"), &b1));
        let found = witness_search(&def, &v("1"), &b1, &SearchOptions::default(), Stabilize::Vertex).unwrap().unwrap();
        assert!(verify_witness(&def, &found, &v("1"), &b1));
    }

    #[test]
    fn generator_is_its_own_witness() {
        let def = families::hanoi_chain(3).unwrap();
        let b2 = def.parse_word("b2").unwrap();
        let found = witness_search(&def, &v("1"), &b2, &SearchOptions::default(), Stabilize::Vertex).unwrap();
        assert_eq!(found, Some(b2));
    }

    #[test]
    fn grigorchuk_witnesses() {
        let def = grig();
        let d = def.parse_word("d").unwrap();
        let c = def.parse_word("c").unwrap();
        let found = witness_search(&def, &v("2.2"), &c, &SearchOptions::default(), Stabilize::Vertex).unwrap().unwrap();
        assert!(verify_witness(&def, &found, &v("2.2"), &c));
        assert!(verify_witness(&def, &d, &v("2.2"), &c));
        assert!(verify_witness(&def, &Word::identity(), &v("1.2"), &Word::identity()));
    }

    #[test]
    fn exact_equality_fallback() {
        let def = grig();
        // c d is b, but not syntactically
        let b = def.parse_word("b").unwrap();
        let cd = def.parse_word("c d").unwrap();
        let w = def.parse_word("a d a").unwrap();
        assert_eq!(def.display_word(&def.word_section(&w, &v("1")).unwrap()), "b");
        assert!(verify_witness(&def, &w, &v("1"), &cd));
        assert!(verify_witness(&def, &w, &v("1"), &b));
    }

    fn grig() -> GroupDef {
        families::grigorchuk()
    }
}
