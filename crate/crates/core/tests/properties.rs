mod oracle;

use proptest::prelude::*;
use selfsim_core::fractality::{verify_witness, LevelQuotient};
use selfsim_core::{ggs, grigorchuk, hanoi, hanoi_chain, GroupDef, Vertex, Word};

fn families() -> Vec<GroupDef> {
    vec![grigorchuk(), ggs(3, &[1, 2]).unwrap(), ggs(3, &[1, 1]).unwrap(), hanoi(3).unwrap(), hanoi_chain(4).unwrap()]
}

fn case() -> impl Strategy<Value = (usize, Vec<(usize, bool)>, Vec<usize>, usize)> {
    (0usize..5, proptest::collection::vec((0usize..6, any::<bool>()), 0..14), proptest::collection::vec(0usize..4, 0..4), 1usize..=4)
}

fn build(def: &GroupDef, letters: &[(usize, bool)]) -> Word {
    let n = def.generator_count();
    Word::from_letters(letters.iter().map(|&(g, inv)| (g % n, if inv { -1 } else { 1 })))
}

fn vertex(def: &GroupDef, letters: &[usize], depth: usize) -> Vertex {
    Vertex::from_letters(letters.iter().take(depth).map(|&x| x % def.degree()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn word_sections_match_truncated_sections((fam, letters, path, depth) in case()) {
        let def = &families()[fam];
        let depth = depth.min(if def.degree() == 2 { 4 } else { 3 });
        let w = build(def, &letters);
        let u = vertex(def, &path, depth);
        let f = def.unfold(&w, depth).unwrap();
        let symbolic = def.word_section(&w, &u).unwrap();
        let rest = depth - u.level();
        if rest > 0 {
            prop_assert_eq!(f.section(&u).unwrap(), def.unfold(&symbolic, rest).unwrap());
        }
        prop_assert_eq!(def.word_apply(&w, &u).unwrap(), f.apply(&u).unwrap());
        prop_assert_eq!(def.word_root_label(&w), f.label(&Vertex::root()).unwrap());
    }

    #[test]
    fn reduction_preserves_the_element((fam, letters, _path, depth) in case()) {
        let def = &families()[fam];
        let depth = depth.min(if def.degree() == 2 { 4 } else { 3 });
        let w = build(def, &letters);
        prop_assert_eq!(def.unfold(&def.reduce(&w), depth).unwrap(), def.unfold(&w, depth).unwrap());
    }

    #[test]
    fn unfolded_words_lie_in_the_quotient((fam, letters, _path, depth) in case()) {
        let def = &families()[fam];
        let depth = depth.min(3);
        let q = LevelQuotient::project(def, depth).unwrap();
        let w = build(def, &letters);
        prop_assert!(q.group().contains(&q.unfold(&w)).unwrap());
    }

    #[test]
    fn verified_witnesses_hold_at_every_depth((fam, letters, path, _depth) in case()) {
        let def = &families()[fam];
        let w = build(def, &letters);
        let u = vertex(def, &path, 2);
        let target = def.word_section(&w, &u).unwrap();
        let fixes = def.word_apply(&w, &u).unwrap() == u;
        prop_assert_eq!(verify_witness(def, &w, &u, &target), fixes);
        if fixes {
            for n in u.level() + 1..=u.level() + 2 {
                let lhs = def.unfold(&w, n).unwrap().section(&u).unwrap();
                prop_assert_eq!(lhs, def.unfold(&target, n - u.level()).unwrap());
            }
        }
    }

    #[test]
    fn library_sections_agree_with_raw_maps((fam, letters, path, depth) in case()) {
        let def = &families()[fam];
        let depth = depth.min(3);
        let f = def.unfold(&build(def, &letters), depth).unwrap();
        let u = vertex(def, &path, depth);
        let raw = oracle::section(def.shape(), depth, &oracle::raw(&f), &oracle::letters(&u));
        prop_assert_eq!(oracle::raw(&f.section(&u).unwrap()), raw);
    }
}
