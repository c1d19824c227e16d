//! Built-in group definitions: Hanoi Towers groups, their chain subgroups,
//! GGS groups and the first Grigorchuk group.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::permutation::Permutation;
use crate::word::Word;
use crate::wreath::{Annotations, GroupDef, Presentation, RelatorSet, Section};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("defining vector must have {expected} entries, got {found}")]
    VectorLength { expected: usize, found: usize },
    #[error("defining vector is zero modulo {0}")]
    ZeroVector(usize),
}

/// Parameters of a GGS group: degree `p` and defining vector `e`, reduced mod `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GgsParams {
    p: usize,
    e: Vec<u32>,
}

impl GgsParams {
    pub fn new(p: usize, e: &[i64]) -> Result<Self, FamilyError> {
        if p < 2 {
            return Err(FamilyError::DegreeTooSmall { min: 2, got: p });
        }
        if e.len() != p - 1 {
            return Err(FamilyError::VectorLength { expected: p - 1, found: e.len() });
        }
        let e: Vec<u32> = e.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect();
        if e.iter().all(|&x| x == 0) {
            return Err(FamilyError::ZeroVector(p));
        }
        Ok(GgsParams { p, e })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn vector(&self) -> &[u32] {
        &self.e
    }

    pub fn flags(&self) -> GgsFlags {
        let sum: u64 = self.e.iter().map(|&x| x as u64).sum();
        GgsFlags {
            p: self.p,
            vector: self.e.clone(),
            constant_vector: self.e.iter().all(|&x| x == self.e[0]),
            periodic: sum % self.p as u64 == 0,
        }
    }
}

/// Flags recorded on GGS definitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GgsFlags {
    pub p: usize,
    pub vector: Vec<u32>,
    pub constant_vector: bool,
    /// `e_1 + ... + e_{p-1} = 0 mod p`.
    pub periodic: bool,
}

fn hanoi_name(d: usize, i: usize, j: usize) -> String {
    if d < 10 {
        format!("a_{}{}", i, j)
    } else {
        format!("a_{}_{}", i, j)
    }
}

fn hanoi_generator(d: usize, index: usize, i: usize, j: usize) -> (Permutation, Vec<Section>) {
    let root = Permutation::transposition(d, i, j).expect("i, j in range");
    let sections = (1..=d)
        .map(|k| Section::Word(if k == i || k == j { Word::identity() } else { Word::generator(index) }))
        .collect();
    (root, sections)
}

/// The Hanoi Towers group on `d` pegs, generated by all `a_ij`.
pub fn hanoi(d: usize) -> Result<GroupDef, FamilyError> {
    if d < 3 {
        return Err(FamilyError::DegreeTooSmall { min: 3, got: d });
    }
    let mut builder = GroupDef::builder(d);
    let mut index = 0;
    for i in 1..=d {
        for j in i + 1..=d {
            let name = hanoi_name(d, i, j);
            let (root, sections) = hanoi_generator(d, index, i, j);
            builder = builder.generator_with_sections(&name, root, sections).order(&name, 2);
            index += 1;
        }
    }
    let def = builder
        .annotations(Annotations { family: Some(format!("hanoi:{}", d)), ..Annotations::default() })
        .build()
        .expect("hanoi definition is valid");
    Ok(def)
}

/// The chain subgroup `<b_1, ..., b_{d-1}>` with `b_i = a_{i,i+1}`, carrying
/// the Coxeter presentation of `S_d` on `t_1, ..., t_{d-1}`.
pub fn hanoi_chain(d: usize) -> Result<GroupDef, FamilyError> {
    if d < 3 {
        return Err(FamilyError::DegreeTooSmall { min: 3, got: d });
    }
    let mut builder = GroupDef::builder(d);
    for i in 1..d {
        let name = format!("b{}", i);
        let (root, sections) = hanoi_generator(d, i - 1, i, i + 1);
        builder = builder.generator_with_sections(&name, root, sections).order(&name, 2);
    }
    let t = |i: usize| Word::generator(i - 1);
    let mut relators = Vec::new();
    for i in 1..d {
        relators.push(t(i).pow(2));
    }
    for i in 1..d - 1 {
        relators.push(t(i).concat(&t(i + 1)).pow(3));
    }
    for i in 1..d {
        for j in i + 2..d {
            relators.push(t(i).commutator(&t(j)));
        }
    }
    let presentation = Presentation {
        names: (1..d).map(|i| format!("t{}", i)).collect(),
        images: (1..d).map(|i| Permutation::transposition(d, i, i + 1).expect("in range")).collect(),
        relators: RelatorSet::new(relators).expect("coxeter relators are nontrivial"),
        generator_map: (0..d - 1).map(Word::generator).collect(),
    };
    // b1^(b2 b1)
    let conj = Word::generator(0).conjugate(&Word::generator(1).concat(&Word::generator(0)));
    let def = builder
        .annotations(Annotations {
            family: Some(format!("hanoi-chain:{}", d)),
            presentation: Some(presentation),
            witness_hints: vec![conj],
            ggs: None,
        })
        .build()
        .expect("hanoi chain definition is valid");
    Ok(def)
}

/// The GGS group with rooted `a = (1 2 ... p)` and `b = (a^{e_1}, ..., a^{e_{p-1}}, b)`.
pub fn ggs(p: usize, e: &[i64]) -> Result<GroupDef, FamilyError> {
    ggs_with(&GgsParams::new(p, e)?)
}

pub fn ggs_with(params: &GgsParams) -> Result<GroupDef, FamilyError> {
    let p = params.p;
    let a = Word::generator(0);
    let b = Word::generator(1);
    let mut b_sections: Vec<Section> = params.e.iter().map(|&k| Section::Word(a.pow(k as i64))).collect();
    b_sections.push(Section::Word(b.clone()));
    let flags = params.flags();

    // b_i = b^(a^i), and the product b_1 b_2 ... b_{p-1} b
    let conjugates: Vec<Word> = (1..p as i64).map(|i| b.conjugate(&a.pow(i))).collect();
    let mut product = Word::identity();
    for c in &conjugates {
        product.append(c);
    }
    product.append(&b);
    let mut hints = conjugates;
    hints.push(product);

    let presentation = Presentation {
        names: vec!["y_a".to_string(), "y_b".to_string()],
        images: vec![Permutation::long_cycle(p), Permutation::identity(p)],
        relators: RelatorSet::new(vec![Word::power_of(0, p as i64), Word::generator(1)]).expect("nontrivial"),
        generator_map: vec![a.clone(), b.clone()],
    };
    let vector: Vec<String> = params.e.iter().map(|x| x.to_string()).collect();
    let def = GroupDef::builder(p)
        .generator_with_sections("a", Permutation::long_cycle(p), (0..p).map(|_| Section::Word(Word::identity())).collect())
        .generator_with_sections("b", Permutation::identity(p), b_sections)
        .order("a", p as u32)
        .order("b", p as u32)
        .annotations(Annotations {
            family: Some(format!("ggs:{}:{}", p, vector.join(","))),
            presentation: Some(presentation),
            witness_hints: hints,
            ggs: Some(flags),
        })
        .build()
        .expect("ggs definition is valid");
    Ok(def)
}

/// The first Grigorchuk group.
pub fn grigorchuk() -> GroupDef {
    let names = ["a", "b", "c", "d"];
    let hint = |s: &str| crate::word::parse_word(&names, s).expect("valid hint");
    let swap = Permutation::long_cycle(2);
    let id = Permutation::identity(2);
    let presentation = Presentation {
        names: ["y_a", "y_b", "y_c", "y_d"].iter().map(|s| s.to_string()).collect(),
        images: vec![swap.clone(), id.clone(), id.clone(), id.clone()],
        relators: RelatorSet::new(vec![
            Word::power_of(0, 2),
            Word::generator(1),
            Word::generator(2),
            Word::generator(3),
        ])
        .expect("nontrivial"),
        generator_map: (0..4).map(Word::generator).collect(),
    };
    GroupDef::builder(2)
        .generator("a", swap, &["e", "e"])
        .generator("b", id.clone(), &["a", "c"])
        .generator("c", id.clone(), &["a", "d"])
        .generator("d", id, &["e", "b"])
        .order("a", 2)
        .order("b", 2)
        .order("c", 2)
        .order("d", 2)
        .annotations(Annotations {
            family: Some("grigorchuk".to_string()),
            presentation: Some(presentation),
            witness_hints: vec![hint("d"), hint("(ab)^4"), hint("(ac)^4"), hint("(ab)^4(adabac)^2")],
            ggs: None,
        })
        .build()
        .expect("grigorchuk definition is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Vertex;
    use alloc::string::ToString;

    #[test]
    fn hanoi_three() {
        let def = hanoi(3).unwrap();
        assert_eq!(def.generator_count(), 3);
        let g = &def.generators()[0];
        assert_eq!(g.name(), "a_12");
        assert_eq!(g.root().to_string(), "(1 2)");
        let secs: Vec<String> = g
            .sections()
            .iter()
            .map(|s| match s {
                Section::Word(w) => def.display_word(w),
                Section::External(_) => String::new(),
            })
            .collect();
        assert_eq!(secs, ["e", "e", "a_12"]);
        assert!(def.check_self_similar().holds);
        assert_eq!(hanoi(4).unwrap().generator_count(), 6);
        assert!(hanoi(2).is_err());
        assert_eq!(hanoi(11).unwrap().names()[0], "a_1_2");
    }

    #[test]
    fn chain_relators() {
        let def = hanoi_chain(4).unwrap();
        assert_eq!(def.names(), ["b1", "b2", "b3"]);
        let pres = def.annotations().presentation.as_ref().unwrap();
        let images: Vec<String> = pres.relator_images().iter().map(|w| def.display_word(w)).collect();
        assert!(images.contains(&"b1 b2 b1 b2 b1 b2".to_string()));
        assert!(images.contains(&"b1^-1 b3^-1 b1 b3".to_string()));
        assert_eq!(pres.relators.relators().len(), 3 + 2 + 1);
    }

    #[test]
    fn ggs_flags_small_cases() {
        for p in [2usize, 3, 5] {
            let mut e = vec![0i64; p - 1];
            loop {
                let params = GgsParams::new(p, &e);
                if e.iter().all(|&x| x == 0) {
                    assert_eq!(params, Err(FamilyError::ZeroVector(p)));
                } else {
                    let flags = params.unwrap().flags();
                    assert_eq!(flags.constant_vector, e.windows(2).all(|w| w[0] == w[1]));
                    assert_eq!(flags.periodic, e.iter().sum::<i64>() % p as i64 == 0);
                }
                let mut i = 0;
                while i < e.len() && e[i] == p as i64 - 1 {
                    e[i] = 0;
                    i += 1;
                }
                if i == e.len() {
                    break;
                }
                e[i] += 1;
            }
        }
    }

    #[test]
    fn ggs_definitions() {
        let g = ggs(3, &[1, 1]).unwrap();
        let flags = g.annotations().ggs.clone().unwrap();
        assert!(flags.constant_vector && !flags.periodic);
        assert!(ggs(3, &[1, 2]).unwrap().annotations().ggs.as_ref().unwrap().periodic);
        let two = ggs(2, &[1]).unwrap().annotations().ggs.clone().unwrap();
        assert!(two.constant_vector && !two.periodic);
        assert_eq!(GgsParams::new(3, &[4, -1]).unwrap().vector(), &[1, 2]);
        assert!(ggs(3, &[1]).is_err());
    }

    #[test]
    fn grigorchuk_sections() {
        let def = grigorchuk();
        let c = def.parse_word("c").unwrap();
        let at = |w: &Word, s: &str| def.display_word(&def.word_section(w, &Vertex::parse(s).unwrap()).unwrap());
        assert_eq!(at(&c, "1"), "a");
        assert_eq!(at(&c, "2"), "d");
        let a = def.parse_word("a").unwrap();
        assert_eq!(at(&a, "1"), "e");
        assert_eq!(at(&a, "2"), "e");
    }
}
