//! Group definitions by wreath recursion.
//!
//! Each generator `s` is given by its root label and its `d` first-level
//! sections, which are words over the generators. Everything else is derived
//! from the section rules
//!
//! ```text
//! (fg)_u = f_u g_{f(u)}        (f^{-1})_u = (f_{f^{-1}(u)})^{-1}        f_{uv} = (f_u)_v
//! ```
//!
//! applied letter by letter, so symbolic sections cost time linear in the
//! word length and never depend on a truncation depth.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;

use crate::aut::TruncatedAut;
use crate::families::GgsFlags;
use crate::permutation::Permutation;
use crate::tree::{TreeError, TreeShape, Vertex};
use crate::word::{parse_word, Word, WordParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DefError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("undeclared generator '{0}'")]
    UndeclaredGenerator(String),
    #[error("duplicate generator '{0}'")]
    DuplicateGenerator(String),
    #[error("invalid generator name '{0}'")]
    InvalidName(String),
    #[error("root label of '{generator}' is not a bijection of 1..{degree}")]
    NonBijectiveRoot { generator: String, degree: usize },
    #[error("generator '{generator}' has {found} sections, expected {expected}")]
    SectionCount { generator: String, expected: usize, found: usize },
    #[error("declared order {order} of '{generator}' is inconsistent: {generator}^{order} is not the identity at depth {depth}")]
    InconsistentOrder { generator: String, order: u32, depth: usize },
    #[error("relator is trivial after free reduction")]
    EmptyRelator,
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Wreath(#[from] WreathError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WreathError {
    #[error("section {position} of generator '{generator}' is external and has no symbolic form")]
    ExternalSection { generator: String, position: usize },
    #[error("external section of '{generator}' is only known to depth {available}, needed {needed}")]
    ExternalTooShallow { generator: String, available: usize, needed: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A first-level section of a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Section {
    /// A word over the declared generators.
    Word(Word),
    /// A raw portrait not known to lie in the group. Only truncated
    /// arithmetic is possible with it.
    External(TruncatedAut),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    name: String,
    root: Permutation,
    sections: Vec<Section>,
    order: Option<u32>,
}

impl Generator {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn root(&self) -> &Permutation {
        &self.root
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    /// Rooted: every section is the empty word.
    pub fn is_rooted(&self) -> bool {
        self.sections.iter().all(|s| matches!(s, Section::Word(w) if w.is_identity()))
    }
}

/// Nonempty freely reduced relators of a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorSet {
    relators: Vec<Word>,
}

impl RelatorSet {
    pub fn new(relators: Vec<Word>) -> Result<Self, DefError> {
        if relators.iter().any(Word::is_identity) {
            return Err(DefError::EmptyRelator);
        }
        Ok(RelatorSet { relators })
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

/// A presentation `J = <Y | R>` of the root-label group together with the
/// map `φ : Y -> G` sending each presentation generator to a word of the
/// definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    /// Names of the presentation generators `Y`.
    pub names: Vec<String>,
    /// `θ(y)`, the permutation each `y` stands for.
    pub images: Vec<Permutation>,
    /// Relators, as words over `Y`.
    pub relators: RelatorSet,
    /// `φ(y)`, as words over the definition's generators.
    pub generator_map: Vec<Word>,
}

impl Presentation {
    /// `φ(r)` for every relator.
    pub fn relator_images(&self) -> Vec<Word> {
        self.relators.relators().iter().map(|r| self.map_word(r)).collect()
    }

    pub fn map_word(&self, w: &Word) -> Word {
        let mut out = Word::identity();
        for (y, e) in w.letters() {
            out.append(&self.generator_map[y].pow(e));
        }
        out
    }
}

/// Data attached to built-in families that is not part of the file format.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Annotations {
    pub family: Option<String>,
    pub presentation: Option<Presentation>,
    /// Candidate witness words, verified before use.
    pub witness_hints: Vec<Word>,
    pub ggs: Option<GgsFlags>,
}

/// A self-similar group presented by wreath recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDef {
    shape: TreeShape,
    generators: Vec<Generator>,
    names: Vec<String>,
    annotations: Annotations,
}

/// Result of the first-level section closure check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfSimilarity {
    pub holds: bool,
    /// `table[s][x]` is the section word of generator `s` at `x`, or `None`
    /// for an external section.
    pub table: Vec<Vec<Option<Word>>>,
    /// First `(generator, letter)` whose section is not a word of the group.
    pub witness: Option<(usize, usize)>,
}

enum PendingSection {
    Text(String),
    Ready(Section),
}

struct PendingGenerator {
    name: String,
    root: Permutation,
    sections: Vec<PendingSection>,
}

pub struct GroupDefBuilder {
    degree: usize,
    generators: Vec<PendingGenerator>,
    orders: Vec<(String, u32)>,
    annotations: Annotations,
}

impl GroupDefBuilder {
    /// Add a generator whose sections are given in word syntax.
    pub fn generator(mut self, name: &str, root: Permutation, sections: &[&str]) -> Self {
        self.generators.push(PendingGenerator {
            name: name.to_string(),
            root,
            sections: sections.iter().map(|s| PendingSection::Text(s.to_string())).collect(),
        });
        self
    }

    /// Add a generator with explicit sections; word sections refer to
    /// generators by declaration index.
    pub fn generator_with_sections(mut self, name: &str, root: Permutation, sections: Vec<Section>) -> Self {
        self.generators.push(PendingGenerator {
            name: name.to_string(),
            root,
            sections: sections.into_iter().map(PendingSection::Ready).collect(),
        });
        self
    }

    pub fn order(mut self, name: &str, order: u32) -> Self {
        self.orders.push((name.to_string(), order));
        self
    }

    pub fn annotations(mut self, annotations: Annotations) -> Self {
        self.annotations = annotations;
        self
    }

    pub fn build(self) -> Result<GroupDef, DefError> {
        let shape = TreeShape::new(self.degree)?;
        let d = shape.degree();
        let names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        for (i, name) in names.iter().enumerate() {
            let valid = !name.is_empty()
                && name != "e"
                && name.chars().all(|c| c.is_alphanumeric() || c == '_')
                && !name.starts_with(|c: char| c.is_ascii_digit());
            if !valid {
                return Err(DefError::InvalidName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(DefError::DuplicateGenerator(name.clone()));
            }
        }
        let mut generators = Vec::with_capacity(self.generators.len());
        for pending in self.generators {
            if pending.root.degree() != d {
                return Err(DefError::NonBijectiveRoot { generator: pending.name, degree: d });
            }
            if pending.sections.len() != d {
                return Err(DefError::SectionCount {
                    generator: pending.name,
                    expected: d,
                    found: pending.sections.len(),
                });
            }
            let mut sections = Vec::with_capacity(d);
            for s in pending.sections {
                let section = match s {
                    PendingSection::Text(text) => Section::Word(parse_word(&names, &text).map_err(|e| undeclared(&e))?),
                    PendingSection::Ready(Section::Word(w)) => {
                        if let Some(g) = w.generators().find(|&g| g >= names.len()) {
                            return Err(DefError::UndeclaredGenerator(alloc::format!("#{}", g)));
                        }
                        Section::Word(w)
                    }
                    PendingSection::Ready(Section::External(a)) => {
                        if a.shape() != shape {
                            return Err(TreeError::DegreeMismatch { left: a.degree(), right: d }.into());
                        }
                        Section::External(a)
                    }
                };
                sections.push(section);
            }
            generators.push(Generator { name: pending.name, root: pending.root, sections, order: None });
        }
        for (name, order) in &self.orders {
            let g = names.iter().position(|n| n == name).ok_or_else(|| DefError::UndeclaredGenerator(name.clone()))?;
            if *order == 0 {
                return Err(DefError::InconsistentOrder { generator: name.clone(), order: 0, depth: 0 });
            }
            generators[g].order = Some(*order);
        }
        let def = GroupDef { shape, generators, names, annotations: self.annotations };
        def.check_orders()?;
        Ok(def)
    }
}

fn undeclared(e: &WordParseError) -> DefError {
    match e.message.strip_prefix("undeclared generator '") {
        Some(rest) => DefError::UndeclaredGenerator(rest.trim_end_matches('\'').to_string()),
        None => DefError::Syntax { line: 0, column: e.offset + 1, message: e.message.clone() },
    }
}

impl GroupDef {
    pub fn builder(degree: usize) -> GroupDefBuilder {
        GroupDefBuilder { degree, generators: Vec::new(), orders: Vec::new(), annotations: Annotations::default() }
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn degree(&self) -> usize {
        self.shape.degree()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn annotations(&self) -> &Annotations {
        &self.annotations
    }

    /// The same definition without family annotations.
    pub fn without_annotations(&self) -> GroupDef {
        GroupDef { annotations: Annotations::default(), ..self.clone() }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordParseError> {
        parse_word(&self.names, text).map(|w| self.reduce(&w))
    }

    pub fn display_word(&self, w: &Word) -> String {
        w.display(&self.names).to_string()
    }

    /// Depth at which declared orders are verified on load.
    pub fn check_depth(&self) -> usize {
        let mut depth = 1;
        while depth < 6 && self.shape.domain_size(depth + 1) <= 1500 {
            depth += 1;
        }
        depth
    }

    fn check_orders(&self) -> Result<(), DefError> {
        if self.generators.iter().all(|g| g.order.is_none()) {
            return Ok(());
        }
        let depth = self.max_unfold_depth().min(self.check_depth());
        let unfolder = self.unfolder(depth)?;
        for (i, g) in self.generators.iter().enumerate() {
            if let Some(m) = g.order {
                if !unfolder.generator(i).pow(m as i64).is_identity() {
                    return Err(DefError::InconsistentOrder { generator: g.name.clone(), order: m, depth });
                }
            }
        }
        Ok(())
    }

    /// Deepest truncation that can be unfolded (bounded by external sections).
    pub fn max_unfold_depth(&self) -> usize {
        self.generators
            .iter()
            .flat_map(|g| g.sections.iter())
            .filter_map(|s| match s {
                Section::External(a) => Some(a.depth() + 1),
                Section::Word(_) => None,
            })
            .min()
            .unwrap_or(usize::MAX)
    }

    fn normalize_exponent(&self, g: usize, e: i64) -> i64 {
        match self.generators[g].order {
            Some(m) => e.rem_euclid(m as i64),
            None => e,
        }
    }

    /// Free reduction together with exponent reduction modulo declared
    /// orders. Exponents of finite-order generators land in `1..m`.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(w.syllables().len());
        for s in w.syllables() {
            let mut e = s.exponent;
            if let Some(&(g, k)) = out.last() {
                if g == s.generator {
                    e += k;
                    out.pop();
                }
            }
            let e = self.normalize_exponent(s.generator, e);
            if e != 0 {
                out.push((s.generator, e));
            }
        }
        Word::from_letters(out)
    }

    /// `ρ(w)`: the product of root labels, left to right.
    pub fn word_root_label(&self, w: &Word) -> Permutation {
        let mut p = Permutation::identity(self.degree());
        for s in w.syllables() {
            p = p.then(&self.generators[s.generator].root.pow(s.exponent));
        }
        p
    }

    fn section_word(&self, g: usize, x: usize) -> Result<&Word, WreathError> {
        match &self.generators[g].sections[x] {
            Section::Word(w) => Ok(w),
            Section::External(_) => {
                Err(WreathError::ExternalSection { generator: self.generators[g].name.clone(), position: x + 1 })
            }
        }
    }

    /// Section at the first-level letter `x`, together with the image of `x`.
    pub fn first_level_section(&self, w: &Word, x: usize) -> Result<(Word, usize), WreathError> {
        let mut out = Word::identity();
        let mut cur = x;
        for s in w.syllables() {
            let gen = &self.generators[s.generator];
            let reps = s.exponent.unsigned_abs();
            if s.exponent > 0 {
                for _ in 0..reps {
                    out.append(self.section_word(s.generator, cur)?);
                    cur = gen.root.apply(cur);
                }
            } else {
                let inv = gen.root.inverse();
                for _ in 0..reps {
                    let pre = inv.apply(cur);
                    out.append(&self.section_word(s.generator, pre)?.inverse());
                    cur = pre;
                }
            }
        }
        Ok((self.reduce(&out), cur))
    }

    /// Exact section `w_u` (reduced) and image `w(u)`.
    pub fn section_and_image(&self, w: &Word, u: &Vertex) -> Result<(Word, Vertex), WreathError> {
        self.shape.validate(u)?;
        let mut cur = self.reduce(w);
        let mut image = Vec::with_capacity(u.level());
        for &x in u.letters() {
            let (next, y) = self.first_level_section(&cur, x)?;
            image.push(y);
            cur = next;
        }
        Ok((cur, Vertex::from_letters(image)))
    }

    /// The section of `w` at `u`, reduced. Defined whether or not `w` fixes `u`.
    pub fn word_section(&self, w: &Word, u: &Vertex) -> Result<Word, WreathError> {
        self.section_and_image(w, u).map(|(s, _)| s)
    }

    /// Image of a vertex under the automorphism a word represents.
    pub fn word_apply(&self, w: &Word, u: &Vertex) -> Result<Vertex, WreathError> {
        self.section_and_image(w, u).map(|(_, v)| v)
    }

    /// True when `w` fixes every vertex of levels `1..=k`.
    pub fn word_stabilizes_level(&self, w: &Word, k: usize) -> Result<bool, WreathError> {
        Ok(self.unfold(w, k)?.is_identity())
    }

    pub fn unfolder(&self, depth: usize) -> Result<Unfolder, WreathError> {
        Unfolder::new(self, depth)
    }

    /// `π_n` of the automorphism `w` represents.
    pub fn unfold(&self, w: &Word, depth: usize) -> Result<TruncatedAut, WreathError> {
        Ok(self.unfolder(depth)?.unfold(w))
    }

    /// Closure check: every first-level section of every
    /// generator must be a word over the generators.
    pub fn check_self_similar(&self) -> SelfSimilarity {
        let mut witness = None;
        let table = self
            .generators
            .iter()
            .enumerate()
            .map(|(g, gen)| {
                gen.sections
                    .iter()
                    .enumerate()
                    .map(|(x, s)| match s {
                        Section::Word(w) => Some(w.clone()),
                        Section::External(_) => {
                            witness.get_or_insert((g, x));
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        SelfSimilarity { holds: witness.is_none(), table, witness }
    }

    /// A generator with a `d`-cycle root label and trivial sections.
    pub fn rooted_cycle_generator(&self) -> Option<usize> {
        self.generators.iter().position(|g| g.is_rooted() && g.root.is_full_cycle())
    }

    /// Decide `w = 1` exactly by exploring all sections of `w`.
    ///
    /// The set of reachable reduced sections is finite whenever it stays
    /// within `budget` words; `None` means the budget ran out or a section
    /// is external.
    pub fn decide_trivial(&self, w: &Word, budget: usize) -> Option<bool> {
        let start = self.reduce(w);
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue = alloc::collections::VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            if !self.word_root_label(&v).is_identity() {
                return Some(false);
            }
            for x in 0..self.degree() {
                let (s, _) = self.first_level_section(&v, x).ok()?;
                if !seen.contains(&s) {
                    if seen.len() >= budget {
                        return None;
                    }
                    seen.insert(s.clone());
                    queue.push_back(s);
                }
            }
        }
        Some(true)
    }

    /// Exact equality of two words as tree automorphisms, when decidable
    /// within `budget`.
    pub fn decide_equal(&self, a: &Word, b: &Word, budget: usize) -> Option<bool> {
        let (ra, rb) = (self.reduce(a), self.reduce(b));
        if ra == rb {
            return Some(true);
        }
        self.decide_trivial(&ra.concat(&rb.inverse()), budget)
    }
}

impl fmt::Display for GroupDef {
    /// Renders in the definition file grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree = {}", self.degree())?;
        for g in &self.generators {
            write!(f, "generator {} : root = {} ; sections = [", g.name, g.root)?;
            for (i, s) in g.sections.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                match s {
                    Section::Word(w) => write!(f, "{}", w.display(&self.names))?,
                    Section::External(_) => f.write_str("?")?,
                }
            }
            writeln!(f, "]")?;
        }
        for g in &self.generators {
            if let Some(m) = g.order {
                writeln!(f, "order {} = {}", g.name, m)?;
            }
        }
        Ok(())
    }
}

/// Truncations of all generators at a fixed depth, for repeated unfolding.
#[derive(Debug, Clone)]
pub struct Unfolder {
    shape: TreeShape,
    depth: usize,
    gens: Vec<TruncatedAut>,
    invs: Vec<TruncatedAut>,
}

impl Unfolder {
    fn new(def: &GroupDef, depth: usize) -> Result<Self, WreathError> {
        let shape = def.shape;
        let mut gens: Vec<TruncatedAut> = def.generators.iter().map(|_| TruncatedAut::identity(shape, 0)).collect();
        let mut invs = gens.clone();
        for level in 1..=depth {
            let mut next = Vec::with_capacity(gens.len());
            for gen in &def.generators {
                let mut secs = Vec::with_capacity(shape.degree());
                for s in &gen.sections {
                    secs.push(match s {
                        Section::Word(w) => unfold_with(shape, level - 1, &gens, &invs, w),
                        Section::External(a) => a.truncate(level - 1).map_err(|_| WreathError::ExternalTooShallow {
                            generator: gen.name.clone(),
                            available: a.depth(),
                            needed: level - 1,
                        })?,
                    });
                }
                next.push(TruncatedAut::from_root_and_sections(&gen.root, &secs)?);
            }
            invs = next.iter().map(TruncatedAut::invert).collect();
            gens = next;
        }
        Ok(Unfolder { shape, depth, gens, invs })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn generator(&self, g: usize) -> &TruncatedAut {
        &self.gens[g]
    }

    pub fn generator_inverse(&self, g: usize) -> &TruncatedAut {
        &self.invs[g]
    }

    /// The truncation of a letter `g^{±1}`.
    pub fn letter(&self, g: usize, sign: i64) -> &TruncatedAut {
        if sign < 0 {
            &self.invs[g]
        } else {
            &self.gens[g]
        }
    }

    pub fn unfold(&self, w: &Word) -> TruncatedAut {
        unfold_with(self.shape, self.depth, &self.gens, &self.invs, w)
    }
}

fn unfold_with(shape: TreeShape, depth: usize, gens: &[TruncatedAut], invs: &[TruncatedAut], w: &Word) -> TruncatedAut {
    let mut acc = TruncatedAut::identity(shape, depth);
    for (g, e) in w.letters() {
        let letter = if e < 0 { &invs[g] } else { &gens[g] };
        acc = acc.compose_unchecked(letter);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use alloc::string::ToString;
    use alloc::vec;

    fn v(ix: &[usize]) -> Vertex {
        Vertex::from_one_based(ix)
    }

    #[test]
    fn hanoi_chain_conjugate_section() {
        let def = families::hanoi_chain(3).unwrap();
        let w = def.parse_word("b1^-1 b2^-1 b1 b2 b1").unwrap();
        assert_eq!(def.display_word(&def.word_section(&w, &v(&[1])).unwrap()), "b1");
        assert_eq!(def.word_root_label(&w).to_string(), "(2 3)");
    }

    #[test]
    fn commuting_chain_generators() {
        let def = families::hanoi_chain(4).unwrap();
        let w = def.parse_word("[b1,b3]").unwrap();
        assert!(def.word_section(&w, &v(&[1])).unwrap().is_identity());
        assert!(def.word_root_label(&w).is_identity());
    }

    #[test]
    fn chain_product_is_long_cycle() {
        let def = families::hanoi_chain(3).unwrap();
        let w = def.parse_word("b2 b1").unwrap();
        assert_eq!(def.word_root_label(&w).to_string(), "(1 2 3)");
        assert!(def.word_root_label(&Word::identity()).is_identity());
    }

    #[test]
    fn ggs_sections() {
        let def = families::ggs(3, &[1, 1]).unwrap();
        let b = def.parse_word("b").unwrap();
        assert_eq!(def.display_word(&def.word_section(&b, &v(&[3])).unwrap()), "b");
        assert_eq!(def.display_word(&def.word_section(&b, &v(&[1])).unwrap()), "a");
        assert!(def.word_section(&Word::identity(), &v(&[2, 1])).unwrap().is_identity());
    }

    #[test]
    fn unfold_reads_off_sections() {
        let def = families::ggs(3, &[1, 1]).unwrap();
        let b = def.unfold(&def.parse_word("b").unwrap(), 2).unwrap();
        assert!(b.label(&Vertex::root()).unwrap().is_identity());
        assert_eq!(b.label(&v(&[1])).unwrap().to_string(), "(1 2 3)");
        assert_eq!(b.label(&v(&[2])).unwrap().to_string(), "(1 2 3)");
        assert!(b.label(&v(&[3])).unwrap().is_identity());
    }

    #[test]
    fn grigorchuk_relations() {
        let def = families::grigorchuk();
        assert!(def.unfold(&def.parse_word("(ab)^4").unwrap(), 2).unwrap().is_identity());
        assert!(def.unfold(&def.parse_word("bcd").unwrap(), 4).unwrap().is_identity());
        assert_eq!(def.decide_trivial(&def.parse_word("bcd").unwrap(), 1000), Some(true));
        assert_eq!(def.decide_trivial(&def.parse_word("(ad)^4").unwrap(), 1000), Some(true));
        assert_eq!(def.decide_trivial(&def.parse_word("ab").unwrap(), 1000), Some(false));
        assert_eq!(def.decide_equal(&def.parse_word("cd").unwrap(), &def.parse_word("b").unwrap(), 1000), Some(true));
    }

    #[test]
    fn inconsistent_order_is_rejected() {
        let err = GroupDef::builder(3)
            .generator("a", Permutation::long_cycle(3), &["e", "e", "e"])
            .order("a", 2)
            .build()
            .unwrap_err();
        assert!(matches!(err, DefError::InconsistentOrder { .. }));
    }

    #[test]
    fn unknown_section_generator() {
        let err = GroupDef::builder(2)
            .generator("a", Permutation::long_cycle(2), &["e", "z"])
            .build()
            .unwrap_err();
        assert_eq!(err, DefError::UndeclaredGenerator("z".to_string()));
    }

    #[test]
    fn structural_validation() {
        let id = Permutation::identity(2);
        assert!(matches!(
            GroupDef::builder(2).generator("a", id.clone(), &["e"]).build(),
            Err(DefError::SectionCount { .. })
        ));
        assert!(matches!(
            GroupDef::builder(2).generator("a", id.clone(), &["e", "e"]).generator("a", id.clone(), &["e", "e"]).build(),
            Err(DefError::DuplicateGenerator(_))
        ));
        assert!(matches!(
            GroupDef::builder(2).generator("", id.clone(), &["e", "e"]).build(),
            Err(DefError::InvalidName(_))
        ));
        assert!(matches!(
            GroupDef::builder(2).generator("a", Permutation::identity(3), &["e", "e"]).build(),
            Err(DefError::NonBijectiveRoot { .. })
        ));
    }

    #[test]
    fn self_similarity() {
        assert!(families::hanoi_chain(3).unwrap().check_self_similar().holds);
        assert!(families::grigorchuk().check_self_similar().holds);
        let shape = TreeShape::new(2).unwrap();
        let raw = TruncatedAut::rooted(shape, &Permutation::long_cycle(2), 3).unwrap();
        let def = GroupDef::builder(2)
            .generator_with_sections(
                "t",
                Permutation::identity(2),
                vec![Section::Word(Word::identity()), Section::External(raw)],
            )
            .build()
            .unwrap();
        let report = def.check_self_similar();
        assert!(!report.holds);
        assert_eq!(report.witness, Some((0, 1)));
        assert!(def.word_section(&Word::generator(0), &v(&[2])).is_err());
        assert!(def.unfold(&Word::generator(0), 4).is_ok());
        assert!(def.unfold(&Word::generator(0), 5).is_err());
    }

    #[test]
    fn reduction_modulo_orders() {
        let def = families::ggs(3, &[1, 1]).unwrap();
        let w = def.parse_word("a^-1 b a a a^2 b^4").unwrap();
        assert_eq!(def.display_word(&w), "a^2 b a b");
        let h = families::hanoi_chain(3).unwrap();
        assert!(h.parse_word("b1 b2 b2 b1").unwrap().is_identity());
    }
}
