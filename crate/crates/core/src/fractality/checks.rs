//! The decision procedures.
//!
//! Failures are found by scanning quotients `π_n(G)` for `n = 1, 2, ...` and
//! comparing `ψ_u` of a stabilizer with `π_{n-|u|}(G)`; the first proper
//! inclusion (least depth, then level, then BFS vertex) is reported. Passes
//! need witness words verified symbolically.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use super::quotient::{LevelQuotient, Tower};
use super::verdict::{Certificate, CertificateKind, ProperImage, Property, Status, Verdict, Witness};
use super::witness::{verify_witness_in, witness_search, SearchOptions, Stabilize};
use super::FractalError;
use crate::aut::TruncatedAut;
use crate::permgroup::PermGroup;
use crate::permutation::Permutation;
use crate::tree::Vertex;
use crate::word::Word;
use crate::wreath::GroupDef;

/// Depth used when none is configured: 6 for `d = 2`, 4 for `d = 3`, 3 otherwise.
pub fn default_depth(degree: usize) -> usize {
    match degree {
        2 => 6,
        3 => 4,
        _ => 3,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOptions {
    pub max_depth: usize,
    /// Deepest level for the super strong check; below `max_depth`.
    pub max_level: usize,
    pub max_len: usize,
    pub order_limit: u128,
    pub visited_cap: usize,
    pub decide_budget: usize,
    /// Largest quotient `π_k(G)` whose coset transversal is enumerated.
    pub transversal_cap: usize,
}

impl CheckOptions {
    pub fn for_degree(degree: usize) -> Self {
        CheckOptions::with_depth(default_depth(degree))
    }

    pub fn with_depth(max_depth: usize) -> Self {
        CheckOptions {
            max_depth,
            max_level: max_depth.saturating_sub(1),
            max_len: 8,
            order_limit: u128::MAX,
            visited_cap: 100_000,
            decide_budget: 4096,
            transversal_cap: 20_000,
        }
    }

    fn validate(&self) -> Result<(), FractalError> {
        if self.max_depth == 0 {
            return Err(FractalError::InvalidOptions(String::from("depth must be positive")));
        }
        if self.max_level >= self.max_depth {
            return Err(FractalError::InvalidOptions(format!(
                "max level {} must be below depth {}",
                self.max_level, self.max_depth
            )));
        }
        Ok(())
    }

    fn search(&self) -> SearchOptions {
        SearchOptions {
            max_len: self.max_len,
            depth: self.max_depth,
            visited_cap: self.visited_cap,
            decide_budget: self.decide_budget,
        }
    }
}

fn ensure_self_similar(def: &GroupDef) -> Result<(), FractalError> {
    let report = def.check_self_similar();
    match report.witness {
        None => Ok(()),
        Some((g, x)) => Err(FractalError::NotSelfSimilar { generator: def.names()[g].clone(), position: x + 1 }),
    }
}

/// Generators in the order used to pick an excluded one: declaration order,
/// with rooted generators moved to the end.
fn exclusion_order(def: &GroupDef) -> Vec<usize> {
    let (rooted, other): (Vec<usize>, Vec<usize>) = (0..def.generator_count()).partition(|&g| def.generators()[g].is_rooted());
    other.into_iter().chain(rooted).collect()
}

fn excluded_generator(def: &GroupDef, target: &LevelQuotient, image: &PermGroup) -> Result<Option<usize>, FractalError> {
    for g in exclusion_order(def) {
        if !image.contains(&target.generator_images()[g])? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Human-readable reason for a proper image, when a simple invariant explains it.
fn describe_obstruction(
    def: &GroupDef,
    target: &LevelQuotient,
    image: &PermGroup,
) -> Result<(CertificateKind, Option<String>), FractalError> {
    let group = target.group();
    if target.depth() >= 1 {
        let even = image.generators().iter().all(|g| g.root_label().sign() == 1);
        let odd = group.generators().iter().any(|g| g.root_label().sign() == -1);
        if even && odd {
            return Ok((
                CertificateKind::ObstructionHomomorphism,
                Some(String::from("signature of the root label: the image has only even root labels, the group has odd ones")),
            ));
        }
    }
    let derived = group.derived_subgroup()?;
    let mut joined = derived.clone();
    for g in image.generators() {
        joined.extend(g)?;
    }
    if joined.order() < group.order() {
        let index = group.order() / derived.order();
        let image_index = group.order() / joined.order();
        let mut text = format!(
            "abelianization: the image maps onto a subgroup of index {} in the abelianization of order {}",
            image_index, index
        );
        if let Some(w) = normal_closure_generator(def, target, image)? {
            text.push_str(&format!("; the image is the normal closure of {}", def.display_word(&w)));
        }
        return Ok((CertificateKind::ObstructionHomomorphism, Some(text)));
    }
    Ok((CertificateKind::ProperImage, None))
}

/// A word `s` or `s^-1 t` over two generators whose normal closure is the image.
fn normal_closure_generator(def: &GroupDef, target: &LevelQuotient, image: &PermGroup) -> Result<Option<Word>, FractalError> {
    let n = def.generator_count();
    let mut candidates = Vec::new();
    for s in 0..n {
        candidates.push(Word::generator(s));
    }
    for s in (0..n).rev() {
        for t in 0..n {
            if s != t {
                candidates.push(Word::power_of(s, -1).concat(&Word::generator(t)));
            }
        }
    }
    for w in candidates {
        let elt = target.unfold(&def.reduce(&w));
        if !image.contains(&elt)? {
            continue;
        }
        let closure = target.group().normal_closure(&[elt])?;
        if closure.equals(image)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn fail_verdict(
    property: Property,
    def: &GroupDef,
    tower: &Tower,
    depth: usize,
    vertex: Vertex,
    image: &PermGroup,
) -> Result<Verdict, FractalError> {
    let level = vertex.level();
    let target = tower.at(depth - level);
    let excluded = excluded_generator(def, target, image)?;
    let (kind, description) = describe_obstruction(def, target, image)?;
    Ok(Verdict {
        property,
        status: Status::CertifiedFail,
        depth_checked: depth,
        certificate: Certificate {
            kind,
            witnesses: Vec::new(),
            proper_image: Some(ProperImage {
                depth,
                vertex,
                level,
                excluded_generator: excluded,
                image_order: image.order(),
                quotient_order: target.order(),
            }),
            description,
        },
    })
}

fn up_to_depth(property: Property, depth: usize) -> Verdict {
    Verdict { property, status: Status::PassUpToDepth, depth_checked: depth, certificate: Certificate::depth_bound() }
}

fn first_level(def: &GroupDef) -> Vec<Vertex> {
    def.shape().level(1).collect()
}

/// Witnesses at `x` for every generator, lying in `st(x)` or `st(L_|x|)`.
fn witnesses_at(def: &GroupDef, x: &Vertex, mode: Stabilize, options: &CheckOptions) -> Result<Option<Vec<Witness>>, FractalError> {
    let search = options.search();
    let mut out = Vec::new();
    for g in 0..def.generator_count() {
        let target = Word::generator(g);
        let mut found = None;
        let mut candidates: Vec<Word> = def.annotations().witness_hints.iter().map(|w| def.reduce(w)).collect();
        candidates.push(target.clone());
        for w in candidates {
            if verify_witness_in(def, &w, x, &target, mode, options.decide_budget) {
                found = Some(w);
                break;
            }
        }
        if found.is_none() {
            found = witness_search(def, x, &target, &search, mode)?;
        }
        match found {
            Some(word) => out.push(Witness { word, vertex: x.clone(), target }),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

pub fn check_fractal(def: &GroupDef, options: &CheckOptions) -> Result<Verdict, FractalError> {
    options.validate()?;
    ensure_self_similar(def)?;
    let tower = Tower::new(def, options.max_depth, options.order_limit)?;
    fractal_with_tower(def, options, &tower)
}

fn fractal_with_tower(def: &GroupDef, options: &CheckOptions, tower: &Tower) -> Result<Verdict, FractalError> {
    let shape = def.shape();
    for n in 1..=options.max_depth {
        let q = tower.at(n);
        for k in 1..n {
            let target = tower.at(n - k).order();
            for u in shape.level(k) {
                let h = q.stab_vertex(&u)?;
                let image = q.psi_image(&h, &u)?;
                if image.order() < target {
                    return fail_verdict(Property::Fractal, def, tower, n, u, &image);
                }
            }
        }
    }
    let level1 = first_level(def);
    if tower.at(1).group().is_transitive_on(&level1)? {
        for x in &level1 {
            if let Some(witnesses) = witnesses_at(def, x, Stabilize::Vertex, options)? {
                return Ok(Verdict {
                    property: Property::Fractal,
                    status: Status::CertifiedPass,
                    depth_checked: options.max_depth,
                    certificate: Certificate {
                        description: Some(format!("transitive on the first level; every generator is a section at {} of its stabilizer", x)),
                        ..Certificate::witnesses(witnesses)
                    },
                });
            }
        }
    }
    Ok(up_to_depth(Property::Fractal, options.max_depth))
}

/// Root labels of all generators lie in the cyclic group of one `d`-cycle,
/// and `d` is prime.
pub fn root_labels_in_cyclic_sylow(def: &GroupDef) -> bool {
    let d = def.degree();
    if !(2..d).all(|k| d % k != 0) {
        return false;
    }
    let labels: Vec<&Permutation> = def.generators().iter().map(|g| g.root()).collect();
    let sigma = match labels.iter().find(|p| !p.is_identity()) {
        Some(p) => (*p).clone(),
        None => return true,
    };
    if !sigma.is_full_cycle() {
        return false;
    }
    let powers: Vec<Permutation> = (0..d as i64).map(|k| sigma.pow(k)).collect();
    labels.iter().all(|p| powers.contains(p))
}

pub fn check_strongly_fractal(def: &GroupDef, options: &CheckOptions) -> Result<Verdict, FractalError> {
    options.validate()?;
    ensure_self_similar(def)?;
    let tower = Tower::new(def, options.max_depth, options.order_limit)?;
    if root_labels_in_cyclic_sylow(def) {
        let mut v = fractal_with_tower(def, options, &tower)?;
        v.property = Property::StronglyFractal;
        if v.status == Status::CertifiedPass {
            v.certificate.description = Some(format!(
                "{}; root labels are powers of one {}-cycle, so vertex and level stabilizers of the first level coincide",
                v.certificate.description.take().unwrap_or_default(),
                def.degree()
            ));
        }
        return Ok(v);
    }
    for n in 2..=options.max_depth {
        let q = tower.at(n);
        let st = q.stab_level(1)?;
        let target = tower.at(n - 1).order();
        for x in first_level(def) {
            let image = q.psi_image(&st, &x)?;
            if image.order() < target {
                return fail_verdict(Property::StronglyFractal, def, &tower, n, x, &image);
            }
        }
    }
    let level1 = first_level(def);
    let transitive = tower.at(1).group().is_transitive_on(&level1)?;
    let mut all = Vec::new();
    for x in &level1 {
        match witnesses_at(def, x, Stabilize::Level, options)? {
            Some(ws) if transitive => {
                return Ok(Verdict {
                    property: Property::StronglyFractal,
                    status: Status::CertifiedPass,
                    depth_checked: options.max_depth,
                    certificate: Certificate {
                        description: Some(format!("transitive on the first level; every generator is a section at {} of st(L_1)", x)),
                        ..Certificate::witnesses(ws)
                    },
                });
            }
            Some(ws) => all.extend(ws),
            None if transitive => continue,
            None => return Ok(up_to_depth(Property::StronglyFractal, options.max_depth)),
        }
    }
    if !transitive {
        return Ok(Verdict {
            property: Property::StronglyFractal,
            status: Status::CertifiedPass,
            depth_checked: options.max_depth,
            certificate: Certificate::witnesses(all),
        });
    }
    Ok(up_to_depth(Property::StronglyFractal, options.max_depth))
}

pub fn check_super_strongly_fractal(def: &GroupDef, options: &CheckOptions) -> Result<Verdict, FractalError> {
    options.validate()?;
    ensure_self_similar(def)?;
    let tower = Tower::new(def, options.max_depth, options.order_limit)?;
    let shape = def.shape();
    for n in 2..=options.max_depth {
        let q = tower.at(n);
        for k in 1..=options.max_level.min(n - 1) {
            let st = q.stab_level(k)?;
            let target = tower.at(n - k).order();
            for u in shape.level(k) {
                let image = q.psi_image(&st, &u)?;
                if image.order() < target {
                    return fail_verdict(Property::SuperStronglyFractal, def, &tower, n, u, &image);
                }
            }
        }
    }
    if def.rooted_cycle_generator().is_none() {
        return Ok(up_to_depth(Property::SuperStronglyFractal, options.max_depth));
    }
    let mut witnesses = Vec::new();
    for k in 1..=options.max_level {
        match level_generation_witnesses(def, k, options, &tower)? {
            Some(ws) => witnesses.extend(ws),
            None => return Ok(up_to_depth(Property::SuperStronglyFractal, options.max_depth)),
        }
    }
    Ok(Verdict {
        property: Property::SuperStronglyFractal,
        status: Status::CertifiedPass,
        depth_checked: options.max_depth,
        certificate: Certificate {
            description: Some(format!(
                "a rooted {}-cycle lies in the group and, for each level 1..={}, sections of level stabilizer elements generate the group",
                def.degree(),
                options.max_level
            )),
            ..Certificate::witnesses(witnesses)
        },
    })
}

/// Sections at level `k`, with the stabilizing word and vertex they came from.
struct TargetPool {
    entries: Vec<(Word, Vertex, Word)>,
    index: HashMap<Word, usize>,
}

impl TargetPool {
    fn new() -> Self {
        TargetPool { entries: Vec::new(), index: HashMap::new() }
    }

    fn add_element(&mut self, def: &GroupDef, w: &Word, k: usize) -> Result<(), FractalError> {
        for u in def.shape().level(k) {
            let s = def.word_section(w, &u)?;
            if s.is_identity() || self.index.contains_key(&s) {
                continue;
            }
            self.index.insert(s.clone(), self.entries.len());
            self.entries.push((w.clone(), u, s));
        }
        Ok(())
    }

    fn witness(&self, i: usize) -> Witness {
        let (w, u, s) = &self.entries[i];
        Witness { word: w.clone(), vertex: u.clone(), target: s.clone() }
    }

    /// Express every generator as a short product of targets and their powers.
    fn generate(&self, def: &GroupDef, budget: usize) -> Option<Vec<Witness>> {
        let mut out = Vec::new();
        let mut used: HashSet<usize> = HashSet::new();
        for g in 0..def.generator_count() {
            let chosen = self.express(def, &Word::generator(g), budget)?;
            for i in chosen {
                if used.insert(i) {
                    out.push(self.witness(i));
                }
            }
        }
        Some(out)
    }

    fn express(&self, def: &GroupDef, goal: &Word, budget: usize) -> Option<Vec<usize>> {
        if let Some(&i) = self.index.get(goal) {
            return Some(alloc::vec![i]);
        }
        // powers of each target, shortest targets first
        let mut order: Vec<usize> = (0..self.entries.len()).collect();
        order.sort_by_key(|&i| (self.entries[i].2.letter_len(), i));
        let mut pool: Vec<(Word, usize)> = Vec::new();
        for &i in order.iter().take(64) {
            let t = &self.entries[i].2;
            for e in [1i64, -1, 2, -2, 3] {
                let p = def.reduce(&t.pow(e));
                if !p.is_identity() {
                    pool.push((p, i));
                }
            }
        }
        for (p, i) in &pool {
            if p == goal {
                return Some(alloc::vec![*i]);
            }
        }
        for (p, i) in &pool {
            for (q, j) in &pool {
                if def.reduce(&p.concat(q)) == *goal {
                    return Some(alloc::vec![*i, *j]);
                }
            }
        }
        let small: Vec<&(Word, usize)> = pool.iter().take(60).collect();
        for (p, i) in &small {
            for (q, j) in &small {
                let pq = def.reduce(&p.concat(q));
                for (r, l) in &small {
                    if def.reduce(&pq.concat(r)) == *goal {
                        return Some(alloc::vec![*i, *j, *l]);
                    }
                }
            }
        }
        for &i in order.iter().take(256) {
            if def.decide_equal(&self.entries[i].2, goal, budget) == Some(true) {
                return Some(alloc::vec![i]);
            }
        }
        None
    }
}

/// Elements of `st(L_k)` whose sections at level `k` generate the group.
fn level_generation_witnesses(
    def: &GroupDef,
    k: usize,
    options: &CheckOptions,
    tower: &Tower,
) -> Result<Option<Vec<Witness>>, FractalError> {
    let mut pool = TargetPool::new();
    let mut seeds: Vec<Word> = def.annotations().witness_hints.iter().map(|w| def.reduce(w)).collect();
    seeds.extend((0..def.generator_count()).map(Word::generator));
    for w in &seeds {
        if def.word_stabilizes_level(w, k)? {
            pool.add_element(def, w, k)?;
        }
    }
    if let Some(ws) = pool.generate(def, options.decide_budget) {
        return Ok(Some(ws));
    }
    if k > tower.max_depth() || tower.at(k).order() > options.transversal_cap as u128 {
        return Ok(None);
    }
    for w in schreier_words(def, tower.at(k)) {
        pool.add_element(def, &w, k)?;
    }
    Ok(pool.generate(def, options.decide_budget))
}

/// Schreier generators `t s rep(t s)^-1` of `st(L_k)`, one per coset `t` of
/// `π_k(G)` and generator `s`, with transversal words found breadth-first.
fn schreier_words(def: &GroupDef, q: &LevelQuotient) -> Vec<Word> {
    let mut reps: Vec<(Word, TruncatedAut)> = alloc::vec![(Word::identity(), q.group().identity())];
    let mut index: HashMap<TruncatedAut, usize> = HashMap::new();
    index.insert(q.group().identity(), 0);
    let mut i = 0;
    while i < reps.len() {
        for g in 0..def.generator_count() {
            let next = reps[i].1.compose_unchecked(&q.generator_images()[g]);
            if !index.contains_key(&next) {
                let mut w = reps[i].0.clone();
                w.push(g, 1);
                index.insert(next.clone(), reps.len());
                reps.push((def.reduce(&w), next));
            }
        }
        i += 1;
    }
    let mut out = Vec::new();
    let mut seen: HashSet<Word> = HashSet::new();
    for (w, a) in &reps {
        for g in 0..def.generator_count() {
            let next = a.compose_unchecked(&q.generator_images()[g]);
            let j = index[&next];
            let mut s = w.clone();
            s.push(g, 1);
            let s = def.reduce(&s.concat(&reps[j].0.inverse()));
            if !s.is_identity() && seen.insert(s.clone()) {
                out.push(s);
            }
        }
    }
    out
}

pub fn check_level_transitive(def: &GroupDef, options: &CheckOptions) -> Result<Verdict, FractalError> {
    options.validate()?;
    let q = LevelQuotient::project_with_limit(def, options.max_depth, options.order_limit)?;
    for k in 1..=options.max_depth {
        let level: Vec<Vertex> = def.shape().level(k).collect();
        if !q.group().is_transitive_on(&level)? {
            let orbit = q.group().orbit(&level[0])?;
            return Ok(Verdict {
                property: Property::LevelTransitive,
                status: Status::CertifiedFail,
                depth_checked: k,
                certificate: Certificate {
                    kind: CertificateKind::ProperImage,
                    witnesses: Vec::new(),
                    proper_image: Some(ProperImage {
                        depth: k,
                        vertex: level[0].clone(),
                        level: k,
                        excluded_generator: None,
                        image_order: orbit.len() as u128,
                        quotient_order: level.len() as u128,
                    }),
                    description: Some(format!("orbit of {} has {} of the {} vertices of level {}", level[0], orbit.len(), level.len(), k)),
                },
            });
        }
    }
    if def.check_self_similar().holds {
        let fractal = check_fractal(def, options)?;
        if fractal.status == Status::CertifiedPass {
            return Ok(Verdict {
                property: Property::LevelTransitive,
                status: Status::CertifiedPass,
                depth_checked: options.max_depth,
                certificate: Certificate {
                    description: Some(String::from("transitive on the first level and fractal")),
                    ..fractal.certificate
                },
            });
        }
    }
    Ok(up_to_depth(Property::LevelTransitive, options.max_depth))
}

pub fn check_self_similar_verdict(def: &GroupDef) -> Verdict {
    let report = def.check_self_similar();
    match report.witness {
        None => Verdict {
            property: Property::SelfSimilar,
            status: Status::CertifiedPass,
            depth_checked: 1,
            certificate: Certificate {
                description: Some(String::from("every first-level section of every generator is a word in the generators")),
                ..Certificate::witnesses(Vec::new())
            },
        },
        Some((g, x)) => Verdict {
            property: Property::SelfSimilar,
            status: Status::CertifiedFail,
            depth_checked: 1,
            certificate: Certificate {
                kind: CertificateKind::ProperImage,
                witnesses: Vec::new(),
                proper_image: None,
                description: Some(format!("section of {} at {} is external", def.names()[g], x + 1)),
            },
        },
    }
}

pub fn check(def: &GroupDef, property: Property, options: &CheckOptions) -> Result<Verdict, FractalError> {
    match property {
        Property::Fractal => check_fractal(def, options),
        Property::StronglyFractal => check_strongly_fractal(def, options),
        Property::SuperStronglyFractal => check_super_strongly_fractal(def, options),
        Property::LevelTransitive => check_level_transitive(def, options),
        Property::SelfSimilar => Ok(check_self_similar_verdict(def)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::permutation::Permutation;

    fn rooted_only(d: usize) -> GroupDef {
        let e: Vec<&str> = (0..d).map(|_| "e").collect();
        GroupDef::builder(d).generator("a", Permutation::long_cycle(d), &e).order("a", d as u32).build().unwrap()
    }

    #[test]
    fn rooted_cycle_is_not_fractal() {
        let v = check_fractal(&rooted_only(3), &CheckOptions::with_depth(3)).unwrap();
        assert_eq!(v.status, Status::CertifiedFail);
        assert_eq!(v.depth_checked, 2);
        let p = v.certificate.proper_image.unwrap();
        assert_eq!(p.vertex, Vertex::from_one_based(&[1]));
        assert_eq!(p.excluded_generator, Some(0));
    }

    #[test]
    fn trivial_group_is_not_level_transitive() {
        let def = GroupDef::builder(2).build().unwrap();
        let v = check_level_transitive(&def, &CheckOptions::with_depth(2)).unwrap();
        assert_eq!(v.status, Status::CertifiedFail);
        assert_eq!(v.certificate.proper_image.unwrap().level, 1);
    }

    #[test]
    fn sylow_detection() {
        assert!(root_labels_in_cyclic_sylow(&families::ggs(3, &[1, 2]).unwrap()));
        assert!(root_labels_in_cyclic_sylow(&families::grigorchuk()));
        assert!(!root_labels_in_cyclic_sylow(&families::hanoi_chain(3).unwrap()));
        assert!(!root_labels_in_cyclic_sylow(&families::ggs(4, &[1, 0, 1]).unwrap()));
    }

    #[test]
    fn options_are_validated() {
        let mut o = CheckOptions::with_depth(2);
        o.max_level = 2;
        assert!(check_super_strongly_fractal(&families::grigorchuk(), &o).is_err());
    }

    #[test]
    fn hanoi_chain_pattern() {
        let def = families::hanoi_chain(3).unwrap();
        let o = CheckOptions::with_depth(3);
        assert_eq!(check_fractal(&def, &o).unwrap().status, Status::CertifiedPass);
        let s = check_strongly_fractal(&def, &o).unwrap();
        assert_eq!(s.status, Status::CertifiedFail);
        assert_eq!(s.certificate.kind, CertificateKind::ObstructionHomomorphism);
        assert_eq!(s.certificate.proper_image.unwrap().excluded_generator, Some(0));
    }
}
