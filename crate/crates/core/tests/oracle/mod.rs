//! Brute-force reference computations on raw vertex maps.
//!
//! Nothing here goes through the stabilizer chain or the section code of the
//! library; elements are plain `Vec<u32>` images of BFS vertex indices.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use selfsim_core::{TreeShape, TruncatedAut, Vertex};

pub type Perm = Vec<u32>;

pub fn raw(f: &TruncatedAut) -> Perm {
    f.images().to_vec()
}

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

/// `f` then `g`.
pub fn compose(f: &Perm, g: &Perm) -> Perm {
    f.iter().map(|&x| g[x as usize]).collect()
}

pub fn invert(f: &Perm) -> Perm {
    let mut out = vec![0; f.len()];
    for (i, &x) in f.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

pub fn commutator(f: &Perm, g: &Perm) -> Perm {
    compose(&compose(&invert(f), &invert(g)), &compose(f, g))
}

/// Every element of `<gens>` on a domain of `n` points.
pub fn closure(gens: &[Perm], n: usize) -> HashSet<Perm> {
    let mut seen = HashSet::new();
    let start = identity(n);
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn derived(group: &HashSet<Perm>, n: usize) -> HashSet<Perm> {
    let elts: Vec<&Perm> = group.iter().collect();
    let mut comms = HashSet::new();
    for f in &elts {
        for g in &elts {
            comms.insert(commutator(f, g));
        }
    }
    closure(&comms.into_iter().collect::<Vec<_>>(), n)
}

pub fn normal_closure(group: &HashSet<Perm>, gens: &[Perm], n: usize) -> HashSet<Perm> {
    let mut conj = HashSet::new();
    for h in gens {
        for g in group {
            conj.insert(compose(&compose(&invert(g), h), g));
        }
    }
    closure(&conj.into_iter().collect::<Vec<_>>(), n)
}

/// Elements fixing every listed BFS index.
pub fn fixing(group: &HashSet<Perm>, points: &[usize]) -> HashSet<Perm> {
    group.iter().filter(|f| points.iter().all(|&p| f[p] as usize == p)).cloned().collect()
}

/// BFS indices of level `k`.
pub fn level_points(shape: TreeShape, k: usize) -> Vec<usize> {
    let off: usize = (1..k).map(|j| shape.degree().pow(j as u32)).sum();
    (off..off + shape.degree().pow(k as u32)).collect()
}

fn letters_of(shape: TreeShape, index: usize) -> Vec<usize> {
    let d = shape.degree();
    let mut level = 1;
    let mut off = 0;
    while index >= off + d.pow(level as u32) {
        off += d.pow(level as u32);
        level += 1;
    }
    let mut rank = index - off;
    let mut letters = vec![0; level];
    for slot in letters.iter_mut().rev() {
        *slot = rank % d;
        rank /= d;
    }
    letters
}

fn index_of_letters(shape: TreeShape, letters: &[usize]) -> usize {
    let d = shape.degree();
    let off: usize = (1..letters.len()).map(|j| d.pow(j as u32)).sum();
    off + letters.iter().fold(0, |acc, &x| acc * d + x)
}

/// Image of a vertex under a raw map of depth `depth`.
pub fn apply(shape: TreeShape, f: &Perm, u: &[usize]) -> Vec<usize> {
    if u.is_empty() {
        return Vec::new();
    }
    letters_of(shape, f[index_of_letters(shape, u)] as usize)
}

/// `f_u`, read off from `f(uv) = f(u) f_u(v)`.
pub fn section(shape: TreeShape, depth: usize, f: &Perm, u: &[usize]) -> Perm {
    let k = u.len();
    let m = depth - k;
    let size: usize = (1..=m).map(|j| shape.degree().pow(j as u32)).sum();
    let mut out = Vec::with_capacity(size);
    for i in 0..size {
        let mut full = u.to_vec();
        full.extend(letters_of(shape, i));
        let img = letters_of(shape, f[index_of_letters(shape, &full)] as usize);
        out.push(index_of_letters(shape, &img[k..]) as u32);
    }
    out
}

/// The permutation of the children of `u`, as 0-based images.
pub fn label(shape: TreeShape, f: &Perm, u: &[usize]) -> Vec<usize> {
    (0..shape.degree())
        .map(|x| {
            let mut c = u.to_vec();
            c.push(x);
            *apply(shape, f, &c).last().unwrap()
        })
        .collect()
}

pub fn letters(v: &Vertex) -> Vec<usize> {
    v.letters().to_vec()
}

/// Order of `G/G'` for the group generated by `gens`.
pub fn abelianization_order(gens: &[Perm], n: usize) -> usize {
    let g = closure(gens, n);
    g.len() / derived(&g, n).len()
}
