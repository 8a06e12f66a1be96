//! Shared fixtures and brute-force oracles. The oracles work on plain sets
//! of carrier indices and use nothing from the library beyond the ring's
//! operation tables.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::OnceLock;

use amalgam::harness::{build_catalog, Catalog, CatalogParams};
use amalgam::FiniteRing;

pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| build_catalog(&CatalogParams::default()).expect("default catalog builds"))
}

pub type Set = BTreeSet<usize>;

pub fn units(r: &FiniteRing) -> Set {
    r.elements()
        .filter(|&x| r.elements().any(|y| r.mul(x, y) == r.one()))
        .collect()
}

pub fn is_ideal(r: &FiniteRing, s: &Set) -> bool {
    s.contains(&r.zero())
        && s.iter().all(|&x| s.iter().all(|&y| s.contains(&r.add(x, y))))
        && s.iter().all(|&x| r.elements().all(|a| s.contains(&r.mul(a, x))))
}

/// Smallest ideal containing `gens`, by saturation.
pub fn span(r: &FiniteRing, gens: &[usize]) -> Set {
    let mut s: Set = gens.iter().copied().collect();
    s.insert(r.zero());
    loop {
        let mut next = s.clone();
        for &x in &s {
            for a in r.elements() {
                next.insert(r.mul(a, x));
            }
            for &y in &s {
                next.insert(r.add(x, y));
            }
        }
        if next.len() == s.len() {
            return s;
        }
        s = next;
    }
}

/// Every ideal, as the spans of all generator subsets grown one element at
/// a time. Complete because each ideal is the span of its members.
pub fn ideals(r: &FiniteRing) -> BTreeSet<Set> {
    let mut found: BTreeSet<Set> = BTreeSet::new();
    let mut frontier = vec![span(r, &[])];
    found.insert(frontier[0].clone());
    while let Some(i) = frontier.pop() {
        for x in r.elements() {
            if !i.contains(&x) {
                let mut gens: Vec<usize> = i.iter().copied().collect();
                gens.push(x);
                let j = span(r, &gens);
                if found.insert(j.clone()) {
                    frontier.push(j);
                }
            }
        }
    }
    found
}

pub fn sum(r: &FiniteRing, i: &Set, j: &Set) -> Set {
    let gens: Vec<usize> = i.iter().chain(j).copied().collect();
    span(r, &gens)
}

pub fn product(r: &FiniteRing, i: &Set, j: &Set) -> Set {
    let gens: Vec<usize> = i.iter().flat_map(|&x| j.iter().map(move |&y| r.mul(x, y))).collect();
    span(r, &gens)
}

pub fn maximal_ideals(r: &FiniteRing) -> Vec<Set> {
    let all: Vec<Set> = ideals(r).into_iter().filter(|i| i.len() < r.size()).collect();
    all.iter()
        .filter(|i| !all.iter().any(|j| j.len() > i.len() && i.is_subset(j)))
        .cloned()
        .collect()
}

/// A nonzero ring is local iff its non-units are closed under addition.
pub fn is_local(r: &FiniteRing) -> bool {
    let u = units(r);
    let non: Vec<usize> = r.elements().filter(|x| !u.contains(x)).collect();
    r.size() > 1 && non.iter().all(|&x| non.iter().all(|&y| !u.contains(&r.add(x, y))))
}

pub fn nilradical(r: &FiniteRing) -> Set {
    r.elements()
        .filter(|&x| {
            let mut p = x;
            for _ in 0..r.size() {
                if p == r.zero() {
                    return true;
                }
                p = r.mul(p, x);
            }
            p == r.zero()
        })
        .collect()
}

pub fn is_distributive(r: &FiniteRing) -> bool {
    let all: Vec<Set> = ideals(r).into_iter().collect();
    for i in &all {
        for j in &all {
            for k in &all {
                let left: Set = i.intersection(&sum(r, j, k)).copied().collect();
                let ij: Set = i.intersection(j).copied().collect();
                let ik: Set = i.intersection(k).copied().collect();
                if left != sum(r, &ij, &ik) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_chain(r: &FiniteRing) -> bool {
    let all: Vec<Set> = ideals(r).into_iter().collect();
    all.iter()
        .all(|i| all.iter().all(|j| i.is_subset(j) || j.is_subset(i)))
}

/// Content of `f` as a set.
fn content(r: &FiniteRing, f: &[usize]) -> Set {
    span(r, f)
}

fn poly_mul(r: &FiniteRing, f: &[usize], g: &[usize]) -> Vec<usize> {
    let mut out = vec![r.zero(); f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = r.add(out[i + j], r.mul(a, b));
        }
    }
    out
}

/// `c(fg) = c(f)c(g)` for all `f, g` of degree at most one.
pub fn gaussian_linear(r: &FiniteRing) -> bool {
    let n = r.size();
    let polys: Vec<[usize; 2]> = (0..n * n).map(|x| [x % n, x / n]).collect();
    let contents: Vec<Set> = polys.iter().map(|f| content(r, f)).collect();
    for (a, f) in polys.iter().enumerate() {
        for (b, g) in polys.iter().enumerate().skip(a) {
            if content(r, &poly_mul(r, f, g)) != product(r, &contents[a], &contents[b]) {
                return false;
            }
        }
    }
    true
}

/// Regular elements are the non-zero-divisors.
pub fn regular(r: &FiniteRing) -> Set {
    r.elements()
        .filter(|&x| r.elements().all(|y| r.mul(x, y) != r.zero() || y == r.zero()))
        .collect()
}

/// In a finite ring a regular element is a unit, so a regular ideal is the
/// whole ring and is invertible.
pub fn is_prufer(r: &FiniteRing) -> bool {
    let reg = regular(r);
    ideals(r)
        .iter()
        .filter(|i| i.iter().any(|x| reg.contains(x)))
        .all(|i| i.len() == r.size())
}

/// The carrier set `{(a, f(a) + j)}` of an amalgamation inside `A × B`.
pub fn amalgamation_pairs(a: &FiniteRing, b: &FiniteRing, f: impl Fn(usize) -> usize, j: &Set) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for x in a.elements() {
        for &y in j {
            out.insert((x, b.add(f(x), y)));
        }
    }
    out
}
