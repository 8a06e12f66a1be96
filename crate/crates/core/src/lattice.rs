//! Ideal-lattice enumeration and the distinguished ideals of a finite ring.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ideal::{ideal_generated, lex_cmp, principal, subgroup_sum, Ideal};
use crate::ring::{primitive_idempotents, quotient, units, FiniteRing, Limits, Ring};

/// Every ideal of `ring` exactly once, in canonical order (size, then
/// lexicographic membership).
///
/// Every ideal of a finite ring is a finite sum of principal ideals, so the
/// enumeration closes the zero ideal under `I ↦ I + Ag` for each distinct
/// principal ideal `Ag`.
pub fn all_ideals(ring: &FiniteRing, limits: &Limits) -> Result<Vec<Ideal>> {
    let n = ring.size();
    if n > limits.max_lattice_size {
        return Err(Error::LatticeCap {
            ring: ring.label().to_string(),
            reason: format!("{n} elements exceeds the lattice cap {}", limits.max_lattice_size),
        });
    }
    enumerate(ring, n, limits)
}

/// Every ideal with at most `max_len` members, in canonical order. Needs no
/// lattice cap: an ideal this small is a sum of principal ideals this small.
pub fn ideals_up_to(ring: &FiniteRing, max_len: usize, limits: &Limits) -> Result<Vec<Ideal>> {
    enumerate(ring, max_len, limits)
}

fn enumerate(ring: &FiniteRing, max_len: usize, limits: &Limits) -> Result<Vec<Ideal>> {
    let n = ring.size();
    let mut principals: Vec<FixedBitSet> = Vec::new();
    let mut seen_p = HashSet::new();
    for g in ring.elements() {
        let p = principal(ring, g);
        if p.count_ones(..) <= max_len && seen_p.insert(p.clone()) {
            principals.push(p);
        }
    }
    let mut zero = FixedBitSet::with_capacity(n);
    zero.insert(ring.zero());
    let mut found: HashSet<FixedBitSet> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(cur) = queue.pop_front() {
        for p in &principals {
            if p.is_subset(&cur) {
                continue;
            }
            let next = subgroup_sum(ring, &cur, p);
            if next.count_ones(..) <= max_len && !found.contains(&next) {
                if found.len() >= limits.max_ideal_count {
                    return Err(Error::LatticeCap {
                        ring: ring.label().to_string(),
                        reason: format!("more than {} ideals", limits.max_ideal_count),
                    });
                }
                found.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut ideals: Vec<Ideal> = found.into_iter().map(|s| Ideal::from_set(ring, s)).collect();
    ideals.sort();
    Ok(ideals)
}

/// Maximal ideals in lexicographic member order.
///
/// Computed from the local decomposition: for each primitive idempotent `e`
/// the factor `A/(1-e)` is local, and the preimage of its non-units is a
/// maximal ideal. No lattice enumeration is needed.
pub fn maximal_ideals(ring: &Ring) -> Vec<Ideal> {
    let mut out = Vec::new();
    for e in primitive_idempotents(ring) {
        let kernel = ideal_generated(ring, &[ring.sub(ring.one(), e)])
            .expect("indices come from the ring");
        let (factor, proj) = quotient(ring, &kernel).expect("kernel is an ideal of the ring");
        let mut is_unit = vec![false; factor.size()];
        for u in units(&factor) {
            is_unit[u] = true;
        }
        let mut set = FixedBitSet::with_capacity(ring.size());
        for x in ring.elements() {
            if !is_unit[proj.apply(x)] {
                set.insert(x);
            }
        }
        out.push(Ideal::from_set(ring, set));
    }
    out.sort_by(|a, b| lex_cmp(a.set(), b.set()));
    out
}

/// Maximal ideals read off the enumerated lattice; the independent route
/// used to cross-check [`maximal_ideals`].
pub fn maximal_ideals_from_lattice(ideals: &[Ideal]) -> Vec<Ideal> {
    let proper: Vec<&Ideal> = ideals.iter().filter(|i| i.is_proper()).collect();
    let mut out: Vec<Ideal> = proper
        .iter()
        .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset(j)))
        .map(|i| (*i).clone())
        .collect();
    out.sort_by(|a, b| lex_cmp(a.set(), b.set()));
    out
}

/// Intersection of the maximal ideals (the whole ring for the zero ring).
pub fn jacobson_radical(ring: &Ring) -> Ideal {
    let mut set = FixedBitSet::with_capacity(ring.size());
    set.insert_range(..);
    for m in maximal_ideals(ring) {
        set.intersect_with(m.set());
    }
    Ideal::from_set(ring, set)
}

/// `{x : x^k = 0 for some k <= |A|}`.
pub fn nilradical(ring: &FiniteRing) -> Ideal {
    let n = ring.size();
    let mut steps = 0;
    while (1usize << steps) < n {
        steps += 1;
    }
    let mut set = FixedBitSet::with_capacity(n);
    for x in ring.elements() {
        let mut y = x;
        for _ in 0..steps {
            y = ring.mul(y, y);
        }
        if y == ring.zero() {
            set.insert(x);
        }
    }
    Ideal::from_set(ring, set)
}

/// `Z(A) = {x : xy = 0 for some y != 0}`; zero belongs to it when `|A| > 1`.
pub fn zero_divisors(ring: &FiniteRing) -> Vec<usize> {
    ring.elements()
        .filter(|&x| {
            ring.elements()
                .any(|y| y != ring.zero() && ring.mul(x, y) == ring.zero())
        })
        .collect()
}

/// Non-zero-divisors.
pub fn regular_elements(ring: &FiniteRing) -> Vec<usize> {
    let z: HashSet<usize> = zero_divisors(ring).into_iter().collect();
    ring.elements().filter(|x| !z.contains(x)).collect()
}

pub fn is_regular_ideal(ring: &FiniteRing, ideal: &Ideal) -> Result<bool> {
    ideal.check_ring(ring)?;
    let regular = regular_elements(ring);
    Ok(regular.iter().any(|&x| ideal.contains(x)))
}

/// A triple `(I, J, K)` with `I ∩ (J + K) != (I ∩ J) + (I ∩ K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributivityWitness {
    pub i: Ideal,
    pub j: Ideal,
    pub k: Ideal,
    pub left: Ideal,
    pub right: Ideal,
}

impl DistributivityWitness {
    pub fn recheck(&self, ring: &FiniteRing) -> bool {
        use crate::ideal::{ideal_intersect, ideal_sum};
        let calc = || -> Result<bool> {
            let left = ideal_intersect(ring, &self.i, &ideal_sum(ring, &self.j, &self.k)?)?;
            let right = ideal_sum(
                ring,
                &ideal_intersect(ring, &self.i, &self.j)?,
                &ideal_intersect(ring, &self.i, &self.k)?,
            )?;
            Ok(left != right && left == self.left && right == self.right)
        };
        calc().unwrap_or(false)
    }
}

/// Lazily memoized join/meet over an enumerated lattice.
struct LatticeTables<'a> {
    ring: &'a FiniteRing,
    ideals: &'a [Ideal],
    index: HashMap<FixedBitSet, usize>,
    join: Vec<u32>,
    meet: Vec<u32>,
}

const UNSET: u32 = u32::MAX;

impl<'a> LatticeTables<'a> {
    fn new(ring: &'a FiniteRing, ideals: &'a [Ideal]) -> Self {
        let k = ideals.len();
        let index = ideals
            .iter()
            .enumerate()
            .map(|(i, id)| (id.set().clone(), i))
            .collect();
        LatticeTables {
            ring,
            ideals,
            index,
            join: vec![UNSET; k * k],
            meet: vec![UNSET; k * k],
        }
    }

    fn lookup(&self, set: &FixedBitSet) -> usize {
        *self
            .index
            .get(set)
            .expect("ideal lattice is closed under sum and intersection")
    }

    fn join(&mut self, a: usize, b: usize) -> usize {
        let k = self.ideals.len();
        if self.join[a * k + b] == UNSET {
            let s = subgroup_sum(self.ring, self.ideals[a].set(), self.ideals[b].set());
            let v = self.lookup(&s) as u32;
            self.join[a * k + b] = v;
            self.join[b * k + a] = v;
        }
        self.join[a * k + b] as usize
    }

    fn meet(&mut self, a: usize, b: usize) -> usize {
        let k = self.ideals.len();
        if self.meet[a * k + b] == UNSET {
            let mut s = self.ideals[a].set().clone();
            s.intersect_with(self.ideals[b].set());
            let v = self.lookup(&s) as u32;
            self.meet[a * k + b] = v;
            self.meet[b * k + a] = v;
        }
        self.meet[a * k + b] as usize
    }
}

/// Checks `I ∩ (J + K) = (I ∩ J) + (I ∩ K)` over all triples of the
/// lattice; returns the first failing triple in canonical order.
pub fn distributivity_witness(
    ring: &FiniteRing,
    ideals: &[Ideal],
) -> Option<DistributivityWitness> {
    let mut t = LatticeTables::new(ring, ideals);
    let k = ideals.len();
    for i in 0..k {
        for j in 0..k {
            for l in j..k {
                let jl = t.join(j, l);
                let left = t.meet(i, jl);
                let ij = t.meet(i, j);
                let il = t.meet(i, l);
                let right = t.join(ij, il);
                if left != right {
                    return Some(DistributivityWitness {
                        i: ideals[i].clone(),
                        j: ideals[j].clone(),
                        k: ideals[l].clone(),
                        left: ideals[left].clone(),
                        right: ideals[right].clone(),
                    });
                }
            }
        }
    }
    None
}

pub fn is_distributive_lattice(
    ring: &FiniteRing,
    limits: &Limits,
) -> Result<Option<DistributivityWitness>> {
    let ideals = all_ideals(ring, limits)?;
    Ok(distributivity_witness(ring, &ideals))
}
