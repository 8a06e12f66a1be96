//! Ideals as bit sets over a ring's carrier, and ideal arithmetic.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ring::{FiniteRing, RingId};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    ring: RingId,
    members: FixedBitSet,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.to_vec())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Canonical order: by size, then lexicographically by sorted members.
impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| lex_cmp(&self.members, &other.members))
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic comparison of the sorted member lists.
pub fn lex_cmp(a: &FixedBitSet, b: &FixedBitSet) -> Ordering {
    a.ones().cmp(b.ones())
}

impl Ideal {
    /// Validates that `members` is an ideal of `ring`.
    pub fn new(ring: &FiniteRing, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = FixedBitSet::with_capacity(ring.size());
        for x in members {
            ring.check_index(x)?;
            set.insert(x);
        }
        Self::from_checked_set(ring, set)
    }

    pub fn from_checked_set(ring: &FiniteRing, set: FixedBitSet) -> Result<Self> {
        validate(ring, &set)?;
        Ok(Ideal {
            ring: ring.id(),
            members: set,
        })
    }

    /// Wraps a set already known to be an ideal (re-validated in debug builds).
    pub(crate) fn from_set(ring: &FiniteRing, set: FixedBitSet) -> Self {
        debug_assert!(validate(ring, &set).is_ok(), "not an ideal: {:?}", set.ones().collect::<Vec<_>>());
        Ideal {
            ring: ring.id(),
            members: set,
        }
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        let mut set = FixedBitSet::with_capacity(ring.size());
        set.insert(ring.zero());
        Ideal {
            ring: ring.id(),
            members: set,
        }
    }

    pub fn whole(ring: &FiniteRing) -> Self {
        let mut set = FixedBitSet::with_capacity(ring.size());
        set.insert_range(..);
        Ideal {
            ring: ring.id(),
            members: set,
        }
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }

    pub fn check_ring(&self, ring: &FiniteRing) -> Result<()> {
        if self.ring == ring.id() {
            Ok(())
        } else {
            Err(Error::TagMismatch)
        }
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::TagMismatch)
        }
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.len() == self.members.len()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_whole()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn set(&self) -> &FixedBitSet {
        &self.members
    }

    /// A small generating set, picked greedily in index order.
    /// The zero ideal has no generators.
    pub fn generators(&self, ring: &FiniteRing) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = FixedBitSet::with_capacity(ring.size());
        span.insert(ring.zero());
        for x in self.iter() {
            if !span.contains(x) {
                gens.push(x);
                span = subgroup_sum(ring, &span, &principal(ring, x));
            }
            if span == self.members {
                break;
            }
        }
        gens
    }
}

fn validate(ring: &FiniteRing, set: &FixedBitSet) -> Result<()> {
    if set.len() != ring.size() {
        return Err(Error::NotAnIdeal("bit set size does not match the carrier".into()));
    }
    if !set.contains(ring.zero()) {
        return Err(Error::NotAnIdeal("does not contain zero".into()));
    }
    let members: Vec<usize> = set.ones().collect();
    for &x in &members {
        for &y in &members {
            if !set.contains(ring.add(x, y)) {
                return Err(Error::NotAnIdeal(format!("{x} + {y} escapes")));
            }
        }
        for r in ring.elements() {
            if !set.contains(ring.mul(r, x)) {
                return Err(Error::NotAnIdeal(format!("{r} * {x} escapes")));
            }
        }
    }
    Ok(())
}

/// The principal ideal `A g = {r g : r in A}`.
pub fn principal(ring: &FiniteRing, g: usize) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(ring.size());
    for r in ring.elements() {
        set.insert(ring.mul(r, g));
    }
    set
}

/// Sum of two additive subgroups, built coset by coset.
pub(crate) fn subgroup_sum(ring: &FiniteRing, s: &FixedBitSet, t: &FixedBitSet) -> FixedBitSet {
    let base: Vec<usize> = s.ones().collect();
    let mut out = s.clone();
    for x in t.ones() {
        if !out.contains(x) {
            for &y in &base {
                out.insert(ring.add(x, y));
            }
        }
    }
    out
}

/// Smallest ideal containing `gens`.
pub fn ideal_generated(ring: &FiniteRing, gens: &[usize]) -> Result<Ideal> {
    let mut span = FixedBitSet::with_capacity(ring.size());
    span.insert(ring.zero());
    for &g in gens {
        ring.check_index(g)?;
        if !span.contains(g) {
            span = subgroup_sum(ring, &span, &principal(ring, g));
        }
    }
    Ok(Ideal::from_set(ring, span))
}

pub fn ideal_sum(ring: &FiniteRing, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.check_ring(ring)?;
    i.same_ring(j)?;
    Ok(Ideal::from_set(ring, subgroup_sum(ring, &i.members, &j.members)))
}

/// Ideal generated by all products `x y` with `x` in `i`, `y` in `j`.
pub fn ideal_product(ring: &FiniteRing, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.check_ring(ring)?;
    i.same_ring(j)?;
    let gi = i.generators(ring);
    let gj = j.generators(ring);
    let prods: Vec<usize> = gi
        .iter()
        .flat_map(|&x| gj.iter().map(move |&y| ring.mul(x, y)))
        .collect();
    ideal_generated(ring, &prods)
}

pub fn ideal_intersect(ring: &FiniteRing, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.check_ring(ring)?;
    i.same_ring(j)?;
    let mut set = i.members.clone();
    set.intersect_with(&j.members);
    Ok(Ideal::from_set(ring, set))
}

/// `I^k`, with `I^0` the whole ring.
pub fn ideal_power(ring: &FiniteRing, i: &Ideal, k: usize) -> Result<Ideal> {
    i.check_ring(ring)?;
    let mut acc = Ideal::whole(ring);
    for _ in 0..k {
        acc = ideal_product(ring, &acc, i)?;
    }
    Ok(acc)
}

/// `{x : x s = 0 for all s in S}`.
pub fn annihilator(ring: &FiniteRing, s: &[usize]) -> Result<Ideal> {
    for &x in s {
        ring.check_index(x)?;
    }
    let mut set = FixedBitSet::with_capacity(ring.size());
    for x in ring.elements() {
        if s.iter().all(|&y| ring.mul(x, y) == ring.zero()) {
            set.insert(x);
        }
    }
    Ok(Ideal::from_set(ring, set))
}
