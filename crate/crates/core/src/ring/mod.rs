//! Finite commutative unital rings stored as explicit operation tables.
//!
//! Every ring lives on the carrier `0..n`. Constructors document how a
//! carrier index encodes the underlying algebraic element; those encodings
//! are stable and show up verbatim in CLI output.

mod construct;
mod hom;
mod structure;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::module::Module;

pub use construct::{product, quotient, truncated_poly_algebra, zmod, Monomial};
pub use hom::{HomExpr, RingHom};
pub use structure::{factor_local, idempotents, localize_at_max, primitive_idempotents, units};

/// Shared handle to an immutable ring.
pub type Ring = Arc<FiniteRing>;

/// Carriers up to this size get an exhaustive axiom check; larger ones are
/// sampled.
pub const FULL_AXIOM_CHECK_MAX: usize = 512;
/// Number of sampled triples per axiom above [`FULL_AXIOM_CHECK_MAX`].
pub const AXIOM_SAMPLE_COUNT: usize = 200_000;
/// Seed for sampled axiom checks.
pub const AXIOM_SAMPLE_SEED: u64 = 0x5eed_a1e6;

/// Resource limits shared by constructors and checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier any constructor will build.
    pub max_ring_size: usize,
    /// Largest carrier whose full ideal lattice is enumerated.
    pub max_lattice_size: usize,
    /// Largest number of ideals an enumeration may produce.
    pub max_ideal_count: usize,
    /// Largest number of polynomial pairs the content oracle may visit.
    pub oracle_pair_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ring_size: 4096,
            max_lattice_size: 256,
            max_ideal_count: 4096,
            oracle_pair_budget: 1 << 24,
        }
    }
}

impl Limits {
    pub(crate) fn check_size(&self, what: &str, size: u128) -> Result<usize> {
        if size > self.max_ring_size as u128 {
            Err(Error::size_cap(what, size, self.max_ring_size))
        } else {
            Ok(size as usize)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(u64);

impl RingId {
    fn fresh() -> Self {
        static NEXT: AtomicU64 = AtomicU64::new(1);
        RingId(NEXT.fetch_add(1, Ordering::Relaxed))
    }
}

/// How carrier indices map back to algebraic data.
#[derive(Clone, Debug)]
pub enum Encoding {
    /// Tables supplied programmatically.
    Tables,
    /// `Z/nZ`: index `i` is the residue `i`.
    Residues,
    /// Truncated polynomial algebra: index is the mixed-radix number whose
    /// digit `i` (least significant first) is the coefficient of
    /// `monomials[i]`.
    Monomials { p: u32, monomials: Vec<Monomial> },
    /// Pairs encoded as `left * |right| + right`.
    Product { left: Ring, right: Ring },
    /// Cosets; index `k` is the coset whose minimal member is `reps[k]`.
    Quotient { parent: Ring, reps: Vec<usize> },
    /// Idealization pairs encoded as `a * |E| + e`.
    TrivialExtension { base: Ring, module: Module },
    /// `(a, f(a) + j)` encoded as `a * |J| + rank(j)`, with `j_members`
    /// the sorted members of `J` and `f_map` the homomorphism table.
    Amalgamation {
        a: Ring,
        b: Ring,
        f_map: Vec<u32>,
        j_members: Vec<usize>,
    },
    /// A subring; index `k` is the parent element `members[k]`.
    Subring { parent: Ring, members: Vec<usize> },
}

pub struct FiniteRing {
    id: RingId,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: usize,
    one: usize,
    label: String,
    encoding: Encoding,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("size", &self.size)
            .finish()
    }
}

/// Rings compare by their tables and distinguished elements, not by identity.
impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

/// An element tagged with the ring it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingId,
    index: usize,
}

impl RingElement {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }
}

impl FiniteRing {
    /// Fills tables from closures. Callers guarantee the closures describe a
    /// commutative unital ring on `0..size`.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_fns(
        size: usize,
        zero: usize,
        one: usize,
        label: String,
        encoding: Encoding,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        neg: impl Fn(usize) -> usize,
    ) -> Ring {
        let mut add_t = vec![0u32; size * size];
        let mut mul_t = vec![0u32; size * size];
        for a in 0..size {
            for b in a..size {
                let s = add(a, b) as u32;
                let p = mul(a, b) as u32;
                add_t[a * size + b] = s;
                add_t[b * size + a] = s;
                mul_t[a * size + b] = p;
                mul_t[b * size + a] = p;
            }
        }
        let neg_t = (0..size).map(|a| neg(a) as u32).collect();
        Arc::new(FiniteRing {
            id: RingId::fresh(),
            size,
            add: add_t,
            mul: mul_t,
            neg: neg_t,
            zero,
            one,
            label,
            encoding,
        })
    }

    /// Builds a ring from user-supplied tables, checking every axiom.
    pub fn from_tables(
        size: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
        label: impl Into<String>,
    ) -> Result<Ring> {
        if size == 0 {
            return Err(Error::InvalidArgument("a ring needs at least one element".into()));
        }
        if add.len() != size * size || mul.len() != size * size {
            return Err(Error::InvalidArgument(format!(
                "tables must have {} entries",
                size * size
            )));
        }
        for &v in add.iter().chain(mul.iter()) {
            if v as usize >= size {
                return Err(Error::OutOfRange {
                    index: v as usize,
                    size,
                });
            }
        }
        for idx in [zero, one] {
            if idx >= size {
                return Err(Error::OutOfRange { index: idx, size });
            }
        }
        let mut neg = vec![u32::MAX; size];
        for a in 0..size {
            if let Some(b) = (0..size).find(|&b| add[a * size + b] as usize == zero) {
                neg[a] = b as u32;
            } else {
                return Err(Error::Axiom {
                    axiom: "additive inverse",
                    witness: vec![a],
                });
            }
        }
        let ring = FiniteRing {
            id: RingId::fresh(),
            size,
            add,
            mul,
            neg,
            zero,
            one,
            label: label.into(),
            encoding: Encoding::Tables,
        };
        ring.check_axioms()?;
        Ok(Arc::new(ring))
    }

    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// Canonical construction expression.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn encoding(&self) -> &Encoding {
        &self.encoding
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, mut k: usize) -> usize {
        let mut base = a;
        let mut acc = self.one;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Integer multiple `k * a`.
    pub fn times(&self, k: usize, a: usize) -> usize {
        let mut acc = self.zero;
        for _ in 0..k {
            acc = self.add(acc, a);
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn check_index(&self, index: usize) -> Result<usize> {
        if index < self.size {
            Ok(index)
        } else {
            Err(Error::OutOfRange {
                index,
                size: self.size,
            })
        }
    }

    pub fn element(&self, index: usize) -> Result<RingElement> {
        self.check_index(index)?;
        Ok(RingElement {
            ring: self.id,
            index,
        })
    }

    fn own(&self, x: RingElement) -> Result<usize> {
        if x.ring != self.id {
            return Err(Error::TagMismatch);
        }
        Ok(x.index)
    }

    pub fn add_elements(&self, x: RingElement, y: RingElement) -> Result<RingElement> {
        let s = self.add(self.own(x)?, self.own(y)?);
        self.element(s)
    }

    pub fn mul_elements(&self, x: RingElement, y: RingElement) -> Result<RingElement> {
        let p = self.mul(self.own(x)?, self.own(y)?);
        self.element(p)
    }

    pub fn neg_element(&self, x: RingElement) -> Result<RingElement> {
        let n = self.neg(self.own(x)?);
        self.element(n)
    }

    /// Human-readable description of a carrier index per the encoding.
    pub fn describe(&self, index: usize) -> String {
        match &self.encoding {
            Encoding::Tables | Encoding::Residues => index.to_string(),
            Encoding::Monomials { p, monomials } => {
                let p = *p as usize;
                let mut rest = index;
                let mut terms = Vec::new();
                for mono in monomials {
                    let c = rest % p;
                    rest /= p;
                    if c != 0 {
                        let m = mono.to_string();
                        terms.push(match (c, m.as_str()) {
                            (_, "1") => c.to_string(),
                            (1, _) => m,
                            _ => format!("{c}{m}"),
                        });
                    }
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
            Encoding::Product { left, right } => {
                let r = right.size();
                format!(
                    "({}, {})",
                    left.describe(index / r),
                    right.describe(index % r)
                )
            }
            Encoding::Quotient { parent, reps } => format!("[{}]", parent.describe(reps[index])),
            Encoding::TrivialExtension { base, module } => {
                let e = module.size();
                format!(
                    "({}, {})",
                    base.describe(index / e),
                    module.describe(index % e)
                )
            }
            Encoding::Amalgamation {
                a,
                b,
                f_map,
                j_members,
            } => {
                let jn = j_members.len();
                let ai = index / jn;
                let bi = b.add(f_map[ai] as usize, j_members[index % jn]);
                format!("({}, {})", a.describe(ai), b.describe(bi))
            }
            Encoding::Subring { parent, members } => parent.describe(members[index]),
        }
    }

    /// Checks the commutative unital ring axioms. Exhaustive up to
    /// [`FULL_AXIOM_CHECK_MAX`] elements, sampled with a fixed seed above.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.size;
        let fail = |axiom: &'static str, witness: Vec<usize>| Err(Error::Axiom { axiom, witness });
        if (self.zero == self.one) != (n == 1) {
            return fail("zero differs from one", vec![self.zero, self.one]);
        }
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return fail("additive identity", vec![a]);
            }
            if self.mul(a, self.one) != a {
                return fail("multiplicative identity", vec![a]);
            }
            if self.add(a, self.neg(a)) != self.zero {
                return fail("additive inverse", vec![a]);
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity", vec![a, b]);
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return fail("multiplicative commutativity", vec![a, b]);
                }
            }
        }
        let triple = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return fail("additive associativity", vec![a, b, c]);
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return fail("multiplicative associativity", vec![a, b, c]);
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return fail("distributivity", vec![a, b, c]);
            }
            Ok(())
        };
        if n <= FULL_AXIOM_CHECK_MAX {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        triple(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SAMPLE_SEED);
            for _ in 0..AXIOM_SAMPLE_COUNT {
                triple(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }
}

/// Writes `head(a; g1, g2)`-style expression text with the canonical spacing.
pub(crate) fn join_indices(items: &[usize]) -> String {
    if items.is_empty() {
        return "0".into();
    }
    items
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_tables_rejects_non_ring() {
        // Z/2 addition with a multiplication that is not distributive.
        let add = vec![0, 1, 1, 0];
        let mul = vec![1, 0, 0, 1];
        assert!(FiniteRing::from_tables(2, add, mul, 0, 1, "bad").is_err());
    }

    #[test]
    fn from_tables_accepts_z2() {
        let r = FiniteRing::from_tables(2, vec![0, 1, 1, 0], vec![0, 0, 0, 1], 0, 1, "z2").unwrap();
        assert_eq!(r.mul(1, 1), 1);
        assert_eq!(r.neg(1), 1);
    }

    #[test]
    fn tagged_elements_do_not_mix() {
        let a = zmod(4, &Limits::default()).unwrap();
        let b = zmod(4, &Limits::default()).unwrap();
        let x = a.element(2).unwrap();
        let y = b.element(3).unwrap();
        assert_eq!(a.add_elements(x, y), Err(Error::TagMismatch));
        let z = a.element(3).unwrap();
        assert_eq!(a.mul_elements(x, z).unwrap().index(), 2);
        assert_eq!(a.neg_element(z).unwrap().index(), 1);
    }

    #[test]
    fn pow_and_times() {
        let r = zmod(16, &Limits::default()).unwrap();
        assert_eq!(r.pow(2, 3), 8);
        assert_eq!(r.pow(2, 4), 0);
        assert_eq!(r.pow(5, 0), 1);
        assert_eq!(r.times(3, 7), 5);
    }
}
