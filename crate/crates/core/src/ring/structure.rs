use super::{quotient, FiniteRing, Ring, RingHom};
use crate::error::{Error, Result};
use crate::ideal::{ideal_generated, Ideal};
use crate::lattice::maximal_ideals;

/// Invertible elements, ascending.
pub fn units(ring: &FiniteRing) -> Vec<usize> {
    ring.elements()
        .filter(|&x| ring.elements().any(|y| ring.mul(x, y) == ring.one()))
        .collect()
}

/// `{x : x^2 = x}`, ascending.
pub fn idempotents(ring: &FiniteRing) -> Vec<usize> {
    ring.elements().filter(|&x| ring.mul(x, x) == x).collect()
}

/// Minimal nonzero idempotents, ascending. They are pairwise orthogonal and
/// sum to one; the zero ring has none.
pub fn primitive_idempotents(ring: &FiniteRing) -> Vec<usize> {
    let zero = ring.zero();
    let nonzero: Vec<usize> = idempotents(ring).into_iter().filter(|&e| e != zero).collect();
    nonzero
        .iter()
        .copied()
        .filter(|&e| {
            !nonzero
                .iter()
                .any(|&f| f != e && ring.mul(f, e) == f)
        })
        .collect()
}

/// Local factors `A e ≅ A / (1 - e)` for each primitive idempotent `e`, in
/// idempotent order, with the canonical projections.
pub fn factor_local(ring: &Ring) -> Result<Vec<(Ring, RingHom)>> {
    primitive_idempotents(ring)
        .into_iter()
        .map(|e| {
            let kernel = ideal_generated(ring, &[ring.sub(ring.one(), e)])?;
            quotient(ring, &kernel)
        })
        .collect()
}

/// The local factor in which `m` becomes the maximal ideal.
pub fn localize_at_max(ring: &Ring, m: &Ideal) -> Result<(Ring, RingHom)> {
    m.check_ring(ring)?;
    if !maximal_ideals(ring).contains(m) {
        return Err(Error::NotMaximal(ring.label().to_string()));
    }
    let mut found = None;
    for e in primitive_idempotents(ring) {
        if !m.contains(e) {
            if found.is_some() {
                return Err(Error::CrossCheck(
                    "two primitive idempotents outside a maximal ideal".into(),
                ));
            }
            found = Some(e);
        }
    }
    let e = found.ok_or_else(|| Error::CrossCheck("no primitive idempotent outside m".into()))?;
    let kernel = ideal_generated(ring, &[ring.sub(ring.one(), e)])?;
    quotient(ring, &kernel)
}
