//! The Prüfer-condition hierarchy: arithmetical, Gaussian, Prüfer, and
//! the elementary predicates they rest on.

mod poly;

pub use poly::{content, gaussian_content_oracle, poly_mul, Polynomial};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ideal::{ideal_generated, ideal_product, Ideal};
use crate::lattice::{
    all_ideals, distributivity_witness, maximal_ideals, nilradical, regular_elements,
    zero_divisors, DistributivityWitness,
};
use crate::ring::{factor_local, units, Encoding, FiniteRing, Limits, Ring};

/// Result of a decision procedure that can produce a counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<W> {
    Holds,
    Fails(W),
}

impl<W> Outcome<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Outcome::Holds => None,
            Outcome::Fails(w) => Some(w),
        }
    }
}

/// The unique maximal ideal, if there is exactly one.
pub fn is_local(ring: &Ring) -> Option<Ideal> {
    let mut max = maximal_ideals(ring);
    if max.len() == 1 {
        max.pop()
    } else {
        None
    }
}

pub fn is_reduced(ring: &FiniteRing) -> bool {
    nilradical(ring).is_zero()
}

pub fn is_field(ring: &FiniteRing) -> bool {
    ring.size() > 1 && units(ring).len() == ring.size() - 1
}

/// Every element is a unit or a zero-divisor.
pub fn is_total_quotient_ring(ring: &FiniteRing) -> bool {
    let u = units(ring);
    let z = zero_divisors(ring);
    let mut covered = FixedBitSet::with_capacity(ring.size());
    covered.extend(u);
    covered.extend(z);
    covered.count_ones(..) == ring.size()
}

/// `n x n` bitset; bit `g * n + x` is set when `x ∈ ⟨g⟩`.
struct PrincipalTable {
    n: usize,
    bits: FixedBitSet,
}

impl PrincipalTable {
    fn new(ring: &FiniteRing) -> Self {
        let n = ring.size();
        let mut bits = FixedBitSet::with_capacity(n * n);
        for g in ring.elements() {
            for r in ring.elements() {
                bits.insert(g * n + ring.mul(r, g));
            }
        }
        PrincipalTable { n, bits }
    }

    fn contains(&self, g: usize, x: usize) -> bool {
        self.bits.contains(g * self.n + x)
    }
}

/// The two-element condition with `c = a`: `⟨a,b⟩² = ⟨a²⟩` and
/// `ab = 0 ⇒ b² = 0`.
fn pair_branch(ring: &FiniteRing, p: &PrincipalTable, a: usize, b: usize) -> bool {
    let (aa, ab, bb) = (ring.mul(a, a), ring.mul(a, b), ring.mul(b, b));
    let zero = ring.zero();
    p.contains(aa, ab) && p.contains(aa, bb) && (ab != zero || bb == zero)
}

fn pair_passes(ring: &FiniteRing, p: &PrincipalTable, a: usize, b: usize) -> bool {
    pair_branch(ring, p, a, b) || pair_branch(ring, p, b, a)
}

/// Whether `(a, b)` satisfies the local Gaussian pair condition.
pub fn gaussian_pair_holds(ring: &FiniteRing, a: usize, b: usize) -> Result<bool> {
    ring.check_index(a)?;
    ring.check_index(b)?;
    let p = PrincipalTable::new(ring);
    Ok(pair_passes(ring, &p, a, b))
}

fn pair_scan(ring: &FiniteRing) -> Outcome<(usize, usize)> {
    let p = PrincipalTable::new(ring);
    for a in ring.elements() {
        for b in a..ring.size() {
            if !pair_passes(ring, &p, a, b) {
                return Outcome::Fails((a, b));
            }
        }
    }
    Outcome::Holds
}

/// For a local ring: every pair `(a, b)` has `⟨a,b⟩² = ⟨c²⟩` for some
/// `c ∈ {a, b}`, with `ab = 0` forcing the square of the other element to
/// vanish. The witness is the first failing pair with `a <= b`.
pub fn local_gaussian_pair_check(ring: &Ring) -> Result<Outcome<(usize, usize)>> {
    if is_local(ring).is_none() {
        return Err(Error::NotLocal(ring.label().to_string()));
    }
    Ok(pair_scan(ring))
}

/// A failing pair inside one local factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianWitness {
    pub factor: String,
    /// Indices in the factor.
    pub pair: (usize, usize),
    /// Representatives of `pair` in the original ring.
    pub lifted: (usize, usize),
}

fn lift(factor: &FiniteRing, x: usize) -> usize {
    match factor.encoding() {
        Encoding::Quotient { reps, .. } => reps[x],
        _ => x,
    }
}

/// Conjunction of the pair check over the local factors.
pub fn is_gaussian(ring: &Ring) -> Result<Outcome<GaussianWitness>> {
    let factors = if is_local(ring).is_some() {
        vec![ring.clone()]
    } else {
        factor_local(ring)?.into_iter().map(|(f, _)| f).collect()
    };
    for f in factors {
        if let Outcome::Fails((a, b)) = pair_scan(&f) {
            let lifted = if std::sync::Arc::ptr_eq(&f, ring) {
                (a, b)
            } else {
                (lift(&f, a), lift(&f, b))
            };
            return Ok(Outcome::Fails(GaussianWitness {
                factor: f.label().to_string(),
                pair: (a, b),
                lifted,
            }));
        }
    }
    Ok(Outcome::Holds)
}

/// Ideals are totally ordered: for all `a, b`, `a ∈ ⟨b⟩` or `b ∈ ⟨a⟩`.
/// The witness is the first incomparable pair with `a < b`.
pub fn is_chain_ring(ring: &FiniteRing) -> Outcome<(usize, usize)> {
    let p = PrincipalTable::new(ring);
    for a in ring.elements() {
        for b in a + 1..ring.size() {
            if !p.contains(b, a) && !p.contains(a, b) {
                return Outcome::Fails((a, b));
            }
        }
    }
    Outcome::Holds
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithmeticalRoute {
    /// Distributivity of the enumerated ideal lattice, cross-checked
    /// against the local chain-ring route.
    Lattice,
    /// Every local factor is a chain ring; used above the lattice cap.
    LocalChainRings,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithmeticalWitness {
    Triple(DistributivityWitness),
    Incomparable {
        factor: String,
        pair: (usize, usize),
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticalVerdict {
    pub outcome: Outcome<ArithmeticalWitness>,
    pub route: ArithmeticalRoute,
}

fn chain_route(ring: &Ring) -> Result<Outcome<ArithmeticalWitness>> {
    for (f, _) in factor_local(ring)? {
        if let Outcome::Fails(pair) = is_chain_ring(&f) {
            return Ok(Outcome::Fails(ArithmeticalWitness::Incomparable {
                factor: f.label().to_string(),
                pair,
            }));
        }
    }
    Ok(Outcome::Holds)
}

pub fn is_arithmetical(ring: &Ring, limits: &Limits) -> Result<ArithmeticalVerdict> {
    let chain = chain_route(ring)?;
    let ideals = match all_ideals(ring, limits) {
        Ok(ideals) => ideals,
        Err(e) if e.is_cap() => {
            return Ok(ArithmeticalVerdict {
                outcome: chain,
                route: ArithmeticalRoute::LocalChainRings,
            })
        }
        Err(e) => return Err(e),
    };
    let outcome = match distributivity_witness(ring, &ideals) {
        None => Outcome::Holds,
        Some(w) => Outcome::Fails(ArithmeticalWitness::Triple(w)),
    };
    if outcome.holds() != chain.holds() {
        return Err(Error::CrossCheck(format!(
            "{}: lattice distributivity and local chain-ring routes disagree",
            ring.label()
        )));
    }
    Ok(ArithmeticalVerdict {
        outcome,
        route: ArithmeticalRoute::Lattice,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruferRoute {
    /// Regular ideals filtered from the enumerated lattice.
    Lattice,
    /// Regular ideals are those generated with a regular element; used
    /// above the lattice cap.
    RegularElements,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PruferVerdict {
    /// Witness: a regular ideal that is not invertible.
    pub outcome: Outcome<Ideal>,
    pub route: PruferRoute,
    pub regular_ideals: usize,
}

/// `(A : I) = {x ∈ Q(A) : xI ⊆ A}`. In a finite ring every regular element
/// is a unit, so `Q(A) = A` and the colon is taken inside `A`.
fn colon(ring: &FiniteRing, ideal: &Ideal) -> Result<Ideal> {
    let whole = Ideal::whole(ring);
    let members = ring
        .elements()
        .filter(|&x| ideal.iter().all(|i| whole.contains(ring.mul(x, i))));
    Ideal::new(ring, members)
}

fn is_invertible(ring: &FiniteRing, ideal: &Ideal) -> Result<bool> {
    Ok(ideal_product(ring, ideal, &colon(ring, ideal)?)?.is_whole())
}

/// Every finitely generated regular ideal is invertible.
pub fn is_prufer(ring: &Ring, limits: &Limits) -> Result<PruferVerdict> {
    let regular = regular_elements(ring);
    let u = units(ring);
    if regular != u {
        return Err(Error::CrossCheck(format!(
            "{}: a regular element is not a unit",
            ring.label()
        )));
    }
    let (candidates, route) = match all_ideals(ring, limits) {
        Ok(ideals) => {
            let regular_ideals: Vec<Ideal> = ideals
                .into_iter()
                .filter(|i| regular.iter().any(|&r| i.contains(r)))
                .collect();
            (regular_ideals, PruferRoute::Lattice)
        }
        Err(e) if e.is_cap() => {
            // An ideal is regular iff it contains some ⟨r⟩ with r regular.
            let mut out: Vec<Ideal> = Vec::new();
            for &r in &regular {
                let i = ideal_generated(ring, &[r])?;
                if !out.contains(&i) {
                    out.push(i);
                }
            }
            if out.iter().any(|i| !i.is_whole()) {
                return Err(Error::CrossCheck(format!(
                    "{}: a regular principal ideal is proper",
                    ring.label()
                )));
            }
            (out, PruferRoute::RegularElements)
        }
        Err(e) => return Err(e),
    };
    let mut outcome = Outcome::Holds;
    for i in &candidates {
        if !is_invertible(ring, i)? {
            outcome = Outcome::Fails(i.clone());
            break;
        }
    }
    Ok(PruferVerdict {
        outcome,
        route,
        regular_ideals: candidates.len(),
    })
}

/// Every verdict for one ring, with the settings that produced it.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub ring: String,
    pub size: usize,
    pub local: Option<Ideal>,
    pub reduced: bool,
    pub field: bool,
    pub total_quotient_ring: bool,
    pub chain_ring: Outcome<(usize, usize)>,
    pub gaussian: Outcome<GaussianWitness>,
    pub arithmetical: ArithmeticalVerdict,
    pub prufer: PruferVerdict,
    pub max_lattice_size: usize,
    /// Degree bound and result, when the content oracle was requested.
    pub oracle: Option<(usize, Outcome<(Polynomial, Polynomial)>)>,
}

impl PropertyReport {
    pub fn compute(ring: &Ring, limits: &Limits, oracle_degree: Option<usize>) -> Result<Self> {
        let gaussian = is_gaussian(ring)?;
        let oracle = match oracle_degree {
            Some(d) => {
                let o = gaussian_content_oracle(ring, d, limits)?;
                if o.witness().is_some() && gaussian.holds() {
                    return Err(Error::CrossCheck(format!(
                        "{}: content oracle found a counterexample to a Gaussian verdict",
                        ring.label()
                    )));
                }
                Some((d, o))
            }
            None => None,
        };
        Ok(PropertyReport {
            ring: ring.label().to_string(),
            size: ring.size(),
            local: is_local(ring),
            reduced: is_reduced(ring),
            field: is_field(ring),
            total_quotient_ring: is_total_quotient_ring(ring),
            chain_ring: is_chain_ring(ring),
            gaussian,
            arithmetical: is_arithmetical(ring, limits)?,
            prufer: is_prufer(ring, limits)?,
            max_lattice_size: limits.max_lattice_size,
            oracle,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{ring_as_module, trivial_extension, vspace_over_residue};
    use crate::ring::{localize_at_max, product, truncated_poly_algebra, zmod};

    fn lim() -> Limits {
        Limits::default()
    }

    fn ext_resfield(a: &Ring) -> Ring {
        let m = is_local(a).unwrap();
        trivial_extension(a, &vspace_over_residue(a, &m, 1, &lim()).unwrap(), &lim())
            .unwrap()
            .ring
    }

    #[test]
    fn elementary_predicates() {
        let z4 = zmod(4, &lim()).unwrap();
        let z6 = zmod(6, &lim()).unwrap();
        assert_eq!(is_local(&z4).unwrap().to_vec(), vec![0, 2]);
        assert!(is_local(&z6).is_none());
        let t = truncated_poly_algebra(2, 2, 3, &lim()).unwrap();
        let m = is_local(&t).unwrap();
        assert_eq!(m.len(), 32);
        assert!(m.iter().all(|x| !units(&t).contains(&x)));
        assert!(is_reduced(&z6));
        assert!(!is_reduced(&z4));
        assert!(is_field(&zmod(5, &lim()).unwrap()));
        assert!(!is_field(&zmod(1, &lim()).unwrap()));
        assert!(is_total_quotient_ring(&z4));
        assert!(is_total_quotient_ring(&zmod(1, &lim()).unwrap()));
    }

    /// Ideal-level reading of the pair condition, independent of the
    /// principal-membership shortcut.
    fn pair_by_ideals(ring: &Ring, a: usize, b: usize) -> bool {
        let ab = ideal_generated(ring, &[a, b]).unwrap();
        let sq = ideal_product(ring, &ab, &ab).unwrap();
        let branch = |c: usize, other: usize| {
            sq == ideal_generated(ring, &[ring.mul(c, c)]).unwrap()
                && (ring.mul(a, b) != ring.zero() || ring.mul(other, other) == ring.zero())
        };
        branch(a, b) || branch(b, a)
    }

    #[test]
    fn pair_check_matches_ideal_computation() {
        let z4 = zmod(4, &lim()).unwrap();
        let t = truncated_poly_algebra(2, 2, 2, &lim()).unwrap();
        let e = ext_resfield(&z4);
        for r in [z4, t, e] {
            let p = PrincipalTable::new(&r);
            for a in r.elements() {
                for b in r.elements() {
                    assert_eq!(pair_passes(&r, &p, a, b), pair_by_ideals(&r, a, b));
                }
            }
        }
    }

    #[test]
    fn pair_check_examples() {
        let z4 = zmod(4, &lim()).unwrap();
        assert!(local_gaussian_pair_check(&z4).unwrap().holds());
        let t = truncated_poly_algebra(2, 2, 3, &lim()).unwrap();
        // x and y have indices 2 and 4.
        assert_eq!(
            local_gaussian_pair_check(&t).unwrap(),
            Outcome::Fails((2, 4))
        );
        let f7 = zmod(7, &lim()).unwrap();
        assert!(local_gaussian_pair_check(&f7).unwrap().holds());
        assert!(matches!(
            local_gaussian_pair_check(&zmod(6, &lim()).unwrap()),
            Err(Error::NotLocal(_))
        ));
    }

    #[test]
    fn gaussian_examples() {
        assert!(is_gaussian(&zmod(6, &lim()).unwrap()).unwrap().holds());
        let z4 = zmod(4, &lim()).unwrap();
        assert!(is_gaussian(&ext_resfield(&z4)).unwrap().holds());
        let sq = trivial_extension(&z4, &ring_as_module(&z4), &lim()).unwrap().ring;
        let g = is_gaussian(&sq).unwrap();
        let w = g.witness().unwrap();
        assert!(!gaussian_pair_holds(&sq, w.pair.0, w.pair.1).unwrap());
    }

    #[test]
    fn gaussian_witness_lifts_through_factors() {
        let t = truncated_poly_algebra(2, 2, 3, &lim()).unwrap();
        let p = product(&zmod(3, &lim()).unwrap(), &t, &lim()).unwrap();
        let w = is_gaussian(&p).unwrap().witness().cloned().unwrap();
        assert_eq!(w.pair, (2, 4));
        // (0, x) and (0, y) in the product encoding.
        let lifted = (w.lifted.0 % 64, w.lifted.1 % 64);
        assert_eq!(lifted, (2, 4));
    }

    #[test]
    fn arithmetical_examples() {
        let z8 = zmod(8, &lim()).unwrap();
        let v = is_arithmetical(&z8, &lim()).unwrap();
        assert!(v.outcome.holds());
        assert_eq!(v.route, ArithmeticalRoute::Lattice);
        assert!(is_chain_ring(&z8).holds());

        let z2 = zmod(2, &lim()).unwrap();
        let p = product(&z2, &z2, &lim()).unwrap();
        assert!(is_arithmetical(&p, &lim()).unwrap().outcome.holds());
        assert_eq!(is_chain_ring(&p), Outcome::Fails((1, 2)));

        let e = ext_resfield(&zmod(4, &lim()).unwrap());
        let v = is_arithmetical(&e, &lim()).unwrap();
        let Outcome::Fails(ArithmeticalWitness::Triple(w)) = v.outcome else {
            panic!("expected a distributivity witness");
        };
        assert!(w.recheck(&e));
    }

    #[test]
    fn arithmetical_falls_back_above_cap() {
        let small = Limits {
            max_lattice_size: 4,
            ..lim()
        };
        let z8 = zmod(8, &lim()).unwrap();
        let v = is_arithmetical(&z8, &small).unwrap();
        assert_eq!(v.route, ArithmeticalRoute::LocalChainRings);
        assert!(v.outcome.holds());
        let t = truncated_poly_algebra(2, 2, 2, &lim()).unwrap();
        assert!(!is_arithmetical(&t, &small).unwrap().outcome.holds());
    }

    #[test]
    fn prufer_examples() {
        for r in [
            zmod(6, &lim()).unwrap(),
            zmod(1, &lim()).unwrap(),
            truncated_poly_algebra(2, 2, 3, &lim()).unwrap(),
        ] {
            let v = is_prufer(&r, &lim()).unwrap();
            assert!(v.outcome.holds());
            assert_eq!(v.route, PruferRoute::Lattice);
        }
        let v = is_prufer(&zmod(6, &lim()).unwrap(), &lim()).unwrap();
        assert_eq!(v.regular_ideals, 1);
        let small = Limits {
            max_lattice_size: 2,
            ..lim()
        };
        let v = is_prufer(&zmod(12, &lim()).unwrap(), &small).unwrap();
        assert_eq!(v.route, PruferRoute::RegularElements);
        assert!(v.outcome.holds());
    }

    #[test]
    fn oracle_agrees_with_pair_check_on_small_local_rings() {
        let z4 = zmod(4, &lim()).unwrap();
        let rings = vec![
            zmod(4, &lim()).unwrap(),
            zmod(8, &lim()).unwrap(),
            zmod(9, &lim()).unwrap(),
            truncated_poly_algebra(2, 2, 2, &lim()).unwrap(),
            truncated_poly_algebra(2, 1, 3, &lim()).unwrap(),
            ext_resfield(&z4),
            trivial_extension(&z4, &ring_as_module(&z4), &lim()).unwrap().ring,
        ];
        for r in rings {
            let pair = local_gaussian_pair_check(&r).unwrap().holds();
            assert_eq!(pair, gaussian_content_oracle(&r, 1, &lim()).unwrap().holds(), "{}", r.label());
            if r.size() <= 16 {
                assert_eq!(pair, gaussian_content_oracle(&r, 2, &lim()).unwrap().holds(), "{}", r.label());
            }
        }
    }

    #[test]
    fn locality_consistency() {
        let t = truncated_poly_algebra(2, 2, 2, &lim()).unwrap();
        let rings = vec![
            zmod(12, &lim()).unwrap(),
            product(&t, &zmod(2, &lim()).unwrap(), &lim()).unwrap(),
            product(&zmod(4, &lim()).unwrap(), &zmod(9, &lim()).unwrap(), &lim()).unwrap(),
        ];
        for r in rings {
            let locals: Vec<Ring> = maximal_ideals(&r)
                .iter()
                .map(|m| localize_at_max(&r, m).unwrap().0)
                .collect();
            let g = locals.iter().all(|l| is_gaussian(l).unwrap().holds());
            assert_eq!(g, is_gaussian(&r).unwrap().holds());
            let a = locals.iter().all(|l| is_chain_ring(l).holds());
            assert_eq!(a, is_arithmetical(&r, &lim()).unwrap().outcome.holds());
        }
    }

    #[test]
    fn report_fields() {
        let z4 = zmod(4, &lim()).unwrap();
        let r = PropertyReport::compute(&z4, &lim(), Some(2)).unwrap();
        assert!(r.gaussian.holds() && r.arithmetical.outcome.holds() && r.prufer.outcome.holds());
        assert!(r.chain_ring.holds() && r.total_quotient_ring && !r.reduced && !r.field);
        assert_eq!(r.oracle.as_ref().map(|(d, o)| (*d, o.holds())), Some((2, true)));
    }
}
