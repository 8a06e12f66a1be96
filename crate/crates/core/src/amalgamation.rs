//! Amalgamated algebras `A ⋈^f J = {(a, f(a) + j) : a ∈ A, j ∈ J}`.

use std::collections::BTreeSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::lattice::{jacobson_radical, maximal_ideals, nilradical, zero_divisors};
use crate::properties::{is_local, Outcome};
use crate::ring::{join_indices, Encoding, FiniteRing, Limits, Ring, RingHom};

/// `(A, B, f, J)` together with `R = A ⋈^f J` and its projections.
///
/// The element `(a, f(a) + j)` of `R` has index `a * |J| + rank(j)`, where
/// `rank` is the position of `j` among the sorted members of `J`.
#[derive(Clone, Debug)]
pub struct AmalgamationInstance {
    pub a: Ring,
    pub b: Ring,
    pub f: RingHom,
    pub j: Ideal,
    pub ring: Ring,
    /// `(a, f(a) + j) ↦ a`.
    pub p_a: RingHom,
    /// `(a, f(a) + j) ↦ f(a) + j`.
    pub p_b: RingHom,
    /// `{(0, j) : j ∈ J}`, the kernel of `p_a`.
    pub zero_j: Ideal,
    pub label: String,
}

impl AmalgamationInstance {
    pub fn j_members(&self) -> Vec<usize> {
        self.j.to_vec()
    }

    /// Index of `(a, f(a) + j)`; `j` must lie in `J`.
    pub fn encode(&self, a: usize, j: usize) -> Result<usize> {
        self.a.check_index(a)?;
        let members = self.j.to_vec();
        let rank = members
            .binary_search(&j)
            .map_err(|_| Error::InvalidArgument(format!("{j} is not in J")))?;
        Ok(a * members.len() + rank)
    }

    /// `(a, j)` with `x = (a, f(a) + j)`.
    pub fn decode(&self, x: usize) -> Result<(usize, usize)> {
        self.ring.check_index(x)?;
        let members = self.j.to_vec();
        Ok((x / members.len(), members[x % members.len()]))
    }
}

fn hom_text(f: &RingHom) -> String {
    f.expr()
        .map(|e| e.to_string())
        .unwrap_or_else(|| "custom".to_string())
}

/// Builds `A ⋈^f J` from the closed-form rules
/// `(a₁, j₁) + (a₂, j₂) = (a₁ + a₂, j₁ + j₂)` and
/// `(a₁, j₁)(a₂, j₂) = (a₁a₂, f(a₁)j₂ + f(a₂)j₁ + j₁j₂)`,
/// then checks the result against the subring of `A × B` it names.
pub fn amalgamate(f: &RingHom, j: &Ideal, limits: &Limits) -> Result<AmalgamationInstance> {
    let (a, b) = (f.source(), f.target());
    let label = format!(
        "amalg({}, {}, {}; {})",
        a.label(),
        b.label(),
        hom_text(f),
        join_indices(&j.generators(b))
    );
    build(f, j, label, limits)
}

/// `A ⋈ I`, the amalgamation along the identity.
pub fn duplication(a: &Ring, i: &Ideal, limits: &Limits) -> Result<AmalgamationInstance> {
    let label = format!("dup({}; {})", a.label(), join_indices(&i.generators(a)));
    build(&RingHom::identity(a), i, label, limits)
}

fn build(f: &RingHom, j: &Ideal, label: String, limits: &Limits) -> Result<AmalgamationInstance> {
    let (a, b) = (f.source(), f.target());
    j.check_ring(b)?;
    let members = j.to_vec();
    let nj = members.len();
    let n = limits.check_size(&label, a.size() as u128 * nj as u128)?;
    let mut rank = vec![usize::MAX; b.size()];
    for (r, &m) in members.iter().enumerate() {
        rank[m] = r;
    }
    let fj = |x: usize| b.add(f.apply(x / nj), members[x % nj]);
    let enc = |x: usize, y: usize| x * nj + rank[y];
    let jzero = rank[b.zero()];
    let ring = FiniteRing::from_fns(
        n,
        a.zero() * nj + jzero,
        a.one() * nj + jzero,
        label.clone(),
        Encoding::Amalgamation {
            a: Arc::clone(a),
            b: Arc::clone(b),
            f_map: f.map().to_vec(),
            j_members: members.clone(),
        },
        |x, y| enc(a.add(x / nj, y / nj), b.add(members[x % nj], members[y % nj])),
        |x, y| {
            let (a1, j1) = (x / nj, members[x % nj]);
            let (a2, j2) = (y / nj, members[y % nj]);
            let cross = b.add(
                b.add(b.mul(f.apply(a1), j2), b.mul(f.apply(a2), j1)),
                b.mul(j1, j2),
            );
            enc(a.mul(a1, a2), cross)
        },
        |x| enc(a.neg(x / nj), b.neg(members[x % nj])),
    );
    let p_a = RingHom::new(
        Arc::clone(&ring),
        Arc::clone(a),
        (0..n).map(|x| (x / nj) as u32).collect(),
    )?;
    let p_b = RingHom::new(
        Arc::clone(&ring),
        Arc::clone(b),
        (0..n).map(|x| fj(x) as u32).collect(),
    )?;
    let zero_j = Ideal::new(&ring, (0..nj).map(|r| a.zero() * nj + r))?;
    let inst = AmalgamationInstance {
        a: Arc::clone(a),
        b: Arc::clone(b),
        f: f.clone(),
        j: j.clone(),
        ring,
        p_a,
        p_b,
        zero_j,
        label,
    };
    check_against_product(&inst)?;
    if !inst.p_a.is_surjective() || inst.p_a.kernel() != inst.zero_j {
        return Err(Error::CrossCheck(format!(
            "{}: p_A is not a surjection with kernel 0 × J",
            inst.label
        )));
    }
    Ok(inst)
}

/// Oracle: `x ↦ (p_A(x), p_B(x))` is a bijection onto
/// `{(a, f(a) + j)} ⊆ A × B` that carries `R`'s tables to componentwise
/// arithmetic in `A` and `B`.
pub fn check_against_product(inst: &AmalgamationInstance) -> Result<()> {
    let (a, b, r) = (&inst.a, &inst.b, &inst.ring);
    let pair = |x: usize| (inst.p_a.apply(x), inst.p_b.apply(x));
    let fail = |what: &str, x: usize, y: usize| {
        Err(Error::CrossCheck(format!(
            "{}: {what} differs from A × B at ({x}, {y})",
            inst.label
        )))
    };
    let mut seen = BTreeSet::new();
    for x in r.elements() {
        let (xa, xb) = pair(x);
        if !inst.j.contains(b.sub(xb, inst.f.apply(xa))) || !seen.insert((xa, xb)) {
            return fail("carrier", x, x);
        }
    }
    if seen.len() != a.size() * inst.j.len() {
        return fail("carrier size", 0, 0);
    }
    if pair(r.zero()) != (a.zero(), b.zero()) || pair(r.one()) != (a.one(), b.one()) {
        return fail("identity", r.zero(), r.one());
    }
    for x in r.elements() {
        let (xa, xb) = pair(x);
        for y in x..r.size() {
            let (ya, yb) = pair(y);
            if pair(r.add(x, y)) != (a.add(xa, ya), b.add(xb, yb)) {
                return fail("addition", x, y);
            }
            if pair(r.mul(x, y)) != (a.mul(xa, ya), b.mul(xb, yb)) {
                return fail("multiplication", x, y);
            }
        }
    }
    Ok(())
}

/// The subring `f(A) + J` of `B` with its inclusion.
pub fn f_image_plus_j(f: &RingHom, j: &Ideal) -> Result<(Ring, RingHom)> {
    let b = f.target();
    j.check_ring(b)?;
    let mut set = FixedBitSet::with_capacity(b.size());
    for x in f.source().elements() {
        for y in j.iter() {
            set.insert(b.add(f.apply(x), y));
        }
    }
    let members: Vec<usize> = set.ones().collect();
    let mut pos = vec![usize::MAX; b.size()];
    for (k, &m) in members.iter().enumerate() {
        pos[m] = k;
    }
    for &x in &members {
        if pos[b.neg(x)] == usize::MAX {
            return Err(Error::CrossCheck("f(A) + J is not closed under negation".into()));
        }
        for &y in &members {
            if pos[b.add(x, y)] == usize::MAX || pos[b.mul(x, y)] == usize::MAX {
                return Err(Error::CrossCheck(format!(
                    "f(A) + J is not closed at ({x}, {y})"
                )));
            }
        }
    }
    let label = format!(
        "image_plus({}, {}; {})",
        b.label(),
        hom_text(f),
        join_indices(&j.generators(b))
    );
    let sub = FiniteRing::from_fns(
        members.len(),
        pos[b.zero()],
        pos[b.one()],
        label,
        Encoding::Subring {
            parent: Arc::clone(b),
            members: members.clone(),
        },
        |x, y| pos[b.add(members[x], members[y])],
        |x, y| pos[b.mul(members[x], members[y])],
        |x| pos[b.neg(members[x])],
    );
    let inclusion = RingHom::new(
        Arc::clone(&sub),
        Arc::clone(b),
        members.iter().map(|&m| m as u32).collect(),
    )?;
    Ok((sub, inclusion))
}

/// `0 × J` and, for local `(A, m)`, `m ⋈^f J = {(a, f(a) + j) : a ∈ m}`.
pub fn distinguished_ideals(inst: &AmalgamationInstance) -> Result<(Ideal, Ideal)> {
    let m = is_local(&inst.a).ok_or_else(|| Error::NotLocal(inst.a.label().to_string()))?;
    let mj = preimage(&inst.ring, &inst.p_a, &m)?;
    Ok((inst.zero_j.clone(), mj))
}

fn preimage(ring: &FiniteRing, hom: &RingHom, ideal: &Ideal) -> Result<Ideal> {
    Ideal::new(ring, ring.elements().filter(|&x| ideal.contains(hom.apply(x))))
}

/// Side conditions of the transfer results, each with a witness when it
/// fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    /// The maximal ideal of `A` when `A` is local.
    pub a_local: Option<Ideal>,
    pub j_proper: bool,
    pub j_nonzero: bool,
    /// Witness: a member of `J` outside `Rad(B)`.
    pub j_in_rad_b: Outcome<usize>,
    /// Witness: a member of `J` that is not a zero-divisor of `B`.
    pub j_in_zb: Outcome<usize>,
    /// Witness: a nonzero element of `ker f`.
    pub f_injective: Outcome<usize>,
    /// Witness: a nonzero element of `f(A) ∩ J`.
    pub fa_meet_j_zero: Outcome<usize>,
    /// Witness: a nonzero nilpotent in `J`.
    pub j_meet_nilp_b_zero: Outcome<usize>,
    /// Witness: `(j, j')` with `jj' != 0`.
    pub j_squared_zero: Outcome<(usize, usize)>,
    /// Witness: a nonzero nilpotent of `A`.
    pub a_reduced: Outcome<usize>,
    /// `f(a)J = f(a)²J` for every `a ∈ m`; absent when `A` is not local.
    /// Witness: the offending `a`.
    pub cond_faj: Option<Outcome<usize>>,
}

impl HypothesisReport {
    /// `A` local, `J` proper and nonzero, `J ⊆ Rad(B)`.
    pub fn local_setting(&self) -> bool {
        self.a_local.is_some() && self.j_proper && self.j_nonzero && self.j_in_rad_b.holds()
    }
}

fn first_outside(items: impl IntoIterator<Item = usize>, keep: impl Fn(usize) -> bool) -> Outcome<usize> {
    match items.into_iter().find(|&x| !keep(x)) {
        None => Outcome::Holds,
        Some(x) => Outcome::Fails(x),
    }
}

pub fn hypothesis_report(inst: &AmalgamationInstance) -> HypothesisReport {
    let (a, b, f, j) = (&inst.a, &inst.b, &inst.f, &inst.j);
    let a_local = is_local(a);
    let rad = jacobson_radical(b);
    let zb: BTreeSet<usize> = zero_divisors(b).into_iter().collect();
    let nil_b = nilradical(b);
    let nil_a = nilradical(a);
    let image = f.image();

    let j_squared_zero = j
        .iter()
        .flat_map(|x| j.iter().filter(move |&y| y >= x).map(move |y| (x, y)))
        .find(|&(x, y)| b.mul(x, y) != b.zero())
        .map_or(Outcome::Holds, Outcome::Fails);

    let cond_faj = a_local.as_ref().map(|m| {
        let scaled = |c: usize| -> FixedBitSet {
            let mut s = FixedBitSet::with_capacity(b.size());
            s.extend(j.iter().map(|y| b.mul(c, y)));
            s
        };
        first_outside(m.iter(), |x| {
            let fx = f.apply(x);
            scaled(fx) == scaled(b.mul(fx, fx))
        })
    });

    HypothesisReport {
        j_proper: j.is_proper(),
        j_nonzero: !j.is_zero(),
        j_in_rad_b: first_outside(j.iter(), |x| rad.contains(x)),
        j_in_zb: first_outside(j.iter(), |x| zb.contains(&x)),
        f_injective: first_outside(a.elements().filter(|&x| x != a.zero()), |x| {
            f.apply(x) != b.zero()
        }),
        fa_meet_j_zero: first_outside(j.iter().filter(|&x| x != b.zero()), |x| {
            !image.contains(x)
        }),
        j_meet_nilp_b_zero: first_outside(j.iter().filter(|&x| x != b.zero()), |x| {
            !nil_b.contains(x)
        }),
        j_squared_zero,
        a_reduced: first_outside(nil_a.iter(), |x| x == a.zero()),
        a_local,
        cond_faj,
    }
}

/// Provenance of a maximal ideal of `A ⋈^f J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaxIdealKind {
    /// `m ⋈^f J` for a maximal ideal `m` of `A`.
    FromA(Ideal),
    /// `{(a, f(a) + j) : f(a) + j ∈ Q}` for a maximal ideal `Q` of `B`
    /// with `J ⊄ Q`.
    FromB(Ideal),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedMaxIdeal {
    pub ideal: Ideal,
    pub kind: MaxIdealKind,
}

/// Maximal ideals of `R`, computed on `R` directly and each matched against
/// the two families predicted from `A` and `B`. Any disagreement is an
/// error.
pub fn amalg_max_ideals(inst: &AmalgamationInstance) -> Result<Vec<ClassifiedMaxIdeal>> {
    let r = &inst.ring;
    let direct = maximal_ideals(r);
    let mut predicted: Vec<(Ideal, MaxIdealKind)> = Vec::new();
    for m in maximal_ideals(&inst.a) {
        predicted.push((preimage(r, &inst.p_a, &m)?, MaxIdealKind::FromA(m)));
    }
    for q in maximal_ideals(&inst.b) {
        if !inst.j.is_subset(&q) {
            predicted.push((preimage(r, &inst.p_b, &q)?, MaxIdealKind::FromB(q)));
        }
    }
    let mismatch = || {
        Error::CrossCheck(format!(
            "{}: maximal ideals disagree with the predicted families",
            inst.label
        ))
    };
    let direct_set: BTreeSet<Vec<usize>> = direct.iter().map(|i| i.to_vec()).collect();
    let predicted_set: BTreeSet<Vec<usize>> = predicted.iter().map(|(i, _)| i.to_vec()).collect();
    if direct_set != predicted_set {
        return Err(mismatch());
    }
    direct
        .into_iter()
        .map(|ideal| {
            let kind = predicted
                .iter()
                .find(|(p, _)| *p == ideal)
                .map(|(_, k)| k.clone())
                .ok_or_else(mismatch)?;
            Ok(ClassifiedMaxIdeal { ideal, kind })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal_generated;
    use crate::lattice::{all_ideals, maximal_ideals_from_lattice};
    use crate::module::{trivial_extension, vspace_over_residue};
    use crate::ring::{product, zmod};

    fn lim() -> Limits {
        Limits::default()
    }

    fn dup(n: usize, gens: &[usize]) -> AmalgamationInstance {
        let a = zmod(n, &lim()).unwrap();
        let i = ideal_generated(&a, gens).unwrap();
        duplication(&a, &i, &lim()).unwrap()
    }

    /// Subring closure inside `A × B` generated by `{(a, f(a) + j)}`;
    /// returns the sorted pairs.
    fn subring_by_closure(inst: &AmalgamationInstance) -> Vec<(usize, usize)> {
        let (a, b) = (&inst.a, &inst.b);
        let p = product(a, b, &lim()).unwrap();
        let nb = b.size();
        let mut set = BTreeSet::new();
        for x in a.elements() {
            for y in inst.j.iter() {
                set.insert(x * nb + b.add(inst.f.apply(x), y));
            }
        }
        let items: Vec<usize> = set.iter().copied().collect();
        for &x in &items {
            for &y in &items {
                assert!(set.contains(&p.add(x, y)) && set.contains(&p.mul(x, y)));
            }
        }
        set.into_iter().map(|x| (x / nb, x % nb)).collect()
    }

    #[test]
    fn closure_oracle_matches_projections() {
        for inst in [dup(4, &[2]), dup(6, &[3]), dup(8, &[4]), dup(8, &[2])] {
            let mut pairs: Vec<(usize, usize)> = inst
                .ring
                .elements()
                .map(|x| (inst.p_a.apply(x), inst.p_b.apply(x)))
                .collect();
            pairs.sort();
            assert_eq!(pairs, subring_by_closure(&inst));
            inst.ring.check_axioms().unwrap();
        }
    }

    #[test]
    fn duplication_examples() {
        let d = dup(4, &[2]);
        assert_eq!(d.ring.size(), 8);
        assert_eq!(d.label, "dup(zmod(4); 2)");
        assert_eq!(maximal_ideals(&d.ring).len(), 1);
        assert_eq!(maximal_ideals(&d.ring)[0].len(), 4);
        assert_eq!(dup(8, &[2]).ring.size(), 32);
        let z = dup(5, &[0]);
        assert_eq!(z.ring.size(), 5);
        assert!(z.p_a.is_injective() && z.p_a.is_surjective());
    }

    #[test]
    fn amalgamation_over_idealization() {
        let z4 = zmod(4, &lim()).unwrap();
        let m = ideal_generated(&z4, &[2]).unwrap();
        let ext = trivial_extension(&z4, &vspace_over_residue(&z4, &m, 1, &lim()).unwrap(), &lim()).unwrap();
        let b = &ext.ring;
        // I × E with I = (2): generated by (2, 0) and (0, 1).
        let j = ideal_generated(b, &[4, 1]).unwrap();
        assert_eq!(j.len(), 4);
        let inst = amalgamate(&ext.embedding, &j, &lim()).unwrap();
        assert_eq!(inst.ring.size(), 16);
        assert_eq!(
            inst.label,
            "amalg(zmod(4), trivext(zmod(4); resfield(1)), embed; 1, 4)"
        );
        let h = hypothesis_report(&inst);
        assert!(h.j_squared_zero.holds());
        assert_eq!(h.cond_faj, Some(Outcome::Holds));
        assert!(h.local_setting());
    }

    #[test]
    fn embedding_meets_zero_times_module_trivially() {
        let z4 = zmod(4, &lim()).unwrap();
        let m = ideal_generated(&z4, &[2]).unwrap();
        let ext = trivial_extension(&z4, &vspace_over_residue(&z4, &m, 1, &lim()).unwrap(), &lim()).unwrap();
        let inst = amalgamate(&ext.embedding, &ext.ideal, &lim()).unwrap();
        let h = hypothesis_report(&inst);
        assert!(h.fa_meet_j_zero.holds());
        assert!(h.f_injective.holds());
        let (sub, _) = f_image_plus_j(&inst.f, &inst.j).unwrap();
        assert_eq!(sub.size(), 8);
        // Injective f with f(A) ∩ J = 0: p_B is an isomorphism onto f(A) + J.
        assert!(inst.p_b.is_injective());
        assert_eq!(inst.p_b.image().count_ones(..), sub.size());
    }

    #[test]
    fn j_squared_on_duplication() {
        let h = hypothesis_report(&dup(8, &[2]));
        assert_eq!(h.j_squared_zero, Outcome::Fails((2, 2)));
    }

    #[test]
    fn image_plus_j_for_identity() {
        let a = zmod(6, &lim()).unwrap();
        let j = ideal_generated(&a, &[2]).unwrap();
        let (sub, inc) = f_image_plus_j(&RingHom::identity(&a), &j).unwrap();
        assert_eq!(*sub, *a);
        assert!(inc.is_surjective());
    }

    #[test]
    fn distinguished() {
        let d = dup(4, &[2]);
        let (zj, mj) = distinguished_ideals(&d).unwrap();
        assert_eq!(zj.len(), 2);
        assert_eq!(mj.len(), 4);
        assert_eq!(maximal_ideals(&d.ring), vec![mj]);
        assert!(matches!(distinguished_ideals(&dup(6, &[2])), Err(Error::NotLocal(_))));
    }

    #[test]
    fn max_ideals_classified() {
        let d = dup(4, &[2]);
        let c = amalg_max_ideals(&d).unwrap();
        assert_eq!(c.len(), 1);
        assert!(matches!(c[0].kind, MaxIdealKind::FromA(_)));

        // Diagonal Z/2 → Z/2 × Z/2 with J = 0 × Z/2, which is not in Rad(B).
        let z2 = zmod(2, &lim()).unwrap();
        let b = product(&z2, &z2, &lim()).unwrap();
        let f = RingHom::new(z2.clone(), b.clone(), vec![0, 3]).unwrap();
        let j = Ideal::new(&b, [0, 1]).unwrap();
        let inst = amalgamate(&f, &j, &lim()).unwrap();
        let c = amalg_max_ideals(&inst).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().any(|m| matches!(m.kind, MaxIdealKind::FromB(_))));
        assert!(is_local(&inst.ring).is_none());
        assert!(!hypothesis_report(&inst).j_in_rad_b.holds());

        let z = dup(6, &[0]);
        assert_eq!(amalg_max_ideals(&z).unwrap().len(), 2);
    }

    #[test]
    fn max_ideals_match_lattice() {
        for inst in [dup(12, &[2]), dup(6, &[3]), dup(9, &[3])] {
            let lattice = all_ideals(&inst.ring, &lim()).unwrap();
            let mut direct: Vec<Ideal> = amalg_max_ideals(&inst).unwrap().into_iter().map(|c| c.ideal).collect();
            let mut from_lattice = maximal_ideals_from_lattice(&lattice);
            direct.sort();
            from_lattice.sort();
            assert_eq!(direct, from_lattice);
        }
    }

    #[test]
    fn encode_decode() {
        let d = dup(8, &[4]);
        for x in d.ring.elements() {
            let (a, j) = d.decode(x).unwrap();
            assert_eq!(d.encode(a, j).unwrap(), x);
            assert_eq!(d.p_a.apply(x), a);
        }
        assert!(d.encode(1, 2).is_err());
    }

    #[test]
    fn section_is_set_retraction() {
        let d = dup(8, &[2]);
        for a in d.a.elements() {
            let x = d.encode(a, 0).unwrap();
            assert_eq!(d.p_a.apply(x), a);
        }
    }
}
