//! Finite modules over finite rings, and trivial ring extensions
//! (Nagata idealization).

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::lattice::maximal_ideals;
use crate::ring::{join_indices, quotient, Encoding, FiniteRing, HomExpr, Limits, Ring, RingHom};

pub type Module = Arc<FiniteModule>;

#[derive(Clone, Debug)]
pub enum ModuleEncoding {
    /// The ring acting on itself; module index = ring index.
    Regular,
    /// `(A/m)^dim`; index `sum c_i q^i` with `c_i` a residue-field index and
    /// `q = |A/m|`.
    ResidueSpace { residue: Ring, dim: usize },
    /// Cosets of a submodule, indexed by ascending minimal representative.
    Quotient { parent: Module, reps: Vec<usize> },
}

pub struct FiniteModule {
    ring: Ring,
    size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    /// `action[a * size + e] = a · e`.
    action: Vec<u32>,
    zero: usize,
    label: String,
    encoding: ModuleEncoding,
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteModule")
            .field("ring", &self.ring.label())
            .field("label", &self.label)
            .field("size", &self.size)
            .finish()
    }
}

impl FiniteModule {
    #[allow(clippy::too_many_arguments)]
    fn from_fns(
        ring: &Ring,
        size: usize,
        zero: usize,
        label: String,
        encoding: ModuleEncoding,
        add: impl Fn(usize, usize) -> usize,
        neg: impl Fn(usize) -> usize,
        act: impl Fn(usize, usize) -> usize,
    ) -> Module {
        let mut add_t = vec![0u32; size * size];
        for x in 0..size {
            for y in 0..size {
                add_t[x * size + y] = add(x, y) as u32;
            }
        }
        let mut action = vec![0u32; ring.size() * size];
        for a in ring.elements() {
            for e in 0..size {
                action[a * size + e] = act(a, e) as u32;
            }
        }
        Arc::new(FiniteModule {
            ring: Arc::clone(ring),
            size,
            add: add_t,
            neg: (0..size).map(|x| neg(x) as u32).collect(),
            action,
            zero,
            label,
            encoding,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn encoding(&self) -> &ModuleEncoding {
        &self.encoding
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size + y] as usize
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    #[inline]
    pub fn act(&self, a: usize, e: usize) -> usize {
        self.action[a * self.size + e] as usize
    }

    pub fn describe(&self, e: usize) -> String {
        match &self.encoding {
            ModuleEncoding::Regular => self.ring.describe(e),
            ModuleEncoding::ResidueSpace { residue, dim } => {
                let q = residue.size();
                let mut rest = e;
                let mut parts = Vec::with_capacity(*dim);
                for _ in 0..*dim {
                    parts.push(residue.describe(rest % q));
                    rest /= q;
                }
                format!("<{}>", parts.join(", "))
            }
            ModuleEncoding::Quotient { parent, reps } => format!("[{}]", parent.describe(reps[e])),
        }
    }

    /// Abelian-group and action axioms, checked exhaustively.
    pub fn check_axioms(&self) -> Result<()> {
        let r = &self.ring;
        let n = self.size;
        let fail = |axiom, witness| Err(Error::ModuleAxiom { axiom, witness });
        for x in 0..n {
            if self.add(x, self.zero) != x {
                return fail("additive identity", vec![x]);
            }
            if self.add(x, self.neg(x)) != self.zero {
                return fail("additive inverse", vec![x]);
            }
            if self.act(r.one(), x) != x {
                return fail("1·e = e", vec![x]);
            }
            if self.act(r.zero(), x) != self.zero {
                return fail("0·e = 0", vec![x]);
            }
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) {
                    return fail("additive commutativity", vec![x, y]);
                }
                for z in 0..n {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return fail("additive associativity", vec![x, y, z]);
                    }
                }
                for a in r.elements() {
                    if self.act(a, self.add(x, y)) != self.add(self.act(a, x), self.act(a, y)) {
                        return fail("a·(e+e') = a·e + a·e'", vec![a, x, y]);
                    }
                }
            }
            for a in r.elements() {
                for b in r.elements() {
                    if self.act(r.add(a, b), x) != self.add(self.act(a, x), self.act(b, x)) {
                        return fail("(a+b)·e = a·e + b·e", vec![a, b, x]);
                    }
                    if self.act(r.mul(a, b), x) != self.act(a, self.act(b, x)) {
                        return fail("(ab)·e = a·(b·e)", vec![a, b, x]);
                    }
                }
            }
        }
        Ok(())
    }
}

/// The ring acting on itself by multiplication.
pub fn ring_as_module(ring: &Ring) -> Module {
    FiniteModule::from_fns(
        ring,
        ring.size(),
        ring.zero(),
        "regular".into(),
        ModuleEncoding::Regular,
        |x, y| ring.add(x, y),
        |x| ring.neg(x),
        |a, e| ring.mul(a, e),
    )
}

/// `(A/m)^k` with `A` acting through `A → A/m`, so `m E = 0`.
pub fn vspace_over_residue(ring: &Ring, m: &Ideal, k: usize, limits: &Limits) -> Result<Module> {
    m.check_ring(ring)?;
    if !maximal_ideals(ring).contains(m) {
        return Err(Error::NotMaximal(ring.label().to_string()));
    }
    let (field, proj) = quotient(ring, m)?;
    let q = field.size();
    let size = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    let size = limits.check_size(&format!("resfield({k}) over {}", ring.label()), size)?;
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; k];
        for c in d.iter_mut() {
            *c = x % q;
            x /= q;
        }
        d
    };
    let undigits = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * q + c);
    let coords: Vec<Vec<usize>> = (0..size).map(digits).collect();
    let zero = undigits(&vec![field.zero(); k]);
    Ok(FiniteModule::from_fns(
        ring,
        size,
        zero,
        format!("resfield({k})"),
        ModuleEncoding::ResidueSpace {
            residue: Arc::clone(&field),
            dim: k,
        },
        |x, y| {
            let s: Vec<usize> = coords[x].iter().zip(&coords[y]).map(|(a, b)| field.add(*a, *b)).collect();
            undigits(&s)
        },
        |x| {
            let s: Vec<usize> = coords[x].iter().map(|a| field.neg(*a)).collect();
            undigits(&s)
        },
        |a, e| {
            let pa = proj.apply(a);
            let s: Vec<usize> = coords[e].iter().map(|c| field.mul(pa, *c)).collect();
            undigits(&s)
        },
    ))
}

/// Submodule generated by `gens`, as a sorted member list.
pub fn submodule_generated(module: &FiniteModule, gens: &[usize]) -> Result<Vec<usize>> {
    let n = module.size();
    let mut span = FixedBitSet::with_capacity(n);
    span.insert(module.zero());
    for &g in gens {
        if g >= n {
            return Err(Error::OutOfRange { index: g, size: n });
        }
        if span.contains(g) {
            continue;
        }
        let mut cyclic = FixedBitSet::with_capacity(n);
        for a in module.ring().elements() {
            cyclic.insert(module.act(a, g));
        }
        let base: Vec<usize> = span.ones().collect();
        for x in cyclic.ones().collect::<Vec<_>>() {
            if !span.contains(x) {
                for &y in &base {
                    span.insert(module.add(x, y));
                }
            }
        }
    }
    Ok(span.ones().collect())
}

/// `M / S`, cosets indexed by ascending minimal representative.
pub fn module_quotient(module: &Module, sub: &[usize]) -> Result<Module> {
    let n = module.size();
    let mut set = FixedBitSet::with_capacity(n);
    for &x in sub {
        if x >= n {
            return Err(Error::OutOfRange { index: x, size: n });
        }
        set.insert(x);
    }
    if !set.contains(module.zero()) {
        return Err(Error::NotASubmodule("does not contain zero".into()));
    }
    for x in set.ones() {
        for y in set.ones() {
            if !set.contains(module.add(x, y)) {
                return Err(Error::NotASubmodule(format!("{x} + {y} escapes")));
            }
        }
        for a in module.ring().elements() {
            if !set.contains(module.act(a, x)) {
                return Err(Error::NotASubmodule(format!("{a} · {x} escapes")));
            }
        }
    }
    let members: Vec<usize> = set.ones().collect();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class[x] == usize::MAX {
            for &s in &members {
                class[module.add(x, s)] = reps.len();
            }
            reps.push(x);
        }
    }
    let gens = greedy_generators(module, &set);
    let label = format!("quotmod({}; {})", module.label(), join_indices(&gens));
    Ok(FiniteModule::from_fns(
        module.ring(),
        reps.len(),
        class[module.zero()],
        label,
        ModuleEncoding::Quotient {
            parent: Arc::clone(module),
            reps: reps.clone(),
        },
        |x, y| class[module.add(reps[x], reps[y])],
        |x| class[module.neg(reps[x])],
        |a, e| class[module.act(a, reps[e])],
    ))
}

fn greedy_generators(module: &FiniteModule, target: &FixedBitSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span: Vec<usize> = vec![module.zero()];
    for x in target.ones() {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = submodule_generated(module, &gens).expect("members are in range");
            if span.len() == target.count_ones(..) {
                break;
            }
        }
    }
    gens
}

/// `A ⋉ E` with its embedding `a ↦ (a, 0)` and the ideal `0 × E`.
#[derive(Clone, Debug)]
pub struct TrivialExtension {
    pub ring: Ring,
    pub embedding: RingHom,
    pub ideal: Ideal,
}

/// Idealization: pairs `(a, e)` with `(a,e)(a',e') = (aa', a·e' + a'·e)`,
/// encoded as `a * |E| + e`.
pub fn trivial_extension(ring: &Ring, module: &Module, limits: &Limits) -> Result<TrivialExtension> {
    if module.ring().id() != ring.id() {
        return Err(Error::TagMismatch);
    }
    let label = format!("trivext({}; {})", ring.label(), module.label());
    let ne = module.size();
    let n = limits.check_size(&label, ring.size() as u128 * ne as u128)?;
    let ext = FiniteRing::from_fns(
        n,
        ring.zero() * ne + module.zero(),
        ring.one() * ne + module.zero(),
        label,
        Encoding::TrivialExtension {
            base: Arc::clone(ring),
            module: Arc::clone(module),
        },
        |x, y| ring.add(x / ne, y / ne) * ne + module.add(x % ne, y % ne),
        |x, y| {
            let (a, e) = (x / ne, x % ne);
            let (b, f) = (y / ne, y % ne);
            ring.mul(a, b) * ne + module.add(module.act(a, f), module.act(b, e))
        },
        |x| ring.neg(x / ne) * ne + module.neg(x % ne),
    );
    let map = ring
        .elements()
        .map(|a| (a * ne + module.zero()) as u32)
        .collect();
    let embedding = RingHom::with_expr(Arc::clone(ring), Arc::clone(&ext), map, Some(HomExpr::Embed))?;
    let mut set = FixedBitSet::with_capacity(n);
    for e in 0..ne {
        set.insert(ring.zero() * ne + e);
    }
    let ideal = Ideal::from_set(&ext, set);
    Ok(TrivialExtension {
        ring: ext,
        embedding,
        ideal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal_product;
    use crate::lattice::maximal_ideals;
    use crate::ring::zmod;

    fn lim() -> Limits {
        Limits::default()
    }

    fn z4() -> Ring {
        zmod(4, &lim()).unwrap()
    }

    #[test]
    fn regular_module() {
        let r = z4();
        let m = ring_as_module(&r);
        assert_eq!(m.act(2, 3), 2);
        for a in 0..4 {
            for e in 0..4 {
                assert_eq!(m.act(a, e), r.mul(a, e));
            }
        }
        m.check_axioms().unwrap();
        let z1 = zmod(1, &lim()).unwrap();
        assert_eq!(ring_as_module(&z1).size(), 1);
    }

    #[test]
    fn residue_space() {
        let r = z4();
        let m = Ideal::new(&r, [0, 2]).unwrap();
        let e = vspace_over_residue(&r, &m, 1, &lim()).unwrap();
        assert_eq!(e.size(), 2);
        assert_eq!(e.act(2, 1), e.zero());
        e.check_axioms().unwrap();
        let e2 = vspace_over_residue(&r, &m, 2, &lim()).unwrap();
        assert_eq!(e2.size(), 4);
        let images: std::collections::BTreeSet<usize> = (0..4).map(|y| e2.act(3, y)).collect();
        assert_eq!(images.len(), 4);
        assert!(vspace_over_residue(&r, &Ideal::zero(&r), 1, &lim()).is_err());
    }

    #[test]
    fn submodules_and_quotients() {
        let r = z4();
        let m = ring_as_module(&r);
        assert_eq!(submodule_generated(&m, &[2]).unwrap(), vec![0, 2]);
        let q = module_quotient(&m, &[0, 2]).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(q.label(), "quotmod(regular; 2)");
        q.check_axioms().unwrap();
        let all: Vec<usize> = (0..4).collect();
        assert_eq!(module_quotient(&m, &all).unwrap().size(), 1);
        assert!(module_quotient(&m, &[0, 1]).is_err());
    }

    #[test]
    fn idealization_by_residue_field() {
        let r = z4();
        let m = Ideal::new(&r, [0, 2]).unwrap();
        let e = vspace_over_residue(&r, &m, 1, &lim()).unwrap();
        let t = trivial_extension(&r, &e, &lim()).unwrap();
        assert_eq!(t.ring.size(), 8);
        t.ring.check_axioms().unwrap();
        assert!(ideal_product(&t.ring, &t.ideal, &t.ideal).unwrap().is_zero());
        assert_eq!(t.ring.mul(1, 1), t.ring.zero());
        assert!(t.embedding.is_injective());
        assert_eq!(t.ring.label(), "trivext(zmod(4); resfield(1))");
    }

    #[test]
    fn idealization_by_regular_module() {
        let r = z4();
        let t = trivial_extension(&r, &ring_as_module(&r), &lim()).unwrap();
        assert_eq!(t.ring.size(), 16);
        let max = maximal_ideals(&t.ring);
        assert_eq!(max.len(), 1);
        assert_eq!(max[0].len(), 8);
        // m × A: first coordinate in {0, 2}.
        assert!(max[0].iter().all(|x| x / 4 == 0 || x / 4 == 2));
    }

    #[test]
    fn module_ring_mismatch() {
        let r = z4();
        let s = z4();
        assert_eq!(
            trivial_extension(&r, &ring_as_module(&s), &lim()).unwrap_err(),
            Error::TagMismatch
        );
    }
}
