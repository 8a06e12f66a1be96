//! Deterministic generator family of rings, modules, and amalgamation
//! instances. Not isomorphism-complete.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::amalgamation::{amalgamate, duplication, AmalgamationInstance};
use crate::error::{Error, Result};
use crate::ideal::{ideal_generated, ideal_power, Ideal};
use crate::lattice::ideals_up_to;
use crate::module::{ring_as_module, trivial_extension, vspace_over_residue, Module, TrivialExtension};
use crate::properties::is_local;
use crate::ring::{product, quotient, truncated_poly_algebra, zmod, Limits, Ring, RingHom};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogParams {
    pub max_zmod: usize,
    /// Largest truncated polynomial algebra.
    pub max_tpa: usize,
    pub max_product: usize,
    pub max_trivext: usize,
    /// Bound on `|A| * |J|` for instances.
    pub max_instance: usize,
    /// Largest `A` used as the source of a projection.
    pub max_proj_source: usize,
    pub limits: Limits,
}

impl Default for CatalogParams {
    fn default() -> Self {
        CatalogParams {
            max_zmod: 16,
            max_tpa: 64,
            max_product: 64,
            max_trivext: 256,
            max_instance: 256,
            max_proj_source: 16,
            limits: Limits::default(),
        }
    }
}

impl CatalogParams {
    fn check(&self) -> Result<()> {
        let biggest = self
            .max_tpa
            .max(self.max_product)
            .max(self.max_trivext)
            .max(self.max_instance);
        if biggest > self.limits.max_ring_size {
            return Err(Error::InvalidArgument(format!(
                "catalog bound {biggest} exceeds the ring size cap {}",
                self.limits.max_ring_size
            )));
        }
        if self.max_zmod == 0 {
            return Err(Error::InvalidArgument("max_zmod must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub params: CatalogParams,
    pub rings: Vec<Ring>,
    pub modules: Vec<Module>,
    pub instances: Vec<AmalgamationInstance>,
}

impl Catalog {
    pub fn local_rings_up_to(&self, size: usize) -> Vec<Ring> {
        self.rings
            .iter()
            .filter(|r| r.size() <= size && is_local(r).is_some())
            .cloned()
            .collect()
    }
}

struct RingList {
    rings: Vec<Ring>,
    seen: HashSet<String>,
}

impl RingList {
    fn push(&mut self, r: Ring) {
        if self.seen.insert(r.label().to_string()) {
            self.rings.push(r);
        }
    }
}

/// `C(n, k)` for small arguments.
fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Every proper nonzero principal ideal, deduplicated, in generator order.
fn proper_principals(ring: &Ring) -> Result<Vec<Ideal>> {
    let mut out: Vec<Ideal> = Vec::new();
    for g in ring.elements() {
        let i = ideal_generated(ring, &[g])?;
        if i.is_proper() && !i.is_zero() && !out.contains(&i) {
            out.push(i);
        }
    }
    Ok(out)
}

/// Idealizations of `base` by itself and by residue-field spaces of
/// dimension at most `max_dim`.
fn extensions_of(base: &Ring, max_dim: usize, params: &CatalogParams) -> Result<Vec<TrivialExtension>> {
    let lim = &params.limits;
    let mut modules = vec![ring_as_module(base)];
    if let Some(m) = is_local(base) {
        let q = base.size() / m.len();
        for k in 1..=max_dim {
            if base.size() * q.pow(k as u32) <= params.max_trivext {
                modules.push(vspace_over_residue(base, &m, k, lim)?);
            }
        }
    }
    modules
        .iter()
        .filter(|e| base.size() * e.size() <= params.max_trivext)
        .map(|e| trivial_extension(base, e, lim))
        .collect()
}

pub fn build_catalog(params: &CatalogParams) -> Result<Catalog> {
    params.check()?;
    let lim = &params.limits;
    let mut list = RingList {
        rings: Vec::new(),
        seen: HashSet::new(),
    };

    for n in 1..=params.max_zmod {
        list.push(zmod(n, lim)?);
    }
    for p in [2u64, 3, 5, 7] {
        for k in 1..=3usize {
            for t in 2..=6u32 {
                let m = binomial(k + t as usize - 1, k);
                if (p as u128).checked_pow(m as u32).is_some_and(|s| s <= params.max_tpa as u128) {
                    list.push(truncated_poly_algebra(p, k, t, lim)?);
                }
            }
        }
    }
    let bases = [
        zmod(2, lim)?,
        zmod(3, lim)?,
        zmod(4, lim)?,
        zmod(5, lim)?,
        zmod(8, lim)?,
        truncated_poly_algebra(2, 2, 2, lim)?,
    ];
    for i in 0..bases.len() {
        for j in i..bases.len() {
            if bases[i].size() * bases[j].size() <= params.max_product {
                list.push(product(&bases[i], &bases[j], lim)?);
            }
        }
    }

    let mut trivexts: Vec<TrivialExtension> = Vec::new();
    let small: Vec<Ring> = list
        .rings
        .iter()
        .filter(|r| r.size() >= 2 && r.size() <= 16)
        .cloned()
        .collect();
    for base in &small {
        trivexts.extend(extensions_of(base, 2, params)?);
    }
    let second: Vec<Ring> = trivexts
        .iter()
        .map(|t| t.ring.clone())
        .filter(|r| r.size() <= 16 && is_local(r).is_some())
        .collect();
    for base in &second {
        trivexts.extend(extensions_of(base, 1, params)?);
    }
    let mut modules = Vec::new();
    for t in &trivexts {
        list.push(t.ring.clone());
        if let crate::ring::Encoding::TrivialExtension { module, .. } = t.ring.encoding() {
            modules.push(module.clone());
        }
    }

    let mid: Vec<Ring> = list
        .rings
        .iter()
        .filter(|r| r.size() > 16 && r.size() <= 64)
        .cloned()
        .collect();
    for r in &mid {
        if let Some(m) = is_local(r) {
            let m2 = ideal_power(r, &m, 2)?;
            if !m2.is_zero() && m2 != m {
                list.push(quotient(r, &m2)?.0);
            }
        }
    }

    let instances = build_instances(&list.rings, &trivexts, params)?;
    Ok(Catalog {
        params: *params,
        rings: list.rings,
        modules,
        instances,
    })
}

enum Task {
    Dup(Ring),
    Hom(RingHom),
}

fn build_instances(
    rings: &[Ring],
    trivexts: &[TrivialExtension],
    params: &CatalogParams,
) -> Result<Vec<AmalgamationInstance>> {
    let lim = &params.limits;
    let mut tasks = Vec::new();
    for a in rings.iter().filter(|r| r.size() >= 2) {
        tasks.push(Task::Dup(a.clone()));
    }
    for t in trivexts {
        tasks.push(Task::Hom(t.embedding.clone()));
    }
    for a in rings
        .iter()
        .filter(|r| r.size() >= 2 && r.size() <= params.max_proj_source)
    {
        for i in proper_principals(a)? {
            let (b, proj) = quotient(a, &i)?;
            tasks.push(Task::Hom(proj.clone()));
            if is_local(a).is_some() {
                let m = is_local(&b).expect("quotient of a local ring is local");
                let e = vspace_over_residue(&b, &m, 1, lim)?;
                let t = trivial_extension(&b, &e, lim)?;
                tasks.push(Task::Hom(RingHom::compose(&t.embedding, &proj)?));
            }
        }
    }
    let per_task: Vec<Result<Vec<AmalgamationInstance>>> = tasks
        .par_iter()
        .map(|task| {
            let (source, target) = match task {
                Task::Dup(a) => (a, a),
                Task::Hom(f) => (f.source(), f.target()),
            };
            let bound = params.max_instance / source.size();
            let mut out = Vec::new();
            for j in ideals_up_to(target, bound, lim)? {
                if !j.is_proper() {
                    continue;
                }
                out.push(match task {
                    Task::Dup(a) => duplication(a, &j, lim)?,
                    Task::Hom(f) => amalgamate(f, &j, lim)?,
                });
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_task {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 2), 3);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 1), 5);
    }

    #[test]
    fn rejects_inconsistent_caps() {
        let p = CatalogParams {
            max_trivext: 8192,
            ..CatalogParams::default()
        };
        assert!(build_catalog(&p).is_err());
    }
}
