use std::collections::HashMap;
use std::sync::Arc;

use super::{parse, HomExpr, ModuleExpr, RingExpr};
use crate::amalgamation::{amalgamate, duplication, AmalgamationInstance};
use crate::error::{Error, Result};
use crate::ideal::ideal_generated;
use crate::module::{module_quotient, ring_as_module, submodule_generated, trivial_extension, vspace_over_residue, Module};
use crate::properties::is_local;
use crate::ring::{product, quotient, truncated_poly_algebra, zmod, Limits, Ring, RingHom, RingId};

/// Evaluates expressions, sharing one ring per distinct subexpression so
/// that repeated subterms denote the same object.
pub struct Evaluator {
    limits: Limits,
    rings: HashMap<String, Ring>,
    modules: HashMap<(RingId, String), Module>,
    instances: HashMap<String, AmalgamationInstance>,
    /// The projection into each quotient and the embedding into each
    /// idealization built so far, keyed by target.
    structure: HashMap<RingId, RingHom>,
}

impl Evaluator {
    pub fn new(limits: &Limits) -> Self {
        Evaluator {
            limits: *limits,
            rings: HashMap::new(),
            modules: HashMap::new(),
            instances: HashMap::new(),
            structure: HashMap::new(),
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn eval_text(&mut self, text: &str) -> Result<Ring> {
        let e = parse(text)?;
        self.ring(&e)
    }

    pub fn ring(&mut self, e: &RingExpr) -> Result<Ring> {
        let key = e.to_string();
        if let Some(r) = self.rings.get(&key) {
            return Ok(Arc::clone(r));
        }
        let lim = self.limits;
        let r = match e {
            RingExpr::Zmod(n) => zmod(usize::try_from(*n).unwrap_or(usize::MAX), &lim)?,
            RingExpr::Tpa { p, k, t } => {
                let k = usize::try_from(*k).unwrap_or(usize::MAX);
                let t = u32::try_from(*t).unwrap_or(u32::MAX);
                truncated_poly_algebra(*p, k, t, &lim)?
            }
            RingExpr::Product(a, b) => {
                let (a, b) = (self.ring(a)?, self.ring(b)?);
                product(&a, &b, &lim)?
            }
            RingExpr::Quot(a, gens) => {
                let a = self.ring(a)?;
                let i = ideal_generated(&a, gens)?;
                let (q, proj) = quotient(&a, &i)?;
                self.structure.insert(q.id(), proj);
                q
            }
            RingExpr::Trivext(a, m) => {
                let a = self.ring(a)?;
                let m = self.module(m, &a)?;
                let t = trivial_extension(&a, &m, &lim)?;
                self.structure.insert(t.ring.id(), t.embedding);
                t.ring
            }
            RingExpr::Dup(..) | RingExpr::Amalg { .. } => self.instance(e)?.ring,
        };
        self.rings.insert(key, Arc::clone(&r));
        Ok(r)
    }

    /// The amalgamation instance named by a `dup` or `amalg` expression.
    pub fn instance(&mut self, e: &RingExpr) -> Result<AmalgamationInstance> {
        let key = e.to_string();
        if let Some(i) = self.instances.get(&key) {
            return Ok(i.clone());
        }
        let lim = self.limits;
        let inst = match e {
            RingExpr::Dup(a, gens) => {
                let a = self.ring(a)?;
                let i = ideal_generated(&a, gens)?;
                duplication(&a, &i, &lim)?
            }
            RingExpr::Amalg { a, b, hom, gens } => {
                let a = self.ring(a)?;
                let b = self.ring(b)?;
                let f = self.resolve_into(hom, &b)?.rebase_source(&a)?;
                let j = ideal_generated(&b, gens)?;
                amalgamate(&f, &j, &lim)?
            }
            _ => {
                return Err(Error::Eval(format!(
                    "`{key}` is not an amalgamation; expected dup(..) or amalg(..)"
                )))
            }
        };
        self.instances.insert(key, inst.clone());
        Ok(inst)
    }

    pub fn module(&mut self, e: &ModuleExpr, ring: &Ring) -> Result<Module> {
        let key = (ring.id(), e.to_string());
        if let Some(m) = self.modules.get(&key) {
            return Ok(Arc::clone(m));
        }
        let m = match e {
            ModuleExpr::Regular => ring_as_module(ring),
            ModuleExpr::Resfield(k) => {
                let max = is_local(ring).ok_or_else(|| {
                    Error::Eval(format!("resfield needs a local ring; {} is not local", ring.label()))
                })?;
                let cap = self.limits.max_ring_size;
                let k = usize::try_from(*k)
                    .ok()
                    .filter(|&k| k <= 64)
                    .ok_or_else(|| Error::size_cap(format!("resfield({k})"), u128::MAX, cap))?;
                vspace_over_residue(ring, &max, k, &self.limits)?
            }
            ModuleExpr::Quotmod(inner, gens) => {
                let inner = self.module(inner, ring)?;
                let sub = submodule_generated(&inner, gens)?;
                module_quotient(&inner, &sub)?
            }
        };
        self.modules.insert(key, Arc::clone(&m));
        Ok(m)
    }

    /// The homomorphism `hom` names with the given target; its source is
    /// whatever the target's construction dictates.
    fn resolve_into(&self, hom: &HomExpr, target: &Ring) -> Result<RingHom> {
        let structural = |want: HomExpr, what: &str| -> Result<RingHom> {
            self.structure
                .get(&target.id())
                .filter(|h| h.expr() == Some(&want))
                .cloned()
                .ok_or_else(|| Error::Eval(format!("`{want}` needs a target built by {what}; got {}", target.label())))
        };
        match hom {
            HomExpr::Id => Ok(RingHom::identity(target)),
            HomExpr::Proj => structural(HomExpr::Proj, "quot(..)"),
            HomExpr::Embed => structural(HomExpr::Embed, "trivext(..)"),
            HomExpr::Compose(g, f) => {
                let g = self.resolve_into(g, target)?;
                let f = self.resolve_into(f, g.source())?;
                RingHom::compose(&g, &f)
            }
        }
    }
}
