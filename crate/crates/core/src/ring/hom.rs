use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::Ring;
use crate::error::{Error, Result};
use crate::ideal::Ideal;

/// The canonical homomorphisms the expression language can name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HomExpr {
    Id,
    Proj,
    Embed,
    Compose(Box<HomExpr>, Box<HomExpr>),
}

impl fmt::Display for HomExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomExpr::Id => write!(f, "id"),
            HomExpr::Proj => write!(f, "proj"),
            HomExpr::Embed => write!(f, "embed"),
            HomExpr::Compose(g, h) => write!(f, "compose({g}, {h})"),
        }
    }
}

/// A unital ring homomorphism, validated exhaustively when built.
#[derive(Clone)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    map: Vec<u32>,
    expr: Option<HomExpr>,
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingHom")
            .field("source", &self.source.label())
            .field("target", &self.target.label())
            .field("expr", &self.expr)
            .finish()
    }
}

impl RingHom {
    /// Validates `map` as a unital ring homomorphism; failures carry a
    /// witness.
    pub fn new(source: Ring, target: Ring, map: Vec<u32>) -> Result<Self> {
        Self::with_expr(source, target, map, None)
    }

    pub(crate) fn with_expr(
        source: Ring,
        target: Ring,
        map: Vec<u32>,
        expr: Option<HomExpr>,
    ) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::InvalidArgument(format!(
                "hom table has {} entries, source has {} elements",
                map.len(),
                source.size()
            )));
        }
        for &v in &map {
            target.check_index(v as usize)?;
        }
        let f = |x: usize| map[x] as usize;
        let bad = |axiom, witness| Err(Error::NotAHom { axiom, witness });
        if f(source.zero()) != target.zero() {
            return bad("f(0) = 0", vec![source.zero()]);
        }
        if f(source.one()) != target.one() {
            return bad("f(1) = 1", vec![source.one()]);
        }
        for x in source.elements() {
            for y in x..source.size() {
                if f(source.add(x, y)) != target.add(f(x), f(y)) {
                    return bad("f(x+y) = f(x)+f(y)", vec![x, y]);
                }
                if f(source.mul(x, y)) != target.mul(f(x), f(y)) {
                    return bad("f(xy) = f(x)f(y)", vec![x, y]);
                }
            }
        }
        Ok(RingHom {
            source,
            target,
            map,
            expr,
        })
    }

    pub fn identity(ring: &Ring) -> Self {
        RingHom {
            source: Arc::clone(ring),
            target: Arc::clone(ring),
            map: (0..ring.size() as u32).collect(),
            expr: Some(HomExpr::Id),
        }
    }

    /// `g ∘ f`; requires `f`'s target to be `g`'s source.
    pub fn compose(g: &RingHom, f: &RingHom) -> Result<Self> {
        if f.target.id() != g.source.id() {
            return Err(Error::InvalidArgument(format!(
                "cannot compose: {} is not {}",
                f.target.label(),
                g.source.label()
            )));
        }
        let map = f.map.iter().map(|&x| g.map[x as usize]).collect();
        let expr = match (&g.expr, &f.expr) {
            (Some(a), Some(b)) => Some(HomExpr::Compose(Box::new(a.clone()), Box::new(b.clone()))),
            _ => None,
        };
        Ok(RingHom {
            source: Arc::clone(&f.source),
            target: Arc::clone(&g.target),
            map,
            expr,
        })
    }

    /// The same table re-attached to a source ring with identical tables.
    pub(crate) fn rebase_source(&self, source: &Ring) -> Result<Self> {
        if **source != *self.source {
            return Err(Error::Eval(format!(
                "homomorphism source {} does not match {}",
                self.source.label(),
                source.label()
            )));
        }
        Ok(RingHom {
            source: Arc::clone(source),
            ..self.clone()
        })
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn expr(&self) -> Option<&HomExpr> {
        self.expr.as_ref()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn kernel(&self) -> Ideal {
        let mut set = FixedBitSet::with_capacity(self.source.size());
        for x in self.source.elements() {
            if self.apply(x) == self.target.zero() {
                set.insert(x);
            }
        }
        Ideal::from_set(&self.source, set)
    }

    pub fn image(&self) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.target.size());
        for &y in &self.map {
            set.insert(y as usize);
        }
        set
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().count_ones(..) == self.target.size()
    }

    pub fn same_map(&self, other: &RingHom) -> bool {
        self.source.id() == other.source.id()
            && self.target.id() == other.target.id()
            && self.map == other.map
    }
}
