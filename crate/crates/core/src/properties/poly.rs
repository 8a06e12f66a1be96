//! Polynomials over a finite ring and the brute-force content oracle.

use std::collections::HashMap;

use rayon::prelude::*;

use super::Outcome;
use crate::error::{Error, Result};
use crate::ideal::{ideal_generated, ideal_product, ideal_sum, Ideal};
use crate::lattice::all_ideals;
use crate::ring::{FiniteRing, Limits, RingId};

/// Coefficients in ascending degree; no trailing zeros, so the zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingId,
    coeffs: Vec<usize>,
}

impl Polynomial {
    pub fn new(ring: &FiniteRing, mut coeffs: Vec<usize>) -> Result<Self> {
        for &c in &coeffs {
            ring.check_index(c)?;
        }
        while coeffs.last() == Some(&ring.zero()) {
            coeffs.pop();
        }
        Ok(Polynomial {
            ring: ring.id(),
            coeffs,
        })
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients as `[c0, c1, ...]` carrier indices.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    fn check(&self, ring: &FiniteRing) -> Result<()> {
        if self.ring == ring.id() {
            Ok(())
        } else {
            Err(Error::TagMismatch)
        }
    }
}

pub fn poly_mul(ring: &FiniteRing, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.check(ring)?;
    g.check(ring)?;
    if f.coeffs.is_empty() || g.coeffs.is_empty() {
        return Polynomial::new(ring, Vec::new());
    }
    let mut out = vec![ring.zero(); f.coeffs.len() + g.coeffs.len() - 1];
    for (i, &a) in f.coeffs.iter().enumerate() {
        for (j, &b) in g.coeffs.iter().enumerate() {
            out[i + j] = ring.add(out[i + j], ring.mul(a, b));
        }
    }
    Polynomial::new(ring, out)
}

/// The ideal generated by the coefficients.
pub fn content(ring: &FiniteRing, f: &Polynomial) -> Result<Ideal> {
    f.check(ring)?;
    ideal_generated(ring, &f.coeffs)
}

/// Searches every pair of polynomials of degree at most `dmax` for a
/// violation of `c(fg) = c(f)c(g)`, in canonical order (coefficient vectors
/// read as base-`|A|` numbers, constant term least significant, `f <= g`).
///
/// A failure is a genuine counterexample to the Gaussian property; a pass
/// only says no counterexample exists up to that degree.
pub fn gaussian_content_oracle(
    ring: &FiniteRing,
    dmax: usize,
    limits: &Limits,
) -> Result<Outcome<(Polynomial, Polynomial)>> {
    let n = ring.size();
    let per_poly = (n as u128).checked_pow(dmax as u32 + 1).unwrap_or(u128::MAX);
    let pairs = per_poly.saturating_mul(per_poly);
    if pairs > limits.oracle_pair_budget as u128 {
        return Err(Error::OracleBudget {
            pairs,
            budget: limits.oracle_pair_budget,
        });
    }
    let npoly = per_poly as usize;
    let len = dmax + 1;

    let ideals = all_ideals(ring, limits)?;
    let k = ideals.len();
    let index: HashMap<&Ideal, usize> = ideals.iter().enumerate().map(|(i, id)| (id, i)).collect();
    let id_of = |ideal: &Ideal| -> usize { index[ideal] };
    let mut principal_id = vec![0usize; n];
    for x in ring.elements() {
        principal_id[x] = id_of(&ideal_generated(ring, &[x])?);
    }
    let mut sum_t = vec![0usize; k * k];
    let mut prod_t = vec![0usize; k * k];
    for i in 0..k {
        for j in 0..k {
            sum_t[i * k + j] = id_of(&ideal_sum(ring, &ideals[i], &ideals[j])?);
            prod_t[i * k + j] = id_of(&ideal_product(ring, &ideals[i], &ideals[j])?);
        }
    }
    let zero_id = id_of(&Ideal::zero(ring));
    let content_of = |coeffs: &[usize]| -> usize {
        coeffs
            .iter()
            .fold(zero_id, |acc, &c| sum_t[acc * k + principal_id[c]])
    };
    let decode = |mut x: usize| -> Vec<usize> {
        let mut c = vec![0; len];
        for d in c.iter_mut() {
            *d = x % n;
            x /= n;
        }
        c
    };
    let polys: Vec<Vec<usize>> = (0..npoly).map(decode).collect();
    let contents: Vec<usize> = polys.iter().map(|p| content_of(p)).collect();

    let found = (0..npoly).into_par_iter().find_map_first(|fi| {
        let f = &polys[fi];
        let mut prod = vec![ring.zero(); 2 * len - 1];
        for gi in fi..npoly {
            let g = &polys[gi];
            prod.iter_mut().for_each(|c| *c = ring.zero());
            for (i, &a) in f.iter().enumerate() {
                for (j, &b) in g.iter().enumerate() {
                    prod[i + j] = ring.add(prod[i + j], ring.mul(a, b));
                }
            }
            if content_of(&prod) != prod_t[contents[fi] * k + contents[gi]] {
                return Some((fi, gi));
            }
        }
        None
    });
    Ok(match found {
        None => Outcome::Holds,
        Some((fi, gi)) => Outcome::Fails((
            Polynomial::new(ring, polys[fi].clone())?,
            Polynomial::new(ring, polys[gi].clone())?,
        )),
    })
}
