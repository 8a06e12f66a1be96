use std::fmt;
use std::sync::Arc;

use super::{join_indices, Encoding, FiniteRing, HomExpr, Limits, Ring, RingHom};
use crate::error::{Error, Result};
use crate::ideal::Ideal;

/// The ring of integers modulo `n`; index `i` is the residue `i`.
pub fn zmod(n: usize, limits: &Limits) -> Result<Ring> {
    if n == 0 {
        return Err(Error::InvalidArgument("zmod: n must be >= 1".into()));
    }
    let n = limits.check_size(&format!("zmod({n})"), n as u128)?;
    Ok(FiniteRing::from_fns(
        n,
        0,
        1 % n,
        format!("zmod({n})"),
        Encoding::Residues,
        |a, b| (a + b) % n,
        |a, b| (a * b) % n,
        |a| (n - a) % n,
    ))
}

/// A monomial `x_1^e_1 ... x_k^e_k` of a truncated polynomial algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let k = self.0.len();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if k <= 3 {
                write!(f, "{}", ["x", "y", "z"][i])?;
            } else {
                write!(f, "x{}", i + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Monomials of degree `< t` in `k` variables, graded-lexicographic:
/// ascending total degree, and within a degree the exponent vectors in
/// decreasing lexicographic order (so `x^2, xy, y^2`).
fn graded_lex_monomials(k: usize, t: u32) -> Vec<Monomial> {
    fn rec(k: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == k - 1 {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(k, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..t {
        rec(k, d, &mut Vec::new(), &mut out);
    }
    out
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Monomials of degree below `t` in `k` variables, `C(k + t - 1, k)`;
/// `None` once the count passes 64, where every carrier is over any cap.
fn monomial_count(k: usize, t: u32) -> Option<u128> {
    let mut c: u128 = 1;
    for i in 1..t as u128 {
        c = c * (k as u128 + i) / i;
        if c > 64 {
            return None;
        }
    }
    Some(c)
}

/// `F_p[x_1..x_k] / (x_1..x_k)^t`.
///
/// The carrier index of `sum c_i m_i` is `sum c_i p^i`, where `m_i` runs
/// over the graded-lexicographic monomial list (so `1` is index 1 and the
/// first variable is index `p`).
pub fn truncated_poly_algebra(p: u64, k: usize, t: u32, limits: &Limits) -> Result<Ring> {
    if p as u128 > limits.max_ring_size as u128 {
        return Err(Error::size_cap(format!("tpa({p}, {k}, {t})"), p as u128, limits.max_ring_size));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 || t == 0 {
        return Err(Error::InvalidArgument(
            "tpa: variable count and truncation order must be >= 1".into(),
        ));
    }
    let label = format!("tpa({p}, {k}, {t})");
    let size = match monomial_count(k, t) {
        Some(m) => (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX),
        None => u128::MAX,
    };
    let n = limits.check_size(&label, size)?;
    let monomials = graded_lex_monomials(k, t);
    let m = monomials.len();
    let p = p as usize;

    let index_of = |exps: &[u32]| monomials.iter().position(|mono| mono.0 == exps);
    let mut mono_mul = vec![None; m * m];
    for i in 0..m {
        for j in 0..m {
            let e: Vec<u32> = monomials[i]
                .0
                .iter()
                .zip(&monomials[j].0)
                .map(|(a, b)| a + b)
                .collect();
            mono_mul[i * m + j] = index_of(&e);
        }
    }
    let decode = |mut x: usize| -> Vec<usize> {
        let mut c = vec![0; m];
        for digit in c.iter_mut() {
            *digit = x % p;
            x /= p;
        }
        c
    };
    let encode = |c: &[usize]| -> usize { c.iter().rev().fold(0, |acc, &d| acc * p + d) };
    let coeffs: Vec<Vec<usize>> = (0..n).map(decode).collect();

    Ok(FiniteRing::from_fns(
        n,
        0,
        if n == 1 { 0 } else { 1 },
        label,
        Encoding::Monomials {
            p: p as u32,
            monomials: monomials.clone(),
        },
        |a, b| {
            let s: Vec<usize> = coeffs[a]
                .iter()
                .zip(&coeffs[b])
                .map(|(x, y)| (x + y) % p)
                .collect();
            encode(&s)
        },
        |a, b| {
            let mut s = vec![0; m];
            for (i, &x) in coeffs[a].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in coeffs[b].iter().enumerate() {
                    if let Some(ij) = mono_mul[i * m + j] {
                        s[ij] = (s[ij] + x * y) % p;
                    }
                }
            }
            encode(&s)
        },
        |a| {
            let s: Vec<usize> = coeffs[a].iter().map(|x| (p - x) % p).collect();
            encode(&s)
        },
    ))
}

/// Componentwise product; the pair `(a, b)` has index `a * |B| + b`.
pub fn product(a: &Ring, b: &Ring, limits: &Limits) -> Result<Ring> {
    let label = format!("product({}, {})", a.label(), b.label());
    let n = limits.check_size(&label, a.size() as u128 * b.size() as u128)?;
    let nb = b.size();
    Ok(FiniteRing::from_fns(
        n,
        a.zero() * nb + b.zero(),
        a.one() * nb + b.one(),
        label,
        Encoding::Product {
            left: Arc::clone(a),
            right: Arc::clone(b),
        },
        |x, y| a.add(x / nb, y / nb) * nb + b.add(x % nb, y % nb),
        |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb),
        |x| a.neg(x / nb) * nb + b.neg(x % nb),
    ))
}

/// `A / I`. Each coset is represented by its minimal member; the quotient
/// index `k` is the `k`-th smallest representative. Returns the canonical
/// projection alongside.
pub fn quotient(a: &Ring, ideal: &Ideal) -> Result<(Ring, RingHom)> {
    ideal.check_ring(a)?;
    let n = a.size();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(x);
        for i in ideal.iter() {
            class[a.add(x, i)] = k;
        }
    }
    let label = format!("quot({}; {})", a.label(), join_indices(&ideal.generators(a)));
    let q = FiniteRing::from_fns(
        reps.len(),
        class[a.zero()],
        class[a.one()],
        label,
        Encoding::Quotient {
            parent: Arc::clone(a),
            reps: reps.clone(),
        },
        |x, y| class[a.add(reps[x], reps[y])],
        |x, y| class[a.mul(reps[x], reps[y])],
        |x| class[a.neg(reps[x])],
    );
    let map = class.iter().map(|&c| c as u32).collect();
    let proj = RingHom::with_expr(Arc::clone(a), Arc::clone(&q), map, Some(HomExpr::Proj))?;
    Ok((q, proj))
}
