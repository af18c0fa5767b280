//! Squarefree, distinct-degree and equal-degree factorization.

use std::cmp::Ordering;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Poly, PolyError};
use crate::gf::FieldElement;

/// `unit * prod(factor^multiplicity)`, factors monic irreducible and
/// sorted by degree, then by coefficient codes (constant first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, usize)>,
}

/// Sorted multiset of irreducible-factor degrees, with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FactorPattern {
    pub degrees: Vec<usize>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(&self.unit);
        for (f, mult) in &self.factors {
            for _ in 0..*mult {
                acc = acc.mul_unchecked(f);
            }
        }
        acc
    }

    pub fn pattern(&self) -> FactorPattern {
        let mut degrees: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat(f.degree().unwrap_or(0)).take(*m))
            .collect();
        degrees.sort_unstable();
        FactorPattern { degrees }
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

fn canonical_order(a: &Poly, b: &Poly) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.cmp(&b.coeffs))
}

pub(super) fn factor(f: &Poly, seed: u64) -> Result<Factorization, PolyError> {
    match f.degree() {
        None => return Err(PolyError::ZeroPolynomial),
        Some(0) => return Err(PolyError::ConstantPolynomial),
        _ => {}
    }
    let unit = f.leading_coeff();
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic) {
        for (block, d) in distinct_degree(&part) {
            let mut pieces = Vec::new();
            equal_degree(&block, d, &mut rng, &mut pieces);
            out.extend(pieces.into_iter().map(|g| (g, mult)));
        }
    }
    out.sort_by(|a, b| canonical_order(&a.0, &b.0));
    let mut merged: Vec<(Poly, usize)> = Vec::with_capacity(out.len());
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, mm)) if *h == g => *mm += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(Factorization {
        unit,
        factors: merged,
    })
}

/// Musser-style squarefree decomposition of a monic polynomial; returns
/// `(squarefree part, multiplicity)` pairs, including the p-th-root descent
/// for factors whose multiplicity is divisible by p.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd_unchecked(&f.derivative());
    let mut w = f.divmod_unchecked(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd_unchecked(&c);
        let z = w.divmod_unchecked(&y).0;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.divmod_unchecked(&w).0;
    }
    if !c.is_one() {
        // c is a p-th power: c(x) = r(x)^p
        let raw: Vec<u32> = c
            .raw()
            .iter()
            .step_by(p)
            .map(|&a| field.raw_pth_root(a))
            .collect();
        let root = Poly::from_raw(&field, raw);
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into `(product of all degree-d
/// irreducible factors, d)` blocks.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let q = field.order();
    let x = Poly::x(&field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem_unchecked(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod_unchecked(&BigUint::from(q), &rest);
        let g = rest.gcd_unchecked(&h.sub_unchecked(&x));
        if !g.is_one() {
            rest = rest.divmod_unchecked(&g).0;
            h = h.rem_unchecked(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest, deg));
        }
    }
    out
}

fn random_poly(f: &Poly, rng: &mut ChaCha8Rng) -> Poly {
    let field = f.field();
    let n = f.degree().unwrap_or(0);
    let q = field.q32();
    let raw = (0..n).map(|_| rng.gen_range(0..q)).collect();
    Poly::from_raw(field, raw)
}

/// Cantor–Zassenhaus splitting of a product of distinct degree-`d` monic
/// irreducibles.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(f.monic());
        return;
    }
    let field = f.field().clone();
    let p = field.characteristic();
    let k = field.degree() as usize;
    let q = BigUint::from(field.order());
    loop {
        let a = random_poly(f, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(kd-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..k * d {
                t = t.mul_unchecked(&t).rem_unchecked(f);
                acc = acc.add_unchecked(&t);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - 1u32) / 2u32;
            a.powmod_unchecked(&e, f).sub_unchecked(&Poly::one(&field))
        };
        let g = f.gcd_unchecked(&b);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.divmod_unchecked(&g).0;
            equal_degree(&g, d, rng, out);
            equal_degree(&h, d, rng, out);
            return;
        }
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin certificate for a monic `g` of degree d over GF(q):
/// `x^(q^d) = x mod g` and `gcd(g, x^(q^(d/l)) - x) = 1` for each prime `l | d`.
pub fn irreducibility_certificate(g: &Poly) -> bool {
    let d = match g.degree() {
        None | Some(0) => return false,
        Some(d) => d,
    };
    let field = g.field();
    let q = BigUint::from(field.order());
    let x = Poly::x(field);
    if x.powmod_unchecked(&q.pow(d as u32), g) != x.rem_unchecked(g) {
        return false;
    }
    prime_divisors(d).into_iter().all(|l| {
        let h = x.powmod_unchecked(&q.pow((d / l) as u32), g);
        g.gcd_unchecked(&h.sub_unchecked(&x)).is_one()
    })
}
