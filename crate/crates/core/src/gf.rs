//! Exact arithmetic in finite fields GF(p^k) = GF(p)[w]/(modulus).
//!
//! Elements are stored as a single integer code: the coordinate vector
//! `(c0, c1, ..., c_{k-1})` in the power basis of `w` read as base-`p`
//! digits, constant coordinate least significant. Multiplication goes
//! through discrete log / exponent tables built once per field.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("modulus must be monic of degree {expected}, got {found} coefficients")]
    DegreeMismatch { expected: u32, found: usize },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {0} exceeds the supported maximum")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Default moduli, constant coefficient first.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (5, 2, &[2, 1, 1]),
];

struct FieldInner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for a fixed primitive element g, i in [0, q-1).
    exp: Vec<u32>,
    /// log[x] for x != 0; log[0] unused.
    log: Vec<u32>,
    /// p^i for i in [0, k].
    place: Vec<u32>,
}

/// A finite field GF(p^k) with an explicit irreducible modulus.
///
/// Cloning is cheap. Two specs compare equal iff `(p, k, modulus)` agree.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.0.p, self.0.k, self.0.modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "{}", self.0.p)
        } else {
            write!(f, "{}^{}:", self.0.p, self.0.k)?;
            let parts: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
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

// Small dense GF(p)[x] helpers used only to validate moduli and build tables.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn prem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lc_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lc_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            let j = top - dm + i;
            r[j] = (r[j] + p - c * mi % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn pmulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    prem(&out, m, p)
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = prem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin-style check: no factor of degree <= k/2 divides f.
fn is_irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=k / 2 {
        // h <- h^p mod f
        let mut r = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                r = pmulmod(&r, &base, f, p);
            }
            base = pmulmod(&base, &base, f, p);
            e >>= 1;
        }
        h = r;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = pgcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn first_irreducible(p: u64, k: u32) -> Vec<u32> {
    let k = k as usize;
    let count = p.pow(k as u32);
    for code in 0..count {
        let mut f: Vec<u64> = (0..k).map(|i| code / p.pow(i as u32) % p).collect();
        f.push(1);
        if f[0] != 0 && is_irreducible_mod_p(&f, p) {
            return f.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl FieldSpec {
    /// Builds GF(p^k). With `modulus = None` the bundled default for
    /// `(p, k)` is used (first irreducible in lexicographic order when no
    /// table entry exists).
    pub fn new(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if k == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(GfError::FieldTooLarge(q.min(u64::MAX as u128) as u64));
        }
        let modulus: Vec<u32> = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] % p != 1 {
                    return Err(GfError::DegreeMismatch {
                        expected: k,
                        found: m.len(),
                    });
                }
                let mm: Vec<u64> = m.iter().map(|c| c % p).collect();
                if !is_irreducible_mod_p(&mm, p) {
                    return Err(GfError::ReducibleModulus { p });
                }
                mm.into_iter().map(|c| c as u32).collect()
            }
            None => DEFAULT_MODULI
                .iter()
                .find(|(pp, kk, _)| *pp as u64 == p && *kk == k)
                .map(|(_, _, m)| m.to_vec())
                .unwrap_or_else(|| {
                    if k == 1 {
                        vec![0, 1]
                    } else {
                        first_irreducible(p, k)
                    }
                }),
        };
        Ok(Self::build(p as u32, k, modulus))
    }

    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Self, GfError> {
        Self::new(p, 1, None)
    }

    fn build(p: u32, k: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(k);
        let place: Vec<u32> = (0..=k).map(|i| p.pow(i)).collect();
        let pm = p as u64;
        let m64: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
        let decode = |x: u32| -> Vec<u64> {
            let mut v: Vec<u64> = (0..k as usize)
                .map(|i| (x / place[i] % p) as u64)
                .collect();
            trim(&mut v);
            v
        };
        let encode = |v: &[u64]| -> u32 {
            v.iter()
                .enumerate()
                .map(|(i, &c)| c as u32 * place[i])
                .sum()
        };
        let slow_mul = |a: u32, b: u32| -> u32 { encode(&pmulmod(&decode(a), &decode(b), &m64, pm)) };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let mut r = 1u32;
            let mut b = a;
            while e > 0 {
                if e & 1 == 1 {
                    r = slow_mul(r, b);
                }
                b = slow_mul(b, b);
                e >>= 1;
            }
            r
        };
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let mut gen = 1u32;
        if q > 2 {
            gen = (1..q)
                .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
                .expect("multiplicative group is cyclic");
        }
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..q - 1 {
            exp.push(cur);
            log[cur as usize] = i;
            cur = slow_mul(cur, gen);
        }
        FieldSpec(Arc::new(FieldInner {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            place,
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        self.0.q as u64
    }

    pub fn modulus(&self) -> Vec<u64> {
        self.0.modulus.iter().map(|&c| c as u64).collect()
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// The class of `w` (the root of the modulus).
    pub fn generator(&self) -> FieldElement {
        if self.0.k == 1 {
            // w is the root of x + m0
            self.elem(self.raw_neg(self.0.modulus[0]))
        } else {
            self.elem(self.0.p)
        }
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.elem(self.0.exp.get(1).copied().unwrap_or(1))
    }

    /// Integer embedded through the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        self.elem(n.rem_euclid(p) as u32)
    }

    /// Element from power-basis coordinates (constant first); values are reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement, GfError> {
        if coeffs.len() > self.0.k as usize {
            return Err(GfError::DegreeMismatch {
                expected: self.0.k,
                found: coeffs.len(),
            });
        }
        let p = self.0.p as u64;
        let code = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (c % p) as u32 * self.0.place[i])
            .sum();
        Ok(self.elem(code))
    }

    /// All `p^k` elements, lexicographic on coordinates (highest coordinate most significant).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |c| self.elem(c))
    }

    pub(crate) fn elem(&self, code: u32) -> FieldElement {
        FieldElement {
            field: self.clone(),
            code,
        }
    }

    // Raw code arithmetic, used by the polynomial layers.

    #[inline]
    pub(crate) fn raw_add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 {
            return a ^ b;
        }
        if f.k == 1 {
            let s = a + b;
            return if s >= f.p { s - f.p } else { s };
        }
        let mut out = 0;
        for i in 0..f.k as usize {
            let d = (a / f.place[i] % f.p + b / f.place[i] % f.p) % f.p;
            out += d * f.place[i];
        }
        out
    }

    #[inline]
    pub(crate) fn raw_neg(&self, a: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 {
            return a;
        }
        if f.k == 1 {
            return if a == 0 { 0 } else { f.p - a };
        }
        let mut out = 0;
        for i in 0..f.k as usize {
            let d = a / f.place[i] % f.p;
            out += ((f.p - d) % f.p) * f.place[i];
        }
        out
    }

    #[inline]
    pub(crate) fn raw_sub(&self, a: u32, b: u32) -> u32 {
        self.raw_add(a, self.raw_neg(b))
    }

    #[inline]
    pub(crate) fn raw_mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.0;
        let s = f.log[a as usize] as u64 + f.log[b as usize] as u64;
        f.exp[(s % (f.q as u64 - 1)) as usize]
    }

    /// Panics on zero; callers check.
    #[inline]
    pub(crate) fn raw_inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let f = &*self.0;
        let n = f.q - 1;
        f.exp[((n - f.log[a as usize]) % n) as usize]
    }

    pub(crate) fn raw_pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.0;
        let n = (f.q - 1) as u64;
        f.exp[((f.log[a as usize] as u64 % n) * (e % n) % n) as usize]
    }

    /// x -> x^(1/p), the inverse Frobenius.
    pub(crate) fn raw_pth_root(&self, a: u32) -> u32 {
        self.raw_pow(a, (self.0.q / self.0.p) as u64)
    }

    #[inline]
    pub(crate) fn raw_digit(&self, a: u32, i: usize) -> u32 {
        a / self.0.place[i] % self.0.p
    }

    pub(crate) fn q32(&self) -> u32 {
        self.0.q
    }

    /// Parses an element written as an integer or a polynomial in `c`
    /// (the generator), e.g. `"c+1"`, `"2*c^2 - c"`, `"-1"`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, GfError> {
        let err = || GfError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut acc = self.zero();
        let mut rest = compact.as_str();
        let gen = self.generator();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(err());
            }
            let (coef, power) = match term.find('c') {
                None => (term.parse::<i64>().map_err(|_| err())?, 0u64),
                Some(pos) => {
                    let head = term[..pos].trim_end_matches('*');
                    let coef = if head.is_empty() {
                        1
                    } else {
                        head.parse::<i64>().map_err(|_| err())?
                    };
                    let tail = &term[pos + 1..];
                    let power = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .ok_or_else(err)?
                            .parse::<u64>()
                            .map_err(|_| err())?
                    };
                    (coef, power)
                }
            };
            let mut t = self.from_int(coef).mul(&gen.pow(power))?;
            if neg {
                t = t.neg();
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }
}

impl FromStr for FieldSpec {
    type Err = GfError;

    /// `"p"`, `"p^k"` or `"p^k:c0,c1,...,1"`.
    fn from_str(s: &str) -> Result<Self, GfError> {
        let err = || GfError::Parse(s.to_string());
        let (head, modulus) = match s.split_once(':') {
            Some((h, m)) => (h, Some(m)),
            None => (s, None),
        };
        let (p, k) = match head.split_once('^') {
            Some((p, k)) => (
                p.trim().parse::<u64>().map_err(|_| err())?,
                k.trim().parse::<u32>().map_err(|_| err())?,
            ),
            None => (head.trim().parse::<u64>().map_err(|_| err())?, 1),
        };
        let modulus = match modulus {
            Some(m) => Some(
                m.split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<i64>()
                            .map(|v| v.rem_euclid(p.max(1) as i64) as u64)
                            .map_err(|_| err())
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        FieldSpec::new(p, k, modulus.as_deref())
    }
}

/// An element of a specific [`FieldSpec`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    code: u32,
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Coordinates in the power basis of `w`, constant first, length k.
    pub fn coeffs(&self) -> Vec<u64> {
        (0..self.field.0.k as usize)
            .map(|i| self.field.raw_digit(self.code, i) as u64)
            .collect()
    }

    /// Integer code: coordinates read as base-p digits.
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn check(&self, other: &Self) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GfError> {
        self.check(other)?;
        Ok(self.field.elem(self.field.raw_add(self.code, other.code)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GfError> {
        self.check(other)?;
        Ok(self.field.elem(self.field.raw_sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GfError> {
        self.check(other)?;
        Ok(self.field.elem(self.field.raw_mul(self.code, other.code)))
    }

    pub fn div(&self, other: &Self) -> Result<Self, GfError> {
        self.check(other)?;
        let inv = other.inv()?;
        self.mul(&inv)
    }

    pub fn neg(&self) -> Self {
        self.field.elem(self.field.raw_neg(self.code))
    }

    pub fn inv(&self) -> Result<Self, GfError> {
        if self.code == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.field.elem(self.field.raw_inv(self.code)))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.field.elem(self.field.raw_pow(self.code, e))
    }

    /// x^p.
    pub fn frobenius(&self) -> Self {
        self.pow(self.field.characteristic())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    /// Prime-field elements print as integers; others as polynomials in `c`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        if self.field.degree() == 1 {
            return write!(f, "{}", coeffs[0]);
        }
        let mut parts = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let s = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "c".to_string(),
                (1, c) => format!("{c}c"),
                (i, 1) => format!("c^{i}"),
                (i, c) => format!("{c}c^{i}"),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64, k: u32) -> FieldSpec {
        FieldSpec::new(p, k, None).unwrap()
    }

    #[test]
    fn gf4_generator_satisfies_c2_eq_c_plus_1() {
        let f = gf(2, 2);
        let c = f.generator();
        let c2 = c.mul(&c).unwrap();
        assert_eq!(c2, c.add(&f.one()).unwrap());
        assert_eq!(c2.to_string(), "c+1");
    }

    #[test]
    fn gf9_generator_is_root_of_y2_minus_y_minus_1() {
        let f = gf(3, 2);
        let c = f.generator();
        let val = c.pow(2).sub(&c).unwrap().sub(&f.one()).unwrap();
        assert!(val.is_zero());
        assert!(c.add(&c.neg()).unwrap().is_zero());
    }

    #[test]
    fn prime_field_basics() {
        let f = gf(5, 1);
        assert_eq!(f.order(), 5);
        assert_eq!(f.from_int(2).pow(4), f.one());
        assert_eq!(f.from_int(-1).code(), 4);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldSpec::new(4, 1, None).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(
            FieldSpec::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            GfError::ReducibleModulus { p: 2 }
        );
        assert!(matches!(
            FieldSpec::new(2, 2, Some(&[1, 1])),
            Err(GfError::DegreeMismatch { .. })
        ));
        assert!(matches!(
            FieldSpec::new(3, 2, Some(&[2, 2, 2])),
            Err(GfError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn cross_field_arithmetic_is_rejected() {
        let a = gf(2, 2).one();
        let b = gf(2, 3).one();
        assert_eq!(a.add(&b).unwrap_err(), GfError::FieldMismatch);
        let other4 = FieldSpec::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert!(a.add(&other4.one()).is_ok());
    }

    #[test]
    fn division_by_zero() {
        let f = gf(3, 2);
        assert_eq!(f.one().div(&f.zero()).unwrap_err(), GfError::DivisionByZero);
        assert_eq!(f.zero().inv().unwrap_err(), GfError::DivisionByZero);
    }

    #[test]
    fn frobenius_examples() {
        let f = gf(2, 2);
        let c = f.generator();
        assert_eq!(c.frobenius(), c.add(&f.one()).unwrap());
        let f2: Vec<u32> = gf(2, 1).elements().map(|e| e.code()).collect();
        assert_eq!(f2, vec![0, 1]);
        let f9 = gf(3, 2);
        for x in f9.elements() {
            assert_eq!(x.frobenius().frobenius(), x);
        }
    }

    #[test]
    fn defaults_and_spec_strings() {
        assert_eq!(gf(2, 3).modulus(), vec![1, 1, 0, 1]);
        assert_eq!(gf(2, 4).modulus(), vec![1, 1, 0, 0, 1]);
        assert_eq!(gf(5, 2).modulus(), vec![2, 1, 1]);
        let f: FieldSpec = "3^2:2,2,1".parse().unwrap();
        assert_eq!(f, gf(3, 2));
        let f: FieldSpec = "3^2:-1,-1,1".parse().unwrap();
        assert_eq!(f, gf(3, 2));
        assert_eq!("7".parse::<FieldSpec>().unwrap().order(), 7);
        assert_eq!("2^4".parse::<FieldSpec>().unwrap().order(), 16);
        assert!("2^x".parse::<FieldSpec>().is_err());
        assert_eq!(gf(2, 2).to_string(), "2^2:1,1,1");
    }

    #[test]
    fn parse_elements() {
        let f = gf(2, 2);
        assert_eq!(f.parse_element("c+1").unwrap().coeffs(), vec![1, 1]);
        assert_eq!(f.parse_element("c^2").unwrap(), f.parse_element("c + 1").unwrap());
        let g = gf(3, 2);
        assert_eq!(g.parse_element("-c-1").unwrap().coeffs(), vec![2, 2]);
        assert_eq!(g.parse_element("2*c").unwrap().coeffs(), vec![0, 2]);
        assert!(g.parse_element("c^").is_err());
        assert!(g.parse_element("").is_err());
    }

    #[test]
    fn fermat_and_order_identities_all_small_fields() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2)] {
            let f = gf(p, k);
            let q = f.order();
            for x in f.elements() {
                assert_eq!(x.pow(q), x);
                if !x.is_zero() {
                    assert_eq!(x.pow(q - 1), f.one());
                    assert_eq!(x.mul(&x.inv().unwrap()).unwrap(), f.one());
                }
            }
        }
    }

    #[test]
    fn frobenius_is_multiplicative_exhaustive() {
        for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 4), (5, 2), (7, 2)] {
            let f = gf(p, k);
            if f.order() > 81 {
                continue;
            }
            for x in f.elements() {
                for y in f.elements() {
                    let lhs = x.mul(&y).unwrap().frobenius();
                    let rhs = x.frobenius().mul(&y.frobenius()).unwrap();
                    assert_eq!(lhs, rhs);
                    assert_eq!(
                        x.add(&y).unwrap().frobenius(),
                        x.frobenius().add(&y.frobenius()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn ring_axioms_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [(2, 4), (3, 2), (5, 2), (7, 1), (2, 8)] {
            let f = gf(p, k);
            for _ in 0..500 {
                let mut pick = || f.elem(rng.gen_range(0..f.q32()));
                let (a, b, c) = (pick(), pick(), pick());
                let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
                let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                let l2 = a.mul(&b).unwrap().mul(&c).unwrap();
                let r2 = a.mul(&b.mul(&c).unwrap()).unwrap();
                assert_eq!(l2, r2);
                assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
            }
        }
    }

    #[test]
    fn mul_table_matches_schoolbook_multiplication() {
        // independent route: multiply coordinate vectors and reduce by the modulus
        let f = gf(5, 2);
        let m: Vec<u64> = f.modulus();
        for a in f.elements() {
            for b in f.elements() {
                let r = pmulmod(&a.coeffs(), &b.coeffs(), &m, 5);
                let mut r = r;
                r.resize(2, 0);
                assert_eq!(a.mul(&b).unwrap().coeffs(), r);
            }
        }
    }
}
