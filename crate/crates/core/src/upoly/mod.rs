//! Dense univariate polynomials over a [`FieldSpec`].

mod factor;

pub use factor::{irreducibility_certificate, FactorPattern, Factorization};

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::gf::{FieldElement, FieldSpec, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
}

/// Polynomial with coefficients in a finite field, index = exponent.
///
/// Trailing zeros are always trimmed, so the zero polynomial has an empty
/// coefficient vector and `degree() == None`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<u32>,
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl Poly {
    pub(crate) fn from_raw(field: &FieldSpec, mut coeffs: Vec<u32>) -> Self {
        trim(&mut coeffs);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn new(field: &FieldSpec, coeffs: &[FieldElement]) -> Result<Self, PolyError> {
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.field() != field {
                return Err(GfError::FieldMismatch.into());
            }
            raw.push(c.code());
        }
        Ok(Self::from_raw(field, raw))
    }

    /// Coefficients given as integers mapped through the prime field.
    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Self {
        let raw = coeffs.iter().map(|&c| field.from_int(c).code()).collect();
        Self::from_raw(field, raw)
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self::from_raw(field, Vec::new())
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::from_raw(field, vec![1])
    }

    pub fn x(field: &FieldSpec) -> Self {
        Self::from_raw(field, vec![0, 1])
    }

    pub fn constant(c: &FieldElement) -> Self {
        Self::from_raw(c.field(), vec![c.code()])
    }

    /// `c * x^deg`.
    pub fn monomial(c: &FieldElement, deg: usize) -> Self {
        let mut v = vec![0; deg + 1];
        v[deg] = c.code();
        Self::from_raw(c.field(), v)
    }

    /// `x^n + a x^m + b`.
    pub fn trinomial(n: usize, m: usize, a: &FieldElement, b: &FieldElement) -> Result<Self, PolyError> {
        let field = a.field();
        if b.field() != field {
            return Err(GfError::FieldMismatch.into());
        }
        let mut v = vec![0u32; n + 1];
        v[n] = 1;
        v[m] = field.raw_add(v[m], a.code());
        v[0] = field.raw_add(v[0], b.code());
        Ok(Self::from_raw(field, v))
    }

    /// Comma-separated coefficients, constant first; each entry is an
    /// integer or a polynomial expression in `c` such as `c+1`.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Self, PolyError> {
        if s.trim().is_empty() {
            return Err(PolyError::Parse(s.to_string()));
        }
        let mut raw = Vec::new();
        for part in s.split(',') {
            let e = field
                .parse_element(part)
                .map_err(|_| PolyError::Parse(s.to_string()))?;
            raw.push(e.code());
        }
        Ok(Self::from_raw(field, raw))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.elem(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn coeffs(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|&c| self.field.elem(c)).collect()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.field.elem(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    fn same_field(&self, other: &Self) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch.into())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| {
                f.raw_add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Self::from_raw(f, v)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_field(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub(crate) fn sub_unchecked(&self, other: &Self) -> Self {
        self.add_unchecked(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let v = self.coeffs.iter().map(|&c| self.field.raw_neg(c)).collect();
        Self::from_raw(&self.field, v)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self, PolyError> {
        if c.field() != &self.field {
            return Err(GfError::FieldMismatch.into());
        }
        Ok(self.scale_raw(c.code()))
    }

    pub(crate) fn scale_raw(&self, c: u32) -> Self {
        let v = self
            .coeffs
            .iter()
            .map(|&x| self.field.raw_mul(x, c))
            .collect();
        Self::from_raw(&self.field, v)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.raw_add(out[i + j], f.raw_mul(a, b));
                }
            }
        }
        Self::from_raw(f, out)
    }

    /// `(quotient, remainder)` with `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.same_field(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(self.divmod_unchecked(divisor))
    }

    pub(crate) fn divmod_unchecked(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let lc_inv = f.raw_inv(divisor.coeffs[dd]);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            let t = f.raw_mul(c, lc_inv);
            quot[top - dd] = t;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                if d != 0 {
                    let j = top - dd + i;
                    rem[j] = f.raw_sub(rem[j], f.raw_mul(t, d));
                }
            }
        }
        rem.truncate(dd);
        (Self::from_raw(f, quot), Self::from_raw(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        Ok(self.divmod(divisor)?.1)
    }

    pub(crate) fn rem_unchecked(&self, divisor: &Self) -> Self {
        self.divmod_unchecked(divisor).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_field(other)?;
        Ok(self.gcd_unchecked(other))
    }

    pub(crate) fn gcd_unchecked(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem_unchecked(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => self.scale_raw(self.field.raw_inv(lc)),
        }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.raw_mul(c, f.from_int(i as i64).code()))
            .collect();
        Self::from_raw(f, v)
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement, PolyError> {
        if x.field() != &self.field {
            return Err(GfError::FieldMismatch.into());
        }
        let f = &self.field;
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = f.raw_add(f.raw_mul(acc, x.code()), c);
        }
        Ok(f.elem(acc))
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn powmod(&self, e: &BigUint, modulus: &Self) -> Result<Self, PolyError> {
        self.same_field(modulus)?;
        match modulus.degree() {
            None => return Err(PolyError::DivisionByZero),
            Some(0) => return Err(PolyError::ConstantPolynomial),
            _ => {}
        }
        Ok(self.powmod_unchecked(e, modulus))
    }

    pub fn powmod_u64(&self, e: u64, modulus: &Self) -> Result<Self, PolyError> {
        self.powmod(&BigUint::from(e), modulus)
    }

    pub(crate) fn powmod_unchecked(&self, e: &BigUint, modulus: &Self) -> Self {
        let base = self.rem_unchecked(modulus);
        let mut acc = Self::one(&self.field).rem_unchecked(modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_unchecked(&acc).rem_unchecked(modulus);
            if e.bit(i) {
                acc = acc.mul_unchecked(&base).rem_unchecked(modulus);
            }
        }
        acc
    }

    /// True iff `gcd(f, f')` is constant; derivative-zero nonconstant
    /// polynomials are never squarefree.
    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        match self.degree() {
            None => Err(PolyError::ZeroPolynomial),
            Some(0) => Ok(true),
            Some(_) => {
                let d = self.derivative();
                if d.is_zero() {
                    return Ok(false);
                }
                Ok(self.gcd_unchecked(&d).degree() == Some(0))
            }
        }
    }

    /// Complete factorization into monic irreducibles. The output is
    /// independent of `seed`; only the splitting randomness depends on it.
    pub fn factor(&self, seed: u64) -> Result<Factorization, PolyError> {
        factor::factor(self, seed)
    }

    pub fn factor_pattern(&self, seed: u64) -> Result<FactorPattern, PolyError> {
        Ok(self.factor(seed)?.pattern())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ext = self.field.degree() > 1;
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = self.field.elem(c).to_string();
            let cs = if ext && cs.contains('+') { format!("({cs})") } else { cs };
            let s = match i {
                0 => cs,
                _ => {
                    let mono = if i == 1 { "x".to_string() } else { format!("x^{i}") };
                    if c == 1 { mono } else { format!("{cs}*{mono}") }
                }
            };
            parts.push(s);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: u32) -> FieldSpec {
        FieldSpec::new(p, k, None).unwrap()
    }

    #[test]
    fn arithmetic_examples_over_gf2() {
        let f = gf(2, 1);
        let x2p1 = Poly::from_ints(&f, &[1, 0, 1]);
        let xp1 = Poly::from_ints(&f, &[1, 1]);
        assert_eq!(x2p1.gcd(&xp1).unwrap(), xp1);
        assert_eq!(xp1.mul(&xp1).unwrap(), x2p1);
        let x3 = Poly::from_ints(&f, &[0, 0, 0, 1]);
        let x = Poly::x(&f);
        let (q, r) = x3.divmod(&x).unwrap();
        assert_eq!(q, Poly::from_ints(&f, &[0, 0, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn zero_degree_sentinel() {
        let f = gf(3, 1);
        assert_eq!(Poly::zero(&f).degree(), None);
        assert_eq!(Poly::from_ints(&f, &[3, 0, 6]).degree(), None);
        assert_eq!(Poly::one(&f).degree(), Some(0));
    }

    #[test]
    fn division_errors() {
        let f = gf(5, 1);
        let a = Poly::from_ints(&f, &[1, 2]);
        assert_eq!(a.divmod(&Poly::zero(&f)).unwrap_err(), PolyError::DivisionByZero);
        let g = gf(7, 1);
        assert!(matches!(
            a.add(&Poly::one(&g)),
            Err(PolyError::Field(GfError::FieldMismatch))
        ));
    }

    #[test]
    fn divmod_reconstructs_with_nonmonic_divisor() {
        let f = gf(7, 1);
        let a = Poly::from_ints(&f, &[3, 1, 4, 1, 5, 9, 2, 6]);
        let b = Poly::from_ints(&f, &[2, 0, 3]);
        let (q, r) = a.divmod(&b).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
    }

    #[test]
    fn powmod_examples() {
        let f = gf(2, 1);
        let m = Poly::from_ints(&f, &[1, 1, 1]);
        let x = Poly::x(&f);
        assert_eq!(x.powmod_u64(4, &m).unwrap(), x);
        let g = Poly::from_ints(&f, &[1, 0, 1, 1]);
        assert_eq!(x.powmod_u64(1, &g).unwrap(), x);
        assert_eq!(x.powmod_u64(0, &g).unwrap(), Poly::one(&f));
        assert_eq!(
            x.powmod_u64(3, &Poly::one(&f)).unwrap_err(),
            PolyError::ConstantPolynomial
        );
    }

    #[test]
    fn powmod_matches_repeated_multiplication() {
        let f = gf(3, 2);
        let m = Poly::parse(&f, "c,1,0,2,c+1,1").unwrap();
        let b = Poly::parse(&f, "1,c,2").unwrap();
        let mut acc = Poly::one(&f);
        for e in 0..40u64 {
            assert_eq!(b.powmod_u64(e, &m).unwrap(), acc.rem(&m).unwrap());
            acc = acc.mul(&b).unwrap().rem(&m).unwrap();
        }
    }

    #[test]
    fn squarefree_examples() {
        let f = gf(2, 1);
        assert!(!Poly::from_ints(&f, &[1, 0, 1]).is_squarefree().unwrap());
        let mut c = vec![0i64; 12];
        c[0] = 1;
        c[1] = 1;
        c[11] = 1;
        assert!(Poly::from_ints(&f, &c).is_squarefree().unwrap());
        let g = gf(5, 1);
        assert!(!Poly::from_ints(&g, &[0, 0, 0, 0, 0, 1]).is_squarefree().unwrap());
        assert_eq!(Poly::zero(&g).is_squarefree().unwrap_err(), PolyError::ZeroPolynomial);
    }

    #[test]
    fn parse_and_display() {
        let f = gf(2, 2);
        let p = Poly::parse(&f, "1,0,c,c+1").unwrap();
        assert_eq!(p.to_string(), "(c+1)*x^3 + c*x^2 + 1");
        assert!(Poly::parse(&f, "1,,2").is_err());
        let trinomial = Poly::trinomial(23, 5, &f.generator(), &f.one()).unwrap();
        assert_eq!(trinomial.coeff(5), f.generator());
        assert_eq!(trinomial.degree(), Some(23));
    }

    #[test]
    fn eval_and_derivative() {
        let f = gf(5, 1);
        let p = Poly::from_ints(&f, &[1, 2, 3]); // 3x^2+2x+1
        assert_eq!(p.eval(&f.from_int(2)).unwrap(), f.from_int(17));
        assert_eq!(p.derivative(), Poly::from_ints(&f, &[2, 6]));
        let xp = Poly::from_ints(&f, &[0, 0, 0, 0, 0, 1]);
        assert!(xp.derivative().is_zero());
    }
}
