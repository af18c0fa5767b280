//! Sparse multivariate polynomials over GF(p) and normal forms modulo
//! triangular systems of monic relations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MvError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operands live in different polynomial rings")]
    ContextMismatch,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("duplicate variable {0:?}")]
    DuplicateVariable(String),
    #[error("relation for {0:?} is not monic in its bound variable")]
    NonMonicRelation(String),
    #[error("relation for {0:?} mentions a variable bound by a later relation or is bound twice")]
    NonTriangular(String),
}

#[derive(Debug, PartialEq, Eq)]
struct Context {
    p: u64,
    vars: Vec<String>,
}

/// A polynomial ring GF(p)[v_0, ..., v_{r-1}] with named variables.
#[derive(Clone, Debug)]
pub struct Ring(Arc<Context>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn new(p: u64, vars: &[&str]) -> Result<Self, MvError> {
        if !is_prime(p) {
            return Err(MvError::NotPrime(p));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(MvError::DuplicateVariable(v.to_string()));
            }
        }
        Ok(Ring(Arc::new(Context {
            p,
            vars: vars.iter().map(|s| s.to_string()).collect(),
        })))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn index_of(&self, name: &str) -> Result<usize, MvError> {
        self.0
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| MvError::UnknownVariable(name.to_string()))
    }

    pub fn zero(&self) -> MPoly {
        MPoly {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: i64) -> MPoly {
        let c = c.rem_euclid(self.0.p as i64) as u64;
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0; self.0.vars.len()], c);
        }
        MPoly {
            ring: self.clone(),
            terms,
        }
    }

    pub fn one(&self) -> MPoly {
        self.constant(1)
    }

    pub fn var(&self, name: &str) -> Result<MPoly, MvError> {
        let i = self.index_of(name)?;
        let mut e = vec![0; self.0.vars.len()];
        e[i] = 1;
        Ok(self.monomial(1, e))
    }

    /// `c * prod(v_i^e_i)`; `exps` has one entry per variable.
    pub fn monomial(&self, c: i64, exps: Vec<u64>) -> MPoly {
        assert_eq!(exps.len(), self.0.vars.len(), "exponent arity");
        let c = c.rem_euclid(self.0.p as i64) as u64;
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exps, c);
        }
        MPoly {
            ring: self.clone(),
            terms,
        }
    }

    /// Monomial from `(name, exponent)` pairs.
    pub fn term(&self, c: i64, powers: &[(&str, u64)]) -> Result<MPoly, MvError> {
        let mut e = vec![0; self.0.vars.len()];
        for (name, k) in powers {
            e[self.index_of(name)?] += k;
        }
        Ok(self.monomial(c, e))
    }
}

/// Sparse polynomial: exponent vector -> nonzero coefficient in [1, p).
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    ring: Ring,
    terms: BTreeMap<Vec<u64>, u64>,
}

fn accumulate(terms: &mut BTreeMap<Vec<u64>, u64>, exps: Vec<u64>, c: u64, p: u64) {
    if c == 0 {
        return;
    }
    match terms.entry(exps) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = (*o.get() + c) % p;
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl MPoly {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u64], u64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    /// Highest exponent of variable `idx` (0 for the zero polynomial).
    pub fn degree_in(&self, idx: usize) -> u64 {
        self.terms.keys().map(|e| e[idx]).max().unwrap_or(0)
    }

    fn check(&self, other: &Self) -> Result<(), MvError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(MvError::ContextMismatch)
        }
    }

    fn p(&self) -> u64 {
        self.ring.0.p
    }

    pub fn add(&self, other: &Self) -> Result<Self, MvError> {
        self.check(other)?;
        let p = self.p();
        let mut terms = self.terms.clone();
        for (e, &c) in &other.terms {
            accumulate(&mut terms, e.clone(), c, p);
        }
        Ok(MPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        let p = self.p();
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), p - c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MvError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> Self {
        let p = self.p();
        let c = c.rem_euclid(p as i64) as u64;
        if c == 0 {
            return self.ring.zero();
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, &x)| (e.clone(), x * c % p))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MvError> {
        self.check(other)?;
        let p = self.p();
        let mut terms = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                accumulate(&mut terms, e, ca * cb % p, p);
            }
        }
        Ok(MPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Replaces variable `var` by `replacement` and expands.
    pub fn substitute(&self, var: &str, replacement: &MPoly) -> Result<Self, MvError> {
        self.check(replacement)?;
        let idx = self.ring.index_of(var)?;
        let p = self.p();
        let mut powers: BTreeMap<u64, MPoly> = BTreeMap::new();
        let mut out = BTreeMap::new();
        for (e, &c) in &self.terms {
            let k = e[idx];
            let pw = powers
                .entry(k)
                .or_insert_with(|| replacement.pow(k))
                .clone();
            let mut rest = e.clone();
            rest[idx] = 0;
            for (er, &cr) in &pw.terms {
                let ee: Vec<u64> = rest.iter().zip(er).map(|(x, y)| x + y).collect();
                accumulate(&mut out, ee, c * cr % p, p);
            }
        }
        Ok(MPoly {
            ring: self.ring.clone(),
            terms: out,
        })
    }

    /// Evaluates at integer values of every variable, in GF(p).
    pub fn eval(&self, values: &[u64]) -> u64 {
        let p = self.p();
        let mut acc = 0u64;
        for (e, &c) in &self.terms {
            let mut t = c;
            for (i, &k) in e.iter().enumerate() {
                let mut b = values[i] % p;
                let mut kk = k;
                let mut r = 1u64;
                while kk > 0 {
                    if kk & 1 == 1 {
                        r = r * b % p;
                    }
                    b = b * b % p;
                    kk >>= 1;
                }
                t = t * r % p;
            }
            acc = (acc + t) % p;
        }
        acc
    }

    /// Exponent vectors with all exponents of `idx` removed, grouped by
    /// that exponent.
    fn split_by(&self, idx: usize) -> BTreeMap<u64, BTreeMap<Vec<u64>, u64>> {
        let mut out: BTreeMap<u64, BTreeMap<Vec<u64>, u64>> = BTreeMap::new();
        for (e, &c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[idx];
            rest[idx] = 0;
            out.entry(k).or_default().insert(rest, c);
        }
        out
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = &self.ring.0.vars;
        let mut parts = Vec::new();
        for (e, &c) in self.terms.iter().rev() {
            let mut mono: Vec<String> = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => mono.push(vars[i].clone()),
                    k => mono.push(format!("{}^{}", vars[i], k)),
                }
            }
            let s = match (c, mono.is_empty()) {
                (c, true) => c.to_string(),
                (1, false) => mono.join("*"),
                (c, false) => format!("{}*{}", c, mono.join("*")),
            };
            parts.push(s);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug)]
struct Relation {
    var: usize,
    degree: u64,
    /// relation minus its leading `var^degree` term
    tail: Vec<(Vec<u64>, u64)>,
}

/// Quotient of a [`Ring`] by relations `r_0, ..., r_{s-1}`, each monic in its
/// own bound variable; `r_j` may mention bound variables of `r_i` only for
/// `i < j`.
#[derive(Clone, Debug)]
pub struct TriangularRing {
    ring: Ring,
    relations: Vec<Relation>,
}

impl TriangularRing {
    /// `relations` are `(bound variable, polynomial)` pairs, in order.
    pub fn new(ring: &Ring, relations: &[(&str, MPoly)]) -> Result<Self, MvError> {
        let mut out: Vec<Relation> = Vec::new();
        let mut bound: Vec<usize> = Vec::new();
        for (j, (name, rel)) in relations.iter().enumerate() {
            if rel.ring() != ring {
                return Err(MvError::ContextMismatch);
            }
            let v = ring.index_of(name)?;
            if bound.contains(&v) {
                return Err(MvError::NonTriangular(name.to_string()));
            }
            let later: Vec<usize> = relations[j + 1..]
                .iter()
                .map(|(n, _)| ring.index_of(n))
                .collect::<Result<_, _>>()?;
            if rel.terms.keys().any(|e| later.iter().any(|&l| e[l] > 0)) {
                return Err(MvError::NonTriangular(name.to_string()));
            }
            let degree = rel.degree_in(v);
            let mut lead = vec![0; ring.0.vars.len()];
            lead[v] = degree;
            let lead_terms: Vec<_> = rel.terms.iter().filter(|(e, _)| e[v] == degree).collect();
            if degree == 0 || lead_terms.len() != 1 || lead_terms[0].0 != &lead || *lead_terms[0].1 != 1 {
                return Err(MvError::NonMonicRelation(name.to_string()));
            }
            let tail = rel
                .terms
                .iter()
                .filter(|(e, _)| e[v] < degree)
                .map(|(e, &c)| (e.clone(), c))
                .collect();
            bound.push(v);
            out.push(Relation { var: v, degree, tail });
        }
        Ok(TriangularRing {
            ring: ring.clone(),
            relations: out,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Normal form: every bound variable's degree drops below its relation's degree.
    pub fn reduce(&self, f: &MPoly) -> Result<MPoly, MvError> {
        if f.ring() != &self.ring {
            return Err(MvError::ContextMismatch);
        }
        let p = self.ring.0.p;
        let mut cur = f.clone();
        for rel in self.relations.iter().rev() {
            let v = rel.var;
            let mut parts = cur.split_by(v);
            while let Some((&top, _)) = parts.iter().next_back() {
                if top < rel.degree {
                    break;
                }
                let coef = parts.remove(&top).expect("present");
                let shift = top - rel.degree;
                // var^top = -tail * var^shift
                for (te, tc) in &rel.tail {
                    let k = te[v] + shift;
                    let mut base = te.clone();
                    base[v] = 0;
                    let slot = parts.entry(k).or_default();
                    let factor = (p - tc) % p;
                    for (ce, &cc) in &coef {
                        let e: Vec<u64> = ce.iter().zip(&base).map(|(x, y)| x + y).collect();
                        accumulate(slot, e, cc * factor % p, p);
                    }
                }
            }
            let mut terms = BTreeMap::new();
            for (k, map) in parts {
                for (mut e, c) in map {
                    e[v] = k;
                    terms.insert(e, c);
                }
            }
            cur = MPoly {
                ring: self.ring.clone(),
                terms,
            };
        }
        Ok(cur)
    }
}
