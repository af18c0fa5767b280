//! Exact Galois group of the generic trinomial `x^n + a x^m + b` over
//! `K(a, b)`, char K = p, as a function of `(n, m, p)`.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gf::is_prime;
use crate::newton::{lower_hull, tame_cycle_pattern, CycleDeduction, NewtonPolygon, ValuedPoints};
use crate::permgrp::{GroupName, Mathieu};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("gcd({n}, {m}) != 1")]
    NotCoprime { n: u64, m: u64 },
    #[error("need 2 <= n and 0 < m < n, got n = {n}, m = {m}")]
    BadExponent { n: u64, m: u64 },
    #[error("characteristic must be 0 or prime, got {0}")]
    BadCharacteristic(u64),
    #[error("several PGL parameter sets match: {0:?}")]
    AmbiguousPgl(Vec<PglParams>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TrinomialShape {
    pub n: u64,
    pub m: u64,
    pub p: u64,
}

impl TrinomialShape {
    pub fn new(n: u64, m: u64, p: u64) -> Result<Self, ClassifyError> {
        if n < 2 || m == 0 || m >= n {
            return Err(ClassifyError::BadExponent { n, m });
        }
        if num_integer::gcd(n, m) != 1 {
            return Err(ClassifyError::NotCoprime { n, m });
        }
        if p != 0 && !is_prime(p) {
            return Err(ClassifyError::BadCharacteristic(p));
        }
        Ok(TrinomialShape { n, m, p })
    }

    /// `min(m, n - m)`; the trinomial and its reciprocal share a group.
    pub fn reduced_m(&self) -> u64 {
        self.m.min(self.n - self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaussDegrees {
    pub sep: u64,
    pub insep: u64,
    pub strange: bool,
}

pub fn gauss_degrees(shape: &TrinomialShape) -> GaussDegrees {
    let TrinomialShape { n, m, p } = *shape;
    if p == 0 {
        return GaussDegrees { sep: 1, insep: 1, strange: false };
    }
    let divisible: Vec<u64> = [n, m, n - m].into_iter().filter(|k| k % p == 0).collect();
    assert!(divisible.len() <= 1, "coprime n, m: at most one of n, m, n-m is divisible by p");
    match divisible.first() {
        None => GaussDegrees {
            sep: 1,
            insep: if p == 2 { 2 } else { 1 },
            strange: false,
        },
        Some(&k) => {
            let mut insep = 1;
            while k % (insep * p) == 0 {
                insep *= p;
            }
            GaussDegrees { sep: k / insep, insep, strange: true }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PglParams {
    pub q: u64,
    pub d: u32,
    pub s: u32,
}

/// All `(q, d, s)` with `q` a power of p, `d >= 2`, `1 <= s < d`,
/// `n = (q^d-1)/(q-1)` and `m` or `n - m` equal to `(q^s-1)/(q-1)`.
pub fn pgl_params(shape: &TrinomialShape) -> Vec<PglParams> {
    let TrinomialShape { n, p, .. } = *shape;
    let mut out = Vec::new();
    if p == 0 {
        return out;
    }
    let mp = shape.reduced_m();
    let mut q = p;
    while q < n {
        // partial sums 1 + q + ... + q^(s-1)
        let mut sums = vec![0u64, 1];
        while *sums.last().unwrap() < n {
            let next = sums.last().unwrap() * q + 1;
            sums.push(next);
        }
        if let Some(d) = sums.iter().position(|&v| v == n) {
            if d >= 2 {
                for s in 1..d {
                    if sums[s] == mp || sums[s] == n - mp {
                        out.push(PglParams { q, d: d as u32, s: s as u32 });
                    }
                }
            }
        }
        q *= p;
    }
    out
}

/// Decides between A_n and S_n once A_n is known to lie in the group.
/// Returns the group and a note describing the deciding rule.
pub fn an_sn_refine(shape: &TrinomialShape) -> (GroupName, String) {
    let n = shape.n as usize;
    let g = gauss_degrees(shape);
    match shape.p {
        0 => (GroupName::Symmetric(n), "characteristic 0: symmetric".into()),
        2 if shape.n % 2 == 0 => (
            GroupName::Alternating(n),
            "p = 2, n even: discriminant is a square".into(),
        ),
        2 => {
            let mp = shape.reduced_m();
            let g = if mp == 2 { GroupName::Alternating(n) } else { GroupName::Symmetric(n) };
            (
                g,
                format!("p = 2, n odd: alternating iff min(m, n-m) = 2 (here {mp}); symmetric reading of the m = 2 rule"),
            )
        }
        _ => {
            let (n, m, p) = (shape.n, shape.m, shape.p);
            // disc = +-b^(m-1) (n^n b^(n-m) - (-1)^n (n-m)^(n-m) m^m a^n)
            let (square, why) = if n % p == 0 {
                (n % 2 == 0, "p | n: discriminant is c a^n b^(m-1), a square iff n is even")
            } else if m % p == 0 || (n - m) % p == 0 {
                (n % 2 == 1, "p | m(n-m): discriminant is c b^(n-1), a square iff n is odd")
            } else {
                (false, "p does not divide nm(n-m): discriminant is not a square")
            };
            let grp = if square { GroupName::Alternating(n as usize) } else { GroupName::Symmetric(n as usize) };
            let mut note = format!("p odd: {why}");
            if square != (g.sep % 2 == 0) {
                note.push_str(&format!(
                    "; the separable-Gauss-degree parity rule (degree {}) would give the other group",
                    g.sep
                ));
            }
            (grp, note)
        }
    }
}

/// Which case of the classification fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    Case(u8),
    CharZero,
    Trivial,
}

impl Serialize for Clause {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Clause::Case(c) => s.serialize_u8(*c),
            Clause::CharZero => s.serialize_str("char-0"),
            Clause::Trivial => s.serialize_str("trivial"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub group: GroupName,
    pub clause: Clause,
    pub gauss: GaussDegrees,
    pub notes: Vec<String>,
}

pub fn classify_trinomial(shape: &TrinomialShape) -> Result<Verdict, ClassifyError> {
    let TrinomialShape { n, p, .. } = *shape;
    let mp = shape.reduced_m();
    let gauss = gauss_degrees(shape);
    let verdict = |group, clause, notes: Vec<String>| Verdict { group, clause, gauss, notes };
    if p == 0 {
        return Ok(verdict(GroupName::Symmetric(n as usize), Clause::CharZero, vec!["characteristic 0".into()]));
    }
    if n == 2 {
        return Ok(verdict(GroupName::Symmetric(2), Clause::Trivial, vec!["n = 2".into()]));
    }
    let mathieu = |m| GroupName::Mathieu(m);
    let exceptional = match (mp, n, p) {
        (1, _, _) if is_power_of(n, p) => Some((GroupName::Agl { d: 1, q: n }, 1, format!("m' = 1 and n = {n} is a power of p = {p}"))),
        (1, 6, 2) => Some((GroupName::Psl { d: 2, q: 5 }, 2, "m' = 1, n = 6, p = 2".into())),
        (1, 12, 3) => Some((mathieu(Mathieu::M11On12), 3, "m' = 1, n = 12, p = 3".into())),
        (1, 24, 2) => Some((mathieu(Mathieu::M24), 4, "m' = 1, n = 24, p = 2".into())),
        (2, 11, 3) => Some((mathieu(Mathieu::M11On11), 5, "m' = 2, n = 11, p = 3".into())),
        (3, 23, 2) => Some((mathieu(Mathieu::M23), 6, "m' = 3, n = 23, p = 2".into())),
        _ => None,
    };
    let pgl = pgl_params(shape);
    if let Some((group, clause, note)) = exceptional {
        debug_assert!(pgl.is_empty(), "clauses are disjoint");
        return Ok(verdict(group, Clause::Case(clause), vec![format!("clause {clause}: {note}"), gauss_note(&gauss)]));
    }
    match pgl.as_slice() {
        [] => {}
        [PglParams { q, d, s }] => {
            return Ok(verdict(
                GroupName::Pgl { d: *d, q: *q },
                Clause::Case(7),
                vec![
                    format!("clause 7: n = (q^{d}-1)/(q-1) and m' = (q^{s}-1)/(q-1) with q = {q}"),
                    gauss_note(&gauss),
                ],
            ));
        }
        _ => return Err(ClassifyError::AmbiguousPgl(pgl)),
    }
    let (group, why) = an_sn_refine(shape);
    Ok(verdict(group, Clause::Case(8), vec![
        "clause 8: no exceptional case applies, so A_n is contained in G".into(),
        gauss_note(&gauss),
        why,
    ]))
}

/// Every exceptional clause (1 to 7) whose hypothesis holds, in order.
/// The cases are disjoint, so at most one entry is expected.
pub fn matching_clauses(shape: &TrinomialShape) -> Vec<u8> {
    let TrinomialShape { n, p, .. } = *shape;
    if p == 0 || n == 2 {
        return Vec::new();
    }
    let mp = shape.reduced_m();
    let hyps = [
        mp == 1 && is_power_of(n, p),
        (mp, n, p) == (1, 6, 2),
        (mp, n, p) == (1, 12, 3),
        (mp, n, p) == (1, 24, 2),
        (mp, n, p) == (2, 11, 3),
        (mp, n, p) == (3, 23, 2),
        !pgl_params(shape).is_empty(),
    ];
    (1..=7).zip(hyps).filter(|(_, h)| *h).map(|(c, _)| c).collect()
}

fn gauss_note(g: &GaussDegrees) -> String {
    format!(
        "Gauss map: separable degree {}, inseparable degree {}, {}",
        g.sep,
        g.insep,
        if g.strange { "strange" } else { "not strange" }
    )
}

fn is_power_of(n: u64, p: u64) -> bool {
    let mut v = n;
    while v > 1 && v % p == 0 {
        v /= p;
    }
    v == 1 && n > 1
}

/// A local specialization over `K((t))` and the cycle structure its
/// Newton polygon forces on an inertia generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonWitness {
    pub specialization: String,
    pub polygon: NewtonPolygon,
    pub deduction: CycleDeduction,
}

/// The three specializations used in the proofs:
/// `x^n + t^-1 x^m + 1`, `x^n + t` and `x^n + t x^m + t^2`.
pub fn newton_witnesses(shape: &TrinomialShape) -> Vec<NewtonWitness> {
    let TrinomialShape { n, m, p } = *shape;
    let specs: [(String, Vec<(u64, i64)>); 3] = [
        (format!("x^{n} + t^-1*x^{m} + 1"), vec![(0, 0), (m, -1), (n, 0)]),
        (format!("x^{n} + t"), vec![(0, 1), (n, 0)]),
        (format!("x^{n} + t*x^{m} + t^2"), vec![(0, 2), (m, 1), (n, 0)]),
    ];
    specs
        .into_iter()
        .map(|(specialization, pts)| {
            let polygon = lower_hull(&ValuedPoints::from_integers(&pts).expect("sorted points"));
            let deduction = tame_cycle_pattern(&polygon, p);
            NewtonWitness { specialization, polygon, deduction }
        })
        .collect()
}
