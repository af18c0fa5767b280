//! Classification lookups: primitive groups containing a cycle with few
//! fixed points, and triply transitive groups.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::bsgs::ENUMERATION_BUDGET;
use super::builtin::builtin_group;
use super::names::{prime_power, GroupName, Mathieu};
use super::perm::CycleType;
use super::PermError;
use crate::gf::is_prime;

/// Groups `G` with `lower <= G <= upper`; a single group when equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Family {
    pub lower: GroupName,
    pub upper: GroupName,
}

/// Over a prime field the semilinear groups coincide with the linear ones.
fn canonical(name: GroupName) -> GroupName {
    match name {
        GroupName::AGammaL { d, q } if is_prime(q) => GroupName::Agl { d, q },
        GroupName::PGammaL { d, q } if is_prime(q) => GroupName::Pgl { d, q },
        other => other,
    }
}

impl Family {
    pub fn single(g: GroupName) -> Self {
        Family::between(g, g)
    }

    pub fn between(lower: GroupName, upper: GroupName) -> Self {
        Family {
            lower: canonical(lower),
            upper: canonical(upper),
        }
    }

    /// The named groups of the catalogue lying in the family.
    pub fn members(&self) -> Vec<GroupName> {
        let mut out = vec![self.lower];
        if let (GroupName::Psl { d, q }, GroupName::PGammaL { .. } | GroupName::Pgl { .. }) =
            (self.lower, self.upper)
        {
            out.push(GroupName::Pgl { d, q });
        }
        out.push(self.upper);
        out.dedup();
        out.sort();
        out.dedup();
        out
    }

    pub fn degree(&self) -> usize {
        self.upper.degree()
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.lower == self.upper {
            write!(f, "{}", self.lower)
        } else {
            write!(f, "{}..{}", self.lower, self.upper)
        }
    }
}

/// Candidate list with notes on groups that are named but not constructed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidates {
    pub families: Vec<Family>,
    pub out_of_catalogue: Vec<String>,
}

impl Candidates {
    pub fn groups(&self) -> Vec<GroupName> {
        let set: BTreeSet<GroupName> = self.families.iter().flat_map(|f| f.members()).collect();
        set.into_iter().collect()
    }
}

/// All `(q, d)` with `d >= 2` and `n = (q^d - 1)/(q - 1)`.
fn projective_shapes(n: usize) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for q in 2..n as u64 {
        if prime_power(q).is_none() {
            continue;
        }
        let (mut sum, mut d, mut qd) = (1 + q, 2u32, q);
        while sum <= n as u64 {
            if sum == n as u64 {
                out.push((q, d));
            }
            qd *= q;
            sum += qd;
            d += 1;
        }
    }
    out
}

/// All `(q, d)` with `d >= 1` and `n = q^d`.
fn affine_shapes(n: usize) -> Vec<(u64, u32)> {
    let Some((p, e)) = prime_power(n as u64) else {
        return Vec::new();
    };
    (1..=e)
        .filter(|d| e % d == 0)
        .map(|d| (p.pow(e / d), d))
        .collect()
}

fn full_groups(n: usize) -> [Family; 2] {
    [
        Family::single(GroupName::Alternating(n)),
        Family::single(GroupName::Symmetric(n)),
    ]
}

/// Primitive groups of degree `n` not containing A_n that contain a cycle
/// fixing exactly `k` points, plus A_n and S_n.
pub fn jones_candidates(n: usize, k: usize) -> Result<Vec<Family>, PermError> {
    if n < 2 || k > n - 2 {
        return Err(PermError::BadK { n, k });
    }
    let mut out = Vec::new();
    match k {
        0 => {
            if is_prime(n as u64) {
                out.push(Family::between(
                    GroupName::Cyclic(n),
                    GroupName::Agl { d: 1, q: n as u64 },
                ));
            }
            for (q, d) in projective_shapes(n) {
                out.push(Family::between(GroupName::Pgl { d, q }, GroupName::PGammaL { d, q }));
            }
            match n {
                11 => {
                    out.push(Family::single(GroupName::Psl211On11));
                    out.push(Family::single(GroupName::Mathieu(Mathieu::M11On11)));
                }
                23 => out.push(Family::single(GroupName::Mathieu(Mathieu::M23))),
                _ => {}
            }
        }
        1 => {
            for (q, d) in affine_shapes(n) {
                out.push(Family::between(GroupName::Agl { d, q }, GroupName::AGammaL { d, q }));
            }
            let p = n as u64 - 1;
            if p >= 5 && is_prime(p) {
                out.push(Family::single(GroupName::Psl { d: 2, q: p }));
                out.push(Family::single(GroupName::Pgl { d: 2, q: p }));
            }
            match n {
                12 => {
                    out.push(Family::single(GroupName::Mathieu(Mathieu::M11On12)));
                    out.push(Family::single(GroupName::Mathieu(Mathieu::M12)));
                }
                24 => out.push(Family::single(GroupName::Mathieu(Mathieu::M24))),
                _ => {}
            }
        }
        2 => {
            let q = n as u64 - 1;
            if prime_power(q).is_some() {
                out.push(Family::between(
                    GroupName::Pgl { d: 2, q },
                    GroupName::PGammaL { d: 2, q },
                ));
            }
        }
        _ => {}
    }
    out.extend(full_groups(n));
    Ok(out)
}

/// Triply transitive groups of degree `d`. The exceptional degree-16 group
/// is listed by name in `out_of_catalogue` only.
pub fn triply_transitive_candidates(d: usize) -> Candidates {
    let mut families = Vec::new();
    let mut notes = Vec::new();
    if let Some((2, e)) = prime_power(d as u64) {
        families.push(Family::single(GroupName::Agl { d: e, q: 2 }));
    }
    if d == 16 {
        notes.push("G1 (degree 16, contained in AGL(4,2)) is not constructed".to_string());
    }
    if d >= 3 && prime_power(d as u64 - 1).is_some() {
        let r = d as u64 - 1;
        families.push(Family::between(GroupName::Psl { d: 2, q: r }, GroupName::PGammaL { d: 2, q: r }));
    }
    for m in Mathieu::ALL {
        if m.degree() == d {
            families.push(Family::single(GroupName::Mathieu(m)));
        }
    }
    families.extend(full_groups(d));
    Candidates {
        families,
        out_of_catalogue: notes,
    }
}

type TypeSet = Arc<BTreeSet<CycleType>>;

fn cache() -> &'static Mutex<HashMap<GroupName, Arc<OnceLock<TypeSet>>>> {
    static CACHE: OnceLock<Mutex<HashMap<GroupName, Arc<OnceLock<TypeSet>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cycle types of a named group, computed once per process.
pub fn named_cycle_type_set(name: GroupName) -> Result<TypeSet, PermError> {
    let slot = cache().lock().unwrap().entry(name).or_default().clone();
    if let Some(s) = slot.get() {
        return Ok(s.clone());
    }
    if name.order() > ENUMERATION_BUDGET {
        return Err(PermError::BudgetExceeded(name.order()));
    }
    let handle = builtin_group(name)?;
    let set = slot.get_or_init(|| Arc::new(handle.cycle_type_set().expect("order checked against budget")));
    Ok(set.clone())
}

/// Whether every observed type occurs in the named group.
pub fn contains_all_types(name: GroupName, observed: &BTreeSet<CycleType>) -> Result<bool, PermError> {
    let n = name.degree();
    if let Some(t) = observed.iter().find(|t| t.degree() != n) {
        return Err(PermError::DegreeMismatch {
            expected: n,
            found: t.degree(),
        });
    }
    match name {
        GroupName::Symmetric(_) => Ok(true),
        GroupName::Alternating(_) => Ok(observed.iter().all(|t| t.is_even())),
        _ => {
            let set = named_cycle_type_set(name)?;
            Ok(observed.iter().all(|t| set.contains(t)))
        }
    }
}
