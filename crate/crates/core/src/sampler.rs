//! Frobenius sampling: factor random specializations over a finite field
//! and compare the observed cycle types with candidate groups.
//!
//! Trial `i` draws its coefficients from a ChaCha8 stream seeded with
//! `mix64(seed, i)`, so histograms do not depend on evaluation order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{classify_trinomial, ClassifyError, TrinomialShape};
use crate::gf::{FieldElement, FieldSpec};
use crate::permgrp::{
    jones_candidates, named_cycle_type_set, triply_transitive_candidates,
    CycleType, GroupName, Mathieu, PermError,
};
use crate::upoly::{Poly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SamplerError {
    #[error("invalid trinomial shape: {0}")]
    InvalidShape(#[from] ClassifyError),
    #[error("field has characteristic {field}, shape expects {shape}")]
    CharacteristicMismatch { field: u64, shape: u64 },
    #[error("exponents must be at least two strictly increasing positive integers")]
    BadExponents,
    #[error("no accepted specializations to identify")]
    EmptyStats,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// SplitMix64 finalizer applied to `seed` and the trial index.
pub fn mix64(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternStats {
    pub degree: usize,
    pub field: FieldSpec,
    pub trials: u64,
    pub accepted: u64,
    pub discarded: u64,
    pub histogram: BTreeMap<CycleType, u64>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternCount {
    #[serde(rename = "type")]
    pub cycle_type: CycleType,
    pub count: u64,
}

/// Serializable histogram summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HistogramExport {
    pub degree: usize,
    pub field: String,
    pub seed: u64,
    pub trials: u64,
    pub accepted: u64,
    pub patterns: Vec<PatternCount>,
}

impl PatternStats {
    pub fn observed(&self) -> BTreeSet<CycleType> {
        self.histogram.keys().cloned().collect()
    }

    pub fn export(&self) -> HistogramExport {
        HistogramExport {
            degree: self.degree,
            field: self.field.to_string(),
            seed: self.seed,
            trials: self.trials,
            accepted: self.accepted,
            patterns: self
                .histogram
                .iter()
                .map(|(t, &c)| PatternCount { cycle_type: t.clone(), count: c })
                .collect(),
        }
    }
}

/// Factors each distinct coefficient vector once and tallies the trials.
fn run_trials(
    degree: usize,
    field: &FieldSpec,
    trials: u64,
    seed: u64,
    width: usize,
    build: impl Fn(&[u32]) -> Option<Poly> + Sync,
) -> PatternStats {
    let q = field.order() as u32;
    let draws: Vec<Vec<u32>> = (0..trials)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed, i));
            (0..width).map(|_| rng.gen_range(0..q)).collect()
        })
        .collect();
    let distinct: BTreeSet<&Vec<u32>> = draws.iter().collect();
    let patterns: HashMap<&Vec<u32>, Option<CycleType>> = distinct
        .into_par_iter()
        .map(|coeffs| {
            let pattern = build(coeffs).and_then(|f| {
                let fac = f.factor(seed).expect("non-constant polynomial");
                fac.is_squarefree()
                    .then(|| CycleType::new(fac.pattern().degrees))
            });
            (coeffs, pattern)
        })
        .collect();
    let mut histogram = BTreeMap::new();
    let mut accepted = 0;
    for d in &draws {
        if let Some(t) = &patterns[d] {
            *histogram.entry(t.clone()).or_insert(0) += 1;
            accepted += 1;
        }
    }
    PatternStats {
        degree,
        field: field.clone(),
        trials,
        accepted,
        discarded: trials - accepted,
        histogram,
        seed,
    }
}

/// Samples `x^n + a x^m + b` with `(a, b)` uniform in the field.
pub fn sample_trinomial(
    shape: &TrinomialShape,
    field: &FieldSpec,
    trials: u64,
    seed: u64,
) -> Result<PatternStats, SamplerError> {
    let shape = TrinomialShape::new(shape.n, shape.m, shape.p)?;
    if field.characteristic() != shape.p {
        return Err(SamplerError::CharacteristicMismatch {
            field: field.characteristic(),
            shape: shape.p,
        });
    }
    let (n, m) = (shape.n as usize, shape.m as usize);
    Ok(run_trials(n, field, trials, seed, 2, |c| {
        let f = Poly::trinomial(n, m, &field.elem(c[0]), &field.elem(c[1])).expect("same field");
        Some(f)
    }))
}

/// Samples hyperplane sections `c_0 + sum c_i t^(e_i)` of the monomial
/// curve `t -> (t^e_1, ..., t^e_r)`; draws with `c_r = 0` are discarded.
pub fn sample_sectional(
    exponents: &[u64],
    field: &FieldSpec,
    trials: u64,
    seed: u64,
) -> Result<PatternStats, SamplerError> {
    if exponents.len() < 2 || exponents[0] == 0 || exponents.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SamplerError::BadExponents);
    }
    let degree = *exponents.last().unwrap() as usize;
    if degree > crate::permgrp::MAX_DEGREE * 64 {
        return Err(SamplerError::BadExponents);
    }
    let r = exponents.len();
    Ok(run_trials(degree, field, trials, seed, r + 1, |c| {
        if c[r] == 0 {
            return None;
        }
        let mut raw = vec![0u32; degree + 1];
        raw[0] = c[0];
        for (i, &e) in exponents.iter().enumerate() {
            raw[e as usize] = c[i + 1];
        }
        Some(Poly::from_raw(field, raw))
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub candidate: GroupName,
    pub types: Vec<CycleType>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub candidates: Vec<GroupName>,
    pub consistent: Vec<GroupName>,
    pub minimal: GroupName,
    pub violations: Vec<Violation>,
    pub predicted: Option<GroupName>,
    pub out_of_catalogue: Vec<String>,
    pub note: String,
}

const CONTAINMENT_NOTE: &str = "Frobenius elements lie in the arithmetic monodromy group, which \
contains the geometric group as a normal subgroup; the minimal consistent candidate is the \
smallest catalogued group containing every observed class, not a proof of equality.";

/// Eliminates candidate groups that miss an observed cycle type.
pub fn identify_group(
    stats: &PatternStats,
    shape: Option<&TrinomialShape>,
) -> Result<ConsistencyReport, SamplerError> {
    if stats.accepted == 0 {
        return Err(SamplerError::EmptyStats);
    }
    let n = stats.degree;
    let mut pool: BTreeSet<GroupName> =
        BTreeSet::from([GroupName::Alternating(n), GroupName::Symmetric(n)]);
    for k in 0..=2usize.min(n.saturating_sub(2)) {
        for fam in jones_candidates(n, k)? {
            pool.extend(fam.members());
        }
    }
    let triply = triply_transitive_candidates(n);
    pool.extend(triply.groups());
    let predicted = match shape {
        Some(s) => Some(classify_trinomial(s)?.group),
        None => None,
    };
    pool.extend(predicted);
    pool.retain(|g| g.degree() == n);

    let observed = stats.observed();
    let mut consistent = Vec::new();
    let mut violations = Vec::new();
    for &g in &pool {
        let bad: Vec<CycleType> = match g {
            GroupName::Symmetric(_) => Vec::new(),
            GroupName::Alternating(_) => observed.iter().filter(|t| !t.is_even()).cloned().collect(),
            _ => {
                let set = named_cycle_type_set(g)?;
                observed.iter().filter(|t| !set.contains(t)).cloned().collect()
            }
        };
        if bad.is_empty() {
            consistent.push(g);
        } else {
            violations.push(Violation { candidate: g, types: bad });
        }
    }
    let minimal = *consistent
        .iter()
        .min_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.to_string().cmp(&b.to_string())))
        .expect("the symmetric group is always consistent");
    Ok(ConsistencyReport {
        candidates: pool.into_iter().collect(),
        consistent,
        minimal,
        violations,
        predicted,
        out_of_catalogue: triply.out_of_catalogue,
        note: CONTAINMENT_NOTE.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table2Row {
    pub polynomial: String,
    pub field: String,
    pub expected: Vec<usize>,
    pub computed: Vec<usize>,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// (n, m, a, b, p, k, factor degrees); `c` is the class of x in
/// GF(4) = GF(2)[x]/(x^2 + x + 1), so `c^2 = c + 1`.
const TABLE2: [(usize, usize, &str, &str, u64, u32, &[usize]); 23] = [
    (11, 1, "1", "1", 2, 1, &[2, 9]),
    (11, 1, "-1", "-1", 5, 1, &[1, 3, 7]),
    (11, 3, "1", "1", 2, 1, &[5, 6]),
    (11, 4, "1", "1", 7, 1, &[1, 1, 2, 7]),
    (11, 5, "1", "1", 3, 1, &[1, 3, 7]),
    (11, 5, "1", "1", 2, 1, &[3, 8]),
    (23, 1, "1", "1", 2, 1, &[2, 8, 13]),
    (23, 1, "1", "1", 11, 1, &[1, 2, 5, 15]),
    (23, 2, "1", "1", 3, 1, &[1, 2, 20]),
    (23, 2, "1", "1", 7, 1, &[7, 16]),
    (23, 3, "1", "1", 5, 1, &[1, 22]),
    (23, 4, "1", "1", 19, 1, &[1, 1, 1, 4, 7, 9]),
    (23, 5, "1", "1", 3, 1, &[1, 2, 5, 7, 8]),
    (23, 5, "c", "1", 2, 2, &[1, 9, 13]),
    (23, 6, "1", "1", 17, 1, &[2, 3, 9, 9]),
    (23, 7, "1", "1", 2, 1, &[2, 10, 11]),
    (23, 8, "1", "1", 3, 1, &[1, 3, 19]),
    (23, 8, "1", "1", 5, 1, &[1, 4, 5, 13]),
    (23, 9, "1", "c", 2, 2, &[1, 2, 20]),
    (23, 9, "1", "1", 7, 1, &[4, 19]),
    (23, 10, "1", "1", 13, 1, &[1, 1, 4, 6, 11]),
    (23, 11, "1", "1", 2, 1, &[5, 6, 12]),
    (23, 11, "1", "1", 3, 1, &[1, 3, 19]),
];

fn field_label(p: u64, k: u32) -> String {
    if k == 1 {
        format!("GF({p})")
    } else {
        format!("GF({})", p.pow(k))
    }
}

pub fn reproduce_table2() -> Vec<Table2Row> {
    TABLE2
        .iter()
        .map(|&(n, m, a, b, p, k, expected)| {
            let field = FieldSpec::new(p, k, None).expect("table fields are valid");
            let el = |s: &str| -> FieldElement { field.parse_element(s).expect("table constant") };
            let f = Poly::trinomial(n, m, &el(a), &el(b)).expect("same field");
            let computed = f.factor_pattern(0).expect("non-constant").degrees;
            Table2Row {
                polynomial: f.to_string(),
                field: field_label(p, k),
                expected: expected.to_vec(),
                matches: computed == expected,
                computed,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub group: GroupName,
    pub expected: Vec<String>,
    pub computed: Vec<String>,
    pub missing: Vec<String>,
    pub unexpected: Vec<String>,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Rows of the Mathieu cycle-type table in its own notation. In the M24
/// row the unparenthesized pair "2^2, 10^2" is read as the single type
/// (2^2, 10^2).
pub const TABLE1: [(Mathieu, &str); 7] = [
    (Mathieu::M11On11, "2^4, 3^3, 4^2, 5^2, (2,3,6), (2,8), 11"),
    (Mathieu::M11On12, "2^4, 3^3, (2^2, 4^2), 5^2, (2,3,6), (4,8), 11"),
    (
        Mathieu::M12,
        "2^6, 2^4, 3^3, 3^4, (2^2, 4^2), 4^2, 5^2, 6^2, (2,3,6), (4,8), (2,8), (2,10), 11",
    ),
    (
        Mathieu::M22,
        "2^8, 3^6, (2^2, 4^4), 5^4, (2^2, 3^2, 6^2), 7^3, (2,4,8^2), 11^2",
    ),
    (
        Mathieu::AutM22,
        "2^7, 2^8, 2^11, (2, 4^4), (2^3, 4^4), 3^6, (2^2, 4^4), 5^4, (2, 3^2, 6^2), \
         (2^2, 3^2, 6^2), 7^3, (2,4,8^2), (4, 8^2), (2, 10^2), 11^2, (4, 6, 12), (7, 14)",
    ),
    (
        Mathieu::M23,
        "2^8, 3^6, (2^2, 4^4), 5^4, (2^2, 3^2, 6^2), 7^3, (2,4,8^2), 11^2, (2,7,14), (3,5,15), 23",
    ),
    (
        Mathieu::M24,
        "2^8, 2^12, 3^6, 3^8, (2^4, 4^4), (2^2, 4^4), 4^6, 5^4, (2^2, 3^2, 6^2), 6^4, 7^3, \
         (2,4,8^2), (2^2, 10^2), 11^2, (2,4,6,12), 12^2, (2,7,14), (3,5,15), (2,21), 23",
    ),
];

/// Parses the table notation: comma-separated items, each a power `a^k`
/// or a parenthesized list of powers.
pub fn parse_cycle_list(s: &str, degree: usize) -> Result<Vec<CycleType>, String> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let (item, tail) = if let Some(inner) = rest.strip_prefix('(') {
            let close = inner.find(')').ok_or_else(|| format!("unclosed parenthesis in {s}"))?;
            (&inner[..close], inner[close + 1..].trim_start())
        } else {
            match rest.find(',') {
                Some(i) => (&rest[..i], &rest[i..]),
                None => (rest, ""),
            }
        };
        let mut parts = Vec::new();
        for factor in item.split(',') {
            let factor = factor.trim();
            let (base, exp) = factor.split_once('^').unwrap_or((factor, "1"));
            let base: usize = base.trim().parse().map_err(|_| format!("bad factor {factor}"))?;
            let exp: usize = exp.trim().parse().map_err(|_| format!("bad factor {factor}"))?;
            parts.extend(std::iter::repeat(base).take(exp));
        }
        if parts.iter().sum::<usize>() > degree {
            return Err(format!("item {item} exceeds degree {degree}"));
        }
        out.push(CycleType::with_degree(&parts, degree));
        rest = tail.trim_start().strip_prefix(',').unwrap_or(tail).trim_start();
    }
    Ok(out)
}

pub fn reproduce_table1() -> Result<Vec<Table1Row>, SamplerError> {
    TABLE1
        .iter()
        .map(|&(m, text)| {
            let group = GroupName::Mathieu(m);
            let expected: BTreeSet<CycleType> = parse_cycle_list(text, m.degree())
                .expect("table text parses")
                .into_iter()
                .collect();
            let computed: BTreeSet<CycleType> = named_cycle_type_set(group)?
                .iter()
                .filter(|t| !t.is_identity())
                .cloned()
                .collect();
            let show = |set: &BTreeSet<CycleType>| set.iter().map(|t| t.to_string()).collect::<Vec<_>>();
            let missing = show(&expected.difference(&computed).cloned().collect());
            let unexpected = show(&computed.difference(&expected).cloned().collect());
            Ok(Table1Row {
                group,
                matches: missing.is_empty() && unexpected.is_empty(),
                expected: show(&expected),
                computed: show(&computed),
                missing,
                unexpected,
            })
        })
        .collect()
}
