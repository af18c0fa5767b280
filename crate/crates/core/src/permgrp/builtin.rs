//! Concrete permutation representations of the named groups.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::bsgs::GroupHandle;
use super::names::{prime_power, GroupName};
use super::perm::{Permutation, MAX_DEGREE};
use super::PermError;
use crate::gf::FieldSpec;

/// Environment variable overriding the bundled generator file.
pub const DATA_ENV: &str = "TRIGAL_MATHIEU_DATA";

const BUNDLED: &str = include_str!("../../data/mathieu_generators.txt");

pub fn builtin_group(name: GroupName) -> Result<GroupHandle, PermError> {
    let n = name.degree();
    if n > MAX_DEGREE {
        return Err(PermError::DegreeTooLarge(n));
    }
    let gens = match name {
        GroupName::Symmetric(n) => symmetric_gens(n),
        GroupName::Alternating(n) => (2..n)
            .map(|i| cycle_perm(n, &[0, 1, i]))
            .collect(),
        GroupName::Cyclic(n) => vec![cycle_perm(n, &(0..n).collect::<Vec<_>>())],
        GroupName::Agl { d, q } => affine_gens(d, q, false),
        GroupName::AGammaL { d, q } => affine_gens(d, q, true),
        GroupName::Pgl { d, q } => projective_gens(d, q, Projective::Pgl),
        GroupName::Psl { d, q } => projective_gens(d, q, Projective::Psl),
        GroupName::PGammaL { d, q } => projective_gens(d, q, Projective::PGammaL),
        GroupName::Mathieu(_) | GroupName::Psl211On11 => data_generators(&name.to_string())?,
    };
    GroupHandle::new(n, gens)
}

fn cycle_perm(n: usize, cycle: &[usize]) -> Permutation {
    let mut img: Vec<usize> = (0..n).collect();
    for (i, &pt) in cycle.iter().enumerate() {
        img[pt] = cycle[(i + 1) % cycle.len()];
    }
    Permutation::from_images(img).expect("cycle is a bijection")
}

fn symmetric_gens(n: usize) -> Vec<Permutation> {
    if n < 2 {
        return Vec::new();
    }
    vec![cycle_perm(n, &[0, 1]), cycle_perm(n, &(0..n).collect::<Vec<_>>())]
}

/// Vectors of GF(q)^d as digit codes.
struct VectorSpace {
    field: FieldSpec,
    d: usize,
}

type LinearMap = Box<dyn Fn(&[u32]) -> Vec<u32>>;

impl VectorSpace {
    fn new(d: u32, q: u64) -> Self {
        let (p, e) = prime_power(q).expect("validated prime power");
        VectorSpace {
            field: FieldSpec::new(p, e, None).expect("valid field"),
            d: d as usize,
        }
    }

    fn q(&self) -> u32 {
        self.field.order() as u32
    }

    fn index(&self, v: &[u32]) -> usize {
        v.iter().rev().fold(0usize, |acc, &c| acc * self.q() as usize + c as usize)
    }

    fn all(&self) -> Vec<Vec<u32>> {
        let q = self.q() as usize;
        (0..q.pow(self.d as u32))
            .map(|mut i| {
                (0..self.d)
                    .map(|_| {
                        let c = (i % q) as u32;
                        i /= q;
                        c
                    })
                    .collect()
            })
            .collect()
    }

    /// Generators of GL(d,q) (or SL(d,q) when `special`), plus Frobenius.
    fn linear_maps(&self, special: bool, frobenius: bool) -> Vec<LinearMap> {
        let f = &self.field;
        let w = f.primitive_element().code();
        let x = f.generator().code();
        let e = f.degree();
        let mut maps: Vec<LinearMap> = Vec::new();
        if !special {
            let f2 = f.clone();
            maps.push(Box::new(move |v: &[u32]| {
                let mut out = v.to_vec();
                out[0] = f2.raw_mul(w, v[0]);
                out
            }));
        }
        for i in 0..self.d {
            for j in 0..self.d {
                if i == j {
                    continue;
                }
                for t in 0..e {
                    let lambda = f.raw_pow(x, t as u64);
                    let f2 = f.clone();
                    maps.push(Box::new(move |v: &[u32]| {
                        let mut out = v.to_vec();
                        out[i] = f2.raw_add(v[i], f2.raw_mul(lambda, v[j]));
                        out
                    }));
                }
            }
        }
        if frobenius && e > 1 {
            let f2 = f.clone();
            let p = f.characteristic();
            maps.push(Box::new(move |v: &[u32]| v.iter().map(|&c| f2.raw_pow(c, p)).collect()));
        }
        maps
    }

    /// Scales so the last nonzero coordinate is 1.
    fn normalize(&self, v: &[u32]) -> Vec<u32> {
        let last = *v.iter().rev().find(|&&c| c != 0).expect("nonzero vector");
        let inv = self.field.raw_inv(last);
        v.iter().map(|&c| self.field.raw_mul(inv, c)).collect()
    }
}

fn affine_gens(d: u32, q: u64, semilinear: bool) -> Vec<Permutation> {
    let vs = VectorSpace::new(d, q);
    let points = vs.all();
    let mut maps = vs.linear_maps(false, semilinear);
    let f = vs.field.clone();
    maps.push(Box::new(move |v: &[u32]| {
        let mut out = v.to_vec();
        out[0] = f.raw_add(v[0], 1);
        out
    }));
    maps.iter()
        .map(|m| {
            let img = points.iter().map(|v| vs.index(&m(v))).collect();
            Permutation::from_images(img).expect("affine map is a bijection")
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Projective {
    Pgl,
    Psl,
    PGammaL,
}

fn projective_gens(d: u32, q: u64, kind: Projective) -> Vec<Permutation> {
    let vs = VectorSpace::new(d, q);
    let points: Vec<Vec<u32>> = vs
        .all()
        .into_iter()
        .filter(|v| v.iter().rev().find(|&&c| c != 0) == Some(&1))
        .collect();
    let index: HashMap<&[u32], usize> = points.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let maps = vs.linear_maps(kind == Projective::Psl, kind == Projective::PGammaL);
    maps.iter()
        .map(|m| {
            let img = points.iter().map(|v| index[vs.normalize(&m(v)).as_slice()]).collect();
            Permutation::from_images(img).expect("projective map is a bijection")
        })
        .collect()
}

/// Parsed generator file: label -> (degree, generators).
pub type GeneratorData = HashMap<String, (usize, Vec<Permutation>)>;

pub fn parse_generator_data(text: &str) -> Result<GeneratorData, PermError> {
    let mut out = HashMap::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let bad = || PermError::Parse(line.to_string());
        let name = fields.next().ok_or_else(bad)?;
        let degree: usize = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let gens = fields
            .map(|g| Permutation::from_cycles(degree, g))
            .collect::<Result<Vec<_>, _>>()?;
        out.insert(name.to_string(), (degree, gens));
    }
    Ok(out)
}

fn bundled_data() -> &'static GeneratorData {
    static DATA: OnceLock<GeneratorData> = OnceLock::new();
    DATA.get_or_init(|| parse_generator_data(BUNDLED).expect("bundled generator data parses"))
}

fn data_generators(label: &str) -> Result<Vec<Permutation>, PermError> {
    let from = |data: &GeneratorData, source: &str| {
        data.get(label)
            .map(|(_, g)| g.clone())
            .ok_or_else(|| PermError::MissingDataFile(format!("{source} has no entry for {label}")))
    };
    match std::env::var_os(DATA_ENV) {
        Some(path) => {
            let shown = path.to_string_lossy().into_owned();
            let text = std::fs::read_to_string(&path)
                .map_err(|e| PermError::MissingDataFile(format!("{shown}: {e}")))?;
            from(&parse_generator_data(&text)?, &shown)
        }
        None => from(bundled_data(), "bundled data"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(name: &str) -> GroupHandle {
        let name: GroupName = name.parse().unwrap();
        let g = builtin_group(name).unwrap();
        assert_eq!(g.degree(), name.degree(), "{name}");
        assert_eq!(g.order(), name.order(), "{name}");
        g
    }

    #[test]
    fn classical_orders_match_formulas() {
        for name in [
            "S1", "S2", "S6", "A3", "A7", "C11", "AGL(1,8)", "AGL(1,9)", "AGammaL(1,8)",
            "AGL(2,3)", "AGammaL(2,4)", "AGL(4,2)", "PGL(2,5)", "PSL(2,5)", "PGammaL(2,8)",
            "PGL(3,2)", "PGL(3,3)", "PSL(3,4)", "PGammaL(3,4)", "PSL(2,9)", "PGammaL(2,9)",
            "PGL(2,29)", "AGL(1,29)",
        ] {
            check(name);
        }
    }

    #[test]
    fn bundled_exceptional_orders() {
        for name in [
            "M11@11", "M11@12", "M12", "M22", "Aut(M22)", "M23", "M24", "PSL(2,11)@11",
        ] {
            let g = check(name);
            assert!(g.is_transitive(), "{name}");
        }
    }

    #[test]
    fn too_large() {
        assert!(matches!(
            builtin_group(GroupName::Symmetric(31)),
            Err(PermError::DegreeTooLarge(31))
        ));
        assert!(matches!(
            builtin_group(GroupName::Pgl { d: 3, q: 5 }),
            Err(PermError::DegreeTooLarge(31))
        ));
    }

    #[test]
    fn data_parse_errors() {
        assert!(parse_generator_data("M11@11 eleven (0,1)").is_err());
        assert!(parse_generator_data("M11@11 3 (0,1,5)").is_err());
        let d = parse_generator_data("# comment\nX 3 (0,1,2) (0,1)\n").unwrap();
        assert_eq!(d["X"].1.len(), 2);
    }
}
