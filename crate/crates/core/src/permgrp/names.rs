use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::PermError;

/// `n = p^e` with p prime and e >= 1.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let (mut m, mut e) = (n, 0);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mathieu {
    /// M11 in its natural action on 11 points.
    M11On11,
    /// M11 acting 3-transitively on 12 points.
    M11On12,
    M12,
    M22,
    AutM22,
    M23,
    M24,
}

impl Mathieu {
    pub const ALL: [Mathieu; 7] = [
        Mathieu::M11On11,
        Mathieu::M11On12,
        Mathieu::M12,
        Mathieu::M22,
        Mathieu::AutM22,
        Mathieu::M23,
        Mathieu::M24,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Mathieu::M11On11 => "M11@11",
            Mathieu::M11On12 => "M11@12",
            Mathieu::M12 => "M12",
            Mathieu::M22 => "M22",
            Mathieu::AutM22 => "Aut(M22)",
            Mathieu::M23 => "M23",
            Mathieu::M24 => "M24",
        }
    }

    pub fn degree(self) -> usize {
        match self {
            Mathieu::M11On11 => 11,
            Mathieu::M11On12 | Mathieu::M12 => 12,
            Mathieu::M22 | Mathieu::AutM22 => 22,
            Mathieu::M23 => 23,
            Mathieu::M24 => 24,
        }
    }

    pub fn order(self) -> u128 {
        match self {
            Mathieu::M11On11 | Mathieu::M11On12 => 7920,
            Mathieu::M12 => 95040,
            Mathieu::M22 => 443520,
            Mathieu::AutM22 => 887040,
            Mathieu::M23 => 10200960,
            Mathieu::M24 => 244823040,
        }
    }
}

/// A named permutation group of known degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupName {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    Agl { d: u32, q: u64 },
    AGammaL { d: u32, q: u64 },
    Pgl { d: u32, q: u64 },
    Psl { d: u32, q: u64 },
    PGammaL { d: u32, q: u64 },
    Mathieu(Mathieu),
    /// PSL(2,11) in its exceptional 2-transitive action on 11 points.
    Psl211On11,
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn gl_order(d: u32, q: u64) -> u128 {
    let q = q as u128;
    let qd = q.pow(d);
    (0..d).map(|i| qd - q.pow(i)).product()
}

impl GroupName {
    pub fn degree(&self) -> usize {
        match *self {
            GroupName::Symmetric(n) | GroupName::Alternating(n) | GroupName::Cyclic(n) => n,
            GroupName::Agl { d, q } | GroupName::AGammaL { d, q } => q.pow(d) as usize,
            GroupName::Pgl { d, q } | GroupName::Psl { d, q } | GroupName::PGammaL { d, q } => {
                ((q.pow(d) - 1) / (q - 1)) as usize
            }
            GroupName::Mathieu(m) => m.degree(),
            GroupName::Psl211On11 => 11,
        }
    }

    /// Order from the standard formulas.
    pub fn order(&self) -> u128 {
        let field_degree = |q: u64| prime_power(q).map_or(1, |(_, e)| e as u128);
        match *self {
            GroupName::Symmetric(n) => factorial(n),
            GroupName::Alternating(n) => (factorial(n) / 2).max(1),
            GroupName::Cyclic(n) => n.max(1) as u128,
            GroupName::Agl { d, q } => (q as u128).pow(d) * gl_order(d, q),
            GroupName::AGammaL { d, q } => (q as u128).pow(d) * gl_order(d, q) * field_degree(q),
            GroupName::Pgl { d, q } => gl_order(d, q) / (q as u128 - 1),
            GroupName::Psl { d, q } => {
                let g = num_integer::gcd(d as u128, q as u128 - 1);
                gl_order(d, q) / (q as u128 - 1) / g
            }
            GroupName::PGammaL { d, q } => gl_order(d, q) / (q as u128 - 1) * field_degree(q),
            GroupName::Mathieu(m) => m.order(),
            GroupName::Psl211On11 => 660,
        }
    }

    fn validate(self) -> Result<Self, PermError> {
        let ok = match self {
            GroupName::Agl { d, q } | GroupName::AGammaL { d, q } => {
                d >= 1 && prime_power(q).is_some()
            }
            GroupName::Pgl { d, q } | GroupName::Psl { d, q } | GroupName::PGammaL { d, q } => {
                d >= 2 && prime_power(q).is_some()
            }
            GroupName::Symmetric(n) | GroupName::Alternating(n) | GroupName::Cyclic(n) => n >= 1,
            _ => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(PermError::UnknownName(self.to_string()))
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::Symmetric(n) => write!(f, "S{n}"),
            GroupName::Alternating(n) => write!(f, "A{n}"),
            GroupName::Cyclic(n) => write!(f, "C{n}"),
            GroupName::Agl { d, q } => write!(f, "AGL({d},{q})"),
            GroupName::AGammaL { d, q } => write!(f, "AGammaL({d},{q})"),
            GroupName::Pgl { d, q } => write!(f, "PGL({d},{q})"),
            GroupName::Psl { d, q } => write!(f, "PSL({d},{q})"),
            GroupName::PGammaL { d, q } => write!(f, "PGammaL({d},{q})"),
            GroupName::Mathieu(m) => write!(f, "{}", m.label()),
            GroupName::Psl211On11 => write!(f, "PSL(2,11)@11"),
        }
    }
}

impl Serialize for GroupName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for GroupName {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        let unknown = || PermError::UnknownName(s.to_string());
        let t = s.trim();
        if t == "PSL(2,11)@11" {
            return Ok(GroupName::Psl211On11);
        }
        if let Some(m) = Mathieu::ALL.iter().find(|m| m.label() == t) {
            return Ok(GroupName::Mathieu(*m));
        }
        for (prefix, ctor) in [
            ("AGammaL(", GroupName::AGammaL { d: 0, q: 0 }),
            ("PGammaL(", GroupName::PGammaL { d: 0, q: 0 }),
            ("AGL(", GroupName::Agl { d: 0, q: 0 }),
            ("PGL(", GroupName::Pgl { d: 0, q: 0 }),
            ("PSL(", GroupName::Psl { d: 0, q: 0 }),
        ] {
            if let Some(rest) = t.strip_prefix(prefix) {
                let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
                let (d, q) = inner.split_once(',').ok_or_else(unknown)?;
                let d: u32 = d.trim().parse().map_err(|_| unknown())?;
                let q: u64 = q.trim().parse().map_err(|_| unknown())?;
                let name = match ctor {
                    GroupName::AGammaL { .. } => GroupName::AGammaL { d, q },
                    GroupName::PGammaL { .. } => GroupName::PGammaL { d, q },
                    GroupName::Agl { .. } => GroupName::Agl { d, q },
                    GroupName::Pgl { .. } => GroupName::Pgl { d, q },
                    _ => GroupName::Psl { d, q },
                };
                return name.validate().map_err(|_| unknown());
            }
        }
        let (head, num) = t.split_at(t.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
        let n: usize = num.parse().map_err(|_| unknown())?;
        let name = match head {
            "S" => GroupName::Symmetric(n),
            "A" => GroupName::Alternating(n),
            "C" => GroupName::Cyclic(n),
            _ => return Err(unknown()),
        };
        name.validate().map_err(|_| unknown())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_roundtrip() {
        for s in [
            "S11", "A13", "C11", "AGL(1,8)", "AGammaL(2,4)", "PGL(3,2)", "PSL(2,5)",
            "PGammaL(2,8)", "M11@11", "M11@12", "M12", "M22", "Aut(M22)", "M23", "M24",
            "PSL(2,11)@11",
        ] {
            assert_eq!(s.parse::<GroupName>().unwrap().to_string(), s);
        }
        for bad in ["M13", "PGL(1,5)", "AGL(1,6)", "X5", "S", "PGL(2,5"] {
            assert!(bad.parse::<GroupName>().is_err(), "{bad}");
        }
    }

    #[test]
    fn degrees_and_orders() {
        let pgl = GroupName::Pgl { d: 2, q: 5 };
        assert_eq!((pgl.degree(), pgl.order()), (6, 120));
        let agl = GroupName::Agl { d: 1, q: 8 };
        assert_eq!((agl.degree(), agl.order()), (8, 56));
        assert_eq!(GroupName::PGammaL { d: 2, q: 8 }.order(), 1512);
        assert_eq!(GroupName::Psl { d: 3, q: 4 }.order(), 20160);
        assert_eq!(GroupName::Pgl { d: 3, q: 2 }.degree(), 7);
        assert_eq!(GroupName::Symmetric(30).order(), 265252859812191058636308480000000);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(23), Some((23, 1)));
    }
}
