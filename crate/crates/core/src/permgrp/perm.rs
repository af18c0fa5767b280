use std::fmt;

use serde::Serialize;

use super::PermError;

/// Largest supported degree.
pub const MAX_DEGREE: usize = 30;

/// A permutation of `{0, ..., n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotABijection);
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    /// Parses cycle notation over 0-based points, e.g. `(0,1,2)(3,4)`;
    /// `()` is the identity.
    pub fn from_cycles(n: usize, s: &str) -> Result<Self, PermError> {
        let bad = || PermError::Parse(s.to_string());
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(bad)?;
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let body = &body[..body_end - 1];
            rest = rest[body_end + 1..].trim_start();
            if body.trim().is_empty() {
                continue;
            }
            let pts: Vec<usize> = body
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            for &pt in &pts {
                if pt >= n || seen[pt] {
                    return Err(bad());
                }
                seen[pt] = true;
            }
            for (i, &pt) in pts.iter().enumerate() {
                images[pt] = pts[(i + 1) % pts.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &j)| i != j as usize)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            parts.push(len);
        }
        CycleType::new(parts)
    }

    /// Disjoint cycles of length > 1.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.images[i] as usize;
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

/// A partition of the degree: the multiset of cycle lengths, fixed points
/// included, sorted ascending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable();
        CycleType(parts)
    }

    /// Pads with fixed points up to degree `n`.
    pub fn with_degree(parts: &[usize], n: usize) -> Self {
        let mut v = parts.to_vec();
        let s: usize = v.iter().sum();
        v.extend(std::iter::repeat(1).take(n.saturating_sub(s)));
        Self::new(v)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == 1)
    }

    /// Parts of length > 1, the display convention of the cycle-type tables.
    pub fn nontrivial_parts(&self) -> Vec<usize> {
        self.0.iter().copied().filter(|&p| p > 1).collect()
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().filter(|&&p| p % 2 == 0).count() % 2 == 0
    }

    /// Order of any permutation with this type.
    pub fn order(&self) -> u64 {
        self.0
            .iter()
            .fold(1u64, |acc, &p| num_integer::lcm(acc, p as u64))
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycleType {
    /// Exponent notation with fixed points dropped, e.g. `2^2 4^4`; the
    /// identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.nontrivial_parts();
        if parts.is_empty() {
            return write!(f, "1");
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < parts.len() {
            let mut j = i;
            while j < parts.len() && parts[j] == parts[i] {
                j += 1;
            }
            if j - i == 1 {
                out.push(parts[i].to_string());
            } else {
                out.push(format!("{}^{}", parts[i], j - i));
            }
            i = j;
        }
        write!(f, "{}", out.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_type_examples() {
        assert_eq!(Permutation::identity(11).cycle_type().parts(), &[1; 11]);
        let g = Permutation::from_cycles(5, "(0,1)(2,3,4)").unwrap();
        assert_eq!(g.cycle_type().parts(), &[2, 3]);
        assert_eq!(g.cycle_type().order(), 6);
        assert!(!g.cycle_type().is_even());
        assert_eq!(CycleType::with_degree(&[4, 4, 2], 11).to_string(), "2 4^2");
    }

    #[test]
    fn composition_and_inverse() {
        let a = Permutation::from_cycles(4, "(0,1,2)").unwrap();
        let b = Permutation::from_cycles(4, "(2,3)").unwrap();
        let ab = a.then(&b);
        assert_eq!(ab.image(1), 3);
        assert!(ab.then(&ab.inverse()).is_identity());
        assert_eq!(a.pow(3), Permutation::identity(4));
        assert_eq!(ab.to_string(), "(0,1,3,2)");
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::from_cycles(3, "(0,1,3)").is_err());
        assert!(Permutation::from_cycles(3, "(0,1)(1,2)").is_err());
        assert!(Permutation::from_cycles(3, "0,1").is_err());
        assert!(Permutation::from_cycles(3, "()").unwrap().is_identity());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(matches!(
            Permutation::from_images((0..31).collect()),
            Err(PermError::DegreeTooLarge(31))
        ));
    }
}
