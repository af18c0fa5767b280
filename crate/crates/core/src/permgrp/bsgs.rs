//! Schreier–Sims with a prescribed base prefix, and streaming enumeration
//! of cycle types over the transversal product decomposition.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rayon::prelude::*;
use rustc_hash::FxHashSet;

use super::perm::{CycleType, Permutation, MAX_DEGREE};
use super::PermError;

/// Streaming enumeration refuses groups larger than this.
pub const ENUMERATION_BUDGET: u128 = 250_000_000;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    pub transversal: Vec<Option<Permutation>>,
    pub inv_transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(n: usize, base: usize, gens: Vec<Permutation>) -> Self {
        let mut l = Level {
            base,
            gens,
            orbit: Vec::new(),
            transversal: Vec::new(),
            inv_transversal: Vec::new(),
        };
        l.rebuild(n);
        l
    }

    fn rebuild(&mut self, n: usize) {
        let mut tr: Vec<Option<Permutation>> = vec![None; n];
        tr[self.base] = Some(Permutation::identity(n));
        let mut orbit = vec![self.base];
        let mut queue = VecDeque::from([self.base]);
        while let Some(b) = queue.pop_front() {
            for x in &self.gens {
                let c = x.image(b);
                if tr[c].is_none() {
                    tr[c] = Some(tr[b].as_ref().unwrap().then(x));
                    orbit.push(c);
                    queue.push_back(c);
                }
            }
        }
        self.inv_transversal = tr.iter().map(|u| u.as_ref().map(|u| u.inverse())).collect();
        self.transversal = tr;
        self.orbit = orbit;
    }
}

/// A permutation group given by a base and strong generating set.
#[derive(Clone, Debug)]
pub struct GroupHandle {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

fn strip(levels: &[Level], g: &Permutation, from: usize) -> (Permutation, usize) {
    let mut h = g.clone();
    for (l, level) in levels.iter().enumerate().skip(from) {
        match &level.inv_transversal[h.image(level.base)] {
            None => return (h, l),
            Some(u) => h = h.then(u),
        }
    }
    (h, levels.len())
}

fn schreier_sims(n: usize, gens: &[Permutation], prefix: &[usize]) -> Vec<Level> {
    let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let mut base = prefix.to_vec();
    for g in &gens {
        if base.iter().all(|&b| g.image(b) == b) {
            base.push(g.first_moved_point().expect("non-identity"));
        }
    }
    let mut levels: Vec<Level> = (0..base.len())
        .map(|i| {
            let fixing = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&b| g.image(b) == b))
                .cloned()
                .collect();
            Level::new(n, base[i], fixing)
        })
        .collect();

    let mut i = levels.len() as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        let mut jump = None;
        'scan: for idx in 0..levels[iu].orbit.len() {
            let beta = levels[iu].orbit[idx];
            for gi in 0..levels[iu].gens.len() {
                let lev = &levels[iu];
                let x = &lev.gens[gi];
                let gamma = x.image(beta);
                let h = lev.transversal[beta]
                    .as_ref()
                    .unwrap()
                    .then(x)
                    .then(lev.inv_transversal[gamma].as_ref().unwrap());
                if h.is_identity() {
                    continue;
                }
                let (res, j) = strip(&levels, &h, iu + 1);
                if j < levels.len() || !res.is_identity() {
                    if j == levels.len() {
                        let pt = res.first_moved_point().expect("non-identity residue");
                        levels.push(Level::new(n, pt, Vec::new()));
                    }
                    for level in &mut levels[iu + 1..=j] {
                        level.gens.push(res.clone());
                        level.rebuild(n);
                    }
                    jump = Some(j);
                    break 'scan;
                }
            }
        }
        i = match jump {
            Some(j) => j as isize,
            None => i - 1,
        };
    }
    levels
}

impl GroupHandle {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Builds a BSGS whose base starts with `prefix` (redundant points are
    /// kept, so level `i` always stabilizes `prefix[..i]`).
    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: &[usize],
    ) -> Result<Self, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        if prefix.iter().any(|&b| b >= degree) {
            return Err(PermError::DegreeMismatch {
                expected: degree,
                found: prefix.iter().copied().max().unwrap_or(0) + 1,
            });
        }
        let levels = schreier_sims(degree, &generators, prefix);
        Ok(GroupHandle {
            degree,
            generators,
            levels,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut seen = BTreeSet::new();
        for l in &self.levels {
            seen.extend(l.gens.iter().cloned());
        }
        seen.into_iter().collect()
    }

    /// Fundamental orbit sizes, one per base point.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, j) = strip(&self.levels, g, 0);
        j == self.levels.len() && res.is_identity()
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for l in &self.levels {
            let b = l.orbit[rng.gen_range(0..l.orbit.len())];
            acc = l.transversal[b].as_ref().unwrap().then(&acc);
        }
        acc
    }

    /// Orbit of `point` under the whole group.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut i = 0;
        while i < out.len() {
            let b = out[i];
            for g in &self.generators {
                let c = g.image(b);
                if !seen[c] {
                    seen[c] = true;
                    out.push(c);
                }
            }
            i += 1;
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Largest `k <= max_k` such that the group is k-transitive: the
    /// stabilizer chain along the base `0, 1, ..., k-1` must have orbit
    /// sizes `n, n-1, ..., n-k+1`.
    pub fn transitivity_degree(&self, max_k: usize) -> usize {
        let n = self.degree;
        let k = max_k.min(n);
        if k == 0 {
            return 0;
        }
        let prefix: Vec<usize> = (0..k).collect();
        let h = GroupHandle::with_base_prefix(n, self.generators.clone(), &prefix)
            .expect("same degree");
        h.levels
            .iter()
            .take(k)
            .enumerate()
            .take_while(|(i, l)| l.orbit.len() == n - i)
            .count()
    }

    /// Minimal-block test: for each `b != 0`, close the partition generated
    /// by `{0, b}` under the generators; primitive iff every closure is the
    /// single block.
    pub fn is_primitive(&self) -> bool {
        let n = self.degree;
        if !self.is_transitive() {
            return false;
        }
        if n <= 2 {
            return true;
        }
        (1..n).all(|b| minimal_block(n, &self.generators, b).len() == n)
    }

    /// Every element, streamed through a callback. Intended for tests.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        fn rec(levels: &[Level], depth: usize, acc: &Permutation, f: &mut impl FnMut(&Permutation)) {
            if depth == levels.len() {
                f(acc);
                return;
            }
            let l = &levels[depth];
            for &b in &l.orbit {
                let next = l.transversal[b].as_ref().unwrap().then(acc);
                rec(levels, depth + 1, &next, f);
            }
        }
        rec(&self.levels, 0, &Permutation::identity(self.degree), &mut f);
    }

    /// Set of cycle types over all elements, identity included.
    pub fn cycle_type_set(&self) -> Result<BTreeSet<CycleType>, PermError> {
        let order = self.order();
        if order > ENUMERATION_BUDGET {
            return Err(PermError::BudgetExceeded(order));
        }
        let n = self.degree;
        let codec = KeyCodec::new(n);
        if self.levels.is_empty() {
            return Ok(BTreeSet::from([CycleType::with_degree(&[], n)]));
        }
        // Expand the top levels into independent work items.
        let mut prefixes = vec![(0usize, raw_identity(n))];
        while prefixes.len() < 64 && prefixes[0].0 + 1 < self.levels.len() {
            prefixes = prefixes
                .into_iter()
                .flat_map(|(d, acc)| {
                    let l = &self.levels[d];
                    l.orbit
                        .iter()
                        .map(|&b| (d + 1, compose(l.transversal[b].as_ref().unwrap().raw(), &acc)))
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        let keys = prefixes
            .par_iter()
            .fold(FxHashSet::default, |mut set, (d, acc)| {
                enumerate_keys(&self.levels, *d, acc, &codec, &mut set);
                set
            })
            .reduce(FxHashSet::default, |mut a, b| {
                a.extend(b);
                a
            });
        Ok(keys.into_iter().map(|k| codec.decode(k)).collect())
    }
}

fn raw_identity(n: usize) -> Vec<u8> {
    (0..n as u8).collect()
}

/// `u` first, then `acc`.
fn compose(u: &[u8], acc: &[u8]) -> Vec<u8> {
    u.iter().map(|&i| acc[i as usize]).collect()
}

fn enumerate_keys(levels: &[Level], depth: usize, acc: &[u8], codec: &KeyCodec, out: &mut FxHashSet<u64>) {
    let l = &levels[depth];
    let n = acc.len();
    if depth + 1 == levels.len() {
        let mut img = [0u8; MAX_DEGREE];
        let mut last = u64::MAX;
        for &b in &l.orbit {
            let u = l.transversal[b].as_ref().unwrap().raw();
            for (dst, &i) in img[..n].iter_mut().zip(u) {
                *dst = acc[i as usize];
            }
            let key = codec.key_of(&img[..n]);
            if key != last {
                out.insert(key);
                last = key;
            }
        }
        return;
    }
    let mut next = vec![0u8; n];
    for &b in &l.orbit {
        let u = l.transversal[b].as_ref().unwrap().raw();
        for (dst, &i) in next.iter_mut().zip(u) {
            *dst = acc[i as usize];
        }
        enumerate_keys(levels, depth + 1, &next, codec, out);
    }
}

/// Mixed-radix encoding of a cycle type: digit `l` counts cycles of
/// length `l`, with radix `n / l + 1`.
struct KeyCodec {
    n: usize,
    weight: Vec<u64>,
}

impl KeyCodec {
    fn new(n: usize) -> Self {
        let mut weight = vec![0u64; n + 1];
        let mut w: u64 = 1;
        for (l, slot) in weight.iter_mut().enumerate().skip(1) {
            *slot = w;
            w = w.checked_mul((n / l + 1) as u64).expect("key fits in u64 for n <= 30");
        }
        KeyCodec { n, weight }
    }

    #[inline]
    fn key_of(&self, image: &[u8]) -> u64 {
        let mut rest: u32 = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        let mut key = 0;
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut len = 0;
            let mut i = start;
            loop {
                rest &= !(1 << i);
                i = image[i] as usize;
                len += 1;
                if i == start {
                    break;
                }
            }
            key += self.weight[len];
        }
        key
    }

    fn decode(&self, mut key: u64) -> CycleType {
        let mut parts = Vec::new();
        for l in 1..=self.n {
            let radix = (self.n / l + 1) as u64;
            let c = key % radix;
            key /= radix;
            parts.extend(std::iter::repeat(l).take(c as usize));
        }
        CycleType::new(parts)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Atkinson's closure: the finest block system in which 0 and `b` share
/// a block; returns the block containing 0.
fn minimal_block(n: usize, gens: &[Permutation], b: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut queue = VecDeque::new();
    parent[b] = 0;
    queue.push_back((0usize, b));
    while let Some((x, y)) = queue.pop_front() {
        for g in gens {
            let gx = find(&mut parent, g.image(x));
            let gy = find(&mut parent, g.image(y));
            if gx != gy {
                parent[gy] = gx;
                queue.push_back((gx, gy));
            }
        }
    }
    let r = find(&mut parent, 0);
    (0..n).filter(|&i| find(&mut parent, i) == r).collect()
}
