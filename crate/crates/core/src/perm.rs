//! Permutations of sheet labels, cycle data, orbits, and the action induced
//! on k-subsets.
//!
//! Labels are 0-based inside the crate. Everything that crosses an I/O
//! boundary (JSON, display, Python) uses 1-based one-line notation.
//!
//! k-subsets are indexed in colexicographic order: `S = {s_0 < s_1 < ...}`
//! has rank `sum_i C(s_i, i + 1)`. This order is fixed and every fiber index
//! reported by the crate uses it.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A bijection of `{0, .., degree - 1}` stored in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree).collect() }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{:?} is not a bijection of 0..{}",
                    images,
                    images.len()
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 1-based images, the external form.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(format!(
                "{images:?}: labels are 1-based"
            )));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Builds a permutation of the given degree from disjoint 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &label) in cycle.iter().enumerate() {
                if label == 0 || label > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle label {label} outside 1..={degree}"
                    )));
                }
                if touched[label - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "label {label} appears in more than one cycle"
                    )));
                }
                touched[label - 1] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                images[label - 1] = next - 1;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// Disjoint cycles, each starting at its least element, ordered by that
    /// element. Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_parts(self.cycles().iter().map(Vec::len).collect())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id_{}", self.degree());
        }
        for cycle in self.cycles().iter().filter(|c| c.len() > 1) {
            let labels: Vec<String> = cycle.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", labels.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_one_based(&images).map_err(serde::de::Error::custom)
    }
}

/// `(a ∘ b)(x) = a(b(x))`.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch { left: a.degree(), right: b.degree() });
    }
    Ok(Permutation { images: b.images.iter().map(|&x| a.images[x]).collect() })
}

/// Cycle lengths of a permutation, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `sum (part - 1)`, the contribution of one fiber to the ramification
    /// degree.
    pub fn ramification(&self) -> usize {
        self.parts.iter().map(|p| p - 1).sum()
    }

    /// Parts greater than one.
    pub fn nontrivial(&self) -> Vec<usize> {
        self.parts.iter().copied().filter(|&p| p > 1).collect()
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i as u64 + 1);
    }
    acc
}

/// Colex rank of a strictly increasing 0-based subset.
pub fn colex_rank(subset: &[usize]) -> u64 {
    subset.iter().enumerate().map(|(i, &s)| binomial(s, i + 1)).sum()
}

/// Inverse of [`colex_rank`] for subsets of size `n`.
pub fn colex_unrank(n: usize, mut rank: u64) -> Vec<usize> {
    let mut out = vec![0; n];
    for i in (0..n).rev() {
        // largest s with C(s, i+1) <= rank
        let mut s = i;
        while binomial(s + 1, i + 1) <= rank {
            s += 1;
        }
        rank -= binomial(s, i + 1);
        out[i] = s;
    }
    out
}

/// A k-subset of `{0, .., universe - 1}` identified by its colex rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetIndex {
    n: usize,
    universe: usize,
    rank: u64,
}

impl SubsetIndex {
    pub fn new(n: usize, universe: usize, rank: u64) -> Result<Self> {
        if n > universe || rank >= binomial(universe, n) {
            return Err(Error::RankOutOfRange { rank, n, universe });
        }
        Ok(Self { n, universe, rank })
    }

    /// Index of a 0-based subset given in any order.
    pub fn of(universe: usize, elements: &[usize]) -> Result<Self> {
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != elements.len() || sorted.last().is_some_and(|&x| x >= universe) {
            return Err(Error::InvalidPartition(format!(
                "{elements:?} is not a subset of 0..{universe}"
            )));
        }
        Ok(Self { n: sorted.len(), universe, rank: colex_rank(&sorted) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn elements(&self) -> Vec<usize> {
        colex_unrank(self.n, self.rank)
    }
}

/// The permutation of colex-ranked k-subsets induced by `p` acting
/// elementwise.
pub fn induced_subset_action(p: &Permutation, k: usize) -> Result<Permutation> {
    let degree = p.degree();
    if k == 0 || k > degree {
        return Err(Error::SubsetSizeOutOfRange { k, degree });
    }
    let count = binomial(degree, k);
    let images = (0..count)
        .map(|r| {
            let mut image: Vec<usize> = colex_unrank(k, r).into_iter().map(|x| p.apply(x)).collect();
            image.sort_unstable();
            colex_rank(&image) as usize
        })
        .collect();
    Permutation::from_images(images)
}

/// Orbits of the group generated by `generators` on `{0, .., degree - 1}`,
/// each sorted, ordered by least element. With no generators every point is
/// its own orbit.
pub fn orbits(degree: usize, generators: &[Permutation]) -> Result<Vec<Vec<usize>>> {
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
    }
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

pub fn is_transitive(degree: usize, generators: &[Permutation]) -> Result<bool> {
    Ok(orbits(degree, generators)?.len() == 1)
}
