//! Fibers of the induced curve over the base line.
//!
//! A fiber point is a set of sheet labels of the underlying cover:
//!
//! * `Subset { n }`: the `n`-subsets of `n + 2` sheets, indexed in colex order;
//! * `Grid { m }`: pairs `{x_i, y_j}` with `x_i = i` and `y_j = m + j`,
//!   indexed row-major as `i * m + j`.
//!
//! Over a special branch point some sheets come together. The merged model
//! identifies two fiber points when they give the same multiset of merged
//! sheets; the orbit model uses the cycles of the induced local monodromy.
//! Both give the same points over unbranched fibers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::covering::riemann_hurwitz_genus_for;
use crate::error::{Error, Result};
use crate::perm::{binomial, colex_rank, colex_unrank, induced_subset_action, orbits, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiberKind {
    /// `n`-subsets of `n + 2` sheets; adjacency `|I ∩ J| = n - 2`.
    Subset { n: usize },
    /// `m × m` grid of points `x_i + y_j`; adjacency: exactly one shared
    /// coordinate.
    Grid { m: usize },
}

impl FiberKind {
    pub fn subset(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::ParameterTooSmall { param: "n", value: n });
        }
        Ok(FiberKind::Subset { n })
    }

    pub fn grid(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::ParameterTooSmall { param: "m", value: m });
        }
        Ok(FiberKind::Grid { m })
    }

    /// Number of sheets of the underlying cover.
    pub fn sheets(&self) -> usize {
        match *self {
            FiberKind::Subset { n } => n + 2,
            FiberKind::Grid { m } => 2 * m,
        }
    }

    /// Number of points in a generic fiber, the degree of the induced curve
    /// over the base.
    pub fn size(&self) -> usize {
        match *self {
            FiberKind::Subset { n } => binomial(n + 2, n) as usize,
            FiberKind::Grid { m } => m * m,
        }
    }

    /// Intersection size that makes two points adjacent under the
    /// correspondence.
    pub fn meet(&self) -> usize {
        match *self {
            FiberKind::Subset { n } => n - 2,
            FiberKind::Grid { .. } => 1,
        }
    }

    /// Common row sum of the correspondence.
    pub fn bidegree(&self) -> usize {
        match *self {
            FiberKind::Subset { n } => n * (n - 1) / 2,
            FiberKind::Grid { m } => 2 * (m - 1),
        }
    }

    /// Sorted 0-based sheet labels of a fiber point.
    pub fn point(&self, index: usize) -> Vec<usize> {
        match *self {
            FiberKind::Subset { n } => colex_unrank(n, index as u64),
            FiberKind::Grid { m } => vec![index / m, m + index % m],
        }
    }

    /// Index of the fiber point with the given sorted sheet labels.
    pub fn index_of(&self, labels: &[usize]) -> Option<usize> {
        match *self {
            FiberKind::Subset { n } => {
                let ok = labels.len() == n
                    && labels.windows(2).all(|w| w[0] < w[1])
                    && labels.last().is_some_and(|&x| x < n + 2);
                ok.then(|| colex_rank(labels) as usize)
            }
            FiberKind::Grid { m } => match *labels {
                [a, b] if a < m && (m..2 * m).contains(&b) => Some(a * m + (b - m)),
                _ => None,
            },
        }
    }

    pub fn point_name(&self, index: usize) -> String {
        let labels: Vec<String> = match *self {
            FiberKind::Subset { .. } => self.point(index).iter().map(|x| (x + 1).to_string()).collect(),
            FiberKind::Grid { m } => vec![(index / m + 1).to_string(), (index % m + 1).to_string()],
        };
        format!("P_{{{}}}", labels.join(","))
    }

    /// Points adjacent to `index` under the correspondence.
    pub fn neighbours(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        let p = self.point(index);
        let meet = self.meet();
        (0..self.size()).filter(move |&j| intersection_size(&p, &self.point(j)) == meet)
    }

    /// Action of a sheet permutation on fiber points.
    pub fn induced(&self, sheets: &Permutation) -> Result<Permutation> {
        if sheets.degree() != self.sheets() {
            return Err(Error::DegreeMismatch { left: self.sheets(), right: sheets.degree() });
        }
        match *self {
            FiberKind::Subset { n } => induced_subset_action(sheets, n),
            FiberKind::Grid { .. } => {
                let images = (0..self.size())
                    .map(|i| {
                        let mut image: Vec<usize> =
                            self.point(i).into_iter().map(|x| sheets.apply(x)).collect();
                        image.sort_unstable();
                        self.index_of(&image).ok_or_else(|| {
                            Error::InvalidMonodromy(format!(
                                "{sheets:?} sends {} outside the grid",
                                self.point_name(i)
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Permutation::from_images(images)
            }
        }
    }

    /// The sheet permutation of a single simple ramification point,
    /// `(1 2)`.
    pub fn simple_monodromy(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.sheets()).collect();
        images.swap(0, 1);
        Permutation::from_images(images).expect("transposition")
    }
}

pub(crate) fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// A set partition of the sheet labels: which sheets meet over a branch
/// point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SheetPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl SheetPartition {
    fn from_blocks(sheets: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; sheets];
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort();
        for (id, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= sheets {
                    return Err(Error::InvalidPartition(format!(
                        "label {} outside 1..={sheets}",
                        x + 1
                    )));
                }
                if block_of[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("label {} appears twice", x + 1)));
                }
                block_of[x] = id;
            }
        }
        if let Some(missing) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "label {} is not covered",
                missing + 1
            )));
        }
        Ok(Self { blocks, block_of })
    }

    /// Parses 1-based blocks; they must cover `1..=sheets` exactly.
    pub fn from_one_based(sheets: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| {
                        x.checked_sub(1)
                            .ok_or_else(|| Error::InvalidPartition("labels are 1-based".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_blocks(sheets, blocks)
    }

    pub fn discrete(sheets: usize) -> Self {
        Self::from_blocks(sheets, (0..sheets).map(|x| vec![x]).collect()).expect("discrete")
    }

    /// The cycle partition of a local monodromy.
    pub fn from_permutation(p: &Permutation) -> Self {
        Self::from_blocks(p.degree(), p.cycles()).expect("cycles partition")
    }

    /// Grid partition from separate 1-based row and column partitions of
    /// `1..=m`.
    pub fn grid(m: usize, rows: &[Vec<usize>], cols: &[Vec<usize>]) -> Result<Self> {
        let mut blocks = rows.to_vec();
        blocks.extend(cols.iter().map(|b| b.iter().map(|&x| x + m).collect()));
        Self::from_one_based(2 * m, &blocks)
    }

    pub fn sheets(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, sheet: usize) -> usize {
        self.block_of[sheet]
    }

    pub fn one_based(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.iter().map(|x| x + 1).collect()).collect()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Each block as one ascending cycle.
    pub fn canonical_permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.sheets()).collect();
        for block in &self.blocks {
            for (i, &x) in block.iter().enumerate() {
                images[x] = block[(i + 1) % block.len()];
            }
        }
        Permutation::from_images(images).expect("block cycles")
    }

    /// Sorted multiset of block ids of a set of sheets: the image point in the
    /// symmetric product.
    pub fn multiset(&self, labels: &[usize]) -> Vec<usize> {
        let mut m: Vec<usize> = labels.iter().map(|&x| self.block_of[x]).collect();
        m.sort_unstable();
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FiberModel {
    /// Fiber points identified by equal multisets of merged sheets;
    /// ramification index is the class size.
    #[serde(rename = "paper")]
    Merged,
    /// Fiber points are the cycles of the induced monodromy.
    #[serde(rename = "monodromy")]
    Orbit,
}

impl FiberModel {
    pub fn name(&self) -> &'static str {
        match self {
            FiberModel::Merged => "paper",
            FiberModel::Orbit => "monodromy",
        }
    }
}

/// Fiber points over one branch point that the model identifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberClass {
    /// Generic-fiber indices, ascending.
    pub members: Vec<usize>,
    /// Block ids (with repetition) of the common image point.
    pub block_multiset: Vec<usize>,
    /// Ramification index, `members.len()`.
    pub index: usize,
}

impl FiberClass {
    pub fn representative(&self) -> usize {
        self.members[0]
    }
}

fn classes_by_key<K: Ord>(size: usize, key: impl Fn(usize) -> K, multiset: impl Fn(usize) -> Vec<usize>) -> Vec<FiberClass> {
    let mut groups: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for i in 0..size {
        groups.entry(key(i)).or_default().push(i);
    }
    let mut classes: Vec<FiberClass> = groups
        .into_values()
        .map(|members| FiberClass {
            block_multiset: multiset(members[0]),
            index: members.len(),
            members,
        })
        .collect();
    classes.sort_by_key(FiberClass::representative);
    classes
}

/// Merged-model classes of a fiber, ordered by least member.
pub fn merged_classes(kind: FiberKind, partition: &SheetPartition) -> Result<Vec<FiberClass>> {
    if partition.sheets() != kind.sheets() {
        return Err(Error::DegreeMismatch { left: kind.sheets(), right: partition.sheets() });
    }
    let multiset = |i| partition.multiset(&kind.point(i));
    Ok(classes_by_key(kind.size(), multiset, multiset))
}

/// Orbit-model classes: cycles of the induced permutation.
pub fn orbit_classes(kind: FiberKind, monodromy: &Permutation) -> Result<Vec<FiberClass>> {
    let induced = kind.induced(monodromy)?;
    let partition = SheetPartition::from_permutation(monodromy);
    let mut orbit_of = vec![0; kind.size()];
    for (id, orbit) in orbits(kind.size(), &[induced])?.iter().enumerate() {
        for &x in orbit {
            orbit_of[x] = id;
        }
    }
    Ok(classes_by_key(kind.size(), |i| orbit_of[i], |i| partition.multiset(&kind.point(i))))
}

pub fn fiber_classes(kind: FiberKind, monodromy: &Permutation, model: FiberModel) -> Result<Vec<FiberClass>> {
    match model {
        FiberModel::Merged => merged_classes(kind, &SheetPartition::from_permutation(monodromy)),
        FiberModel::Orbit => orbit_classes(kind, monodromy),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialFiberModel {
    pub model: FiberModel,
    pub classes: Vec<FiberClass>,
    pub w_contribution: u64,
}

impl SpecialFiberModel {
    pub fn new(model: FiberModel, classes: Vec<FiberClass>) -> Self {
        let w_contribution = classes.iter().map(|c| c.index as u64 - 1).sum();
        Self { model, classes, w_contribution }
    }

    /// Ramification indices greater than one, descending.
    pub fn ramification_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = self.classes.iter().map(|c| c.index).filter(|&i| i > 1).collect();
        idx.sort_unstable_by(|a, b| b.cmp(a));
        idx
    }
}

pub fn special_fiber(kind: FiberKind, monodromy: &Permutation, model: FiberModel) -> Result<SpecialFiberModel> {
    Ok(SpecialFiberModel::new(model, fiber_classes(kind, monodromy, model)?))
}

/// Merged classes of the subset fiber over a point where the sheets meet
/// according to `identification`.
pub fn merged_fiber(n: usize, identification: &SheetPartition) -> Result<Vec<FiberClass>> {
    merged_classes(FiberKind::subset(n)?, identification)
}

/// Orbit model of the subset fiber under a local monodromy of `n + 2`
/// sheets.
pub fn orbit_fiber(n: usize, local_monodromy: &Permutation) -> Result<SpecialFiberModel> {
    special_fiber(FiberKind::subset(n)?, local_monodromy, FiberModel::Orbit)
}

/// Branch data of the induced curve over the base line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedCurve {
    pub kind: FiberKind,
    /// Local monodromies on the sheets over each special branch point.
    pub special_fibers: Vec<Permutation>,
    /// Branch points with a single simple ramification of the cover.
    pub simple_count: u64,
    /// Explicit generating tuple of local monodromies, if known.
    pub generators: Option<Vec<Permutation>>,
}

impl InducedCurve {
    pub fn new(kind: FiberKind, special_fibers: Vec<Permutation>, simple_count: u64) -> Result<Self> {
        if let Some(p) = special_fibers.iter().find(|p| p.degree() != kind.sheets()) {
            return Err(Error::DegreeMismatch { left: kind.sheets(), right: p.degree() });
        }
        for p in &special_fibers {
            kind.induced(p)?;
        }
        Ok(Self { kind, special_fibers, simple_count, generators: None })
    }

    pub fn with_generators(mut self, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(p) = generators.iter().find(|p| p.degree() != self.kind.sheets()) {
            return Err(Error::DegreeMismatch { left: self.kind.sheets(), right: p.degree() });
        }
        self.generators = Some(generators);
        Ok(self)
    }

    pub fn special_models(&self, model: FiberModel) -> Result<Vec<SpecialFiberModel>> {
        self.special_fibers.iter().map(|p| special_fiber(self.kind, p, model)).collect()
    }

    /// Ramification degree of the induced curve over the base.
    pub fn ramification_degree(&self, model: FiberModel) -> Result<u64> {
        let simple = special_fiber(self.kind, &self.kind.simple_monodromy(), model)?.w_contribution;
        let special: u64 = self.special_models(model)?.iter().map(|f| f.w_contribution).sum();
        self.simple_count
            .checked_mul(simple)
            .and_then(|s| s.checked_add(special))
            .ok_or(Error::Overflow("ramification degree"))
    }

    pub fn genus(&self, model: FiberModel) -> Result<u64> {
        let w = self.ramification_degree(model)?;
        let scenario = format!("induced curve ({} model)", model.name());
        riemann_hurwitz_genus_for(&scenario, self.kind.size() as u64, 0, w)
    }

    /// The explicit tuple if present; otherwise the special fibers followed
    /// by adjacent transpositions `(i i+1)`, one per simple branch point.
    pub fn generating_tuple(&self) -> (Vec<Permutation>, bool) {
        if let Some(g) = &self.generators {
            return (g.clone(), false);
        }
        let sheets = self.kind.sheets();
        let mut gens = self.special_fibers.clone();
        let simple_labels = match self.kind {
            FiberKind::Subset { .. } => sheets,
            FiberKind::Grid { m } => m,
        };
        for k in 0..self.simple_count.min(2 * sheets as u64) as usize {
            let i = k % (simple_labels - 1);
            let mut images: Vec<usize> = (0..sheets).collect();
            images.swap(i, i + 1);
            gens.push(Permutation::from_images(images).expect("transposition"));
        }
        (gens, true)
    }
}

pub fn curve_genus(curve: &InducedCurve, model: FiberModel) -> Result<u64> {
    curve.genus(model)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Irreducibility {
    pub transitive: bool,
    pub orbit_count: usize,
    pub synthesized: bool,
}

/// Transitivity of the induced monodromy on a generic fiber.
pub fn irreducibility_check(curve: &InducedCurve) -> Result<Irreducibility> {
    let (gens, synthesized) = curve.generating_tuple();
    let induced = gens.iter().map(|g| curve.kind.induced(g)).collect::<Result<Vec<_>>>()?;
    let orbit_count = orbits(curve.kind.size(), &induced)?.len();
    Ok(Irreducibility { transitive: orbit_count == 1, orbit_count, synthesized })
}
