//! Scenario files and the builtin constructions.
//!
//! A `subset` scenario describes a cover `X → P¹` of degree `n + 2` with
//! genus `gx` and its special fibers (set partitions of the sheets); the
//! remaining ramification is simple. A `grid` scenario is the degree-9
//! cover of the line obtained from a triple cover with two simple
//! ramification points over a hyperelliptic curve of genus `g`.

use serde::{Deserialize, Serialize};

use crate::covering::{simple_budget, BranchFiber, CoveringData};
use crate::error::{Error, Result};
use crate::fiber::{FiberKind, FiberModel, InducedCurve, SheetPartition};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    Subset,
    Grid,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelChoice {
    Paper,
    Monodromy,
    #[default]
    Both,
}

impl ModelChoice {
    /// Models to compute; the first one carries the verdict.
    pub fn models(&self) -> Vec<FiberModel> {
        match self {
            ModelChoice::Paper => vec![FiberModel::Merged],
            ModelChoice::Monodromy => vec![FiberModel::Orbit],
            ModelChoice::Both => vec![FiberModel::Merged, FiberModel::Orbit],
        }
    }
}

impl std::str::FromStr for ModelChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "merged" => Ok(ModelChoice::Paper),
            "monodromy" | "orbit" => Ok(ModelChoice::Monodromy),
            "both" => Ok(ModelChoice::Both),
            other => Err(Error::schema("model", format!("unknown model `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: ScenarioKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Subset size (subset kind).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Genus of the cover `X` (subset kind).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gx: Option<u64>,
    /// Genus of the hyperelliptic base (grid kind).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<u64>,
    /// 1-based set partitions of the sheets, one per special branch point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special_fibers: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelChoice>,
    /// Explicit generating tuple of local monodromies on the sheets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<Vec<Permutation>>,
    /// A genus value asserted elsewhere, checked against the recomputed one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_genus: Option<u64>,
}

/// Degree of the triple cover in the grid construction.
pub const GRID_SHEETS_PER_SIDE: usize = 3;

/// The cover `f: X → P¹` underlying a subset scenario.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseCover {
    pub degree: usize,
    pub genus: u64,
    pub ramification_degree: u64,
    pub special_ramification: u64,
    pub simple_branch_points: u64,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::schema("scenario", e.to_string()))
    }

    /// The covering-of-P¹ case with `n = 2, 3` (two fibers with two simple
    /// ramifications) or `n = 4` (two fibers with three).
    pub fn pn_case(n: usize, gx: u64) -> Result<Self> {
        let fiber: Vec<Vec<usize>> = match n {
            2 => vec![vec![1, 2], vec![3, 4]],
            3 => vec![vec![1, 2], vec![3, 4], vec![5]],
            4 => vec![vec![1, 2], vec![3, 4], vec![5, 6]],
            _ => return Err(Error::schema("n", format!("builtin pn-case supports n = 2, 3, 4, got {n}"))),
        };
        Ok(Scenario {
            kind: ScenarioKind::Subset,
            name: Some(format!("pn-case n={n} gx={gx}")),
            n: Some(n),
            gx: Some(gx),
            g: None,
            special_fibers: Some(vec![fiber.clone(), fiber]),
            model: None,
            monodromy: None,
            // the n = 4 genus as usually quoted for this construction
            claimed_genus: (n == 4).then_some(4 * gx + 5),
        })
    }

    pub fn hyperelliptic(g: u64) -> Self {
        Scenario {
            kind: ScenarioKind::Grid,
            name: Some(format!("hyperelliptic g={g}")),
            n: None,
            gx: None,
            g: Some(g),
            special_fibers: None,
            model: None,
            monodromy: None,
            claimed_genus: None,
        }
    }

    pub fn with_model(mut self, model: ModelChoice) -> Self {
        self.model = Some(model);
        self
    }

    pub fn model_choice(&self) -> ModelChoice {
        self.model.unwrap_or_default()
    }

    pub fn label(&self) -> String {
        fn show<T: ToString>(x: Option<T>) -> String {
            x.map_or("?".into(), |v| v.to_string())
        }
        self.name.clone().unwrap_or_else(|| match self.kind {
            ScenarioKind::Subset => format!("subset n={} gx={}", show(self.n), show(self.gx)),
            ScenarioKind::Grid => format!("grid g={}", show(self.g)),
        })
    }

    fn require<T: Copy>(value: Option<T>, field: &str) -> Result<T> {
        value.ok_or_else(|| Error::schema(field, "required for this kind"))
    }

    fn forbid<T>(value: &Option<T>, field: &str) -> Result<()> {
        match value {
            Some(_) => Err(Error::schema(field, "not allowed for this kind")),
            None => Ok(()),
        }
    }

    pub fn fiber_kind(&self) -> Result<FiberKind> {
        match self.kind {
            ScenarioKind::Subset => {
                let n = Self::require(self.n, "n")?;
                FiberKind::subset(n).map_err(|e| Error::schema("n", e.to_string()))
            }
            ScenarioKind::Grid => Ok(FiberKind::Grid { m: GRID_SHEETS_PER_SIDE }),
        }
    }

    /// Validates the scenario and builds the induced curve, plus the base
    /// cover for subset scenarios.
    pub fn build(&self) -> Result<(InducedCurve, Option<BaseCover>)> {
        let kind = self.fiber_kind()?;
        let (curve, base) = match self.kind {
            ScenarioKind::Subset => {
                Self::forbid(&self.g, "g")?;
                let gx = Self::require(self.gx, "gx")?;
                let partitions = self
                    .special_fibers
                    .as_ref()
                    .ok_or_else(|| Error::schema("special_fibers", "required for this kind"))?;
                let mut monodromies = Vec::new();
                let mut branch = Vec::new();
                for (i, blocks) in partitions.iter().enumerate() {
                    let field = format!("special_fibers[{i}]");
                    let p = SheetPartition::from_one_based(kind.sheets(), blocks)
                        .map_err(|e| Error::schema(&field, e.to_string()))?;
                    branch.push(
                        BranchFiber::new(p.block_sizes(), kind.sheets())
                            .map_err(|e| Error::schema(&field, e.to_string()))?,
                    );
                    monodromies.push(p.canonical_permutation());
                }
                let cover = CoveringData::new(kind.sheets(), 0, branch)?;
                let simple = simple_budget(&cover, gx).map_err(|e| Error::schema("gx", e.to_string()))?;
                let base = BaseCover {
                    degree: kind.sheets(),
                    genus: gx,
                    ramification_degree: cover.special_ramification() + simple,
                    special_ramification: cover.special_ramification(),
                    simple_branch_points: simple,
                };
                (InducedCurve::new(kind, monodromies, simple)?, Some(base))
            }
            ScenarioKind::Grid => {
                Self::forbid(&self.n, "n")?;
                Self::forbid(&self.gx, "gx")?;
                Self::forbid(&self.special_fibers, "special_fibers")?;
                let g = Self::require(self.g, "g")?;
                if g < 3 {
                    return Err(Error::schema("g", format!("hyperelliptic genus must be at least 3, got {g}")));
                }
                (InducedCurve::new(kind, hyperelliptic_fibers(g), 0)?, None)
            }
        };
        let curve = match &self.monodromy {
            Some(gens) => curve.with_generators(gens.clone()).map_err(|e| Error::schema("monodromy", e.to_string()))?,
            None => curve,
        };
        Ok((curve, base))
    }
}

/// Local monodromies of the degree-9 cover over its branch points: the two
/// branch points of the triple cover, where `x_1 = x_2`, followed by the
/// `2g + 2` Weierstrass points, where each `x_i` meets `y_{α(i)}`. `α`
/// alternates between the identity and the cycle `(1 2 3)` so that the
/// tuple acts transitively on the grid.
pub fn hyperelliptic_fibers(g: u64) -> Vec<Permutation> {
    let m = GRID_SHEETS_PER_SIDE;
    let mut branch: Vec<usize> = (0..2 * m).collect();
    branch.swap(0, 1);
    let branch = Permutation::from_images(branch).expect("transposition");
    let mut fibers = vec![branch.clone(), branch];
    for k in 0..(2 * g + 2) as usize {
        let alpha = |i: usize| if k % 2 == 0 { i } else { (i + 1) % m };
        let mut images = vec![0; 2 * m];
        for i in 0..m {
            images[i] = m + alpha(i);
            images[m + alpha(i)] = i;
        }
        fibers.push(Permutation::from_images(images).expect("weierstrass swap"));
    }
    fibers
}
