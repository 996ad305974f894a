//! Branch data of a covering and Riemann–Hurwitz bookkeeping.
//!
//! Branch points are anonymous: only the local monodromy partition over each
//! one enters any count.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::CycleType;

/// Local monodromy partition over one branch point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BranchFiber {
    partition: CycleType,
}

impl BranchFiber {
    pub fn new(parts: Vec<usize>, degree: usize) -> Result<Self> {
        let partition = CycleType::from_parts(parts);
        if partition.degree() != degree {
            return Err(Error::InvalidBranchFiber(format!(
                "parts {:?} sum to {}, not the covering degree {degree}",
                partition.parts(),
                partition.degree()
            )));
        }
        if partition.ramification() == 0 {
            return Err(Error::InvalidBranchFiber(format!(
                "{:?} is unbranched; omit it",
                partition.parts()
            )));
        }
        Ok(Self { partition })
    }

    /// A single simple ramification point: `{2, 1, .., 1}`.
    pub fn simple(degree: usize) -> Result<Self> {
        let mut parts = vec![2];
        parts.resize(degree.saturating_sub(1), 1);
        Self::new(parts, degree)
    }

    pub fn partition(&self) -> &CycleType {
        &self.partition
    }

    pub fn ramification(&self) -> u64 {
        self.partition.ramification() as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringData {
    pub degree: usize,
    pub base_genus: u64,
    pub special_fibers: Vec<BranchFiber>,
    /// Additional branch points, each with partition `{2, 1, .., 1}`.
    pub simple_extra: u64,
}

impl CoveringData {
    pub fn new(degree: usize, base_genus: u64, special_fibers: Vec<BranchFiber>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidBranchFiber("covering degree must be positive".into()));
        }
        if let Some(f) = special_fibers.iter().find(|f| f.partition.degree() != degree) {
            return Err(Error::InvalidBranchFiber(format!(
                "fiber {:?} does not match degree {degree}",
                f.partition.parts()
            )));
        }
        Ok(Self { degree, base_genus, special_fibers, simple_extra: 0 })
    }

    pub fn with_simple_extra(mut self, simple_extra: u64) -> Self {
        self.simple_extra = simple_extra;
        self
    }

    pub fn special_ramification(&self) -> u64 {
        self.special_fibers.iter().map(BranchFiber::ramification).sum()
    }
}

/// Total ramification `w = sum over branch fibers of sum (part - 1)`.
pub fn ramification_degree(c: &CoveringData) -> u64 {
    c.special_ramification() + c.simple_extra
}

/// Genus `g` with `2g - 2 = degree (2 base_genus - 2) + w`.
pub fn riemann_hurwitz_genus(degree: u64, base_genus: u64, w: u64) -> Result<u64> {
    riemann_hurwitz_genus_for("covering", degree, base_genus, w)
}

/// As [`riemann_hurwitz_genus`], naming the scenario in the validation error.
pub fn riemann_hurwitz_genus_for(scenario: &str, degree: u64, base_genus: u64, w: u64) -> Result<u64> {
    let fail = |reason| Error::GenusValidation {
        scenario: scenario.to_string(),
        degree,
        base_genus,
        w,
        reason,
    };
    let euler = i128::from(degree) * (2 * i128::from(base_genus) - 2) + i128::from(w);
    if euler % 2 != 0 {
        return Err(fail("odd 2g - 2 (parity failure)"));
    }
    if euler < -2 {
        return Err(fail("negative genus"));
    }
    u64::try_from(euler / 2 + 1).map_err(|_| Error::Overflow("riemann-hurwitz genus"))
}

/// Ramification the covering must have for its total space to reach
/// `upstairs_genus`.
pub fn required_ramification(degree: u64, base_genus: u64, upstairs_genus: u64) -> Result<u64> {
    let w = (2 * i128::from(upstairs_genus) - 2) - i128::from(degree) * (2 * i128::from(base_genus) - 2);
    if w < 0 {
        return Err(Error::Infeasible(format!(
            "genus {upstairs_genus} is below the unbranched genus of a degree {degree} cover of genus {base_genus}"
        )));
    }
    u64::try_from(w).map_err(|_| Error::Overflow("ramification degree"))
}

/// Number of extra simple branch points needed so the total ramification
/// matches `upstairs_genus`.
pub fn simple_budget(c: &CoveringData, upstairs_genus: u64) -> Result<u64> {
    let needed = required_ramification(c.degree as u64, c.base_genus, upstairs_genus)?;
    let special = c.special_ramification();
    needed.checked_sub(special).ok_or_else(|| {
        Error::Infeasible(format!(
            "special fibers already ramify {special} but genus {upstairs_genus} allows only {needed}"
        ))
    })
}

/// The JSON form of a covering scenario.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringScenario {
    pub degree: usize,
    pub base_genus: u64,
    pub special_fibers: Vec<Vec<usize>>,
    pub upstairs_genus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringSummary {
    pub degree: usize,
    pub base_genus: u64,
    pub upstairs_genus: u64,
    pub special_ramification: u64,
    pub simple_extra: u64,
    pub ramification_degree: u64,
}

impl CoveringScenario {
    pub fn to_covering(&self) -> Result<CoveringData> {
        let fibers = self
            .special_fibers
            .iter()
            .map(|parts| BranchFiber::new(parts.clone(), self.degree))
            .collect::<Result<Vec<_>>>()?;
        let data = CoveringData::new(self.degree, self.base_genus, fibers)?;
        let extra = simple_budget(&data, self.upstairs_genus)?;
        Ok(data.with_simple_extra(extra))
    }

    pub fn summarize(&self) -> Result<CoveringSummary> {
        let data = self.to_covering()?;
        let w = ramification_degree(&data);
        let genus =
            riemann_hurwitz_genus_for("covering scenario", data.degree as u64, data.base_genus, w)?;
        debug_assert_eq!(genus, self.upstairs_genus);
        Ok(CoveringSummary {
            degree: data.degree,
            base_genus: data.base_genus,
            upstairs_genus: genus,
            special_ramification: data.special_ramification(),
            simple_extra: data.simple_extra,
            ramification_degree: w,
        })
    }
}
