//! Assembly of the Prym–Tyurin verdict for a scenario.
//!
//! For a correspondence of bidegree `(d, d)` with exponent `q` and `Δ.D`
//! fixed points, the trace of `1 - γ` gives
//! `q · dim P = g_C - d + Δ.D / 2`. A non-integral right-hand side divided
//! by `q` means the inputs are inconsistent; it is reported as such and
//! never rounded.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::correspondence::{build_correspondence, identity_report, render_rational, IdentityReport};
use crate::error::{Error, Result};
use crate::fiber::{irreducibility_check, FiberKind, FiberModel, Irreducibility};
use crate::fixed_points::{fixed_point_scan, nesting_search, verify_certificate, FixedPointReport, NestingOutcome};
use crate::scenario::{BaseCover, Scenario};

/// An exact rational that serializes as a JSON integer when integral and as
/// a `"p/q"` string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exact(pub BigRational);

impl Exact {
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl std::fmt::Display for Exact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render_rational(&self.0))
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            let int: BigInt = self.0.to_integer();
            match i64::try_from(&int) {
                Ok(v) => serializer.serialize_i64(v),
                Err(_) => serializer.serialize_str(&int.to_string()),
            }
        } else {
            serializer.serialize_str(&render_rational(&self.0))
        }
    }
}

/// `(g_C - d + Δ.D / 2) / q`, exact.
pub fn prym_dimension(genus: u64, bidegree: u64, delta_dot_d: u64, q: u64) -> Result<BigRational> {
    if q < 2 {
        return Err(Error::ExponentTooSmall(q.to_string()));
    }
    let big = |x: u64| BigRational::from_integer(BigInt::from(x));
    let trace = big(genus) - big(bidegree) + big(delta_dot_d) / big(2);
    let dim = trace / big(q);
    if dim.is_negative() {
        return Err(Error::NegativeDimension(render_rational(&dim)));
    }
    Ok(dim)
}

/// `g_C + Δ.D / 2 - 1`.
pub fn epsilon_degree(genus: u64, delta_dot_d: u64) -> Result<i64> {
    if !delta_dot_d.is_multiple_of(2) {
        return Err(Error::OddFixedPointCount(delta_dot_d));
    }
    let value = i128::from(genus) + i128::from(delta_dot_d / 2) - 1;
    i64::try_from(value).map_err(|_| Error::Overflow("epsilon degree"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Unchecked {
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub quadratic_ok: bool,
    pub fixed_even: bool,
    pub n_le_d: bool,
    pub nesting_ok: bool,
    pub irreducible: bool,
    pub dimension_integral: bool,
    pub primitivity: Unchecked,
    pub smoothness: Unchecked,
}

impl Hypotheses {
    pub fn all_verified(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.quadratic_ok, "quadratic_ok"),
            (self.fixed_even, "fixed_even"),
            (self.n_le_d, "n_le_d"),
            (self.nesting_ok, "nesting_ok"),
            (self.irreducible, "irreducible"),
            (self.dimension_integral, "dimension_integral"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberSummary {
    pub fiber: usize,
    pub monodromy: crate::perm::Permutation,
    pub ramification_indices: Vec<usize>,
    pub w_contribution: u64,
    pub fixed_points: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub model: FiberModel,
    pub ramification_degree: u64,
    pub genus: u64,
    pub special_fibers: Vec<FiberSummary>,
    pub fixed_points: FixedPointReport,
    pub dim_p: Option<Exact>,
    pub epsilon_degree: Option<i64>,
    pub nesting: NestingOutcome,
    pub certificate_rechecked: bool,
    pub hypotheses: Hypotheses,
    pub degenerate: bool,
    pub inconsistencies: Vec<String>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimedGenusCheck {
    pub claimed: u64,
    pub recomputed: u64,
    pub dim_p_with_claimed: Option<Exact>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrymReport {
    pub scenario: Scenario,
    pub fiber_kind: FiberKind,
    pub fiber_degree: usize,
    pub base_cover: Option<BaseCover>,
    pub bidegree: usize,
    pub identity: IdentityReport,
    pub q: Option<u64>,
    pub irreducibility: Irreducibility,
    pub models: Vec<ModelReport>,
    pub claimed_genus: Option<ClaimedGenusCheck>,
    pub notes: Vec<String>,
}

impl PrymReport {
    /// The model whose verdict decides the outcome.
    pub fn primary(&self) -> &ModelReport {
        &self.models[0]
    }

    pub fn model(&self, model: FiberModel) -> Option<&ModelReport> {
        self.models.iter().find(|m| m.model == model)
    }

    pub fn verified(&self) -> bool {
        self.primary().hypotheses.all_verified()
    }
}

fn model_report(
    curve: &crate::fiber::InducedCurve,
    model: FiberModel,
    bidegree: usize,
    q: Option<u64>,
    irreducible: bool,
) -> Result<ModelReport> {
    let w = curve.ramification_degree(model)?;
    let genus = curve.genus(model)?;
    let (fixed, actions) = fixed_point_scan(curve, model)?;
    let special_fibers = curve
        .special_models(model)?
        .into_iter()
        .zip(&actions)
        .enumerate()
        .map(|(fiber, (f, action))| FiberSummary {
            fiber,
            monodromy: curve.special_fibers[fiber].clone(),
            ramification_indices: f.ramification_indices(),
            w_contribution: f.w_contribution,
            fixed_points: action.fixed_count(),
        })
        .collect();

    let nesting = nesting_search(&fixed, &actions, bidegree);
    let certificate_rechecked = match &nesting {
        NestingOutcome::Certified(cert) => match cert.fiber {
            Some(f) => {
                verify_certificate(curve.kind, &curve.special_fibers[f], model, cert, cert.points.len()).is_ok()
            }
            None => true,
        },
        NestingOutcome::Failed { .. } => false,
    };

    let mut inconsistencies = Vec::new();
    let dim_p = match q.map(|q| prym_dimension(genus, bidegree as u64, fixed.delta_dot_d, q)) {
        Some(Ok(dim)) => {
            if !dim.is_integer() {
                inconsistencies.push(format!("dim P = {} is not an integer", render_rational(&dim)));
            }
            Some(Exact(dim))
        }
        Some(Err(e)) => {
            inconsistencies.push(e.to_string());
            None
        }
        None => None,
    };
    let epsilon_degree = epsilon_degree(genus, fixed.delta_dot_d).ok();

    let hypotheses = Hypotheses {
        quadratic_ok: q.is_some(),
        fixed_even: fixed.is_even(),
        n_le_d: fixed.half.is_some_and(|h| h <= bidegree as u64),
        nesting_ok: certificate_rechecked,
        irreducible,
        dimension_integral: dim_p.as_ref().is_some_and(Exact::is_integer),
        primitivity: Unchecked::Unchecked,
        smoothness: Unchecked::Unchecked,
    };
    let degenerate = dim_p.as_ref().is_some_and(|d| d.0.is_zero());
    let verdict = match q {
        Some(q) if hypotheses.all_verified() => {
            let base = format!(
                "Prym-Tyurin of exponent {q}: combinatorial hypotheses verified; \
                 analytic hypotheses (primitivity, smoothness) assumed"
            );
            if degenerate { format!("{base}; degenerate (P is trivial)") } else { base }
        }
        _ => format!("criterion not established: {} failed", hypotheses.failures().join(", ")),
    };

    Ok(ModelReport {
        model,
        ramification_degree: w,
        genus,
        special_fibers,
        fixed_points: fixed,
        dim_p,
        epsilon_degree,
        nesting,
        certificate_rechecked,
        hypotheses,
        degenerate,
        inconsistencies,
        verdict,
    })
}

/// Runs the whole pipeline for a scenario.
pub fn assemble(scenario: &Scenario) -> Result<PrymReport> {
    let (curve, base_cover) = scenario.build()?;
    let kind = curve.kind;
    let generic = build_correspondence(kind);
    let identity = identity_report(&generic)?;
    let q = identity.q;
    let irreducibility = irreducibility_check(&curve)?;

    let models = scenario
        .model_choice()
        .models()
        .into_iter()
        .map(|m| model_report(&curve, m, generic.bidegree, q, irreducibility.transitive))
        .collect::<Result<Vec<_>>>()?;

    let mut notes = vec![
        "the Jacobian-level equation is read off the fiber identity: U acts as zero because the base is P^1".to_string(),
        "unchecked analytic hypotheses: primitivity of 1-γ, smoothness of C, principal polarization Ξ with i*Θ = qΞ".to_string(),
    ];
    if irreducibility.synthesized {
        notes.push("irreducibility checked on a synthesized monodromy tuple".to_string());
    }
    if let Some(g) = scenario.g {
        notes.push(format!("the construction moves in a {}-dimensional family", 2 * g + 1));
    }

    let claimed_genus = match (scenario.claimed_genus, models.iter().find(|m| m.model == FiberModel::Merged)) {
        (Some(claimed), Some(merged)) => {
            let dim = q.and_then(|q| prym_dimension(claimed, generic.bidegree as u64, merged.fixed_points.delta_dot_d, q).ok());
            let consistent = claimed == merged.genus && dim.as_ref().is_some_and(|d| d.is_integer());
            if !consistent {
                notes.push(format!(
                    "claimed genus {claimed} is inconsistent: recomputed g_C = {}, and the claimed value gives dim P = {}",
                    merged.genus,
                    dim.as_ref().map_or("undefined".to_string(), render_rational)
                ));
            }
            Some(ClaimedGenusCheck { claimed, recomputed: merged.genus, dim_p_with_claimed: dim.map(Exact), consistent })
        }
        _ => None,
    };

    Ok(PrymReport {
        scenario: scenario.clone(),
        fiber_kind: kind,
        fiber_degree: kind.size(),
        base_cover,
        bidegree: generic.bidegree,
        identity,
        q,
        irreducibility,
        models,
        claimed_genus,
        notes,
    })
}
