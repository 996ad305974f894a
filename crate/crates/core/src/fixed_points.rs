//! Fixed points of the correspondence over special fibers and certificates
//! for the nesting condition.
//!
//! On a special fiber the correspondence acts on classes: `D(Q)` is the
//! multiset of classes of the neighbours of any representative of `Q`. A
//! class is fixed when it occurs in its own image; its multiplicity there is
//! its contribution to `Δ.D`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::{fiber_classes, FiberClass, FiberKind, FiberModel, InducedCurve, SheetPartition};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialFiberCorrespondence {
    pub kind: FiberKind,
    pub model: FiberModel,
    pub monodromy: Permutation,
    pub classes: Vec<FiberClass>,
    /// `action[p][q]`: multiplicity of class `q` in `D(p)`.
    pub action: Vec<Vec<u32>>,
}

impl SpecialFiberCorrespondence {
    pub fn multiplicity(&self, of: usize, image_of: usize) -> u32 {
        self.action[image_of][of]
    }

    pub fn self_multiplicity(&self, class: usize) -> u32 {
        self.action[class][class]
    }

    pub fn class_name(&self, class: usize) -> String {
        self.kind.point_name(self.classes[class].representative())
    }

    /// Fixed classes with their multiplicities, in class order.
    pub fn fixed_classes(&self) -> Vec<(usize, u32)> {
        (0..self.classes.len())
            .map(|c| (c, self.self_multiplicity(c)))
            .filter(|&(_, m)| m > 0)
            .collect()
    }

    pub fn fixed_count(&self) -> u64 {
        self.fixed_classes().iter().map(|&(_, m)| u64::from(m)).sum()
    }
}

/// Class-level action of the correspondence over a special fiber. Fails if
/// two representatives of one class disagree.
pub fn special_fiber_action(
    kind: FiberKind,
    monodromy: &Permutation,
    model: FiberModel,
) -> Result<SpecialFiberCorrespondence> {
    let classes = fiber_classes(kind, monodromy, model)?;
    let mut class_of = vec![0; kind.size()];
    for (id, class) in classes.iter().enumerate() {
        for &m in &class.members {
            class_of[m] = id;
        }
    }
    let image = |point: usize| {
        let mut counts = vec![0u32; classes.len()];
        for j in kind.neighbours(point) {
            counts[class_of[j]] += 1;
        }
        counts
    };
    let mut action = Vec::with_capacity(classes.len());
    for (id, class) in classes.iter().enumerate() {
        let first = image(class.representative());
        if class.members[1..].iter().any(|&m| image(m) != first) {
            return Err(Error::RepresentativeDependence { class: id });
        }
        action.push(first);
    }
    Ok(SpecialFiberCorrespondence { kind, model, monodromy: monodromy.clone(), classes, action })
}

/// Class action over a fiber given by an identification partition.
pub fn special_fiber_action_for_partition(
    kind: FiberKind,
    partition: &SheetPartition,
    model: FiberModel,
) -> Result<SpecialFiberCorrespondence> {
    special_fiber_action(kind, &partition.canonical_permutation(), model)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedClass {
    pub fiber: usize,
    pub class: usize,
    pub name: String,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    pub fixed_classes: Vec<FixedClass>,
    /// Fixed points contributed by all simple branch fibers together.
    pub simple_fiber_fixed: u64,
    pub delta_dot_d: u64,
    /// `Δ.D / 2` when even.
    pub half: Option<u64>,
}

impl FixedPointReport {
    pub fn is_even(&self) -> bool {
        self.delta_dot_d.is_multiple_of(2)
    }
}

/// Fixed points of the correspondence over every branch fiber of the curve.
/// Returns the per-special-fiber class actions alongside the report.
pub fn fixed_point_scan(
    curve: &InducedCurve,
    model: FiberModel,
) -> Result<(FixedPointReport, Vec<SpecialFiberCorrespondence>)> {
    let actions = curve
        .special_fibers
        .iter()
        .map(|p| special_fiber_action(curve.kind, p, model))
        .collect::<Result<Vec<_>>>()?;
    let simple = special_fiber_action(curve.kind, &curve.kind.simple_monodromy(), model)?;
    let simple_fiber_fixed = simple
        .fixed_count()
        .checked_mul(curve.simple_count)
        .ok_or(Error::Overflow("fixed-point count"))?;

    let mut fixed_classes = Vec::new();
    for (fiber, action) in actions.iter().enumerate() {
        for (class, multiplicity) in action.fixed_classes() {
            fixed_classes.push(FixedClass { fiber, class, name: action.class_name(class), multiplicity });
        }
    }
    let delta_dot_d =
        simple_fiber_fixed + fixed_classes.iter().map(|f| u64::from(f.multiplicity)).sum::<u64>();
    let half = (delta_dot_d % 2 == 0).then_some(delta_dot_d / 2);
    Ok((FixedPointReport { fixed_classes, simple_fiber_fixed, delta_dot_d, half }, actions))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedPoint {
    pub class: usize,
    pub name: String,
    /// Generic-fiber indices of the class.
    pub members: Vec<usize>,
    /// Multiplicity of this point in its own image; must be 1.
    pub self_multiplicity: u32,
    /// Multiplicity of each earlier point `p_j` in `D(p_i)`, `j < i`.
    pub earlier_multiplicities: Vec<u32>,
}

/// An ordering `p_1, .., p_n` of fixed points on one fiber with
/// `p_1, .., p_i ∈ D(p_i)` and `p_i` of multiplicity one in `D(p_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NestingCertificate {
    /// Special fiber carrying the points; `None` for the empty chain.
    pub fiber: Option<usize>,
    pub bidegree: usize,
    pub points: Vec<CertifiedPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum NestingOutcome {
    Certified(NestingCertificate),
    Failed { reason: String },
}

impl NestingOutcome {
    pub fn certificate(&self) -> Option<&NestingCertificate> {
        match self {
            NestingOutcome::Certified(c) => Some(c),
            NestingOutcome::Failed { .. } => None,
        }
    }
}

/// Backtracking search for `Δ.D / 2` points satisfying the nesting
/// condition. The correspondence preserves fibers, so every chain lives on
/// a single fiber. Fibers and classes are tried in order, so the first
/// chain found is the lexicographically least.
pub fn nesting_search(
    report: &FixedPointReport,
    actions: &[SpecialFiberCorrespondence],
    bidegree: usize,
) -> NestingOutcome {
    let Some(n) = report.half else {
        return NestingOutcome::Failed { reason: format!("Δ.D = {} is odd", report.delta_dot_d) };
    };
    if n > bidegree as u64 {
        return NestingOutcome::Failed {
            reason: format!("Δ.D/2 = {n} exceeds the bidegree {bidegree}"),
        };
    }
    let n = n as usize;
    if n == 0 {
        return NestingOutcome::Certified(NestingCertificate { fiber: None, bidegree, points: vec![] });
    }

    fn extend(action: &SpecialFiberCorrespondence, candidates: &[usize], chain: &mut Vec<usize>, n: usize) -> bool {
        if chain.len() == n {
            return true;
        }
        for &p in candidates {
            if chain.contains(&p) || chain.iter().any(|&q| action.multiplicity(q, p) == 0) {
                continue;
            }
            chain.push(p);
            if extend(action, candidates, chain, n) {
                return true;
            }
            chain.pop();
        }
        false
    }

    for (fiber, action) in actions.iter().enumerate() {
        let candidates: Vec<usize> = action
            .fixed_classes()
            .into_iter()
            .filter(|&(_, m)| m == 1)
            .map(|(c, _)| c)
            .collect();
        if candidates.len() < n {
            continue;
        }
        let mut chain = Vec::with_capacity(n);
        if extend(action, &candidates, &mut chain, n) {
            let points = chain
                .iter()
                .enumerate()
                .map(|(i, &p)| CertifiedPoint {
                    class: p,
                    name: action.class_name(p),
                    members: action.classes[p].members.clone(),
                    self_multiplicity: action.self_multiplicity(p),
                    earlier_multiplicities: chain[..i].iter().map(|&q| action.multiplicity(q, p)).collect(),
                })
                .collect();
            return NestingOutcome::Certified(NestingCertificate { fiber: Some(fiber), bidegree, points });
        }
    }
    NestingOutcome::Failed {
        reason: format!("no fiber carries {n} fixed points satisfying the nesting condition"),
    }
}

/// Re-checks a certificate against the raw fiber: class membership is
/// rebuilt from the monodromy and every multiplicity is recounted over
/// the neighbours of each representative. Shares no code with
/// [`special_fiber_action`].
pub fn verify_certificate(
    kind: FiberKind,
    monodromy: &Permutation,
    model: FiberModel,
    cert: &NestingCertificate,
    expected_len: usize,
) -> std::result::Result<(), String> {
    if cert.points.len() != expected_len {
        return Err(format!("expected {expected_len} points, found {}", cert.points.len()));
    }
    if expected_len > kind.bidegree() || cert.bidegree != kind.bidegree() {
        return Err(format!("n = {expected_len} exceeds bidegree {}", kind.bidegree()));
    }
    let induced = kind.induced(monodromy).map_err(|e| e.to_string())?;
    let partition = SheetPartition::from_permutation(monodromy);
    let raw_class = |rep: usize| -> Vec<usize> {
        let mut members = match model {
            FiberModel::Merged => {
                let key = partition.multiset(&kind.point(rep));
                (0..kind.size()).filter(|&j| partition.multiset(&kind.point(j)) == key).collect()
            }
            FiberModel::Orbit => {
                let mut orbit = vec![rep];
                let mut x = induced.apply(rep);
                while x != rep {
                    orbit.push(x);
                    x = induced.apply(x);
                }
                orbit
            }
        };
        members.sort_unstable();
        members
    };
    let classes: Vec<Vec<usize>> = cert.points.iter().map(|p| raw_class(p.members[0])).collect();
    for (i, p) in cert.points.iter().enumerate() {
        if p.members != classes[i] {
            return Err(format!("{}: claimed members differ from the fiber class", p.name));
        }
        if classes[..i].contains(&classes[i]) {
            return Err(format!("{} is repeated", p.name));
        }
        let rep = kind.point(p.members[0]);
        let count_in = |target: &[usize]| -> u32 {
            target
                .iter()
                .filter(|&&j| super::fiber::intersection_size(&rep, &kind.point(j)) == kind.meet())
                .count() as u32
        };
        let own = count_in(&classes[i]);
        if own != 1 || p.self_multiplicity != 1 {
            return Err(format!("{} has multiplicity {own} in its own image", p.name));
        }
        if p.earlier_multiplicities.len() != i {
            return Err(format!("{}: expected {i} earlier multiplicities", p.name));
        }
        for (j, &claimed) in p.earlier_multiplicities.iter().enumerate() {
            let actual = count_in(&classes[j]);
            if actual == 0 {
                return Err(format!("{} is not in D({})", cert.points[j].name, p.name));
            }
            if actual != claimed {
                return Err(format!(
                    "multiplicity of {} in D({}) is {actual}, certificate says {claimed}",
                    cert.points[j].name, p.name
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partition(sheets: usize, blocks: &[&[usize]]) -> SheetPartition {
        let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        SheetPartition::from_one_based(sheets, &blocks).unwrap()
    }

    fn class_named(a: &SpecialFiberCorrespondence, labels: &[usize]) -> usize {
        let idx = a.kind.index_of(&labels.iter().map(|x| x - 1).collect::<Vec<_>>()).unwrap();
        a.classes.iter().position(|c| c.members.contains(&idx)).unwrap()
    }

    #[test]
    fn n3_fixed_class_image() {
        let kind = FiberKind::subset(3).unwrap();
        let a = special_fiber_action_for_partition(kind, &partition(5, &[&[1, 2], &[3, 4], &[5]]), FiberModel::Merged)
            .unwrap();
        // D(P135) = P245 + P124 + P234 with P245 = P135
        let p135 = class_named(&a, &[1, 3, 5]);
        assert_eq!(p135, class_named(&a, &[2, 4, 5]));
        let p124 = class_named(&a, &[1, 2, 4]);
        let p234 = class_named(&a, &[2, 3, 4]);
        assert_eq!(a.multiplicity(p135, p135), 1);
        assert_eq!(a.multiplicity(p124, p135), 1);
        assert_eq!(a.multiplicity(p234, p135), 1);
        assert_eq!(a.action[p135].iter().sum::<u32>(), 3);
        assert_eq!(a.fixed_classes(), vec![(p135, 1)]);
    }

    #[test]
    fn grid_row_merge() {
        let kind = FiberKind::grid(3).unwrap();
        let p = SheetPartition::grid(3, &[vec![1, 2], vec![3]], &[vec![1], vec![2], vec![3]]).unwrap();
        let a = special_fiber_action_for_partition(kind, &p, FiberModel::Merged).unwrap();
        let p11 = a.classes.iter().position(|c| c.members.contains(&0)).unwrap();
        assert_eq!(a.self_multiplicity(p11), 1);
        assert_eq!(a.fixed_count(), 3);
        for row in &a.action {
            assert_eq!(row.iter().sum::<u32>(), 4);
        }
    }

    #[test]
    fn discrete_fiber_has_no_fixed_points() {
        for kind in [FiberKind::Subset { n: 3 }, FiberKind::Subset { n: 4 }, FiberKind::Grid { m: 3 }] {
            for model in [FiberModel::Merged, FiberModel::Orbit] {
                let a = special_fiber_action(kind, &Permutation::identity(kind.sheets()), model).unwrap();
                assert_eq!(a.fixed_count(), 0);
            }
        }
    }

    #[test]
    fn n4_certificate_and_checker() {
        let kind = FiberKind::subset(4).unwrap();
        let mono = partition(6, &[&[1, 2], &[3, 4], &[5, 6]]).canonical_permutation();
        let curve = InducedCurve::new(kind, vec![mono.clone(), mono.clone()], 4).unwrap();
        let (report, actions) = fixed_point_scan(&curve, FiberModel::Merged).unwrap();
        assert_eq!(report.delta_dot_d, 6);
        let outcome = nesting_search(&report, &actions, kind.bidegree());
        let cert = outcome.certificate().unwrap();
        assert_eq!(cert.fiber, Some(0));
        let names: Vec<&str> = cert.points.iter().map(|p| p.name.as_str()).collect();
        assert_eq!(names, ["P_{1,2,3,5}", "P_{1,3,4,5}", "P_{1,3,5,6}"]);
        assert_eq!(cert.points[1].earlier_multiplicities, vec![2]);
        assert_eq!(cert.points[2].earlier_multiplicities, vec![2, 2]);
        verify_certificate(kind, &mono, FiberModel::Merged, cert, 3).unwrap();

        // tampering is caught
        let mut bad = cert.clone();
        bad.points[2].earlier_multiplicities[0] = 1;
        assert!(verify_certificate(kind, &mono, FiberModel::Merged, &bad, 3).is_err());
        let mut bad = cert.clone();
        bad.points.swap(0, 1);
        bad.points[0].earlier_multiplicities.clear();
        bad.points[1].earlier_multiplicities = vec![2];
        assert!(verify_certificate(kind, &mono, FiberModel::Merged, &bad, 3).is_ok());
        bad.points[1].members.pop();
        assert!(verify_certificate(kind, &mono, FiberModel::Merged, &bad, 3).is_err());
    }

    #[test]
    fn search_failures() {
        let kind = FiberKind::subset(2).unwrap();
        let mono = partition(4, &[&[1, 2], &[3, 4]]).canonical_permutation();
        let curve = InducedCurve::new(kind, vec![mono.clone(), mono], 2).unwrap();
        // orbit model: Δ.D = 4 with d = 1
        let (report, actions) = fixed_point_scan(&curve, FiberModel::Orbit).unwrap();
        assert_eq!(report.delta_dot_d, 4);
        assert!(matches!(nesting_search(&report, &actions, 1), NestingOutcome::Failed { .. }));

        let odd = FixedPointReport { fixed_classes: vec![], simple_fiber_fixed: 0, delta_dot_d: 3, half: None };
        assert!(matches!(nesting_search(&odd, &[], 5), NestingOutcome::Failed { .. }));
    }
}
