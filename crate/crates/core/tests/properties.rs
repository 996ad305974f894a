use proptest::prelude::*;

use prym_core::correspondence::{build_grid_matrix, build_subset_matrix, discover_identity};
use prym_core::covering::{riemann_hurwitz_genus, required_ramification};
use prym_core::fiber::{special_fiber, FiberKind, FiberModel, SheetPartition};
use prym_core::fixed_points::special_fiber_action;
use prym_core::perm::{colex_rank, colex_unrank, compose, induced_subset_action, orbits, Permutation};

fn permutation(max_degree: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_degree)
        .prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn permutation_of(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #[test]
    fn cycle_type_sums_to_degree(p in permutation(12)) {
        prop_assert_eq!(p.cycle_type().degree(), p.degree());
    }

    #[test]
    fn inverse_composes_to_identity(p in permutation(12)) {
        prop_assert!(compose(&p, &p.inverse()).unwrap().is_identity());
        prop_assert!(compose(&p.inverse(), &p).unwrap().is_identity());
    }

    #[test]
    fn colex_roundtrip_large(mut subset in proptest::collection::btree_set(0usize..40, 0..10)) {
        let sorted: Vec<usize> = std::mem::take(&mut subset).into_iter().collect();
        prop_assert_eq!(colex_unrank(sorted.len(), colex_rank(&sorted)), sorted);
    }

    #[test]
    fn induced_homomorphism_random(a in permutation_of(7), b in permutation_of(7), k in 1usize..=7) {
        let lhs = induced_subset_action(&compose(&a, &b).unwrap(), k).unwrap();
        let rhs = compose(
            &induced_subset_action(&a, k).unwrap(),
            &induced_subset_action(&b, k).unwrap(),
        ).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn orbits_partition_the_points(gens in proptest::collection::vec(permutation_of(8), 0..4)) {
        let orbs = orbits(8, &gens).unwrap();
        let mut all: Vec<usize> = orbs.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..8).collect::<Vec<_>>());
        for orbit in &orbs {
            for g in &gens {
                for &x in orbit {
                    prop_assert!(orbit.contains(&g.apply(x)));
                }
            }
        }
    }

    #[test]
    fn riemann_hurwitz_inverts_required_ramification(degree in 1u64..30, base in 0u64..10, extra in 0u64..40) {
        let unbranched = degree * base.saturating_sub(1) + 1;
        let genus = unbranched.max(if base == 0 { 0 } else { unbranched }) + extra;
        if let Ok(w) = required_ramification(degree, base, genus) {
            prop_assert_eq!(riemann_hurwitz_genus(degree, base, w).unwrap(), genus);
        }
    }

    /// Merged classes are unions of orbits, so the merged model never
    /// ramifies less; the two class actions are well defined for any local
    /// monodromy.
    #[test]
    fn merged_dominates_orbit(n in 2usize..=5, seed in any::<u64>()) {
        let degree = n + 2;
        let mut images: Vec<usize> = (0..degree).collect();
        let mut s = seed;
        for i in (1..degree).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = Permutation::from_images(images).unwrap();
        let kind = FiberKind::subset(n).unwrap();
        let merged = special_fiber(kind, &p, FiberModel::Merged).unwrap();
        let orbit = special_fiber(kind, &p, FiberModel::Orbit).unwrap();
        prop_assert!(merged.w_contribution >= orbit.w_contribution);
        for o in &orbit.classes {
            prop_assert!(merged.classes.iter().any(|m| o.members.iter().all(|x| m.members.contains(x))));
        }
        for model in [FiberModel::Merged, FiberModel::Orbit] {
            let action = special_fiber_action(kind, &p, model).unwrap();
            for row in &action.action {
                prop_assert_eq!(row.iter().sum::<u32>() as usize, kind.bidegree());
            }
        }
        let partition = SheetPartition::from_permutation(&p);
        prop_assert_eq!(SheetPartition::from_permutation(&partition.canonical_permutation()), partition);
    }
}

#[test]
fn subset_matrices_have_johnson_identity() {
    for n in 2..=12usize {
        let d = build_subset_matrix(n).unwrap();
        assert!(d.is_well_formed(), "n = {n}");
        let id = discover_identity(&d).unwrap().unwrap();
        let n = n as i64;
        assert_eq!(id, prym_core::correspondence::QuadraticIdentity::from_ints(n - 1, -(n - 2), (n - 1) * (n - 2) / 2));
    }
}

#[test]
fn grid_identities_verify_and_balance() {
    for m in 2..=8usize {
        let d = build_grid_matrix(m).unwrap();
        assert!(d.is_well_formed());
        let id = discover_identity(&d).unwrap().unwrap_or_else(|| panic!("m = {m}"));
        assert!(id.unique);
        let big = |x: usize| num_rational::BigRational::from_integer((x as i64).into());
        let deg = big(d.bidegree);
        assert_eq!(&deg * &deg, &id.a + &id.b * &deg + &id.c * big(d.size()));
    }
    let id = discover_identity(&build_grid_matrix(3).unwrap()).unwrap().unwrap();
    assert_eq!(id, prym_core::correspondence::QuadraticIdentity::from_ints(2, -1, 2));
}
