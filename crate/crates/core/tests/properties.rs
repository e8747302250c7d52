//! Property tests for the space and algebra invariants.
//!
//! Expected values never come from the code under test: upper
//! approximations are compared against a naive feature-scan oracle, and the
//! classical-collapse checks compare the approximate flags against a
//! textbook axiom checker written directly over the tables.

use proptest::prelude::*;

use proxring::harness::{classical_oracle, reports_equivalent};
use proxring::{
    check_dp_axioms, classify_ideal, colon, enumerate_ideals, is_one_absorbing_primary, is_primary,
    is_prime, radical, AlgebraInstance, DescriptiveSpace, DpCheckMode, DpCheckOptions, OpTable,
    PointSet, ProximityRelation,
};

fn arb_space(max_points: usize) -> impl Strategy<Value = DescriptiveSpace> {
    (1..=max_points).prop_flat_map(|n| {
        proptest::collection::vec(0i64..4, n)
            .prop_map(|values| DescriptiveSpace::from_scalar_probe(&values).unwrap())
    })
}

prop_compose! {
    fn arb_table(n: usize)(entries in proptest::collection::vec(0..n, n * n)) -> OpTable {
        OpTable::new(n, entries).unwrap()
    }
}

/// Arbitrary small instance: random probe, random total tables, random
/// nonempty carrier.
fn arb_instance(max_points: usize) -> impl Strategy<Value = AlgebraInstance> {
    (2..=max_points).prop_flat_map(|n| {
        (
            proptest::collection::vec(0i64..4, n),
            arb_table(n),
            arb_table(n),
            1u64..(1u64 << n),
        )
            .prop_map(move |(values, add, mul, mask)| {
                let space = DescriptiveSpace::from_scalar_probe(&values).unwrap();
                AlgebraInstance::new(space, add, mul, PointSet::from_mask(mask)).unwrap()
            })
    })
}

/// Modular instance with subgroup carrier: injective probe and closed
/// carrier, the classical stratum.
fn arb_classical_instance() -> impl Strategy<Value = AlgebraInstance> {
    (2usize..=8).prop_flat_map(|n| {
        let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        proptest::sample::select(divisors).prop_map(move |d| {
            let carrier: PointSet = (0..n).step_by(d).collect();
            AlgebraInstance::modular_with_carrier(n, n, carrier).unwrap()
        })
    })
}

/// Subgroup carrier again, but with an arbitrary probe coarsening: the
/// carrier stays closed while upper approximations can be strictly larger.
fn arb_closed_modular_instance() -> impl Strategy<Value = AlgebraInstance> {
    (2usize..=8).prop_flat_map(|n| {
        let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        (
            proptest::sample::select(divisors.clone()),
            proptest::sample::select(divisors),
        )
            .prop_map(move |(d, k)| {
                let carrier: PointSet = (0..n).step_by(d).collect();
                AlgebraInstance::modular_with_carrier(n, k, carrier).unwrap()
            })
    })
}

/// Feature-scan oracle for the upper approximation, kept independent of the
/// class-mask implementation.
fn upper_naive(space: &DescriptiveSpace, n_set: PointSet) -> PointSet {
    let mut out = PointSet::EMPTY;
    for x in 0..space.n_points() {
        let fx = space.feature(x);
        if n_set.iter().any(|p| space.feature(p) == fx) {
            out.insert(x);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn upper_approx_matches_the_naive_scan(space in arb_space(8), mask in 0u64..256) {
        let n_set = PointSet::from_mask(mask & space.all_points().mask());
        prop_assert_eq!(space.upper_approx(n_set), upper_naive(&space, n_set));
    }

    #[test]
    fn upper_approx_is_monotone_contains_and_idempotent(space in arb_space(6)) {
        let subsets = 1u64 << space.n_points();
        for a in 0..subsets {
            let sa = PointSet::from_mask(a);
            let ua = space.upper_approx(sa);
            prop_assert!(sa.is_subset(ua));
            prop_assert_eq!(space.upper_approx(ua), ua);
            for b in 0..subsets {
                let sb = PointSet::from_mask(b);
                if sa.is_subset(sb) {
                    prop_assert!(ua.is_subset(space.upper_approx(sb)));
                }
            }
        }
    }

    #[test]
    fn descriptive_intersection_is_symmetric_and_contains_the_meet(
        space in arb_space(7),
        a in 0u64..128,
        b in 0u64..128,
    ) {
        let full = space.all_points();
        let sa = PointSet::from_mask(a).intersect(full);
        let sb = PointSet::from_mask(b).intersect(full);
        let ab = space.descriptive_intersection(sa, sb).unwrap();
        let ba = space.descriptive_intersection(sb, sa).unwrap();
        prop_assert_eq!(ab, ba);
        prop_assert!(sa.intersect(sb).is_subset(ab));
    }

    #[test]
    fn injective_probe_collapses_and_constant_probe_saturates(n in 1usize..=8, mask in 0u64..256) {
        let injective = DescriptiveSpace::from_scalar_probe(
            &(0..n as i64).collect::<Vec<_>>(),
        ).unwrap();
        let sub = PointSet::from_mask(mask).intersect(injective.all_points());
        prop_assert_eq!(injective.upper_approx(sub), sub);

        let constant = DescriptiveSpace::from_scalar_probe(&vec![3; n]).unwrap();
        let expected = if sub.is_empty() { PointSet::EMPTY } else { constant.all_points() };
        prop_assert_eq!(constant.upper_approx(sub), expected);
    }

    #[test]
    fn derived_relations_pass_the_axioms(space in arb_space(5)) {
        let rel = ProximityRelation::derived(&space);
        let report = check_dp_axioms(&space, &rel, &DpCheckOptions::default()).unwrap();
        prop_assert!(report.all_pass());
    }

    #[test]
    fn colon_distributes_over_intersection_for_arbitrary_subsets(
        inst in arb_instance(6),
        a in 0u64..64,
        b in 0u64..64,
    ) {
        let carrier = inst.carrier();
        let sa = PointSet::from_mask(a).intersect(carrier);
        let sb = PointSet::from_mask(b).intersect(carrier);
        for s in carrier.iter() {
            let lhs = colon(&inst, sa.intersect(sb), s).unwrap();
            let rhs = colon(&inst, sa, s).unwrap().intersect(colon(&inst, sb, s).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn radical_contains_and_is_monotone(inst in arb_instance(6), a in 0u64..64, b in 0u64..64) {
        let carrier = inst.carrier();
        let sa = PointSet::from_mask(a).intersect(carrier);
        let sb = PointSet::from_mask(b).intersect(carrier);
        let ra = radical(&inst, sa).unwrap();
        prop_assert!(sa.is_subset(ra));
        if sa.is_subset(sb) {
            prop_assert!(ra.is_subset(radical(&inst, sb).unwrap()));
        }
    }

    #[test]
    fn nilpotency_search_up_to_the_point_count_is_complete(inst in arb_instance(6)) {
        if let Ok(zero) = inst.zero() {
            let n = inst.n_points() as u32;
            for s in inst.carrier().iter() {
                let bounded = inst.nilpotency(s).unwrap().is_some();
                let mut extended = false;
                let mut p = s;
                for _ in 1..=3 * n {
                    if p == zero && inst.carrier_upper().contains(p) {
                        extended = true;
                        break;
                    }
                    p = inst.mul(p, s);
                }
                prop_assert_eq!(bounded, extended);
            }
        }
    }

    #[test]
    fn power_splits_when_multiplication_is_associative(inst in arb_instance(5)) {
        if inst.mul_table().is_associative() {
            let n = inst.n_points() as u32;
            for s in inst.carrier().iter() {
                for a in 1..=n {
                    for b in 1..=n {
                        prop_assert_eq!(
                            inst.power(s, a + b),
                            inst.mul(inst.power(s, a), inst.power(s, b))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn prime_ideals_are_primary(inst in arb_classical_instance()) {
        for w in enumerate_ideals(&inst).unwrap() {
            if is_prime(&inst, w).unwrap().holds {
                prop_assert!(is_primary(&inst, w).unwrap().holds);
                prop_assert_eq!(radical(&inst, w).unwrap(), w);
            }
        }
    }

    #[test]
    fn primary_ideals_are_one_absorbing_on_closed_carriers(inst in arb_closed_modular_instance()) {
        prop_assert!(inst.flags().op_closed);
        if inst.unity().ok().flatten().is_some() {
            for w in enumerate_ideals(&inst).unwrap() {
                if is_primary(&inst, w).unwrap().holds {
                    prop_assert!(is_one_absorbing_primary(&inst, w).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn prime_radicals_collapse_on_closed_carriers(inst in arb_closed_modular_instance()) {
        for w in enumerate_ideals(&inst).unwrap() {
            if is_prime(&inst, w).unwrap().holds {
                prop_assert_eq!(radical(&inst, w).unwrap(), w);
            }
        }
    }

    #[test]
    fn classically_closed_groups_always_pass_the_approximate_axioms(inst in arb_instance(5)) {
        let carrier: Vec<usize> = inst.carrier().to_vec();
        let add = |a: usize, b: usize| inst.add(a, b);
        let classical_group = carrier.iter().all(|&a| {
            carrier.iter().all(|&b| inst.carrier().contains(add(a, b)))
        }) && carrier.iter().all(|&a| {
            carrier.iter().all(|&b| {
                carrier.iter().all(|&c| add(add(a, b), c) == add(a, add(b, c)))
            })
        }) && carrier.iter().any(|&e| {
            carrier.iter().all(|&a| add(a, e) == a && add(e, a) == a)
                && carrier.iter().all(|&a| {
                    carrier.iter().any(|&b| add(a, b) == e && add(b, a) == e)
                })
        });
        if classical_group {
            prop_assert!(inst.flags().group_add);
        }
    }

    #[test]
    fn forward_radical_inclusion_for_ideal_pairs(inst in arb_classical_instance()) {
        let ideals = enumerate_ideals(&inst).unwrap();
        for &a in &ideals {
            for &b in &ideals {
                let inter = a.intersect(b);
                if inter.is_empty() {
                    continue;
                }
                let ri = radical(&inst, inter).unwrap();
                prop_assert!(ri.is_subset(radical(&inst, a).unwrap().intersect(radical(&inst, b).unwrap())));
            }
        }
    }

    #[test]
    fn approximate_flags_collapse_to_classical_axioms(inst in arb_classical_instance()) {
        let f = inst.flags();
        prop_assert!(f.op_closed);
        let carrier: Vec<usize> = inst.carrier().to_vec();
        let add = |a: usize, b: usize| inst.add(a, b);
        let mul = |a: usize, b: usize| inst.mul(a, b);
        let closed_add = carrier.iter().all(|&a| carrier.iter().all(|&b| inst.carrier().contains(add(a, b))));
        let assoc_add = carrier.iter().all(|&a| {
            carrier.iter().all(|&b| carrier.iter().all(|&c| add(add(a, b), c) == add(a, add(b, c))))
        });
        let zero = carrier.iter().copied().find(|&e| carrier.iter().all(|&a| add(a, e) == a && add(e, a) == a));
        let group_add = closed_add
            && assoc_add
            && zero.is_some_and(|z| {
                carrier.iter().all(|&a| carrier.iter().any(|&b| add(a, b) == z && add(b, a) == z))
            });
        let abelian = carrier.iter().all(|&a| carrier.iter().all(|&b| add(a, b) == add(b, a)));
        let closed_mul = carrier.iter().all(|&a| carrier.iter().all(|&b| inst.carrier().contains(mul(a, b))));
        let assoc_mul = carrier.iter().all(|&a| {
            carrier.iter().all(|&b| carrier.iter().all(|&c| mul(mul(a, b), c) == mul(a, mul(b, c))))
        });
        let distrib = carrier.iter().all(|&a| {
            carrier.iter().all(|&b| {
                carrier.iter().all(|&c| {
                    mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
                        && mul(add(a, b), c) == add(mul(a, c), mul(b, c))
                })
            })
        });
        prop_assert_eq!(f.groupoid_add, closed_add);
        prop_assert_eq!(f.semigroup_add, closed_add && assoc_add);
        prop_assert_eq!(f.group_add, group_add);
        prop_assert_eq!(f.abelian_add, abelian);
        prop_assert_eq!(f.groupoid_mul, closed_mul);
        prop_assert_eq!(f.semigroup_mul, closed_mul && assoc_mul);
        prop_assert_eq!(f.ring, group_add && abelian && closed_mul && assoc_mul && distrib);
        let unity = carrier.iter().any(|&u| carrier.iter().all(|&a| mul(a, u) == a && mul(u, a) == a));
        prop_assert_eq!(f.has_unity, unity);
    }

    #[test]
    fn classification_agrees_with_the_classical_oracle(inst in arb_classical_instance()) {
        for (w, classical) in classical_oracle(&inst).unwrap() {
            let approx = classify_ideal(&inst, w).unwrap();
            prop_assert!(reports_equivalent(&approx, &classical), "mismatch on {}", w);
        }
    }

    #[test]
    fn classification_is_a_pure_function(inst in arb_classical_instance()) {
        for w in enumerate_ideals(&inst).unwrap() {
            prop_assert_eq!(classify_ideal(&inst, w).unwrap(), classify_ideal(&inst, w).unwrap());
        }
    }
}

#[test]
fn dp_check_samples_above_the_exhaustive_bound() {
    let space = DescriptiveSpace::from_scalar_probe(&[0, 1, 2, 3, 0, 1, 2, 3]).unwrap();
    let rel = ProximityRelation::derived(&space);
    let opts = DpCheckOptions {
        exhaustive_bound: 6,
        samples: 500,
        seed: 7,
    };
    let report = check_dp_axioms(&space, &rel, &opts).unwrap();
    assert_eq!(report.mode, DpCheckMode::Sampled { tuples: 500 });
    assert!(report.all_pass());

    let strict = DpCheckOptions {
        exhaustive_bound: 6,
        samples: 0,
        seed: 0,
    };
    assert!(check_dp_axioms(&space, &rel, &strict).is_err());
}
