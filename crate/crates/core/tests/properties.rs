use proptest::prelude::*;
use seqplan::config::random_configuration;
use seqplan::deform::axis_deformation;
use seqplan::planner::{build_path, clearances, waypoint_time};
use seqplan::{desingularize, phi, stratum, Configuration, ProblemSpec};

fn spec_strategy() -> impl Strategy<Value = ProblemSpec> {
    (2usize..=3, 1usize..=4, 2usize..=4, 2usize..=4)
        .prop_map(|(d, k, r, n)| ProblemSpec::new(d, k, r, n).unwrap())
}

fn spec_and_config() -> impl Strategy<Value = (ProblemSpec, Configuration)> {
    (spec_strategy(), any::<u64>(), 0usize..100).prop_map(|(spec, seed, pick)| {
        let target = spec.r() + pick % (spec.k() + 1);
        let c = random_configuration(&spec, seed, Some(target)).unwrap();
        (spec, c)
    })
}

// All k + r projections, obstacles first.
fn projections(spec: &ProblemSpec, c: &Configuration) -> Vec<f64> {
    (0..spec.r())
        .map(|i| i as f64)
        .chain(c.points().map(|p| p[0]))
        .collect()
}

// Brute force: minimum over all point pairs with different projections.
fn brute_force_epsilon(spec: &ProblemSpec, c: &Configuration) -> f64 {
    let v = projections(spec, c);
    let mut best = f64::INFINITY;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] != v[j] {
                best = best.min((v[i] - v[j]).abs());
            }
        }
    }
    best / spec.points() as f64
}

fn distinct_count(values: &[f64]) -> usize {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v.len()
}

fn min_clearance(spec: &ProblemSpec, c: &Configuration) -> f64 {
    let (rr, ro) = clearances(spec, c);
    rr.map_or(ro, |rr| rr.min(ro))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cp_bounds_and_epsilon((spec, c) in spec_and_config()) {
        let info = stratum(&spec, &c);
        prop_assert!(info.cp >= spec.r() && info.cp <= spec.points());
        prop_assert_eq!(info.cp, info.groups.len());
        prop_assert_eq!(info.cp, distinct_count(&projections(&spec, &c)));
        prop_assert!(info.epsilon > 0.0);
        let oracle = brute_force_epsilon(&spec, &c);
        prop_assert!((info.epsilon - oracle).abs() <= 1e-15, "{} vs {}", info.epsilon, oracle);
        let min_gap = oracle * spec.points() as f64;
        prop_assert!(info.epsilon * (spec.points() - 1) as f64 <= min_gap);
        prop_assert!(info.epsilon * ((spec.points() - 1) as f64) < min_gap);
    }

    #[test]
    fn epsilon_is_lipschitz_within_pattern(
        (spec, c) in spec_and_config(),
        seed in any::<u64>(),
    ) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let delta = 1e-4;
        let moved = seqplan::harness::perturb_within_pattern(&spec, &c, delta, &mut rng).unwrap();
        let (a, b) = (stratum(&spec, &c), stratum(&spec, &moved));
        prop_assert!(a.same_pattern(&b));
        let dist = c.max_abs_diff(&moved);
        prop_assert!((a.epsilon - b.epsilon).abs() <= 2.0 * dist / spec.points() as f64 + 1e-15);
    }

    #[test]
    fn desingularization_is_safe_and_order_preserving((spec, c) in spec_and_config()) {
        let info = stratum(&spec, &c);
        let before = projections(&spec, &c);
        for i in 0..=200 {
            let t = i as f64 / 200.0;
            let moved = desingularize(&spec, &c, &info, t);
            prop_assert!(min_clearance(&spec, &moved) > 0.0);
            let after = projections(&spec, &moved);
            for a in 0..before.len() {
                for b in 0..before.len() {
                    if before[a] < before[b] {
                        prop_assert!(after[a] < after[b]);
                    }
                }
            }
            if t > 0.0 {
                prop_assert!(stratum(&spec, &moved).cp >= info.cp);
            }
        }
        let end = desingularize(&spec, &c, &info, 1.0);
        prop_assert_eq!(distinct_count(&projections(&spec, &end)), spec.points());
        prop_assert_eq!(stratum(&spec, &end).cp, spec.points());
    }

    #[test]
    fn flattening_is_safe((spec, c) in spec_and_config()) {
        let generic = desingularize(&spec, &c, &stratum(&spec, &c), 1.0);
        for i in 0..=200 {
            let t = i as f64 / 200.0;
            let moved = phi(&spec, &generic, t).unwrap();
            prop_assert!(min_clearance(&spec, &moved) > 0.0);
            for (p, q) in moved.points().zip(generic.points()) {
                prop_assert_eq!(p[0], q[0]);
            }
        }
        prop_assert!(phi(&spec, &generic, 1.0).unwrap().is_on_axis());
    }

    #[test]
    fn planned_paths_hit_waypoints_and_stay_clear(
        spec in spec_strategy(),
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (lo, hi) = spec.region_bounds();
        let region = rng.gen_range(lo..=hi);
        let strata = seqplan::harness::random_strata(&spec, region, &mut rng).unwrap();
        let ys = seqplan::harness::random_waypoints(&spec, &strata, &mut rng).unwrap();
        let path = build_path(&spec, &ys).unwrap();
        for (m, y) in ys.iter().enumerate() {
            let at = path.eval(waypoint_time(m, ys.len())).unwrap();
            prop_assert!(at.max_abs_diff(y) <= 1e-9);
        }
        prop_assert_eq!(path.eval(0.0).unwrap(), ys[0].clone());
        prop_assert_eq!(path.eval(1.0).unwrap(), ys[ys.len() - 1].clone());
        for i in 0..=500 {
            prop_assert!(min_clearance(&spec, &path.eval(i as f64 / 500.0).unwrap()) > 0.0);
        }
        for b in path.breakpoints() {
            let left = path.eval((b - 1e-14).max(0.0)).unwrap();
            let right = path.eval((b + 1e-14).min(1.0)).unwrap();
            prop_assert!(left.max_abs_diff(&right) <= 1e-10, "jump at {}", b);
        }
    }

    #[test]
    fn deformed_waypoints_land_on_axis((spec, c) in spec_and_config()) {
        let h = axis_deformation(&spec);
        let end = h.eval(&c, 1.0).unwrap();
        prop_assert!(end.is_on_axis());
        prop_assert_eq!(stratum(&spec, &end).cp, spec.points());
        prop_assert_eq!(h.eval(&c, 0.0).unwrap(), c);
    }
}
