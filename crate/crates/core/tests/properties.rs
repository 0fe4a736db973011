use poa_core::asymptotics::{poa, shifted_game};
use poa_core::costs::CostFunction;
use poa_core::equilibrium::{wardrop_parallel_with, LevelOptions};
use poa_core::instances::{self, vanishing_poa_instances};
use poa_core::optimum::{opt_parallel_pwl_square, opt_parallel_step};
use poa_core::{opt, rel_diff, verify_equilibrium, wardrop, Game};
use proptest::prelude::*;

fn game_pool() -> Vec<Game> {
    let mut v = vec![
        instances::pigou(),
        instances::step(2.0).unwrap(),
        instances::step(3.0).unwrap(),
        instances::pwl(2.0).unwrap(),
    ];
    v.extend(vanishing_poa_instances().into_iter().map(|(_, g)| g));
    v.push(
        Game::parallel(vec![
            CostFunction::identity(),
            CostFunction::Affine { a: 1.0, b: 2.0 },
            CostFunction::Monomial { coef: 1.0, degree: 2.0 },
        ])
        .unwrap(),
    );
    v
}

fn demand() -> impl Strategy<Value = f64> {
    (-2.0f64..4.0).prop_map(|e| 10f64.powf(e))
}

fn ratio() -> impl Strategy<Value = f64> {
    prop_oneof![Just(2.0), Just(3.0), Just(5.0)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn equilibrium_is_feasible_and_verified(i in 0usize..11, m in demand()) {
        let g = &game_pool()[i];
        let eq = wardrop(g, m).unwrap();
        let total: f64 = eq.flow.path_flows.iter().sum();
        prop_assert!(eq.flow.path_flows.iter().all(|&x| x >= 0.0));
        prop_assert!((total - m).abs() <= 1e-12 * m);
        let lambda = eq.lambda.to_f64();
        prop_assert!(eq.residual <= 1e-9 * lambda.max(1.0), "residual {}", eq.residual);
        prop_assert!(verify_equilibrium(g, &eq.flow, 1e-9).unwrap().is_equilibrium);
    }

    #[test]
    fn optimum_never_exceeds_equilibrium(i in 0usize..11, m in demand()) {
        let g = &game_pool()[i];
        let s = poa(g, m).unwrap();
        prop_assert!(s.poa >= 1.0 - 1e-9, "PoA {} at M={m}", s.poa);
    }

    #[test]
    fn step_optimum_in_expected_pieces(a in ratio(), k in 0i32..3, t in 0.0f64..1.0) {
        let lo = 2.0 * a.powi(k);
        let m = lo * a.powf(t.max(1e-6));
        let s = opt_parallel_step(a, m).unwrap();
        prop_assert!(s.flag.is_none(), "a={a} M={m}: {:?}", s.flag);
    }

    #[test]
    fn optimum_continuous_in_demand(a in ratio(), m in 1.0f64..500.0) {
        let g = instances::step(a).unwrap();
        let (lo, hi) = (opt(&g, m * (1.0 - 1e-10)).unwrap(), opt(&g, m * (1.0 + 1e-10)).unwrap());
        prop_assert!(rel_diff(lo.cost.to_f64(), hi.cost.to_f64()) <= 1e-6);
    }

    #[test]
    fn pwl_optimum_scales_cubically(a in prop_oneof![Just(2.0), Just(3.0)], m in 0.5f64..50.0) {
        let base = opt_parallel_pwl_square(a, m).unwrap().cost.to_f64();
        let scaled = opt_parallel_pwl_square(a, a * m).unwrap().cost.to_f64();
        prop_assert!(rel_diff(scaled, a * a * a * base) <= 1e-9);
    }

    #[test]
    fn step_poa_is_log_periodic(a in ratio(), m in 4.0f64..50.0) {
        let g = instances::step(a).unwrap();
        let (p, q) = (poa(&g, m).unwrap().poa, poa(&g, a * m).unwrap().poa);
        prop_assert!(rel_diff(p, q) <= 1e-9, "PoA({m}) = {p}, PoA({}) = {q}", a * m);
    }

    #[test]
    fn level_is_monotone_in_demand(i in 0usize..11, m in demand(), f in 1.001f64..3.0) {
        let g = &game_pool()[i];
        let (l1, l2) = (wardrop(g, m).unwrap().lambda.to_f64(), wardrop(g, f * m).unwrap().lambda.to_f64());
        prop_assert!(l2 >= l1 * (1.0 - 1e-12), "λ({m}) = {l1} > λ({}) = {l2}", f * m);
    }

    #[test]
    fn equal_shift_moves_level_only(i in 0usize..11, m in demand(), s in 0.0f64..10.0) {
        let g = &game_pool()[i];
        let sg = shifted_game(g, &vec![s; g.costs.len()]).unwrap();
        let (e, es) = (wardrop(g, m).unwrap(), wardrop(&sg, m).unwrap());
        let (l, ls) = (e.lambda.to_f64(), es.lambda.to_f64());
        prop_assert!((ls - l - s).abs() <= 1e-9 * ls.max(1.0), "λ {l}, shifted {ls}, shift {s}");
        let w = e.cost.to_f64() + s * m;
        prop_assert!(rel_diff(es.cost.to_f64(), w) <= 1e-9);
    }

    #[test]
    fn bisection_seed_does_not_matter(i in 0usize..11, m in demand(), seed in 0.01f64..100.0) {
        let g = &game_pool()[i];
        let a = wardrop_parallel_with(g, m, &LevelOptions::default()).unwrap();
        let b = wardrop_parallel_with(g, m, &LevelOptions { seed, ..LevelOptions::default() }).unwrap();
        prop_assert!(rel_diff(a.cost.to_f64(), b.cost.to_f64()) <= 1e-9);
        prop_assert!(rel_diff(a.lambda.to_f64(), b.lambda.to_f64()) <= 1e-9);
    }
}
