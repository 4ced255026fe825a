use qhelper_core::qcore::{DensityOperator, PureState, QuantumState, SystemLayout};
use qhelper_core::region::{can_forward, trace_frontier, FrontierConfig};

fn quick(dim_c: usize, dim_e: usize, seed: u64) -> FrontierConfig {
    let mut cfg = FrontierConfig::new(dim_c, dim_e);
    cfg.lambda_grid = vec![0.0, 0.5, 2.0, 64.0];
    cfg.restarts = 2;
    cfg.seed = seed;
    cfg
}

#[test]
fn independent_source_has_flat_frontier() {
    let rho = DensityOperator::maximally_mixed(SystemLayout::new(["A", "B"], &[2, 2]).unwrap());
    let res = trace_frontier(&rho, &quick(2, 2, 1)).unwrap();
    for p in &res.points {
        assert!((p.r1 - 1.0).abs() < 1e-6, "{p:?}");
    }
    assert!(res.all_converged());
}

#[test]
fn bell_frontier_is_the_purity_line() {
    let rho = PureState::maximally_entangled("A", "B", 2).unwrap().to_density();
    let res = trace_frontier(&rho, &quick(2, 2, 2)).unwrap();
    for p in &res.points {
        assert!((p.r1 - (1.0 - 2.0 * p.r2)).abs() < 1e-8, "{p:?}");
    }
    let first = res.hull.first().unwrap();
    let last = res.hull.last().unwrap();
    assert!(first.r2.abs() < 1e-3 && (first.r1 - 1.0).abs() < 1e-3);
    assert!((last.r2 - 1.0).abs() < 1e-3 && (last.r1 + 1.0).abs() < 1e-3);
    assert!(can_forward(&rho, 2) && !can_forward(&rho, 1));
}

#[test]
fn seeded_runs_repeat() {
    let rho = PureState::maximally_entangled("A", "B", 2).unwrap().to_density();
    let a = trace_frontier(&rho, &quick(2, 1, 5)).unwrap();
    let b = trace_frontier(&rho, &quick(2, 1, 5)).unwrap();
    assert_eq!(a, b);
}
