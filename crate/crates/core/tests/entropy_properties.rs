use proptest::prelude::*;
use qhelper_core::channels::{apply_channel, random_isometry, ChannelPreset};
use qhelper_core::qcore::random::{random_density, random_pure};
use qhelper_core::qcore::{
    cond_mutual_info, entropy, mutual_info, purify, trace_distance, DensityOperator, QuantumState, SystemLayout,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EPS: f64 = 1e-9;

fn abc(da: usize, db: usize, dc: usize) -> SystemLayout {
    SystemLayout::new(["A", "B", "C"], &[da, db, dc]).unwrap()
}

fn mixed(seed: u64, da: usize, db: usize, dc: usize) -> DensityOperator {
    random_density(abc(da, db, dc), &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strong_subadditivity(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3, dc in 1usize..=2) {
        let rho = mixed(seed, da, db, dc);
        prop_assert!(cond_mutual_info(&rho, &["A"], &["C"], &["B"]).unwrap() >= -EPS);
    }

    #[test]
    fn araki_lieb_and_bounds(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3) {
        let rho = mixed(seed, da, db, 1);
        let (ha, hb, hab) = (
            entropy(&rho, &["A"]).unwrap(),
            entropy(&rho, &["B"]).unwrap(),
            entropy(&rho, &["A", "B"]).unwrap(),
        );
        prop_assert!(hab >= (ha - hb).abs() - EPS);
        prop_assert!(hab <= ha + hb + EPS);
        prop_assert!(ha >= 0.0 && ha <= (da as f64).log2() + EPS);
    }

    #[test]
    fn pure_state_complements_agree(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3, dc in 1usize..=3) {
        let psi = random_pure(abc(da, db, dc), &mut ChaCha8Rng::seed_from_u64(seed));
        let rho = psi.to_density();
        for (x, rest) in [(&["A"][..], &["B", "C"][..]), (&["B"][..], &["A", "C"][..]), (&["C"][..], &["A", "B"][..])] {
            let hx = entropy(&psi, x).unwrap();
            prop_assert!((hx - entropy(&psi, rest).unwrap()).abs() < EPS);
            prop_assert!((hx - entropy(&rho, x).unwrap()).abs() < EPS);
        }
    }

    #[test]
    fn partial_traces_commute(seed in any::<u64>()) {
        let rho = mixed(seed, 2, 3, 2);
        let direct = rho.partial_trace(&["A"]).unwrap();
        let staged = rho.partial_trace(&["A", "B"]).unwrap().partial_trace(&["A"]).unwrap();
        prop_assert!((direct.matrix() - staged.matrix()).norm() < EPS);
        let other = rho.partial_trace(&["A", "C"]).unwrap().partial_trace(&["A"]).unwrap();
        prop_assert!((direct.matrix() - other.matrix()).norm() < EPS);
    }

    #[test]
    fn purification_round_trip(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3) {
        let rho = mixed(seed, da, db, 1);
        let psi = purify(&rho, "R").unwrap();
        let back = psi.partial_trace(&["A", "B", "C"]).unwrap();
        prop_assert!(trace_distance(&rho, &back).unwrap() < EPS);
    }

    #[test]
    fn data_processing(seed in any::<u64>(), p in 0.0f64..=1.0) {
        let rho = mixed(seed, 2, 2, 1).partial_trace(&["A", "B"]).unwrap();
        let before = mutual_info(&rho, &["A"], &["B"]).unwrap();
        for ch in [ChannelPreset::Depolarizing(p), ChannelPreset::Dephasing(p), ChannelPreset::AmplitudeDamping(p)] {
            let out = apply_channel(&rho, &ch.to_kraus(2).unwrap(), "B", "B").unwrap();
            prop_assert!(mutual_info(&out, &["A"], &["B"]).unwrap() <= before + EPS);
        }
        let v = random_isometry(2, 2, 2, seed).unwrap().to_kraus();
        let out = apply_channel(&rho, &v, "B", "B").unwrap();
        prop_assert!(mutual_info(&out, &["A"], &["B"]).unwrap() <= before + EPS);
    }
}
