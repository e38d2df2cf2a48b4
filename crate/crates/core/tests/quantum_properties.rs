mod common;

use proptest::prelude::*;
use qcorr::linalg::{eigh, random_unitary};
use qcorr::measure::{apply_local_map, born_distribution, measurement_mutual_information, Observable, StochasticMap};
use qcorr::prob::shannon_entropy;
use qcorr::qstate::{
    araki_lieb_check, mutual_information_as_relative_entropy, quantum_mutual_information, von_neumann_entropy,
    DensityMatrix, Subsystem,
};
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn mutual_information_routes_agree(seed in any::<u64>()) {
        let rho = common::random_state(&mut common::rng(seed));
        let a = quantum_mutual_information(&rho).unwrap();
        let b = mutual_information_as_relative_entropy(&rho).unwrap();
        prop_assert!((a - b).abs() < 1e-9, "{a} {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn araki_lieb(seed in any::<u64>()) {
        let rho = common::random_state(&mut common::rng(seed));
        let al = araki_lieb_check(&rho).unwrap();
        prop_assert!(al.holds(1e-10), "{al:?}");
    }

    #[test]
    fn local_maps_do_not_increase_correlations(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let rho = common::random_state(&mut rng);
        let before = quantum_mutual_information(&rho).unwrap();
        let side = if rng.random::<bool>() { Subsystem::A } else { Subsystem::B };
        let dim = match side {
            Subsystem::A => rho.dims().0,
            Subsystem::B => rho.dims().1,
        };
        let map = StochasticMap::random(dim, rng.random_range(1..=3), &mut rng);
        let after = quantum_mutual_information(&apply_local_map(&rho, &map, side).unwrap()).unwrap();
        prop_assert!(after <= before + 1e-10, "{after} > {before}");
    }

    #[test]
    fn local_measurements_see_at_most_the_quantum_correlations(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let rho = common::random_state(&mut rng);
        let (da, db) = rho.dims();
        let x = Observable::diagonal_in(&random_unitary(da, &mut rng)).unwrap();
        let y = Observable::diagonal_in(&random_unitary(db, &mut rng)).unwrap();
        let classical = measurement_mutual_information(&rho, &x, &y).unwrap();
        prop_assert!(classical <= quantum_mutual_information(&rho).unwrap() + 1e-10);
    }

    #[test]
    fn observable_entropy_bounds_state_entropy(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let rho = common::random_state(&mut rng);
        let obs = Observable::diagonal_in(&random_unitary(rho.dim(), &mut rng)).unwrap();
        let shannon = shannon_entropy(&born_distribution(&rho, &obs).unwrap());
        prop_assert!(shannon >= von_neumann_entropy(&rho) - 1e-10);
    }

    #[test]
    fn commuting_observable_saturates_the_bound(seed in any::<u64>()) {
        let rho = common::random_state(&mut common::rng(seed));
        let (_, vectors) = eigh(rho.matrix());
        let obs = Observable::diagonal_in(&vectors).unwrap();
        prop_assert!(obs.commutes_with(&rho, 1e-10));
        let shannon = shannon_entropy(&born_distribution(&rho, &obs).unwrap());
        prop_assert!((shannon - von_neumann_entropy(&rho)).abs() < 1e-10);
    }
}

#[test]
fn product_states_are_uncorrelated() {
    let mut rng = common::rng(5);
    for _ in 0..20 {
        let a = qcorr::qstate::random_density_matrix_with((2, 1), 2, &mut rng).unwrap();
        let b = qcorr::qstate::random_density_matrix_with((3, 1), 3, &mut rng).unwrap();
        let joint = DensityMatrix::new(qcorr::linalg::kron(a.matrix(), b.matrix()), (2, 3)).unwrap();
        assert!(quantum_mutual_information(&joint).unwrap() < 1e-12);
    }
}
