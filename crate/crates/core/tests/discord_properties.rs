mod common;

use std::f64::consts::{LN_2, PI};

use proptest::prelude::*;
use qcorr::discord::{discord, discord_swapped, refine_from, MeasurementBasis};
use qcorr::linalg::{kron, random_unitary};
use qcorr::qstate::{density_from_pure, partial_trace, von_neumann_entropy, PureState, Subsystem};
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn discord_is_bounded(seed in any::<u64>()) {
        let rho = common::random_two_qubit(&mut common::rng(seed));
        let r = discord(&rho).unwrap();
        let sa = von_neumann_entropy(&partial_trace(&rho, Subsystem::A).unwrap());
        prop_assert!(r.discord >= 0.0);
        prop_assert!(r.discord <= r.mutual_info + 1e-12);
        prop_assert!(r.discord <= sa + 1e-8, "{} > S(A) = {sa}", r.discord);
        prop_assert!(r.classical_corr >= -1e-12);
    }

    #[test]
    fn local_unitaries_leave_discord_unchanged(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let rho = common::random_two_qubit(&mut rng);
        let u = kron(&random_unitary(2, &mut rng), &random_unitary(2, &mut rng));
        let a = discord(&rho).unwrap().discord;
        let b = discord(&rho.conjugate_by(&u).unwrap()).unwrap().discord;
        prop_assert!((a - b).abs() < 1e-6, "{a} vs {b}");
    }

    #[test]
    fn restarts_do_not_beat_the_search(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let rho = common::random_two_qubit(&mut rng);
        let found = discord(&rho).unwrap().classical_corr;
        for _ in 0..8 {
            let start = MeasurementBasis::new(rng.random::<f64>() * PI, rng.random::<f64>() * 2.0 * PI);
            let local = refine_from(&rho, start).unwrap().value;
            prop_assert!(local <= found + 1e-8, "restart {local} beats {found}");
        }
    }
}

#[test]
fn classical_states_have_no_discord() {
    let mut rng = common::rng(11);
    for _ in 0..100 {
        let rho = common::random_classical_state(&mut rng);
        let r = discord(&rho).unwrap();
        assert!(r.discord < 1e-6, "{r:?}");
    }
}

#[test]
fn bell_state() {
    let r = discord(&density_from_pure(&PureState::bell())).unwrap();
    assert!((r.mutual_info - 2.0 * LN_2).abs() < 1e-10);
    assert!((r.discord - LN_2).abs() < 1e-6);
}

#[test]
fn search_is_deterministic() {
    let rho = common::random_two_qubit(&mut common::rng(3));
    let first = discord(&rho).unwrap();
    for _ in 0..3 {
        assert_eq!(discord(&rho).unwrap(), first);
    }
}

#[test]
fn pure_states_have_symmetric_discord() {
    for theta in [0.1, 0.4, 0.7, 1.2] {
        let rho = density_from_pure(&PureState::entangled(theta));
        let a = discord(&rho).unwrap().discord;
        let b = discord_swapped(&rho).unwrap().discord;
        let e = von_neumann_entropy(&partial_trace(&rho, Subsystem::A).unwrap());
        assert!((a - e).abs() < 1e-6 && (b - e).abs() < 1e-6, "{a} {b} {e}");
    }
}
