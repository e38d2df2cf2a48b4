//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on any failure.

mod common;

use std::f64::consts::LN_2;
use std::process::ExitCode;
use std::time::Instant;

use qcorr::discord::discord;
use qcorr::gaussian::{gaussian_discord, minimize_gaussian_measurement, random_covariance, Mode};
use qcorr::linalg::{eigh, random_unitary};
use qcorr::measure::{apply_local_map, born_distribution, Observable, StochasticMap};
use qcorr::prob::{
    mutual_information, mutual_information_as_divergence, mutual_information_conditional, shannon_entropy,
};
use qcorr::qstate::{
    araki_lieb_check, density_from_pure, mutual_information_as_relative_entropy, quantum_mutual_information,
    von_neumann_entropy, PureState, Subsystem,
};
use qcorr::quench::{
    classical_avg_work, classical_free_energy_change, classical_partition_quadrature, excess_dissipated_work,
    fock_oracle, monte_carlo_classical_work, quantum_avg_work, quantum_free_energy_change, quantum_partition,
    quench_discord, sweep_temperature, QuenchParams, DEFAULT_TIME, FOCK_TAIL,
};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    check((got - want).abs() <= tol, || format!("{name} = {got}, expected {want} ± {tol:e}"))
}

/// Closed forms at unit parameters, and each against an independent evaluation
/// of the defining expression.
fn closed_forms() -> Outcome {
    let p = QuenchParams::natural();
    let w_c = classical_avg_work(&p);
    let df_c = classical_free_energy_change(&p);
    let w_q = quantum_avg_work(&p);
    let df_q = quantum_free_energy_change(&p);
    close("<W_C>", w_c, 1.0, 1e-6)?;
    close("ΔF_C", df_c, 0.549306, 1e-6)?;
    close("<W_Q>", w_q, 1.081977, 1e-6)?;
    // ln[sinh(√3/2)/sinh(1/2)], mpmath
    close("ΔF_Q", df_q, 0.629997206, 1e-6)?;

    let zc = classical_partition_quadrature(&p, 1.0, 60) / classical_partition_quadrature(&p, 0.0, 60);
    close("ΔF_C from quadrature", -zc.ln() / p.beta(), df_c, 1e-10)?;
    let fock = fock_oracle(&p, FOCK_TAIL);
    close("<W_Q> from Fock trace", fock.average_work, w_q, 1e-10)?;
    close(
        "ΔF_Q from Fock partition sums",
        -(fock.partition_final / fock.partition_initial).ln() / p.beta(),
        df_q,
        1e-10,
    )?;
    Ok(format!(
        "<W_C>={w_c:.9} ΔF_C={df_c:.9} <W_Q>={w_q:.9} ΔF_Q={df_q:.9}"
    ))
}

fn random_quench_params<R: Rng>(rng: &mut R) -> QuenchParams {
    QuenchParams::new(
        rng.random_range(0.5..2.0),
        rng.random_range(0.5..2.0),
        rng.random_range(0.1..2.0),
        rng.random_range(0.5..3.0),
        1.0,
        1.0,
    )
    .unwrap()
}

fn monte_carlo() -> Outcome {
    let mut rng = common::rng(20_240_601);
    let mut worst: f64 = 0.0;
    for k in 0..10 {
        let p = random_quench_params(&mut rng);
        let mc = monte_carlo_classical_work(&p, 1_000_000, k).map_err(|e| e.to_string())?;
        let z = (mc.mean - classical_avg_work(&p)).abs() / mc.std_error;
        check(z < 4.0, || format!("{p:?}: {z:.2} standard errors off"))?;
        worst = worst.max(z);
    }
    Ok(format!("10 points, N=10^6, worst deviation {worst:.2} SE"))
}

fn fock() -> Outcome {
    let p = QuenchParams::natural();
    let f = fock_oracle(&p, FOCK_TAIL);
    let rel = |a: f64, b: f64| ((a - b) / b).abs();
    let errs = [
        rel(f.partition_initial, quantum_partition(&p, 0.0)),
        rel(f.partition_final, quantum_partition(&p, 1.0)),
        rel(f.average_work, quantum_avg_work(&p)),
    ];
    let worst = errs.iter().cloned().fold(0.0, f64::max);
    check(worst < 1e-10, || format!("relative errors {errs:?}"))?;
    Ok(format!("cutoff {}, worst relative error {worst:.1e}", f.cutoff))
}

fn figure_one() -> Outcome {
    let rows = sweep_temperature(&QuenchParams::natural(), 0.1, 5.0, 50, DEFAULT_TIME).map_err(|e| e.to_string())?;
    for r in &rows {
        check(r.omega_excess >= 0.0 && r.gaussian_discord >= 0.0, || format!("negative entry {r:?}"))?;
    }
    for pair in rows.windows(2) {
        check(
            pair[1].omega_excess < pair[0].omega_excess && pair[1].gaussian_discord < pair[0].gaussian_discord,
            || format!("not decaying at T = {}", pair[1].temperature),
        )?;
    }
    let (first, last) = (rows[0], rows[rows.len() - 1]);
    check(last.omega_excess < 1e-3 * first.omega_excess, || "Ω does not approach 0".into())?;
    check(last.gaussian_discord < 0.1 * first.gaussian_discord, || "discord does not approach 0".into())?;

    let base = QuenchParams::natural();
    for i in 0..100 {
        let beta = 0.05 + (20.0 - 0.05) * i as f64 / 99.0;
        for j in 0..100 {
            let lambda0 = 5.0 * j as f64 / 99.0;
            let p = base.with_beta(beta).unwrap().with_lambda0(lambda0).unwrap();
            let omega = excess_dissipated_work(&p);
            check(omega >= 0.0, || format!("Ω = {omega} at β = {beta}, λ₀ = {lambda0}"))?;
        }
    }
    let hot = excess_dissipated_work(&base.with_beta(0.01).unwrap());
    check(hot.abs() < 1e-5, || format!("Ω = {hot} at βℏω = 0.01"))?;
    Ok(format!(
        "Ω {:.3e} → {:.3e}, discord {:.4} → {:.4}; 100×100 grid Ω ≥ 0; Ω(βℏω=0.01) = {hot:.1e}",
        first.omega_excess, last.omega_excess, first.gaussian_discord, last.gaussian_discord
    ))
}

fn gaussian_oracle() -> Outcome {
    let mut rng = common::rng(5);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let cm = random_covariance(&mut rng, 2.0, 1.0);
        for mode in [Mode::One, Mode::Two] {
            let closed = gaussian_discord(&cm, mode).map_err(|e| e.to_string())?;
            let oracle = minimize_gaussian_measurement(&cm, mode).map_err(|e| e.to_string())?.discord;
            worst = worst.max((closed - oracle).abs());
        }
    }
    check(worst < 1e-6, || format!("random states differ by {worst:e}"))?;

    let closed = quench_discord(&QuenchParams::natural(), DEFAULT_TIME).map_err(|e| e.to_string())?;
    let h = qcorr::gaussian::QuadraticHamiltonian::coupled_oscillators(1.0, 1.0, 1.0, 1.0).unwrap();
    let cm = qcorr::gaussian::symplectic_evolution(&qcorr::gaussian::thermal_product(1.0, 1.0, 1.0).unwrap(), &h, 1.0);
    let oracle = minimize_gaussian_measurement(&cm, Mode::One).map_err(|e| e.to_string())?.discord;
    close("quench-state discord", closed, oracle, 1e-6)?;
    Ok(format!("200 random states (both modes) worst {worst:.1e}; quench state {closed:.12}"))
}

fn entropic_suite() -> Outcome {
    let bell = density_from_pure(&PureState::bell());
    close("Bell I", quantum_mutual_information(&bell).unwrap(), 2.0 * LN_2, 1e-10)?;
    close("Bell discord", discord(&bell).unwrap().discord, LN_2, 1e-6)?;

    let mut rng = common::rng(17);
    for _ in 0..100 {
        let rho = common::random_classical_state(&mut rng);
        let d = discord(&rho).unwrap().discord;
        check(d < 1e-6, || format!("classical state with discord {d}"))?;
    }

    let mut lindblad_pairs = 0;
    for _ in 0..600 {
        let rho = common::random_state(&mut rng);
        let al = araki_lieb_check(&rho).unwrap();
        check(al.holds(1e-10), || format!("Araki–Lieb fails: {al:?}"))?;

        let before = quantum_mutual_information(&rho).unwrap();
        let map = StochasticMap::random(rho.dims().1, rng.random_range(1..=3), &mut rng);
        let after = quantum_mutual_information(&apply_local_map(&rho, &map, Subsystem::B).unwrap()).unwrap();
        check(after <= before + 1e-10, || format!("local map raised I from {before} to {after}"))?;

        let s = von_neumann_entropy(&rho);
        let obs = Observable::diagonal_in(&random_unitary(rho.dim(), &mut rng)).unwrap();
        let h = shannon_entropy(&born_distribution(&rho, &obs).unwrap());
        check(h >= s - 1e-10, || format!("S(A) = {h} < S_N = {s}"))?;
        let (_, vectors) = eigh(rho.matrix());
        let commuting = Observable::diagonal_in(&vectors).unwrap();
        let h = shannon_entropy(&born_distribution(&rho, &commuting).unwrap());
        check((h - s).abs() < 1e-10, || format!("commuting S(A) = {h} ≠ S_N = {s}"))?;
        lindblad_pairs += 2;
    }
    Ok(format!(
        "Bell I and D exact; 100 classical states D≈0; 600 states Araki–Lieb and data processing; {lindblad_pairs} observable pairs"
    ))
}

fn route_equivalence() -> Outcome {
    let mut rng = common::rng(23);
    let mut classical: f64 = 0.0;
    for _ in 0..1000 {
        let j = common::random_joint(&mut rng, 8);
        let a = mutual_information(&j);
        classical = classical
            .max((a - mutual_information_conditional(&j)).abs())
            .max((a - mutual_information_as_divergence(&j)).abs());
    }
    check(classical < 1e-12, || format!("classical routes differ by {classical:e}"))?;
    let mut quantum: f64 = 0.0;
    for _ in 0..1000 {
        let rho = common::random_state(&mut rng);
        let d = quantum_mutual_information(&rho).unwrap() - mutual_information_as_relative_entropy(&rho).unwrap();
        quantum = quantum.max(d.abs());
    }
    check(quantum < 1e-9, || format!("quantum routes differ by {quantum:e}"))?;
    Ok(format!("1000+1000 instances, worst {classical:.1e} / {quantum:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("closed-form work and free energy", closed_forms),
        ("classical Monte Carlo oracle", monte_carlo),
        ("quantum Fock-basis oracle", fock),
        ("temperature sweep behaviour", figure_one),
        ("Gaussian discord closed form vs search", gaussian_oracle),
        ("entropic suite", entropic_suite),
        ("mutual-information routes agree", route_equivalence),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}: {name} [{secs:.2}s] {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} [{secs:.2}s] {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
