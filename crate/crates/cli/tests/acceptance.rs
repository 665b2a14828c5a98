//! Acceptance suite: one test per release criterion. Each test prints a
//! single PASS line with the measured values (visible with
//! `cargo test --test acceptance -- --nocapture`); a failed assertion names
//! its criterion.
//!
//! Reference figures for the table1 profile: a 0.375 p.u. load increase at
//! t = 10 s costs the ESS 1.875 p.u.*s (27.57% of capacity) in steady
//! state; the loop bandwidths are (5.333, 0.125, 0.05882) rad/s; the
//! frequency nadirs are 57.87 Hz (SG alone) and 59.35 / 59.34 Hz (with
//! VSM, without / with recovery); SoC recovery settles around 100 s.

use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use gridfreq::{
    build_system, energy_report, energy_report_via_final_value, run, EssParams, Scenario,
    SgParams, VsmParams,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gridfreq"))
}

fn run_json(args: &[&str]) -> (serde_json::Value, f64) {
    let started = Instant::now();
    let out = bin().args(args).output().expect("binary runs");
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        out.status.success(),
        "gridfreq {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (value, elapsed)
}

fn sg_only_scenario() -> Scenario {
    Scenario {
        vsm: None,
        recovery_enabled: false,
        duration: 60.0,
        ..Scenario::table1()
    }
}

fn vsm_no_recovery_scenario() -> Scenario {
    Scenario {
        recovery_enabled: false,
        duration: 300.0,
        ..Scenario::table1()
    }
}

fn vsm_recovery_scenario() -> Scenario {
    Scenario {
        duration: 400.0,
        ..Scenario::table1()
    }
}

#[test]
fn criterion_1_analytic_energy() {
    let (report, elapsed) = run_json(&["energy"]);
    let vsm = report["closed_form"]["delta_e_vsm_pu_s"].as_f64().unwrap();
    let soc = report["closed_form"]["delta_soc"].as_f64().unwrap();
    assert!((vsm - 1.875).abs() < 5e-4, "criterion 1: delta_e_vsm {vsm} != 1.875");
    assert!((soc - 0.2757).abs() < 5e-5, "criterion 1: delta_soc {soc} != 0.2757");
    assert!(
        report["agreement_ok"].as_bool().unwrap(),
        "criterion 1: closed form and final value disagree"
    );
    assert!(elapsed < 1.0, "criterion 1: took {elapsed:.2} s (limit 1 s)");
    println!(
        "criterion 1 PASS: delta_e_vsm = {vsm} p.u.*s, delta_soc = {:.2}% in {elapsed:.2} s",
        soc * 100.0
    );
}

#[test]
fn criterion_2_bandwidth_triple() {
    let (report, elapsed) = run_json(&["bandwidth"]);
    let get = |k: &str| report[k].as_f64().unwrap();
    let (pa, sa, ca) = (
        get("primary_analytic_rad_s"),
        get("secondary_analytic_rad_s"),
        get("soc_analytic_rad_s"),
    );
    assert!((pa - 5.333).abs() < 5e-4, "criterion 2: primary {pa} != 5.333");
    assert!((sa - 0.125).abs() < 1e-12, "criterion 2: secondary {sa} != 0.125");
    assert!((ca - 0.05882).abs() < 5e-6, "criterion 2: soc {ca} != 0.05882");
    for (analytic, measured_key) in [
        (pa, "primary_measured_rad_s"),
        (sa, "secondary_measured_rad_s"),
        (ca, "soc_measured_rad_s"),
    ] {
        let measured = get(measured_key);
        assert!(
            ((measured - analytic) / analytic).abs() < 1e-3,
            "criterion 2: {measured_key} = {measured} off analytic {analytic} by more than 0.1%"
        );
    }
    assert!(ca < sa && sa < pa, "criterion 2: ordering soc < secondary < primary violated");
    assert!(elapsed < 1.0, "criterion 2: took {elapsed:.2} s (limit 1 s)");
    println!("criterion 2 PASS: ({pa:.4}, {sa:.4}, {ca:.5}) rad/s in {elapsed:.2} s");
}

#[test]
fn criterion_3_sg_only_nadir() {
    let started = Instant::now();
    let result = run(&sg_only_scenario()).unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    let nadir = result.metrics.nadir_hz;
    let at = result.metrics.nadir_time_s;
    assert!((nadir - 57.87).abs() <= 0.3, "criterion 3: nadir {nadir} Hz not within 57.87 +/- 0.3");
    assert!((at - 10.47).abs() <= 0.3, "criterion 3: nadir time {at} s not within 10.47 +/- 0.3");
    assert!(elapsed < 5.0, "criterion 3: took {elapsed:.2} s (limit 5 s)");
    println!("criterion 3 PASS: nadir {nadir:.2} Hz at t = {at:.2} s in {elapsed:.2} s");
}

#[test]
fn criterion_4_vsm_without_recovery() {
    let scenario = vsm_no_recovery_scenario();
    let result = run(&scenario).unwrap();
    let nadir = result.metrics.nadir_hz;
    assert!((nadir - 59.35).abs() <= 0.15, "criterion 4: nadir {nadir} Hz not within 59.35 +/- 0.15");

    let step_idx = result
        .series
        .time_s
        .iter()
        .position(|&t| t >= scenario.step_time)
        .unwrap();
    for w in result.series.soc[step_idx..].windows(2) {
        assert!(w[1] <= w[0] + 1e-12, "criterion 4: SoC not monotonically decreasing");
    }

    let analytic = energy_report(
        &scenario.sg,
        scenario.vsm.as_ref().unwrap(),
        &scenario.ess,
        scenario.delta_p_l,
    )
    .unwrap()
    .delta_soc;
    let target = scenario.ess.soc_ini - 0.2757;
    let soc_final = result.metrics.soc_final;
    assert!(
        (soc_final - target).abs() <= 0.01,
        "criterion 4: soc at 300 s = {soc_final}, want {target} +/- 0.01"
    );
    let simulated_drop = scenario.ess.soc_ini - soc_final;
    assert!(
        (simulated_drop - analytic).abs() <= 0.01,
        "criterion 4: simulated drop {simulated_drop} vs analytic {analytic} beyond 1%"
    );
    println!(
        "criterion 4 PASS: nadir {nadir:.2} Hz, SoC drop {:.2}% vs analytic {:.2}%",
        simulated_drop * 100.0,
        analytic * 100.0
    );
}

#[test]
fn criterion_5_vsm_with_recovery() {
    let started = Instant::now();
    let with_recovery = run(&vsm_recovery_scenario()).unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    let without_recovery = run(&Scenario {
        recovery_enabled: false,
        duration: 400.0,
        ..Scenario::table1()
    })
    .unwrap();

    let nadir = with_recovery.metrics.nadir_hz;
    assert!((nadir - 59.34).abs() <= 0.15, "criterion 5: nadir {nadir} Hz not within 59.34 +/- 0.15");
    let impact = (nadir - without_recovery.metrics.nadir_hz).abs();
    assert!(impact < 0.05, "criterion 5: recovery moved the nadir by {impact} Hz (limit 0.05)");

    let soc_final = with_recovery.metrics.soc_final;
    assert!(
        (soc_final - 0.5).abs() <= 0.005,
        "criterion 5: soc_final {soc_final} not within 0.5 +/- 0.005"
    );
    let settling = with_recovery
        .metrics
        .soc_settling_time_s
        .expect("criterion 5: SoC never settled");
    assert!(
        (60.0..=150.0).contains(&settling),
        "criterion 5: settling {settling} s outside [60, 150]"
    );
    assert!(elapsed < 30.0, "criterion 5: took {elapsed:.2} s (limit 30 s)");
    println!(
        "criterion 5 PASS: nadir {nadir:.2} Hz (impact {impact:.3} Hz), soc_final {soc_final:.4}, settling {settling:.1} s in {elapsed:.2} s"
    );
}

#[test]
fn criterion_6_power_balance() {
    let scenarios = [
        ("sg-only", sg_only_scenario()),
        ("vsm", vsm_no_recovery_scenario()),
        ("vsm+recovery", vsm_recovery_scenario()),
    ];
    let mut worst: f64 = 0.0;
    for (name, scenario) in scenarios {
        let result = run(&scenario).unwrap();
        let residual = result.metrics.max_power_balance_residual;
        assert!(residual < 1e-6, "criterion 6: {name} residual {residual} >= 1e-6 p.u.");
        worst = worst.max(residual);
    }
    println!("criterion 6 PASS: worst power-balance residual {worst:.3e} p.u.");
}

#[test]
fn criterion_7_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut draws = 0usize;
    while draws < 100 {
        let sg = SgParams {
            h_sg: rng.random_range(0.5..8.0),
            d_sg: rng.random_range(0.0..15.0),
            kp_sg: rng.random_range(1.0..25.0),
            ki_sg: rng.random_range(0.5..10.0),
            t_sg: rng.random_range(0.05..0.8),
        };
        let vsm = VsmParams {
            h_vsm: rng.random_range(0.0..8.0),
            d_vsm: rng.random_range(0.0..15.0),
            kp_vsm: rng.random_range(0.0..25.0),
            t_vsm: rng.random_range(0.05..0.8),
        };
        let ess = EssParams {
            e_nom: rng.random_range(1.0..20.0),
            ..EssParams::table1()
        };
        let model = build_system(sg, vsm, 60.0).unwrap();
        if !model.g_f.is_stable() {
            continue;
        }
        draws += 1;

        let closed = energy_report(&sg, &vsm, &ess, 0.375).unwrap();
        let via_fv = energy_report_via_final_value(&model, &ess, 0.375).unwrap();
        for (a, b) in [
            (closed.delta_e_hd, via_fv.delta_e_hd),
            (closed.delta_e_gov, via_fv.delta_e_gov),
            (closed.delta_e_vsm, via_fv.delta_e_vsm),
        ] {
            assert!(
                (a - b).abs() <= 1e-9 * a.abs().max(1e-12),
                "criterion 7: energy routes disagree ({a} vs {b}) for {sg:?} {vsm:?}"
            );
        }
        for _ in 0..100 {
            let s = Complex64::new(rng.random_range(0.01..10.0), rng.random_range(-10.0..10.0));
            let sum = model.tf_p_sg.evaluate(s).unwrap()
                + model.tf_p_hd.evaluate(s).unwrap()
                + model.tf_p_gov.evaluate(s).unwrap();
            assert!(
                (sum - Complex64::new(1.0, 0.0)).norm() < 1e-9,
                "criterion 7: power balance violated at s = {s} for {sg:?} {vsm:?}"
            );
        }
    }
    println!("criterion 7 PASS: 100 stable draws, energy routes within 1e-9, balance within 1e-9");
}

#[test]
fn criterion_8_energy_neutral_inertia() {
    let scenario = Scenario {
        vsm: Some(VsmParams {
            d_vsm: 0.0,
            kp_vsm: 0.0,
            ..VsmParams::table1()
        }),
        recovery_enabled: false,
        duration: 200.0,
        ..Scenario::table1()
    };
    let result = run(&scenario).unwrap();
    let deviation = (result.metrics.soc_final - scenario.ess.soc_ini).abs();
    assert!(deviation < 1e-3, "criterion 8: |soc_final - soc_ini| = {deviation} >= 1e-3");
    println!("criterion 8 PASS: pure-inertia SoC deviation {deviation:.2e}");
}

#[test]
fn criterion_9_step_size_convergence() {
    let scenarios = [
        ("sg-only", sg_only_scenario()),
        ("vsm", vsm_no_recovery_scenario()),
        ("vsm+recovery", vsm_recovery_scenario()),
    ];
    let mut worst: f64 = 0.0;
    for (name, scenario) in scenarios {
        let coarse = run(&scenario).unwrap().metrics.nadir_hz;
        let fine = run(&Scenario {
            dt: 0.5e-3,
            ..scenario
        })
        .unwrap()
        .metrics
        .nadir_hz;
        let change = (coarse - fine).abs();
        assert!(
            change < 1e-4,
            "criterion 9: {name} nadir changed {change} Hz between dt = 1 ms and 0.5 ms"
        );
        worst = worst.max(change);
    }
    println!("criterion 9 PASS: worst nadir change {worst:.2e} Hz under dt halving");
}
