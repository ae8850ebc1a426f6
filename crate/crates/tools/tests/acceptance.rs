//! Acceptance criteria 1–10, one PASS/FAIL line each, plus the full-suite exit
//! status. Exits nonzero if anything fails.

use std::f64::consts::PI;
use std::process::Command;

use grassmann_core::grassmann::random::{haar_random_plane_with, random_unit_tangent};
use grassmann_core::grassmann::Signature;
use grassmann_core::loci::{
    cayley_cut_check, conjugate_test_jacobian, cut_locus_report, schubert_membership, v_pl_symbol, CartanDirection,
    CONJUGATE_TOL,
};
use grassmann_tools::verify::samplers::{cut_plane, trial_rng};
use grassmann_tools::verify::{find_dips, run_suite, scan_conjugate, ScanConfig, SuiteConfig, SuiteReport};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn suite(n: usize, m: usize, trials: usize, only: &[&str]) -> SuiteReport {
    run_suite(&SuiteConfig {
        trials,
        n,
        m,
        only: only.iter().map(|s| s.to_string()).collect(),
        ..SuiteConfig::default()
    })
    .expect("valid suite configuration")
}

/// Runs `only` at every shape and reports the worst value of each property.
fn suite_over(dims: &[(usize, usize)], trials: usize, only: &[&str]) -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for &(n, m) in dims {
        let report = suite(n, m, trials, only);
        pass &= report.pass;
        for p in &report.properties {
            detail.push(format!(
                "{}@({n},{m}) worst {:.2e} fails {}",
                p.name, p.worst, p.failures
            ));
        }
    }
    Outcome {
        pass,
        detail: detail.join("; "),
    }
}

const SMALL: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 2), (2, 3)];

fn criterion_1() -> Outcome {
    suite_over(&SMALL, 1000, &["lemma2_cayley_cosine_product"])
}

fn criterion_2() -> Outcome {
    suite_over(&SMALL, 1000, &["lemma1_eigen_vs_svd"])
}

fn criterion_3() -> Outcome {
    suite_over(
        &[(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (2, 6), (4, 4), (1, 7)],
        1000,
        &["binet_cauchy"],
    )
}

fn criterion_4() -> Outcome {
    suite_over(
        &[(2, 2), (2, 3)],
        100,
        &["geodesic_ode_compact", "geodesic_ode_noncompact"],
    )
}

fn criterion_5() -> Outcome {
    suite_over(&SMALL, 1000, &["exp_log_roundtrip", "angles_from_tangent"])
}

fn criterion_6() -> Outcome {
    let mut disagreements = 0;
    let mut worst_pairing: f64 = 0.0;
    let mut checked = 0;
    for (d, (n, m)) in [(1, 1), (2, 2), (2, 3), (3, 2)].into_iter().enumerate() {
        let cut = v_pl_symbol(m, 1, n, m).unwrap();
        let mut rng = trial_rng(6, d, 0);
        let mut planes: Vec<_> = (0..200).map(|_| (cut_plane(n, m, &mut rng), true)).collect();
        planes.extend((0..1000).map(|_| (haar_random_plane_with(n, m, &mut rng), false)));
        for (plane, expected) in planes {
            let report = cut_locus_report(&plane, 1e-9).unwrap();
            let verdicts = [
                report.in_cut_locus,
                cayley_cut_check(&plane).unwrap(),
                schubert_membership(&plane, &cut).unwrap(),
            ];
            if verdicts.iter().any(|&v| v != expected) {
                disagreements += 1;
            }
            if expected {
                worst_pairing = worst_pairing.max(report.pairing);
            }
            checked += 1;
        }
    }
    Outcome {
        pass: disagreements == 0 && worst_pairing < 1e-10,
        detail: format!("{checked} planes, {disagreements} disagreements, worst cut pairing {worst_pairing:.2e}"),
    }
}

fn criterion_7() -> Outcome {
    let report = suite(2, 2, 50, &["conjugate_radii", "conjugate_midpoints"]);
    let h = CartanDirection::new(vec![0.8, 0.6]).unwrap();
    let (t_max, steps) = (3.0, 3000);
    let step = t_max / steps as f64;
    let rows = scan_conjugate(&h, 0.0, t_max, steps, &ScanConfig::default()).unwrap();
    let target = PI / 1.4;
    let dip = find_dips(&rows, CONJUGATE_TOL)
        .into_iter()
        .map(|i| rows[i].t)
        .find(|t| (t - target).abs() <= step);
    let mut detail: Vec<String> = report
        .properties
        .iter()
        .map(|p| format!("{} worst {:.2e} fails {}/{}", p.name, p.worst, p.failures, p.trials))
        .collect();
    detail.push(match dip {
        Some(t) => format!("dip at t = {t} (pi/1.4 = {target:.6})"),
        None => "no dip within one grid step of pi/1.4".into(),
    });
    Outcome {
        pass: report.pass && dip.is_some(),
        detail: detail.join("; "),
    }
}

fn criterion_8() -> Outcome {
    suite_over(&[(2, 2)], 50, &["conjugate_classification"])
}

fn criterion_9() -> Outcome {
    let mut worst = f64::INFINITY;
    let mut below = 0;
    for trial in 0..100 {
        let mut rng = trial_rng(9, 0, trial);
        let b = random_unit_tangent(2, 2, Signature::Noncompact, &mut rng);
        let lowest = (1..=100)
            .map(|k| {
                let probe = conjugate_test_jacobian(&b.scaled(0.03 * k as f64), CONJUGATE_TOL).unwrap();
                probe.relative()
            })
            .fold(f64::INFINITY, f64::min);
        worst = worst.min(lowest);
        if lowest <= 1e-1 {
            below += 1;
        }
    }
    Outcome {
        pass: below == 0,
        detail: format!("{below}/100 geodesics go below 1e-1, smallest relative singular value {worst:.3e}"),
    }
}

fn criterion_10() -> Outcome {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_grassmann"))
            .args(["verify", "--seed", "42", "--format", "json"])
            .output()
            .expect("binary runs");
        let report: SuiteReport = serde_json::from_slice(&out.stdout).expect("report parses");
        (out.status.code(), report.without_timings())
    };
    let (a, b) = (run(), run());
    Outcome {
        pass: a == b,
        detail: format!("exit codes {:?}/{:?}, reports identical: {}", a.0, b.0, a.1 == b.1),
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Cayley distance equals the cosine product", criterion_1),
        ("chart-matrix angles match orthonormal-basis angles", criterion_2),
        ("Binet-Cauchy pairing equals the overlap", criterion_3),
        ("geodesic equation residual", criterion_4),
        ("exp/log round trip and angles from B", criterion_5),
        ("cut locus, Cayley and Schubert tests agree", criterion_6),
        ("conjugate radii and midpoints", criterion_7),
        ("Wong and interior classification", criterion_8),
        ("no conjugate points on the noncompact dual", criterion_9),
        ("verify is deterministic", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        failed += usize::from(!outcome.pass);
        println!(
            "{} criterion {}: {name} | {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            k + 1,
            outcome.detail
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);

    let exit = Command::new(env!("CARGO_BIN_EXE_grassmann"))
        .args(["verify", "--seed", "42", "--trials", "1000"])
        .output()
        .expect("binary runs")
        .status
        .code();
    let example = exit == Some(0);
    failed += usize::from(!example);
    println!(
        "{} example: `verify --seed 42 --trials 1000` exits 0 (got {exit:?})",
        if example { "PASS" } else { "FAIL" }
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
