//! Acceptance suite: one test per criterion, each printing a pass line.
//! Everything is exact; there are no numeric tolerances anywhere.

use noecert::cert::{Certificate, StepStatus};
use noecert::fpgroups::{default_grid, realize_family, Theorem};
use noecert::intmat::Mat;
use noecert::monomial::MonomialAut;
use noecert::ratfn::{affine_shift_check, build_t_substitution, verify_linearization, RationalFn, Substitution};
use noecert::{run_all, RunConfig};
use std::sync::OnceLock;
use std::time::Instant;

/// The full grid is verified once and shared by the criteria that inspect
/// certificates.
fn full_report() -> &'static noecert::Report {
    static REPORT: OnceLock<noecert::Report> = OnceLock::new();
    REPORT.get_or_init(|| {
        let started = Instant::now();
        let report = run_all(&RunConfig::default()).expect("grid run");
        assert!(
            started.elapsed().as_secs() < 900,
            "full grid exceeded the 15-minute budget"
        );
        report
    })
}

fn cert_of(report: &noecert::Report, theorem: Theorem, index: u32, p: u32, n: u32) -> &Certificate {
    report
        .certificates
        .iter()
        .find(|c| {
            c.family.theorem == theorem
                && c.family.index == index
                && c.family.p == p
                && c.family.n == n
        })
        .unwrap_or_else(|| panic!("missing certificate {theorem:?} G{index} p={p} n={n}"))
}

fn step_passed(cert: &Certificate, suffix: &str) -> bool {
    cert.steps
        .iter()
        .any(|s| s.name.ends_with(suffix) && s.status == StepStatus::Pass)
}

#[test]
fn criterion_1_classification_realization() {
    let started = Instant::now();
    let grid = default_grid();
    for spec in &grid {
        let per_group = Instant::now();
        let gp = realize_family(spec).unwrap_or_else(|e| panic!("{spec}: {e}"));
        let claims = gp.family_claims(spec.p, spec.n);
        assert_eq!(claims.order, spec.order(), "{spec}: wrong order");
        assert!(claims.has_element_of_order_pn2, "{spec}: no element of order p^(n-2)");
        assert!(claims.no_element_of_order_pn1, "{spec}: an element of order p^(n-1) exists");
        assert!(claims.non_abelian, "{spec}: abelian");
        assert!(
            per_group.elapsed().as_secs() < 10,
            "{spec}: realization exceeded 10 s"
        );
    }
    assert!(started.elapsed().as_secs() < 300, "criterion 1 exceeded 5 minutes");
    println!(
        "criterion 1: PASS - {} family instances realize with |G| = p^n, an element of order p^(n-2) and none of order p^(n-1)",
        grid.len()
    );
}

#[test]
fn criterion_2_eigen_structure() {
    let report = full_report();
    // every certificate that constructs eigenvectors must verify the
    // eigen-equations exactly and pass the faithfulness gate
    let mut towers = 0;
    for cert in &report.certificates {
        let has_eigen = cert.steps.iter().any(|s| s.name.ends_with("eigenvectors"));
        if !has_eigen {
            continue;
        }
        towers += 1;
        assert!(
            step_passed(cert, "eigenvectors"),
            "{}-G{} (p={}, n={}): eigen-equations",
            cert.family.theorem,
            cert.family.index,
            cert.family.p,
            cert.family.n
        );
        assert!(
            step_passed(cert, "faithful-gate-t2.2"),
            "{}-G{}: faithfulness",
            cert.family.theorem,
            cert.family.index
        );
    }
    assert!(towers >= 20, "expected the tower scripts to run: got {towers}");
    println!("criterion 2: PASS - exact eigen-equations and faithful subspaces in {towers} tower certificates");
}

#[test]
fn criterion_3_action_table_reproduction() {
    let report = full_report();
    // case 1 steps 1-2 for p in {3, 5}
    for (p, ns) in [(3u32, vec![3u32, 4, 5]), (5, vec![3, 4])] {
        for n in ns {
            let cert = cert_of(report, Theorem::OddP, 1, p, n);
            assert!(step_passed(cert, "action-table"), "case 1 step 1 table p={p} n={n}");
            assert!(step_passed(cert, "quotient-uv"), "case 1 step 2 table p={p} n={n}");
        }
    }
    // eq1 via family 5 and eq4 via family 7, p in {3, 5}
    for (p, n) in [(3u32, 4u32), (3, 5), (5, 4)] {
        let c5 = cert_of(report, Theorem::OddP, 5, p, n);
        assert!(step_passed(c5, "quotient-uv"), "eq1 p={p} n={n}");
        let c7 = cert_of(report, Theorem::OddP, 7, p, n);
        assert!(step_passed(c7, "eq4-table"), "eq4 p={p} n={n}");
    }
    // the two-group tables of cases 5.5, 5.6, 5.8 at n in {5, 6}
    for n in [5u32, 6] {
        for fam in [15u32, 16] {
            let c = cert_of(report, Theorem::TwoGroups, fam, 2, n);
            assert!(step_passed(c, "action-table"), "family {fam} x-table n={n}");
            assert!(step_passed(c, "u-variables"), "family {fam} u-table n={n}");
        }
        // family 18's printed u-table drops a sign; the recomputed table is
        // stored and flagged, which the criterion explicitly allows
        let c18 = cert_of(report, Theorem::TwoGroups, 18, 2, n);
        let ustep = c18
            .steps
            .iter()
            .find(|s| s.name.ends_with("u-variables"))
            .expect("family 18 u-table step");
        assert_eq!(ustep.status, StepStatus::Discrepancy, "family 18 u-table n={n}");
        assert!(ustep.witness.get("l").is_some(), "recomputed value stored");
    }
    println!("criterion 3: PASS - printed action tables reproduced symbol-for-symbol (one flagged sign discrepancy with the recomputed table stored)");
}

#[test]
fn criterion_4_linearization() {
    for p in [2u32, 3, 5] {
        let k = (p - 1) as usize;
        // the standard cyclic-with-inversion substitution
        let mut mat = Mat::zero(k, k);
        if k == 1 {
            mat[(0, 0)] = -1;
        } else {
            for j in 0..k - 1 {
                mat[(j + 1, j)] = 1;
            }
            for i in 0..k {
                mat[(i, k - 1)] = -1;
            }
        }
        let tau = Substitution::from_monomial_aut(&MonomialAut {
            mat,
            scal: vec![0; k],
            modulus: 1,
        })
        .unwrap();
        let report = verify_linearization(&tau, p, 1).unwrap();
        assert!(report.all_ok(), "p = {p}: {report:?}");
        assert!(report.sum_is_one, "p = {p}: sum of t_i");
        assert!(report.recovery_ok && report.round_trip_ok, "p = {p}: round trip");
        assert!(affine_shift_check(&tau, p, 1).unwrap(), "p = {p}: affine shift");
        // the sum identity holds for the tuple itself as well
        let ts = build_t_substitution(p, 1);
        let mut sum = RationalFn::zero(k, 1);
        for t in &ts[1..=p as usize] {
            sum = sum.add(t);
        }
        assert!(sum.eq(&RationalFn::one(k, 1)), "p = {p}: sum identity");
    }
    println!("criterion 4: PASS - linearization, affine shift, sum identity and round-trip recovery hold for p in {{2, 3, 5}}");
}

#[test]
fn criterion_5_fixed_lattice_oracle() {
    let report = full_report();
    let mut checked = 0;
    let mut oracle_checked = 0;
    for cert in &report.certificates {
        for step in &cert.steps {
            if !step.name.contains("fixed-lattice") {
                continue;
            }
            assert_eq!(
                step.status,
                StepStatus::Pass,
                "{}-G{} (p={}, n={}): {}",
                cert.family.theorem,
                cert.family.index,
                cert.family.p,
                cert.family.n,
                step.name
            );
            assert_eq!(
                step.witness.get("contained"),
                Some(&serde_json::json!(true)),
                "{}: containment",
                step.name
            );
            assert_eq!(
                step.witness.get("index"),
                Some(&serde_json::json!(1)),
                "{}: index 1",
                step.name
            );
            checked += 1;
            match step.witness.get("brute_force_oracle") {
                Some(serde_json::Value::Bool(b)) => {
                    assert!(b, "{}: oracle disagrees", step.name);
                    oracle_checked += 1;
                }
                Some(serde_json::Value::Null) | None => {} // rank > 4
                other => panic!("unexpected oracle witness {other:?}"),
            }
        }
    }
    assert!(checked >= 26, "expected many fixed-lattice claims, got {checked}");
    assert!(oracle_checked >= 20, "expected rank <= 4 oracle runs, got {oracle_checked}");
    println!(
        "criterion 5: PASS - {checked} fixed-field generator claims verified with index 1 ({oracle_checked} confirmed against the brute-force oracle)"
    );
}

#[test]
fn criterion_6_module_splitting() {
    let report = full_report();
    // cases 4.5, 4.6 and the final stage of 4.7 at p = 3 (both n values)
    for fam in [5u32, 6, 7] {
        for n in [4u32, 5] {
            let cert = cert_of(report, Theorem::OddP, fam, 3, n);
            for name in ["annihilation", "module-ses", "module-split", "ZW-permutation-table"] {
                assert!(
                    step_passed(cert, name),
                    "family {fam} n={n}: step {name}"
                );
            }
            let split = cert
                .steps
                .iter()
                .find(|s| s.name.ends_with("module-split"))
                .unwrap();
            let det = split.witness.get("combined_det").and_then(|v| v.as_i64());
            assert!(matches!(det, Some(1) | Some(-1)), "family {fam}: unimodular witness");
        }
    }
    println!("criterion 6: PASS - Phi_p annihilation, unimodular splitting and the Z/W permutation tables verified for cases 4.5, 4.6 and 4.7 at p = 3");
}

#[test]
fn criterion_7_coverage_report() {
    let started = Instant::now();
    let report = full_report();
    assert_eq!(report.summary.failed, 0, "failing certificates: {:#?}",
        report
            .certificates
            .iter()
            .filter(|c| !c.passed())
            .map(|c| (c.family.theorem, c.family.index, c.family.p, c.family.n))
            .collect::<Vec<_>>());
    // one certificate per family instance of the grid
    assert_eq!(report.certificates.len(), default_grid().len());
    assert_eq!(report.certificates.len(), 74);
    // the five flagged discrepancies all surface in the report notes
    let notes = report.notes.join("\n");
    for needle in [
        "renaming z_i := w_i",         // step-4 w/z symbols
        "names family 26",             // the phantom family of case 5.4
        "listed by both case 5.3 and case 5.8", // duplicated family 23
        "INDEX p",                     // the order-p phrase of 3.1
        "zeta_{2^(n-1)}",              // the zeta notation of case 5.5
    ] {
        assert!(notes.contains(needle), "missing note: {needle}");
    }
    // the unmapped list is present and names family 25
    assert_eq!(report.unmapped.len(), 1);
    assert_eq!(report.unmapped[0].index, 25);
    // determinism: a second run renders byte-identically
    let again = run_all(&RunConfig::default()).unwrap();
    assert_eq!(report.to_json(), again.to_json(), "reports differ between runs");
    assert!(started.elapsed().as_secs() < 900);
    println!(
        "criterion 7: PASS - {} certificates, 0 failures, all flagged discrepancies surfaced, byte-identical reports",
        report.certificates.len()
    );
}

#[test]
fn exit_code_contract() {
    // nonzero exit iff a certificate fails; run the binary on a passing slice
    let exe = env!("CARGO_BIN_EXE_noecert");
    let out = std::process::Command::new(exe)
        .args(["--theorem", "3.1", "--family", "11", "--p", "3", "--n", "4"])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "expected exit 0: {:?}", out);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json report");
    assert_eq!(report["summary"]["failed"], 0);
    assert_eq!(report["schema_version"], 1);
    // an empty selection exits successfully with an empty report
    let out = std::process::Command::new(exe)
        .args(["--theorem", "3.2", "--p", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    println!("exit-code contract: PASS");
}
