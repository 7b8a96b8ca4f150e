//! Integration tests for the certificate pipeline: wire formats, the
//! recorded discrepancies, and the odd corners of the family grid.

use noecert::cert::{render_markdown, run_case, StepStatus};
use noecert::cyclo::{zomega_solve, ZOmega};
use noecert::fpgroups::{
    build_presentation, realize, realize_family, FamilySpec, Presentation, Theorem,
};
use noecert::intmat::Mat;
use noecert::zmodule::{build_ses, split_ses, CyclicModule};
use noecert::{run_all, RunConfig};

fn spec(theorem: Theorem, family: u32, p: u32, n: u32) -> FamilySpec {
    FamilySpec::new(theorem, family, p, n)
}

#[test]
fn presentation_text_feeds_the_pipeline() {
    // the plain-text relator format round-trips into an identical realization
    let pres = build_presentation(&spec(Theorem::OddP, 7, 3, 4)).unwrap();
    let text = pres.to_text();
    let parsed = Presentation::from_text(&text).unwrap();
    assert_eq!(pres, parsed);
    let g1 = realize(&pres).unwrap();
    let g2 = realize(&parsed).unwrap();
    assert_eq!(g1.generator_perms(), g2.generator_perms());
}

#[test]
fn certificate_json_schema_shape() {
    let cert = run_case(&spec(Theorem::OddP, 1, 3, 3), 6);
    let v = serde_json::to_value(&cert).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["family"]["theorem"], "3.1");
    assert_eq!(v["family"]["index"], 1);
    assert_eq!(v["family"]["p"], 3);
    assert_eq!(v["family"]["n"], 3);
    assert_eq!(v["verdict"], "pass");
    let steps = v["steps"].as_array().unwrap();
    assert!(!steps.is_empty());
    for s in steps {
        assert!(s["name"].is_string());
        assert!(s["status"].is_string());
        assert!(s["paper_anchor"].is_string());
        assert!(!s["witness"].is_null());
    }
    assert!(v["notes"].is_array());
}

#[test]
fn case_scripts_from_the_worked_examples() {
    // the three worked run_case shapes: the full tower, the metacyclic
    // gate, and the order-81 exponent gate
    let c1 = run_case(&spec(Theorem::OddP, 1, 3, 3), 6);
    assert!(c1.passed());
    for name in [
        "realize",
        "family-claims",
        "eigenvectors",
        "faithful-gate-t2.2",
        "quotient-uv",
        "t-linearization",
        "sigma-fixed-lattice",
        "standardize-s",
    ] {
        assert!(c1.step(name).is_some(), "missing step {name}");
    }

    let c2 = run_case(&spec(Theorem::OddP, 2, 3, 4), 6);
    assert!(c2.passed());
    assert!(c2.step("metacyclic").is_some());
    assert!(c2.step("gate-t1.2").is_some());

    let c11 = run_case(&spec(Theorem::OddP, 11, 3, 4), 6);
    assert!(c11.passed());
    let gate = c11.step("gate-t1.1").unwrap();
    assert_eq!(gate.witness["exponent"], 9);
}

#[test]
fn family12_discrepancy_with_verified_fallback() {
    let cert = run_case(&spec(Theorem::TwoGroups, 12, 2, 5), 6);
    assert!(cert.passed());
    let dp = cert.step("direct-product").unwrap();
    assert_eq!(dp.status, StepStatus::Discrepancy);
    assert_eq!(dp.witness["direct_c2_factor"], false);
    assert!(cert.step("gate-t2.7").is_some());
    assert!(cert.notes.iter().any(|n| n.contains("no direct C2 factor")));
}

#[test]
fn family21_runs_with_the_corrected_relation() {
    let cert = run_case(&spec(Theorem::TwoGroups, 21, 2, 6), 6);
    assert!(cert.passed());
    let pres_step = cert.step("presentation").unwrap();
    assert_eq!(pres_step.status, StepStatus::Discrepancy);
    assert!(cert
        .step("metacyclic")
        .is_some_and(|s| s.status == StepStatus::Pass));
}

#[test]
fn family17_records_the_broken_odd_route() {
    let cert = run_case(&spec(Theorem::TwoGroups, 17, 2, 5), 6);
    assert!(cert.passed());
    let step = cert.step("odd-route-check").unwrap();
    assert_eq!(step.status, StepStatus::Discrepancy);
    assert_eq!(step.witness["subgroup_s2_t_l_abelian"], false);
    assert_eq!(step.witness["obstruction_confirmed"], true);
}

#[test]
fn family23_runs_both_case_scripts() {
    let cert = run_case(&spec(Theorem::TwoGroups, 23, 2, 6), 6);
    assert!(cert.passed());
    assert!(cert.steps.iter().any(|s| s.name.starts_with("case3:")));
    assert!(cert.steps.iter().any(|s| s.name.starts_with("case8:")));
}

#[test]
fn family10_realizes_outside_the_default_grid() {
    // the family needs n >= 6, which the default grid for odd p stops
    // short of; the engine still handles it (order 729 stays within the
    // enumeration bound) through the metacyclic script
    let s = spec(Theorem::OddP, 10, 3, 6);
    let gp = realize_family(&s).unwrap();
    assert_eq!(gp.order(), 729);
    let claims = gp.family_claims(3, 6);
    assert!(claims.all_hold());
    let cert = run_case(&s, 6);
    assert!(cert.passed(), "{:?}", cert.steps.iter().map(|st| (&st.name, st.status)).collect::<Vec<_>>());
}

#[test]
fn zomega_section_system_against_exhaustive_search() {
    // the case-5 splitting at p = 3: express the first ambient basis
    // vector in the two cyclic generators over Z[omega], and compare the
    // solver's verdict with a bounded exhaustive search
    let p = 3u32;
    let l = Mat::from_cols(vec![
        vec![1, 3, 0, 0],
        vec![-1, -2, 0, 0],
        vec![1, 3, 1, 3],
        vec![0, -1, -1, -2],
    ]);
    let module = CyclicModule::new(p, l.clone()).unwrap();
    let sub = Mat::from_cols(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
    let ses = build_ses(&module, &sub).unwrap();
    let w = split_ses(&ses).unwrap();
    let g1 = w.sub_std[0].clone();
    let g2 = w.complement[0].clone();

    // generator action on ambient vectors: multiplication by T
    let act = |v: &[i64]| l.mul_vec(v);
    let apply = |a: &ZOmega, g: &[i64]| -> Vec<i64> {
        let tg = act(g);
        (0..4)
            .map(|i| a.coeffs[0] * g[i] + a.coeffs[1] * tg[i])
            .collect()
    };
    let target = vec![1i64, 0, 0, 0];

    // exhaustive small-coefficient search as the oracle
    let mut found = None;
    'outer: for a0 in -4i64..=4 {
        for a1 in -4i64..=4 {
            for b0 in -4i64..=4 {
                for b1 in -4i64..=4 {
                    let a = ZOmega { p, coeffs: vec![a0, a1] };
                    let b = ZOmega { p, coeffs: vec![b0, b1] };
                    let lhs: Vec<i64> = apply(&a, &g1)
                        .iter()
                        .zip(apply(&b, &g2))
                        .map(|(x, y)| x + y)
                        .collect();
                    if lhs == target {
                        found = Some((a, b));
                        break 'outer;
                    }
                }
            }
        }
    }
    let (a, b) = found.expect("exhaustive search finds a section");

    // the flattened Z[omega] solver agrees: the same system is solvable
    // and its solution substitutes back correctly
    let sys = vec![vec![a.clone(), b.clone()]];
    let rhs = vec![a.mul(&ZOmega::one(p)).add(&b.mul(&ZOmega::one(p)))];
    assert!(zomega_solve(&sys, &rhs, p).is_some());
    let lhs: Vec<i64> = apply(&a, &g1)
        .iter()
        .zip(apply(&b, &g2))
        .map(|(x, y)| x + y)
        .collect();
    assert_eq!(lhs, target);
}

#[test]
fn frozen_witnesses_of_the_splitting_stages() {
    // hand-derived values for the p = 3 module stages: case 4.5 has
    // A = z2^-1 and the deterministic split picks Z1 = z2, W1 = w2,
    // W2 = (z2 w1 w2^2)^-1; case 4.6 with a = 2 has A = z2^-2; the final
    // stage of case 4.7 has A = z2
    let c5 = run_case(&spec(Theorem::OddP, 5, 3, 4), 6);
    let eq2 = c5.step("eq2-structure").unwrap();
    assert_eq!(eq2.witness["A_monomial_exponents_in_z"], serde_json::json!([0, -1]));
    let zw = c5.step("ZW-permutation-table").unwrap();
    assert_eq!(zw.witness["Z"][0], "Z1 = z2");
    assert_eq!(zw.witness["W"][0], "W1 = w2");
    assert_eq!(zw.witness["W"][1], "W2 = z2^-1 w1^-1 w2^-2");

    let c6 = run_case(&spec(Theorem::OddP, 6, 3, 4), 6);
    let eq2 = c6.step("eq2-structure").unwrap();
    assert_eq!(eq2.witness["A_monomial_exponents_in_z"], serde_json::json!([0, -2]));

    let c7 = run_case(&spec(Theorem::OddP, 7, 3, 4), 6);
    let eq2 = c7.step("eq2-structure").unwrap();
    assert_eq!(eq2.witness["A_monomial_exponents_in_z"], serde_json::json!([0, 1]));
}

#[test]
fn invalid_parameters_are_reported_in_the_certificate() {
    let cert = run_case(&spec(Theorem::OddP, 2, 3, 3), 6);
    assert!(!cert.passed());
    assert_eq!(cert.steps.len(), 1);
    assert_eq!(cert.steps[0].name, "parameters");
}

#[test]
fn cli_writes_markdown_to_a_file() {
    let exe = env!("CARGO_BIN_EXE_noecert");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.md");
    let out = std::process::Command::new(exe)
        .args(["--theorem", "3.1", "--family", "2", "--p", "3", "--n", "4"])
        .args(["--report", "md", "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("| 3.1-G2 | 3 | 4 |"));
}

#[test]
fn markdown_report_renders() {
    let cfg = RunConfig {
        ps: vec![2],
        ns: vec![4],
        ..Default::default()
    };
    let report = run_all(&cfg).unwrap();
    let md = render_markdown(&report);
    assert!(md.contains("# Rationality certificates"));
    assert!(md.contains("| 3.2-G1 | 2 | 4 |"));
    assert!(md.contains("## Families not claimed by any case"));
}
