//! Report assembly and rendering. A report aggregates the certificates of
//! a run in deterministic family order, a pass/fail summary, the list of
//! families no case claims, and every discrepancy note encountered. Two
//! runs with the same configuration produce byte-identical output.

use super::{notes, Certificate, RunConfig, StepStatus};
use crate::fpgroups::Theorem;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub noted_discrepancies: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnmappedFamily {
    pub theorem: Theorem,
    pub index: u32,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: RunConfig,
    pub summary: Summary,
    pub certificates: Vec<Certificate>,
    /// Families no case of the analysis claims; always present, possibly
    /// empty, and called out explicitly in the rendered output.
    pub unmapped: Vec<UnmappedFamily>,
    pub notes: Vec<String>,
}

pub(super) fn assemble(cfg: &RunConfig, mut certificates: Vec<Certificate>) -> Report {
    certificates.sort_by_key(|c| (c.family.theorem, c.family.p, c.family.index, c.family.n));
    let summary = Summary {
        total: certificates.len(),
        passed: certificates.iter().filter(|c| c.passed()).count(),
        failed: certificates.iter().filter(|c| !c.passed()).count(),
        noted_discrepancies: certificates
            .iter()
            .flat_map(|c| &c.steps)
            .filter(|s| s.status == StepStatus::Discrepancy)
            .count(),
    };
    let mut all_notes: BTreeSet<String> = certificates
        .iter()
        .flat_map(|c| c.notes.iter().cloned())
        .collect();
    let mut unmapped = Vec::new();
    let two_in_scope = certificates
        .iter()
        .any(|c| c.family.theorem == Theorem::TwoGroups);
    if two_in_scope {
        unmapped.push(UnmappedFamily {
            theorem: Theorem::TwoGroups,
            index: 25,
            note: notes::G25_UNMAPPED.to_string(),
        });
        all_notes.insert(notes::G25_UNMAPPED.to_string());
    }
    Report {
        schema_version: 1,
        config: cfg.clone(),
        summary,
        certificates,
        unmapped,
        notes: all_notes.into_iter().collect(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Human-readable rendering of a report.
pub fn render_markdown(report: &Report) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "# Rationality certificates");
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{} certificates: {} passed, {} failed, {} noted discrepancies.",
        report.summary.total,
        report.summary.passed,
        report.summary.failed,
        report.summary.noted_discrepancies
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "| family | p | n | steps | verdict |");
    let _ = writeln!(out, "|--------|---|---|-------|---------|");
    for cert in &report.certificates {
        let marks: usize = cert
            .steps
            .iter()
            .filter(|s| s.status != StepStatus::Fail)
            .count();
        let _ = writeln!(
            out,
            "| {}-G{} | {} | {} | {}/{} | {} |",
            cert.family.theorem,
            cert.family.index,
            cert.family.p,
            cert.family.n,
            marks,
            cert.steps.len(),
            cert.verdict
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "## Families not claimed by any case");
    let _ = writeln!(out);
    if report.unmapped.is_empty() {
        let _ = writeln!(out, "None in scope.");
    } else {
        for u in &report.unmapped {
            let _ = writeln!(out, "- {}-G{}: {}", u.theorem, u.index, u.note);
        }
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "## Notes");
    let _ = writeln!(out);
    if report.notes.is_empty() {
        let _ = writeln!(out, "None.");
    } else {
        for n in &report.notes {
            let _ = writeln!(out, "- {n}");
        }
    }
    for cert in &report.certificates {
        if cert.passed() {
            continue;
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "## Failing steps of {}-G{} (p={}, n={})", cert.family.theorem, cert.family.index, cert.family.p, cert.family.n);
        for s in &cert.steps {
            if s.status == StepStatus::Fail {
                let _ = writeln!(out, "- {} [{}]: {}", s.name, s.paper_anchor, s.witness);
            }
        }
    }
    out
}
