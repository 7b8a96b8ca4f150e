//! Case scripts, theorem gates and certificate assembly. Each classified
//! family instance runs the verification script mirroring its case in the
//! rationality analysis; every expected table or identity is compared
//! exactly and the outcome is recorded step by step with witnesses.

pub mod gates;
mod report;
mod scripts_odd;
mod scripts_two;

pub use report::{render_markdown, Report, Summary, UnmappedFamily};

use crate::fpgroups::{
    default_grid, realize_family, spec_valid, Elem, FamilySpec, PermGroup, Theorem,
};
use crate::monomial::{MonomialAction, MonomialAut};
use crate::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeSet;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum StepStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "noted-discrepancy")]
    Discrepancy,
}

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub name: String,
    pub status: StepStatus,
    pub paper_anchor: String,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertFamily {
    pub theorem: Theorem,
    pub index: u32,
    pub p: u32,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub family: CertFamily,
    pub steps: Vec<Step>,
    pub verdict: String,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn step(&self, name: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.name == name)
    }
}

/// Discrepancy and resolution notes surfaced in certificates and reports.
pub mod notes {
    pub const ORDER_P_PHRASE: &str = "3.1 preamble: the classified groups lack a cyclic subgroup of INDEX p (no element of order p^(n-1)); the printed phrase 'order p' is impossible for p-groups and the index-p reading is what is verified";
    pub const WZ_RENAMING: &str = "4.1 step 4: the displayed tau-action uses symbols z_i that the step defines as w_i; the table is verified under the renaming z_i := w_i";
    pub const RHO_UNDEFINED: &str = "4.1 step 2: the element rho in 'rho . x_0' is not quantified; the monomial-fibration property is verified for every generator";
    pub const G26_REFERENCE: &str = "5.4 names family 26 though the classification lists 25 families; the order-32 gate (theorem 1.5) is applied to every instance at n = 5";
    pub const G23_DOUBLE: &str = "family 23 of 3.2 is listed by both case 5.3 and case 5.8; both scripts are run and both verdicts recorded";
    pub const CASE8_FINAL_LINE: &str = "5.8 closes by naming only families 23 and 24 though its header also lists 18; all three run the same script";
    pub const ZETA_CASE55: &str = "5.5 sets zeta = zeta_{2^(n-1)} though the section fixes zeta = zeta_{2^(n-2)}; xi is taken as zeta_{2^(n-2)}^2, the primitive 2^(n-3)-rd root forced by sigma^2 having order 2^(n-3)";
    pub const G21_RELATION: &str = "family 21 of 3.2: the printed relation t^-1 s t = t^-1 collapses the group; the non-split analogue of family 9, s^-1 t s = t^-1, is verified instead";
    pub const G24_G25_RELATION: &str = "families 24 and 25 of 3.2: the printed l^-1 s l = s^(-1+2^(n-4)) is inconsistent with the l^2 relation (the exponent does not square to 1 mod 2^(n-2)); the trailing-t reading l^-1 s l = s^(-1+2^(n-4)) t, matching families 22 and 23, is verified instead";
    pub const G12_NOT_DIRECT: &str = "family 12 of 3.2 is listed under case 5.2 but has no direct C2 factor: every central involution lies in the commutator-square subgroup; case 5.3 (abelian normal subgroup of index 2) applies and passes";
    pub const CASE7_P2_ROUTE: &str = "5.7 invokes the odd-p route of case 4.7, but at p = 2 the subgroup generated by sigma^2, tau, lambda is non-abelian (lambda conjugates sigma^2 to sigma^(2+2^(n-3))) and no common eigenvector triple exists; the case 5.5 route is used";
    pub const G25_UNMAPPED: &str = "family 25 of 3.2 is not named by any case of section 5; it structurally matches case 5.8 and is verified by that script";
    pub const G18_LAMBDA_SIGN: &str = "5.8 prints lambda: u_i -> 1/u_i for family 18, but lambda^2 = tau acts by -1 on the tau-eigenvector Y2, so lambda sends u_2, u_3, u_4 to -1/u_i; the closing table still holds with the fourth-root twist v = (u - i)/(u + i) in place of (1 - u)/(1 + u)";
}

/// Incremental certificate builder used by the case scripts.
pub(crate) struct Cert {
    steps: Vec<Step>,
    notes: BTreeSet<String>,
}

impl Cert {
    pub fn new() -> Self {
        Cert {
            steps: Vec::new(),
            notes: BTreeSet::new(),
        }
    }

    pub fn note(&mut self, note: &str) {
        self.notes.insert(note.to_string());
    }

    /// A boolean check with explicit witness data.
    pub fn check(&mut self, name: &str, anchor: &str, ok: bool, witness: Value) -> bool {
        self.steps.push(Step {
            name: name.into(),
            status: if ok { StepStatus::Pass } else { StepStatus::Fail },
            paper_anchor: anchor.into(),
            witness,
        });
        ok
    }

    /// A verified correction of a printed statement.
    pub fn discrepancy(&mut self, name: &str, anchor: &str, witness: Value, note: &str) {
        self.steps.push(Step {
            name: name.into(),
            status: StepStatus::Discrepancy,
            paper_anchor: anchor.into(),
            witness,
        });
        self.note(note);
    }

    pub fn prefix_recent(&mut self, prefix: &str, from: usize) {
        for s in self.steps.iter_mut().skip(from) {
            s.name = format!("{prefix}{}", s.name);
        }
    }

    /// Downgrade an already-recorded passing step to a noted discrepancy.
    pub fn mark_discrepancy(&mut self, name: &str, note: &str) {
        if let Some(s) = self
            .steps
            .iter_mut()
            .find(|s| s.name == name && s.status == StepStatus::Pass)
        {
            s.status = StepStatus::Discrepancy;
        }
        self.note(note);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn finish(self, spec: &FamilySpec) -> Certificate {
        let verdict = if self.steps.iter().any(|s| s.status == StepStatus::Fail) {
            "fail"
        } else {
            "pass"
        };
        Certificate {
            schema_version: 1,
            family: CertFamily {
                theorem: spec.theorem,
                index: spec.family,
                p: spec.p,
                n: spec.n,
                a: if spec.theorem == Theorem::OddP && spec.family == 6 {
                    Some(spec.residue_param())
                } else {
                    None
                },
            },
            steps: self.steps,
            verdict: verdict.into(),
            notes: self.notes.into_iter().collect(),
        }
    }
}

/// Kernel of a monomial action of the whole group: elements whose word
/// evaluates to the identity automorphism. Composed along the Cayley
/// graph, so each element costs one composition.
pub(crate) fn action_kernel(gp: &PermGroup, action: &MonomialAction) -> Vec<Elem> {
    let mut auts: Vec<Option<MonomialAut>> = vec![None; gp.order() as usize];
    auts[0] = Some(MonomialAut::identity(action.rank(), action.modulus));
    let mut queue = vec![0 as Elem];
    let mut head = 0;
    while head < queue.len() {
        let e = queue[head];
        head += 1;
        let base = auts[e as usize].clone().unwrap();
        for gi in 0..gp.num_gens() {
            let next = gp.mul(e, gp.generator(gi));
            if auts[next as usize].is_none() {
                auts[next as usize] = Some(MonomialAut::compose(&base, &action.gens[gi].1));
                queue.push(next);
            }
        }
    }
    gp.elements()
        .filter(|&e| auts[e as usize].as_ref().is_some_and(|a| a.is_identity()))
        .collect()
}

pub(crate) fn actions_equal(a: &MonomialAction, b: &MonomialAction) -> bool {
    a.vars == b.vars
        && a.modulus == b.modulus
        && a.gens.len() == b.gens.len()
        && a.gens
            .iter()
            .zip(&b.gens)
            .all(|((n1, a1), (n2, a2))| n1 == n2 && a1 == a2)
}

/// Run the verification script for one family instance.
pub fn run_case(spec: &FamilySpec, oracle_depth: i64) -> Certificate {
    let mut cert = Cert::new();
    if let Err(e) = spec_valid(spec) {
        cert.check(
            "parameters",
            "3.1/3.2",
            false,
            json!({ "error": e.to_string() }),
        );
        return cert.finish(spec);
    }
    match spec.theorem {
        Theorem::OddP => scripts_odd::run(spec, &mut cert, oracle_depth),
        Theorem::TwoGroups => scripts_two::run(spec, &mut cert, oracle_depth),
    }
    // every order-32 instance gets the theorem 1.5 gate; the case that
    // invokes it names a nonexistent family 26
    if spec.p == 2 && spec.n == 5 {
        if let Ok(gp) = realize_family(spec) {
            let w = gates::t1_5(&gp, spec.n);
            cert.check("gate-t1.5-order32", "5.4", w.0, w.1);
            cert.note(notes::G26_REFERENCE);
        }
    }
    cert.finish(spec)
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub ps: Vec<u32>,
    pub ns: Vec<u32>,
    pub theorem: Option<Theorem>,
    pub families: Vec<u32>,
    pub oracle_depth: i64,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            ps: vec![2, 3, 5],
            ns: vec![3, 4, 5, 6],
            theorem: None,
            families: Vec::new(),
            oracle_depth: 6,
            jobs: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for &p in &self.ps {
            if ![2, 3, 5].contains(&p) {
                return Err(Error::Structural {
                    detail: format!("p = {p} is outside the supported grid (2, 3, 5)"),
                });
            }
        }
        for &n in &self.ns {
            if !(3..=6).contains(&n) {
                return Err(Error::Structural {
                    detail: format!("n = {n} is outside the supported grid (3..6)"),
                });
            }
        }
        if self.oracle_depth < 1 || self.oracle_depth > 10 {
            return Err(Error::Structural {
                detail: "oracle depth must lie in 1..=10".into(),
            });
        }
        Ok(())
    }

    fn selects(&self, spec: &FamilySpec) -> bool {
        self.ps.contains(&spec.p)
            && self.ns.contains(&spec.n)
            && self.theorem.is_none_or(|t| t == spec.theorem)
            && (self.families.is_empty() || self.families.contains(&spec.family))
    }
}

/// Run the whole configured grid and assemble the report. Case executions
/// are independent; they run in parallel and merge in deterministic family
/// order.
pub fn run_all(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let grid: Vec<FamilySpec> = default_grid()
        .into_iter()
        .filter(|s| cfg.selects(s))
        .collect();
    let run = || -> Vec<Certificate> {
        use rayon::prelude::*;
        grid.par_iter()
            .map(|spec| run_case(spec, cfg.oracle_depth))
            .collect()
    };
    let certificates = if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::Structural {
                detail: format!("thread pool: {e}"),
            })?
            .install(run)
    } else {
        run()
    };
    Ok(report::assemble(cfg, certificates))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_filter_yields_empty_report() {
        let cfg = RunConfig {
            ps: vec![3],
            ns: vec![3],
            theorem: Some(Theorem::TwoGroups),
            ..Default::default()
        };
        let report = run_all(&cfg).unwrap();
        assert_eq!(report.certificates.len(), 0);
        assert_eq!(report.summary.failed, 0);
    }

    #[test]
    fn p2_n4_covers_the_five_range_one_families() {
        let cfg = RunConfig {
            ps: vec![2],
            ns: vec![4],
            ..Default::default()
        };
        let report = run_all(&cfg).unwrap();
        let indices: Vec<u32> = report
            .certificates
            .iter()
            .map(|c| c.family.index)
            .collect();
        assert_eq!(indices, vec![1, 2, 3, 4, 5]);
        assert_eq!(report.summary.failed, 0, "{:#?}", report.summary);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let cfg = RunConfig {
            ps: vec![7],
            ..Default::default()
        };
        assert!(run_all(&cfg).is_err());
    }
}
