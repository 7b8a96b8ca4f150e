//! Finite presentations of the classified families, their realization as
//! permutation groups by coset enumeration over the trivial subgroup, and
//! the structural checks the classification asserts about each group.

mod coset;
mod families;
mod perm;

pub use families::{default_grid, family_count, min_n, spec_valid};
pub use perm::{ClaimReport, Elem, PermGroup, SubgroupProps};

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which classification theorem a family belongs to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize, Hash)]
pub enum Theorem {
    /// Odd p: the eleven families with a cyclic subgroup of index p^2.
    #[serde(rename = "3.1")]
    OddP,
    /// p = 2: the twenty-five families with a cyclic subgroup of index 4.
    #[serde(rename = "3.2")]
    TwoGroups,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theorem::OddP => write!(f, "3.1"),
            Theorem::TwoGroups => write!(f, "3.2"),
        }
    }
}

/// One concrete group instance: (theorem, family index, p, n) plus the
/// optional quadratic non-residue parameter used by family 6 of 3.1.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FamilySpec {
    pub theorem: Theorem,
    pub family: u32,
    pub p: u32,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
}

impl FamilySpec {
    pub fn new(theorem: Theorem, family: u32, p: u32, n: u32) -> Self {
        FamilySpec {
            theorem,
            family,
            p,
            n,
            a: None,
        }
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }

    /// The non-residue parameter for family 6 of 3.1; defaults to the least
    /// quadratic non-residue mod p when not supplied.
    pub fn residue_param(&self) -> u32 {
        self.a
            .unwrap_or_else(|| families::least_nonresidue(self.p))
    }

    pub fn label(&self) -> String {
        match self.a {
            Some(a) => format!("{}-G{} (p={}, n={}, a={})", self.theorem, self.family, self.p, self.n, a),
            None => format!("{}-G{} (p={}, n={})", self.theorem, self.family, self.p, self.n),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A word in the generators: (generator index, exponent) pairs, freely
/// reduced.
pub type Word = Vec<(usize, i64)>;

pub fn word_reduce(w: &[(usize, i64)]) -> Word {
    let mut out: Word = Vec::new();
    for &(g, e) in w {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some((lg, le)) if *lg == g => {
                *le += e;
                if *le == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, e)),
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    pub gens: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(gens: Vec<&str>, relators: Vec<Word>) -> Self {
        Presentation {
            gens: gens.into_iter().map(|s| s.to_string()).collect(),
            relators: relators.iter().map(|w| word_reduce(w)).collect(),
        }
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == name)
    }

    /// Relators as display strings, e.g. `t^-1 s t l^-1 s^-1`.
    pub fn relator_strings(&self) -> Vec<String> {
        self.relators
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&(g, e)| format!("{}^{}", self.gens[g], e))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }

    /// Plain-text wire format: one relator per line, space-separated
    /// `generator^exponent` tokens.
    pub fn to_text(&self) -> String {
        let mut s = self.relator_strings().join("\n");
        s.push('\n');
        s
    }

    /// Parse the wire format. Generator names are ordered by the fixed
    /// precedence s < t < l, matching the presentation conventions here.
    pub fn from_text(text: &str) -> Result<Presentation> {
        let mut names: Vec<String> = Vec::new();
        let mut raw: Vec<Vec<(String, i64)>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut word = Vec::new();
            for tok in line.split_whitespace() {
                let (name, exp) = match tok.split_once('^') {
                    Some((n, e)) => (
                        n.to_string(),
                        e.parse::<i64>().map_err(|_| Error::Structural {
                            detail: format!("bad exponent in token {tok}"),
                        })?,
                    ),
                    None => (tok.to_string(), 1),
                };
                if !names.contains(&name) {
                    names.push(name.clone());
                }
                word.push((name, exp));
            }
            raw.push(word);
        }
        let precedence = |n: &String| match n.as_str() {
            "s" => 0,
            "t" => 1,
            "l" => 2,
            _ => 3,
        };
        names.sort_by_key(precedence);
        let gens = names.clone();
        let relators = raw
            .into_iter()
            .map(|w| {
                word_reduce(
                    &w.iter()
                        .map(|(n, e)| (gens.iter().position(|g| g == n).unwrap(), *e))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        Ok(Presentation {
            gens: gens.into_iter().collect(),
            relators,
        })
    }
}

/// Transcribe the defining relations of a classified family.
pub fn build_presentation(spec: &FamilySpec) -> Result<Presentation> {
    families::build(spec)
}

/// The printed relation for 3.2 family 21 collapses the group; this reports
/// the correction applied (see the certificate notes).
pub fn family21_correction() -> (&'static str, &'static str) {
    (
        "t^-1 s^1 t^1 t^-1 (printed: t^-1 s t = t^-1)",
        "s^-1 t^1 s^1 t^1 (used: s^-1 t s = t^-1)",
    )
}

/// Realize a presentation as its regular permutation representation via
/// coset enumeration over the trivial subgroup. `bound` caps the group
/// order; the enumeration itself is allowed 10x that many cosets.
pub fn realize_with_bound(pres: &Presentation, bound: usize) -> Result<PermGroup> {
    let perms = coset::enumerate(pres, bound)?;
    let g = PermGroup::from_generator_perms(pres.gens.clone(), perms)?;
    for (w, rs) in pres.relators.iter().zip(pres.relator_strings()) {
        if g.eval_word(w) != 0 {
            return Err(Error::RelatorViolation { relator: rs });
        }
    }
    Ok(g)
}

pub const DEFAULT_ORDER_BOUND: usize = 4096;

pub fn realize(pres: &Presentation) -> Result<PermGroup> {
    realize_with_bound(pres, DEFAULT_ORDER_BOUND)
}

/// Build and realize a family in one step.
pub fn realize_family(spec: &FamilySpec) -> Result<PermGroup> {
    realize(&build_presentation(spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(theorem: Theorem, family: u32, p: u32, n: u32) -> FamilySpec {
        FamilySpec::new(theorem, family, p, n)
    }

    #[test]
    fn presentation_g1_odd() {
        let pres = build_presentation(&g(Theorem::OddP, 1, 3, 3)).unwrap();
        assert_eq!(pres.gens, vec!["s", "t", "l"]);
        let rs = pres.relator_strings();
        assert_eq!(
            rs,
            vec![
                "s^3",
                "t^3",
                "l^3",
                "s^-1 l^-1 s^1 l^1",
                "t^-1 l^-1 t^1 l^1",
                "t^-1 s^1 t^1 l^-1 s^-1",
            ]
        );
    }

    #[test]
    fn presentation_g2_needs_n_at_least_4() {
        let err = build_presentation(&g(Theorem::OddP, 2, 3, 3)).unwrap_err();
        match err {
            Error::ParamRange { family, .. } => assert_eq!(family, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn presentation_g1_two() {
        let pres = build_presentation(&g(Theorem::TwoGroups, 1, 2, 4)).unwrap();
        assert_eq!(pres.gens, vec!["s", "t"]);
        assert_eq!(
            pres.relator_strings(),
            vec!["s^4", "t^4", "t^-1 s^1 t^1 s^-3"]
        );
    }

    #[test]
    fn text_round_trip() {
        let pres = build_presentation(&g(Theorem::OddP, 1, 3, 3)).unwrap();
        let text = pres.to_text();
        let back = Presentation::from_text(&text).unwrap();
        assert_eq!(pres, back);
    }

    #[test]
    fn realize_g1_degree_27() {
        let gp = realize_family(&g(Theorem::OddP, 1, 3, 3)).unwrap();
        assert_eq!(gp.order(), 27);
    }

    #[test]
    fn realize_trivial_presentation() {
        let pres = Presentation::new(vec!["g"], vec![vec![(0, 1)]]);
        let gp = realize(&pres).unwrap();
        assert_eq!(gp.order(), 1);
    }

    #[test]
    fn realize_g9_degree_243() {
        let gp = realize_family(&g(Theorem::OddP, 9, 3, 5)).unwrap();
        assert_eq!(gp.order(), 243);
    }

    #[test]
    fn element_orders_in_g1_and_g2() {
        let gp = realize_family(&g(Theorem::OddP, 1, 3, 4)).unwrap();
        let s = gp.generator(0);
        assert_eq!(gp.element_order(s), 9);
        assert_eq!(gp.element_order(0), 1);

        let gp = realize_family(&g(Theorem::OddP, 2, 3, 4)).unwrap();
        let t = gp.generator(1);
        assert_eq!(gp.element_order(t), 9);
        // oracle: no smaller power of t is trivial
        let mut x = t;
        for k in 1..9 {
            assert!(x != 0, "t^{k} became trivial early");
            x = gp.mul(x, t);
        }
        assert_eq!(x, 0);
    }

    #[test]
    fn claims_for_g1_p3_n3() {
        let spec = g(Theorem::OddP, 1, 3, 3);
        let gp = realize_family(&spec).unwrap();
        let report = gp.family_claims(spec.p, spec.n);
        assert_eq!(report.order, 27);
        assert!(report.non_abelian);
        assert!(report.has_element_of_order_pn2);
        assert!(report.no_element_of_order_pn1);
        assert_eq!(report.exponent, 3);
        assert_eq!(report.max_order, 3);
    }

    #[test]
    fn claims_for_g1_two_n4() {
        let spec = g(Theorem::TwoGroups, 1, 2, 4);
        let gp = realize_family(&spec).unwrap();
        let report = gp.family_claims(2, 4);
        assert_eq!(report.order, 16);
        assert!(report.has_element_of_order_pn2); // an element of order 4
        assert!(report.no_element_of_order_pn1); // none of order 8
    }

    #[test]
    fn abelian_presentation_fails_non_abelian_claim() {
        // C_3 x C_3 as a designed negative
        let pres = Presentation::new(
            vec!["s", "t"],
            vec![
                vec![(0, 3)],
                vec![(1, 3)],
                vec![(0, -1), (1, -1), (0, 1), (1, 1)],
            ],
        );
        let gp = realize(&pres).unwrap();
        let report = gp.family_claims(3, 2);
        assert!(!report.non_abelian);
    }

    #[test]
    fn subgroup_props_examples() {
        // <s, t> in G4 of 3.1 at p=3, n=4 is abelian of order 27
        let gp = realize_family(&g(Theorem::OddP, 4, 3, 4)).unwrap();
        let props = gp.subgroup_props(&[gp.generator(0), gp.generator(1)]);
        assert!(props.is_abelian);
        assert_eq!(props.order, 27);

        // the trivial subgroup
        let props = gp.subgroup_props(&[0]);
        assert_eq!(props.order, 1);
        assert!(props.is_abelian && props.is_normal && props.is_cyclic);

        // <s, t> in G4 of 3.2 at n=5: abelian normal of index 2, cyclic quotient
        let gp = realize_family(&g(Theorem::TwoGroups, 4, 2, 5)).unwrap();
        let props = gp.subgroup_props(&[gp.generator(0), gp.generator(1)]);
        assert!(props.is_abelian && props.is_normal);
        assert_eq!(gp.order() / props.order, 2);
        assert_eq!(props.quotient_cyclic_order, Some(2));
    }

    #[test]
    fn subgroup_of_all_generators_is_whole_group() {
        let gp = realize_family(&g(Theorem::OddP, 5, 3, 4)).unwrap();
        let gens: Vec<Elem> = (0..3).map(|i| gp.generator(i)).collect();
        assert_eq!(gp.subgroup_props(&gens).order, gp.order());
    }

    #[test]
    fn direct_product_examples() {
        // G3 of 3.1: <s,t> x <l>
        let gp = realize_family(&g(Theorem::OddP, 3, 3, 4)).unwrap();
        assert!(gp.direct_product_check(&[gp.generator(0), gp.generator(1)], gp.generator(2)));

        // C_2 with H = G, c = identity
        let pres = Presentation::new(vec!["g"], vec![vec![(0, 2)]]);
        let c2 = realize(&pres).unwrap();
        assert!(c2.direct_product_check(&[c2.generator(0)], 0));

        // G2 of 3.2 at n=4 with its central involution l
        let gp = realize_family(&g(Theorem::TwoGroups, 2, 2, 4)).unwrap();
        assert!(gp.direct_product_check(&[gp.generator(0), gp.generator(1)], gp.generator(2)));
    }

    #[test]
    fn metacyclic_examples() {
        let gp = realize_family(&g(Theorem::OddP, 2, 3, 4)).unwrap();
        assert!(gp.metacyclic_check(gp.generator(0), gp.generator(1)));

        // cyclic group with (generator, identity)
        let pres = Presentation::new(vec!["g"], vec![vec![(0, 5)]]);
        let c5 = realize(&pres).unwrap();
        assert!(c5.metacyclic_check(c5.generator(0), 0));

        // G1 of 3.1 at (3,3): <s> is not normal, quotient structure fails
        let gp = realize_family(&g(Theorem::OddP, 1, 3, 3)).unwrap();
        assert!(!gp.metacyclic_check(gp.generator(0), gp.generator(1)));
    }

    #[test]
    fn realize_is_deterministic() {
        let pres = build_presentation(&g(Theorem::OddP, 7, 3, 4)).unwrap();
        let g1 = realize(&pres).unwrap();
        let g2 = realize(&pres).unwrap();
        assert_eq!(g1.generator_perms(), g2.generator_perms());
    }

    #[test]
    fn coset_cap_reported_as_resource_error() {
        // infinite group: free product C_2 * C_2 has no finite enumeration
        let pres = Presentation::new(vec!["a", "b"], vec![vec![(0, 2)], vec![(1, 2)]]);
        match realize_with_bound(&pres, 64) {
            Err(Error::CosetLimit { .. }) | Err(Error::IncompleteEnumeration) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn order_spectrum_across_small_grid() {
        // max element order is p^{n-2} for every family at its minimal n
        for spec in default_grid() {
            if spec.n != min_n(spec.theorem, spec.family) {
                continue;
            }
            let gp = realize_family(&spec).unwrap();
            let report = gp.family_claims(spec.p, spec.n);
            assert_eq!(
                report.max_order as u64,
                (spec.p as u64).pow(spec.n - 2),
                "family {spec}"
            );
        }
    }

    #[test]
    fn two_group_families_at_n6_are_pairwise_distinct() {
        // validates the corrected presentations for families 21, 24, 25:
        // every family realizes to order 64 with max element order 16,
        // and no two families are isomorphic
        let groups: Vec<(u32, PermGroup)> = (1..=25)
            .map(|family| {
                let spec = g(Theorem::TwoGroups, family, 2, 6);
                let gp = realize_family(&spec).unwrap();
                assert!(gp.family_claims(2, 6).all_hold(), "claims fail for family {family}");
                (family, gp)
            })
            .collect();
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                assert!(
                    !groups[i].1.isomorphic_to(&groups[j].1),
                    "families {} and {} are isomorphic",
                    groups[i].0,
                    groups[j].0
                );
            }
        }
    }

    #[test]
    fn odd_families_at_p3_n4_are_pairwise_distinct() {
        let groups: Vec<(u32, PermGroup)> = (1..=11)
            .filter(|&family| spec_valid(&g(Theorem::OddP, family, 3, 4)).is_ok())
            .map(|family| {
                let spec = g(Theorem::OddP, family, 3, 4);
                let gp = realize_family(&spec).unwrap();
                assert!(gp.family_claims(3, 4).all_hold(), "claims fail for {spec}");
                (family, gp)
            })
            .collect();
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                assert!(
                    !groups[i].1.isomorphic_to(&groups[j].1),
                    "families {} and {} are isomorphic",
                    groups[i].0,
                    groups[j].0
                );
            }
        }
    }

    #[test]
    fn full_multiplication_table_is_associative_for_small_groups() {
        use rand::{Rng, SeedableRng};
        let gp = realize_family(&g(Theorem::OddP, 1, 3, 3)).unwrap();
        let n = gp.order() as u16;
        if gp.order() <= 81 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(gp.mul(gp.mul(a, b), c), gp.mul(a, gp.mul(b, c)));
                    }
                }
            }
        }
        let gp = realize_family(&g(Theorem::OddP, 1, 3, 5)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let n = gp.order() as u16;
        for _ in 0..1000 {
            let (a, b, c) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            assert_eq!(gp.mul(gp.mul(a, b), c), gp.mul(a, gp.mul(b, c)));
        }
    }
}
