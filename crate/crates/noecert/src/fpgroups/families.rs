//! The defining presentations of the classified families: eleven for odd p
//! (theorem 3.1) and twenty-five for p = 2 (theorem 3.2). Relations of the
//! form u = v are stored as relators u v^-1.
//!
//! Three transcription corrections are applied to the printed relations of
//! theorem 3.2, each surfaced in the certificates for the family:
//!
//! * family 21: `t^-1 s t = t^-1` forces s t = 1 and collapses the group.
//!   The non-split analogue of family 9, `s^-1 t s = t^-1`, is used.
//! * families 24 and 25: `l^-1 s l = s^(-1+2^(n-4))` is inconsistent with
//!   the printed `l^2` relation, since the exponent does not square to 1
//!   mod 2^(n-2); it forces s^(2^(n-3)) = 1 and the order drops below 2^n.
//!   With a trailing t (`l^-1 s l = s^(-1+2^(n-4)) t`, the shape of
//!   families 22 and 23) both presentations are consistent and define
//!   groups of order 2^n. That reading is used.

use super::{FamilySpec, Presentation, Theorem, Word};
use crate::{Error, Result};

const S: usize = 0;
const T: usize = 1;
const L: usize = 2;

fn pw(pairs: &[(usize, i64)]) -> Word {
    pairs.to_vec()
}

/// Commutator relator x^-1 y^-1 x y, so the relation reads "x and y commute".
fn comm(x: usize, y: usize) -> Word {
    pw(&[(x, -1), (y, -1), (x, 1), (y, 1)])
}

/// Relator for a conjugation relation c^-1 b c = word.
fn conj_rel(c: usize, b: usize, mut rhs_inv: Word) -> Word {
    let mut w = pw(&[(c, -1), (b, 1), (c, 1)]);
    w.append(&mut rhs_inv);
    w
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) && (p == 2 || p % 2 == 1)
}

pub fn least_nonresidue(p: u32) -> u32 {
    (2..p).find(|&a| !is_residue(a, p)).unwrap_or(1)
}

fn is_residue(a: u32, p: u32) -> bool {
    (1..p).any(|x| (x * x) % p == a % p)
}

/// Smallest n for which the family is defined.
pub fn min_n(theorem: Theorem, family: u32) -> u32 {
    match theorem {
        Theorem::OddP => match family {
            1 => 3,
            2..=7 => 4,
            8 | 9 => 5,
            10 => 6,
            11 => 4,
            _ => u32::MAX,
        },
        Theorem::TwoGroups => match family {
            1..=5 => 4,
            6..=18 => 5,
            19..=25 => 6,
            _ => u32::MAX,
        },
    }
}

pub fn family_count(theorem: Theorem) -> u32 {
    match theorem {
        Theorem::OddP => 11,
        Theorem::TwoGroups => 25,
    }
}

/// Validate the (theorem, family, p, n, a) combination.
pub fn spec_valid(spec: &FamilySpec) -> Result<()> {
    let err = |detail: String| Error::ParamRange {
        theorem: spec.theorem.to_string(),
        family: spec.family,
        detail,
    };
    if spec.family < 1 || spec.family > family_count(spec.theorem) {
        return Err(err(format!("no family {} in this theorem", spec.family)));
    }
    match spec.theorem {
        Theorem::OddP => {
            if spec.p == 2 || !is_prime(spec.p) {
                return Err(err(format!("p = {} is not an odd prime", spec.p)));
            }
            if spec.family == 11 && (spec.p != 3 || spec.n != 4) {
                return Err(err("family 11 requires p = 3 and n = 4".into()));
            }
            if spec.n < min_n(spec.theorem, spec.family) {
                return Err(err(format!(
                    "needs n >= {}, got n = {}",
                    min_n(spec.theorem, spec.family),
                    spec.n
                )));
            }
            if let Some(a) = spec.a {
                if spec.family != 6 {
                    return Err(err("parameter a only applies to family 6".into()));
                }
                if a % spec.p == 0 || is_residue(a, spec.p) {
                    return Err(err(format!("a = {a} is not a quadratic non-residue mod {}", spec.p)));
                }
            }
        }
        Theorem::TwoGroups => {
            if spec.p != 2 {
                return Err(err("theorem 3.2 requires p = 2".into()));
            }
            if spec.a.is_some() {
                return Err(err("parameter a does not apply here".into()));
            }
            if spec.n < min_n(spec.theorem, spec.family) {
                return Err(err(format!(
                    "needs n >= {}, got n = {}",
                    min_n(spec.theorem, spec.family),
                    spec.n
                )));
            }
        }
    }
    Ok(())
}

pub fn build(spec: &FamilySpec) -> Result<Presentation> {
    spec_valid(spec)?;
    let p = spec.p as i64;
    let n = spec.n;
    match spec.theorem {
        Theorem::OddP => {
            let big = p.pow(n - 2); // order of s
            let q = if n >= 3 { p.pow(n - 3) } else { 1 };
            let two = vec!["s", "t"];
            let three = vec!["s", "t", "l"];
            let pres = match spec.family {
                1 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, p)]),
                        pw(&[(L, p)]),
                        comm(S, L),
                        comm(T, L),
                        conj_rel(T, S, pw(&[(L, -1), (S, -1)])),
                    ],
                ),
                2 => Presentation::new(
                    two,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, p * p)]),
                        conj_rel(T, S, pw(&[(S, -(1 + q))])),
                    ],
                ),
                3 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, p)]),
                        pw(&[(L, p)]),
                        comm(S, L),
                        comm(T, L),
                        conj_rel(T, S, pw(&[(S, -(1 + q))])),
                    ],
                ),
                4 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, p)]),
                        pw(&[(L, p)]),
                        comm(S, T),
                        comm(S, L),
                        conj_rel(L, T, pw(&[(T, -1), (S, -q)])),
                    ],
                ),
                5 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, p)]),
                        pw(&[(L, p)]),
                        comm(S, T),
                        conj_rel(L, S, pw(&[(T, -1), (S, -1)])),
                        conj_rel(L, T, pw(&[(T, -1), (S, -q)])),
                    ],
                ),
                6 => {
                    let a = spec.residue_param() as i64;
                    Presentation::new(
                        three,
                        vec![
                            pw(&[(S, big)]),
                            pw(&[(T, p)]),
                            pw(&[(L, p)]),
                            comm(S, T),
                            conj_rel(L, S, pw(&[(T, -1), (S, -1)])),
                            conj_rel(L, T, pw(&[(T, -1), (S, -a * q)])),
                        ],
                    )
                }
                7 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, p)]),
                        pw(&[(L, p)]),
                        conj_rel(T, S, pw(&[(S, -(1 + q))])),
                        conj_rel(L, S, pw(&[(T, -1), (S, -1)])),
                        comm(T, L),
                    ],
                ),
                8 => Presentation::new(
                    two,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, p * p)]),
                        conj_rel(T, S, pw(&[(S, -(1 + p.pow(n - 4)))])),
                    ],
                ),
                9 => Presentation::new(
                    two,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, p * p)]),
                        conj_rel(S, T, pw(&[(T, -(1 + p))])),
                    ],
                ),
                10 => Presentation::new(
                    two,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(S, q), (T, -p * p)]),
                        conj_rel(S, T, pw(&[(T, p - 1)])),
                    ],
                ),
                11 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, 9)]),
                        pw(&[(T, 3)]),
                        pw(&[(S, 3), (L, -3)]),
                        comm(S, T),
                        conj_rel(L, S, pw(&[(T, -1), (S, -1)])),
                        conj_rel(L, T, pw(&[(T, -1), (S, -6)])),
                    ],
                ),
                _ => unreachable!(),
            };
            Ok(pres)
        }
        Theorem::TwoGroups => {
            let big = 2i64.pow(n - 2);
            let h2 = 2i64.pow(n - 3);
            let h4 = if n >= 4 { 2i64.pow(n - 4) } else { 1 };
            let two = vec!["s", "t"];
            let three = vec!["s", "t", "l"];
            let pres = match spec.family {
                1 => Presentation::new(
                    two,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 4)]),
                        conj_rel(T, S, pw(&[(S, -(1 + h2))])),
                    ],
                ),
                2 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(L, 2)]),
                        pw(&[(S, h2), (T, -2)]),
                        conj_rel(T, S, pw(&[(S, 1)])),
                        comm(S, L),
                        comm(T, L),
                    ],
                ),
                3 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2)]),
                        conj_rel(T, S, pw(&[(S, 1)])),
                        comm(S, L),
                        comm(T, L),
                    ],
                ),
                4 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2)]),
                        comm(S, T),
                        comm(S, L),
                        conj_rel(L, T, pw(&[(T, -1), (S, -h2)])),
                    ],
                ),
                5 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2)]),
                        comm(S, T),
                        conj_rel(L, S, pw(&[(T, -1), (S, -1)])),
                        comm(T, L),
                    ],
                ),
                6 => Presentation::new(
                    two,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 4)]),
                        conj_rel(T, S, pw(&[(S, 1)])),
                    ],
                ),
                7 => Presentation::new(
                    two,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 4)]),
                        conj_rel(T, S, pw(&[(S, 1 - h2)])),
                    ],
                ),
                8 => Presentation::new(
                    two,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(S, h2), (T, -4)]),
                        conj_rel(T, S, pw(&[(S, 1)])),
                    ],
                ),
                9 => Presentation::new(
                    two,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 4)]),
                        conj_rel(S, T, pw(&[(T, 1)])),
                    ],
                ),
                10 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2)]),
                        conj_rel(T, S, pw(&[(S, -(1 + h2))])),
                        comm(S, L),
                        comm(T, L),
                    ],
                ),
                11 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2)]),
                        conj_rel(T, S, pw(&[(S, 1 - h2)])),
                        comm(S, L),
                        comm(T, L),
                    ],
                ),
                12 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2)]),
                        comm(S, T),
                        conj_rel(L, S, pw(&[(S, 1)])),
                        conj_rel(L, T, pw(&[(T, -1), (S, -h2)])),
                    ],
                ),
                13 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2)]),
                        comm(S, T),
                        conj_rel(L, S, pw(&[(T, -1), (S, 1)])),
                        comm(T, L),
                    ],
                ),
                14 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(S, h2), (L, -2)]),
                        comm(S, T),
                        conj_rel(L, S, pw(&[(T, -1), (S, 1)])),
                        comm(T, L),
                    ],
                ),
                15 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2)]),
                        conj_rel(T, S, pw(&[(S, -(1 + h2))])),
                        conj_rel(L, S, pw(&[(S, 1 - h2)])),
                        comm(T, L),
                    ],
                ),
                16 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2)]),
                        conj_rel(T, S, pw(&[(S, -(1 + h2))])),
                        conj_rel(L, S, pw(&[(S, 1 - h2)])),
                        conj_rel(L, T, pw(&[(T, -1), (S, -h2)])),
                    ],
                ),
                17 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2)]),
                        conj_rel(T, S, pw(&[(S, -(1 + h2))])),
                        conj_rel(L, S, pw(&[(T, -1), (S, -1)])),
                        comm(T, L),
                    ],
                ),
                18 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2), (T, -1)]),
                        conj_rel(T, S, pw(&[(S, -(1 + h2))])),
                        conj_rel(L, S, pw(&[(T, -1), (S, 1)])),
                    ],
                ),
                19 => Presentation::new(
                    two,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 4)]),
                        conj_rel(T, S, pw(&[(S, -(1 + h4))])),
                    ],
                ),
                20 => Presentation::new(
                    two,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 4)]),
                        conj_rel(T, S, pw(&[(S, 1 - h4)])),
                    ],
                ),
                // printed relation collapses; see module docs
                21 => Presentation::new(
                    two,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(S, h2), (T, -4)]),
                        conj_rel(S, T, pw(&[(T, 1)])),
                    ],
                ),
                22 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2)]),
                        comm(S, T),
                        conj_rel(L, S, pw(&[(T, -1), (S, -(1 + h4))])),
                        conj_rel(L, T, pw(&[(T, -1), (S, -h2)])),
                    ],
                ),
                23 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2)]),
                        comm(S, T),
                        conj_rel(L, S, pw(&[(T, -1), (S, 1 - h4)])),
                        conj_rel(L, T, pw(&[(T, -1), (S, -h2)])),
                    ],
                ),
                // corrected: the lambda-conjugate of s carries a trailing t,
                // as in families 22 and 23 (see module docs)
                24 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(L, 2)]),
                        conj_rel(T, S, pw(&[(S, -(1 + h2))])),
                        conj_rel(L, S, pw(&[(T, -1), (S, 1 - h4)])),
                        comm(T, L),
                    ],
                ),
                25 => Presentation::new(
                    three,
                    vec![
                        pw(&[(S, big)]),
                        pw(&[(T, 2)]),
                        pw(&[(S, h2), (L, -2)]),
                        conj_rel(T, S, pw(&[(S, -(1 + h2))])),
                        conj_rel(L, S, pw(&[(T, -1), (S, 1 - h4)])),
                        comm(T, L),
                    ],
                ),
                _ => unreachable!(),
            };
            Ok(pres)
        }
    }
}

/// The desk-scale parameter grid: p = 3 with n in 3..=5, p = 5 with n in
/// 3..=4, p = 2 with n in 4..=6, intersected with each family's n-range.
pub fn default_grid() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for (theorem, p, ns) in [
        (Theorem::OddP, 3u32, 3u32..=5),
        (Theorem::OddP, 5, 3..=4),
        (Theorem::TwoGroups, 2, 4..=6),
    ] {
        for family in 1..=family_count(theorem) {
            for n in ns.clone() {
                let spec = FamilySpec::new(theorem, family, p, n);
                if spec_valid(&spec).is_ok() {
                    out.push(spec);
                }
            }
        }
    }
    out.sort_by_key(|s| (s.theorem, s.p, s.family, s.n));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_expected_size() {
        let grid = default_grid();
        let odd = grid.iter().filter(|s| s.theorem == Theorem::OddP).count();
        let two = grid.iter().filter(|s| s.theorem == Theorem::TwoGroups).count();
        // 3.1: G1 at 5 grid points, G2..G7 at 3 each, G8/G9 at (3,5) only, G11 once
        assert_eq!(odd, 5 + 6 * 3 + 2 + 1);
        // 3.2: G1..G5 at n=4,5,6; G6..G18 at n=5,6; G19..G25 at n=6
        assert_eq!(two, 5 * 3 + 13 * 2 + 7);
    }

    #[test]
    fn nonresidue_defaults() {
        assert_eq!(least_nonresidue(3), 2);
        assert_eq!(least_nonresidue(5), 2);
        assert_eq!(least_nonresidue(7), 3);
    }

    #[test]
    fn residue_param_validation() {
        let mut spec = FamilySpec::new(Theorem::OddP, 6, 5, 4);
        spec.a = Some(4); // 4 = 2^2 is a residue mod 5
        assert!(spec_valid(&spec).is_err());
        spec.a = Some(3); // non-residue mod 5
        assert!(spec_valid(&spec).is_ok());
    }

    #[test]
    fn family11_is_pinned_to_p3_n4() {
        assert!(spec_valid(&FamilySpec::new(Theorem::OddP, 11, 3, 4)).is_ok());
        assert!(spec_valid(&FamilySpec::new(Theorem::OddP, 11, 3, 5)).is_err());
        assert!(spec_valid(&FamilySpec::new(Theorem::OddP, 11, 5, 4)).is_err());
    }
}
