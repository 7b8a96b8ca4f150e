//! Verification scripts for the p = 2 families (theorem 3.2), mirroring
//! cases 1-8 of the two-group analysis. Cases 1-4 are gate-only; cases 5-8
//! share the pairing construction: two eigenvectors for the abelian
//! subgroup generated by sigma^2 and tau, translated by 1, sigma, lambda,
//! lambda sigma, followed by the Moebius step on the second variable pair.

use super::scripts_odd::{prelude, Ctx};
use super::{gates, notes, Cert};
use crate::cyclo::Root;
use crate::fpgroups::{Elem, FamilySpec, PermGroup};
use crate::intmat::Mat;
use crate::monomial::{induced_on_basis, LatticeBasis, MonomialAction, MonomialAut};
use crate::ratfn::{mobius_image, MobiusVariant, RationalFn, Substitution};
use crate::regrep::{
    character_average, check_independent, extract_action, is_eigenvector, orbit_sum, translates,
    GroupVector, MonomialPermTable,
};
use crate::Result;
use serde_json::json;

pub(super) fn run(spec: &FamilySpec, cert: &mut Cert, depth: i64) {
    let _ = depth;
    match spec.family {
        1 | 6 | 7 | 8 | 19 | 20 => metacyclic(spec, cert, ("s", "t")),
        9 => metacyclic(spec, cert, ("t", "s")),
        21 => {
            let Some(ctx) = prelude(spec, cert, "3.2") else {
                return;
            };
            cert.mark_discrepancy("presentation", notes::G21_RELATION);
            metacyclic_body(&ctx, cert, ("t", "s"));
        }
        2 | 3 | 10 | 11 => {
            let Some(ctx) = prelude(spec, cert, "3.2") else {
                return;
            };
            direct_product_body(&ctx, cert);
        }
        12 => family12(spec, cert),
        4 | 5 | 13 | 14 | 22 => {
            let Some(ctx) = prelude(spec, cert, "3.2") else {
                return;
            };
            abelian_normal_body(&ctx, cert);
        }
        23 => {
            let Some(ctx) = prelude(spec, cert, "3.2") else {
                return;
            };
            let start = cert.len();
            abelian_normal_body(&ctx, cert);
            cert.prefix_recent("case3:", start);
            let start = cert.len();
            pairing_body(spec, &ctx, cert);
            cert.prefix_recent("case8:", start);
            cert.note(notes::G23_DOUBLE);
            cert.note(notes::CASE8_FINAL_LINE);
        }
        15 | 16 | 17 | 18 | 24 | 25 => {
            let Some(ctx) = prelude(spec, cert, "3.2") else {
                return;
            };
            if spec.family == 24 || spec.family == 25 {
                cert.mark_discrepancy("presentation", notes::G24_G25_RELATION);
            }
            if spec.family == 25 {
                cert.note(notes::G25_UNMAPPED);
            }
            if spec.family == 17 {
                odd_route_obstruction(&ctx, cert);
            }
            pairing_body(spec, &ctx, cert);
        }
        _ => unreachable!(),
    }
}

fn metacyclic(spec: &FamilySpec, cert: &mut Cert, pair: (&str, &str)) {
    let Some(ctx) = prelude(spec, cert, "3.2") else {
        return;
    };
    metacyclic_body(&ctx, cert, pair);
}

fn metacyclic_body(ctx: &Ctx, cert: &mut Cert, pair: (&str, &str)) {
    let s = ctx.gp.generator_named(pair.0);
    let t = ctx.gp.generator_named(pair.1);
    let ok = ctx.gp.metacyclic_check(s, t);
    cert.check(
        "metacyclic",
        "5.1",
        ok,
        json!({
            "normal_generator": pair.0,
            "cyclic_quotient_generator": pair.1,
        }),
    );
    let (gok, gw) = gates::t1_2(&ctx.gp, s, t, true, ctx.m);
    cert.check("gate-t1.2", "t1.2", gok, gw);
}

/// Case 5.2: G = H x C_2 with H carrying a cyclic subgroup of index 2.
fn direct_product_body(ctx: &Ctx, cert: &mut Cert) {
    let gp = &ctx.gp;
    let s = gp.generator_named("s");
    let t = gp.generator_named("t");
    let l = gp.generator_named("l");
    let (ok, w) = gates::t2_4_product(gp, &[s, t], l);
    cert.check("direct-product", "5.2/t2.4", ok, w);
    let h = gp.closure(&[s, t]);
    let (hok, hw) = gates::t1_7_subgroup(gp, &h, 2, ctx.m);
    cert.check("gate-t1.7-H", "5.2/t1.7", hok, hw);
    let (cok, cw) = gates::t2_6_abelian_linear(2, ctx.m);
    cert.check("gate-t2.6-C2", "5.2/t2.6", cok, cw);
}

/// Case 5.3: abelian normal subgroup of index 2, gated through theorem 2.7.
fn abelian_normal_body(ctx: &Ctx, cert: &mut Cert) {
    let gp = &ctx.gp;
    let s = gp.generator_named("s");
    let t = gp.generator_named("t");
    let props = gp.subgroup_props(&[s, t]);
    cert.check(
        "abelian-normal-subgroup",
        "5.3",
        props.is_abelian && props.is_normal && gp.order() / props.order == 2,
        serde_json::to_value(&props).unwrap(),
    );
    let (ok, w) = gates::t2_7(gp, &[s, t], ctx.m);
    cert.check("gate-t2.7", "t2.7", ok, w);
}

/// The subgroup generated by all commutators and squares; an index-2
/// subgroup avoiding a given element exists iff the element lies outside.
fn commutator_square_subgroup(gp: &PermGroup) -> Vec<Elem> {
    let mut gens = Vec::new();
    for a in gp.elements() {
        gens.push(gp.mul(a, a));
        for b in gp.elements() {
            gens.push(gp.mul(gp.mul(gp.inv(a), gp.inv(b)), gp.mul(a, b)));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    gp.closure(&gens)
}

/// Search an index-2 subgroup avoiding c, via the elementary abelian
/// quotient by the commutator-square subgroup.
fn index2_subgroup_avoiding(gp: &PermGroup, nsub: &[Elem], c: Elem) -> Option<Vec<Elem>> {
    let order = gp.order() as usize;
    let mut coset_of = vec![usize::MAX; order];
    let mut reps: Vec<Elem> = Vec::new();
    for x in gp.elements() {
        if coset_of[x as usize] != usize::MAX {
            continue;
        }
        let id = reps.len();
        for &h in nsub {
            coset_of[gp.mul(x, h) as usize] = id;
        }
        reps.push(x);
    }
    let v = reps.len();
    let cbar = coset_of[c as usize];
    if cbar == coset_of[0] {
        return None;
    }
    // quotient multiplication on coset ids
    let qmul = |a: usize, b: usize| coset_of[gp.mul(reps[a], reps[b]) as usize];
    // brute-force subgroups of index 2 in the tiny quotient
    for mask in 0u32..(1 << v) {
        if mask.count_ones() as usize != v / 2 || mask & 1 == 0 {
            continue;
        }
        let in_set = |i: usize| mask >> i & 1 == 1;
        if in_set(cbar) {
            continue;
        }
        let closed = (0..v)
            .filter(|&i| in_set(i))
            .all(|i| (0..v).filter(|&j| in_set(j)).all(|j| in_set(qmul(i, j))));
        if closed {
            let h: Vec<Elem> = gp
                .elements()
                .filter(|&x| in_set(coset_of[x as usize]))
                .collect();
            return Some(h);
        }
    }
    None
}

/// Family 12 is listed under case 5.2 but has no direct C2 factor; the
/// script proves that exhaustively and then verifies it via case 5.3.
fn family12(spec: &FamilySpec, cert: &mut Cert) {
    let Some(ctx) = prelude(spec, cert, "3.2") else {
        return;
    };
    let gp = &ctx.gp;
    let central_involutions: Vec<Elem> = gp
        .center()
        .into_iter()
        .filter(|&x| x != 0 && gp.element_order(x) == 2)
        .collect();
    let nsub = commutator_square_subgroup(gp);
    let mut viable = Vec::new();
    for &c in &central_involutions {
        if let Some(h) = index2_subgroup_avoiding(gp, &nsub, c) {
            if gp.direct_product_check(&h, c) {
                viable.push((c, h.len()));
            }
        }
    }
    if viable.is_empty() {
        cert.discrepancy(
            "direct-product",
            "5.2/t2.4",
            json!({
                "central_involutions": central_involutions.len(),
                "commutator_square_subgroup_order": nsub.len(),
                "all_central_involutions_inside": true,
                "direct_c2_factor": false,
            }),
            notes::G12_NOT_DIRECT,
        );
        abelian_normal_body(&ctx, cert);
    } else {
        // not expected for this family; record the found decomposition
        cert.check(
            "direct-product",
            "5.2/t2.4",
            true,
            json!({ "found_factorizations": viable.len() }),
        );
        direct_product_body(&ctx, cert);
    }
}

/// The case 4.7 route breaks at p = 2: the subgroup generated by sigma^2,
/// tau, lambda is not abelian, so the three-eigenvector display cannot
/// exist. Recorded with its witness before the working route runs.
fn odd_route_obstruction(ctx: &Ctx, cert: &mut Cert) {
    let gp = &ctx.gp;
    let s = gp.generator_named("s");
    let t = gp.generator_named("t");
    let l = gp.generator_named("l");
    let s2 = gp.mul(s, s);
    let conj = gp.conj(s2, l);
    let comm = gp.mul(conj, gp.inv(s2));
    let shift = gp.pow(s, (ctx.m / 2) as i64); // sigma^(2^(n-3))
    let subgroup_abelian = {
        let h = gp.closure(&[s2, t, l]);
        h.iter()
            .all(|&a| h.iter().all(|&b| gp.mul(a, b) == gp.mul(b, a)))
    };
    cert.discrepancy(
        "odd-route-check",
        "5.7/4.7",
        json!({
            "subgroup_s2_t_l_abelian": subgroup_abelian,
            "lambda_conjugate_of_s2_differs_by": format!("s^{}", ctx.m / 2),
            "obstruction_confirmed": comm == shift && comm != 0,
        }),
        notes::CASE7_P2_ROUTE,
    );
}

/// Printed translate tables for families 15 and 16 (cases 5.5 and 5.6).
fn pairing_x_table(family: u32, m: u32) -> Option<MonomialPermTable> {
    let h = (m / 2) as i64;
    let mm = m as i64;
    let vars: Vec<String> = (0..4)
        .map(|i| format!("x{i}"))
        .chain((0..4).map(|i| format!("y{i}")))
        .collect();
    let srow: Vec<(usize, i64)> = vec![
        (1, 0),
        (0, 2),
        (3, (h - 2).rem_euclid(mm)),
        (2, h),
        (5, 0),
        (4, 0),
        (7, 0),
        (6, 0),
    ];
    let lrow: Vec<(usize, i64)> = vec![
        (2, 0),
        (3, 0),
        (0, 0),
        (1, 0),
        (6, 0),
        (7, 0),
        (4, 0),
        (5, 0),
    ];
    let trow = match family {
        15 => vec![
            (0, 0),
            (1, h),
            (2, 0),
            (3, h),
            (4, h),
            (5, h),
            (6, h),
            (7, h),
        ],
        16 => vec![
            (0, 0),
            (1, h),
            (2, h),
            (3, 0),
            (4, h),
            (5, h),
            (6, h),
            (7, h),
        ],
        _ => return None,
    };
    Some(MonomialPermTable {
        vars,
        modulus: m,
        gens: vec![
            ("s".into(), srow),
            ("t".into(), trow),
            ("l".into(), lrow),
        ],
    })
}

/// Printed u-variable tables for families 15, 16 and 18.
fn pairing_u_table(family: u32, m: u32) -> Option<MonomialAction> {
    let h = (m / 2) as i64;
    let mm = m as i64;
    let vars: Vec<String> = (1..=4).map(|i| format!("u{i}")).collect();
    let perm_aut = |images: Vec<(usize, i64)>| -> MonomialAut {
        let mut mat = Mat::zero(4, 4);
        let mut scal = vec![0i64; 4];
        for (j, &(tgt, e)) in images.iter().enumerate() {
            mat[(tgt, j)] = 1;
            scal[j] = e.rem_euclid(mm);
        }
        MonomialAut {
            mat,
            scal,
            modulus: m,
        }
    };
    let invert_aut = |exps: Vec<i64>| -> MonomialAut {
        MonomialAut {
            mat: Mat::identity(4).scale(-1),
            scal: exps.iter().map(|e| e.rem_euclid(mm)).collect(),
            modulus: m,
        }
    };
    let (s, t, l) = match family {
        15 => (
            perm_aut(vec![(1, h - 2), (0, h - 2), (3, 0), (2, 0)]),
            MonomialAut::identity(4, m),
            invert_aut(vec![0, 0, 0, 0]),
        ),
        16 => (
            perm_aut(vec![(1, h - 2), (0, h - 2), (3, 0), (2, 0)]),
            MonomialAut {
                mat: Mat::identity(4),
                scal: vec![h, h, 0, 0],
                modulus: m,
            },
            invert_aut(vec![0, 0, 0, 0]),
        ),
        18 => (
            perm_aut(vec![(1, -2), (0, h - 2), (3, h), (2, h)]),
            MonomialAut::identity(4, m),
            invert_aut(vec![0, 0, 0, 0]),
        ),
        _ => return None,
    };
    Some(MonomialAction {
        vars,
        modulus: m,
        gens: vec![("s".into(), s), ("t".into(), t), ("l".into(), l)],
    })
}

/// The shared construction of cases 5.5-5.8.
fn pairing_body(spec: &FamilySpec, ctx: &Ctx, cert: &mut Cert) {
    let anchor = match spec.family {
        15 => "5.5",
        16 => "5.6",
        17 => "5.7",
        _ => "5.8",
    };
    let (gp, pres, m) = (&ctx.gp, &ctx.pres, ctx.m);
    let s = gp.generator_named("s");
    let t = gp.generator_named("t");
    let l = gp.generator_named("l");
    let s2 = gp.mul(s, s);
    let xi = Root::new(m, 2);
    let minus_one = Root::new(m, (m / 2) as i64);

    // the abelian subgroup generated by sigma^2 and tau
    let h = gp.closure(&[s2, t]);
    let h_abelian = h
        .iter()
        .all(|&a| h.iter().all(|&b| gp.mul(a, b) == gp.mul(b, a)));
    if !cert.check(
        "abelian-subgroup",
        anchor,
        h_abelian && h.len() as u64 == gp.order() / 4,
        json!({ "order": h.len(), "abelian": h_abelian }),
    ) {
        return;
    }

    // Y1: sigma^2-eigenvector with eigenvalue xi = zeta^2, tau-fixed;
    // Y2: tau-eigenvector with eigenvalue -1, sigma^2-fixed
    if spec.family == 15 {
        cert.note(notes::ZETA_CASE55);
    }
    let x1 = orbit_sum(gp, m, &gp.closure(&[t]), 0);
    let x2 = orbit_sum(gp, m, &gp.closure(&[s2]), 0);
    let y1 = match character_average(gp, &x1, s2, &xi, m / 2) {
        Ok(v) => v,
        Err(e) => {
            cert.check("eigenvectors", anchor, false, json!({ "error": e.to_string() }));
            return;
        }
    };
    let y2 = match character_average(gp, &x2, t, &minus_one, 2) {
        Ok(v) => v,
        Err(e) => {
            cert.check("eigenvectors", anchor, false, json!({ "error": e.to_string() }));
            return;
        }
    };
    let one = Root::one(m);
    if !cert.check(
        "eigenvectors",
        anchor,
        is_eigenvector(gp, t, &y1, &one) && is_eigenvector(gp, s2, &y2, &one),
        json!({
            "Y1": { "sigma2_eigenvalue": xi.to_string(), "order_of_xi": xi.order() },
            "Y2": { "tau_eigenvalue": "-1" },
        }),
    ) {
        return;
    }

    // translates by 1, sigma, lambda, lambda sigma
    let by = [0, s, l, gp.mul(l, s)];
    let xs = translates(gp, &y1, &by);
    let ys = translates(gp, &y2, &by);
    let mut basis: Vec<(String, GroupVector)> = Vec::new();
    for (i, v) in xs.iter().enumerate() {
        basis.push((format!("x{i}"), v.clone()));
    }
    for (i, v) in ys.iter().enumerate() {
        basis.push((format!("y{i}"), v.clone()));
    }
    let vecs: Vec<GroupVector> = basis.iter().map(|(_, v)| v.clone()).collect();
    if !cert.check(
        "translate-basis",
        anchor,
        check_independent(&vecs).is_ok(),
        json!({ "vectors": basis.len() }),
    ) {
        return;
    }
    let table = match extract_action(gp, &basis, m) {
        Ok(tb) => tb,
        Err(e) => {
            cert.check("action-table", anchor, false, json!({ "error": e.to_string() }));
            return;
        }
    };
    let consistent = table.satisfies(pres);
    match pairing_x_table(spec.family, m) {
        Some(expected) => {
            if !cert.check(
                "action-table",
                anchor,
                consistent && table == expected,
                json!({ "table": table.to_cert_map(), "matches_printed": table == expected }),
            ) {
                return;
            }
        }
        None => {
            if !cert.check(
                "action-table",
                anchor,
                consistent,
                json!({ "table": table.to_cert_map(), "printed_table": "none" }),
            ) {
                return;
            }
        }
    }
    let (fok, fw) = gates::t2_2_faithful(gp, &table);
    if !cert.check("faithful-gate-t2.2", &format!("{anchor}/t2.2"), fok, fw) {
        return;
    }

    // u1 = x2/x0, u2 = x3/x1, u3 = y2/y0, u4 = y3/y1
    let xy_action = crate::monomial::from_perm_table(&table);
    let mut ucols = Mat::zero(8, 4);
    for (j, (a, b)) in [(2usize, 0usize), (3, 1), (6, 4), (7, 5)].iter().enumerate() {
        ucols[(*a, j)] = 1;
        ucols[(*b, j)] = -1;
    }
    let ubasis = LatticeBasis::new(
        xy_action.vars.clone(),
        (1..=4).map(|i| format!("u{i}")).collect(),
        ucols.clone(),
    );
    let u_act = match induced_on_basis(&xy_action, &ubasis) {
        Ok(a) => a,
        Err(e) => {
            cert.check("u-variables", anchor, false, json!({ "error": e.to_string() }));
            return;
        }
    };
    if !u_act.satisfies(pres) {
        cert.check(
            "u-variables",
            anchor,
            false,
            json!({ "error": "induced action violates a defining relator" }),
        );
        return;
    }
    let u_witness = json!({
        "s": u_act.describe_gen("s"),
        "t": u_act.describe_gen("t"),
        "l": u_act.describe_gen("l"),
        "serialized": u_act.to_json(),
    });
    match pairing_u_table(spec.family, m) {
        Some(expected) => {
            let matches = super::actions_equal(&u_act, &expected);
            if spec.family == 18 && !matches {
                // the printed lambda row drops the -1 carried by lambda^2 = tau
                let structural = pairing_structure_ok(&u_act, m);
                if structural {
                    cert.discrepancy("u-variables", anchor, u_witness, notes::G18_LAMBDA_SIGN);
                } else {
                    cert.check("u-variables", anchor, false, u_witness);
                    return;
                }
            } else if !cert.check("u-variables", anchor, matches, u_witness) {
                return;
            }
        }
        None => {
            if !cert.check(
                "u-variables",
                anchor,
                pairing_structure_ok(&u_act, m),
                u_witness,
            ) {
                return;
            }
        }
    }

    // fibration of the retained x0, x1, y0, y1 over K(u)
    let fib = fibration_pairs(&xy_action, &[0, 1, 4, 5], &ucols);
    let (fok, fw) = gates::t2_3_fibration(fib);
    cert.check("fibration-gate-t2.3", &format!("{anchor}/t2.3"), fok, fw);

    // the Moebius step on (u3, u4)
    if !mobius_step(cert, anchor, &u_act, m) {
        return;
    }

    // drop v3, v4 over L = K(u1, u2), then close with the rank-2 monomial gate
    let u12 = match restrict2(&u_act, &[0, 1]) {
        Ok(a) => a,
        Err(e) => {
            cert.check("drop-v-gate-t2.2", &format!("{anchor}/t2.2"), false, json!({ "error": e.to_string() }));
            return;
        }
    };
    let (rok, rw) = gates::t2_2_relative(gp, &u12, &u_act, true);
    cert.check("drop-v-gate-t2.2", &format!("{anchor}/t2.2"), rok, rw);
    let (gok, gw) = gates::t2_5_rank2_monomial(&u12);
    cert.check("gate-t2.5", "t2.5", gok, gw);
}

/// Structural requirements on a computed u-table when no printed table is
/// available: the pairs (u1, u2) and (u3, u4) are preserved, sigma swaps
/// within pairs up to sign, tau scales diagonally, lambda inverts up to
/// sign.
fn pairing_structure_ok(u_act: &MonomialAction, m: u32) -> bool {
    let h = (m / 2) as i64;
    let sign_ok = |e: i64| e == 0 || e == h;
    let saut = u_act.aut("s");
    let swap_ok = saut.mat.col(0).iter().enumerate().all(|(i, &v)| (i == 1) == (v == 1) && (v == 0 || v == 1))
        && saut.mat.col(1)[0] != 0
        && saut.mat.col(2)[3] == 1
        && saut.mat.col(3)[2] == 1;
    let taut = u_act.aut("t");
    let tau_ok = taut.mat.is_identity() && taut.scal.iter().all(|&e| sign_ok(e));
    let laut = u_act.aut("l");
    let lam_ok = laut.mat == Mat::identity(4).scale(-1) && laut.scal.iter().all(|&e| sign_ok(e));
    swap_ok && tau_ok && lam_ok
}

fn restrict2(action: &MonomialAction, idxs: &[usize]) -> Result<MonomialAction> {
    let k = action.rank();
    let mut cols = Mat::zero(k, idxs.len());
    for (j, &i) in idxs.iter().enumerate() {
        cols[(i, j)] = 1;
    }
    let names = idxs.iter().map(|&i| action.vars[i].clone()).collect();
    induced_on_basis(
        action,
        &LatticeBasis::new(action.vars.clone(), names, cols),
    )
}

fn fibration_pairs(
    action: &MonomialAction,
    retained: &[usize],
    qcols: &Mat,
) -> Vec<(String, bool)> {
    let k = action.rank();
    let mut basis = Mat::zero(k, retained.len());
    for (j, &r) in retained.iter().enumerate() {
        basis[(r, j)] = 1;
    }
    let full = basis.hstack(qcols);
    assert_eq!(full.det().abs(), 1);
    let inv = full.inverse_unimodular();
    action
        .gens
        .iter()
        .map(|(name, aut)| {
            let ok = retained.iter().all(|&r| {
                let coords = inv.mul_vec(&aut.mat.col(r));
                let head = &coords[..retained.len()];
                head.iter().filter(|&&c| c != 0).count() == 1 && head.contains(&1)
            });
            (name.clone(), ok)
        })
        .collect()
}

/// Verify the Moebius step: from the computed action on (u3, u4), pick the
/// variant matching lambda's sign, set v4 = sigma(v3), and check the
/// closing table sigma: v3 <-> v4, tau fixed, lambda: v -> -v exactly.
fn mobius_step(cert: &mut Cert, anchor: &str, u_act: &MonomialAction, m: u32) -> bool {
    let pair_act = match restrict2(u_act, &[2, 3]) {
        Ok(a) => a,
        Err(e) => {
            cert.check("mobius", anchor, false, json!({ "error": e.to_string() }));
            return false;
        }
    };
    let h = (m / 2) as i64;
    let laut = pair_act.aut("l");
    // lambda: u -> epsilon / u with epsilon read off the scalar
    let eps_exp = laut.scal[0];
    if laut.mat != Mat::identity(2).scale(-1)
        || laut.scal[1] != eps_exp
        || (eps_exp != 0 && eps_exp != h)
    {
        cert.check(
            "mobius",
            anchor,
            false,
            json!({ "error": "lambda does not invert the pair", "l": pair_act.describe_gen("l") }),
        );
        return false;
    }
    let variant = if eps_exp == 0 {
        MobiusVariant::Standard
    } else {
        MobiusVariant::TwistPlus
    };
    let result = (|| -> Result<(bool, bool, bool)> {
        let subs: Vec<(String, Substitution)> = pair_act
            .gens
            .iter()
            .map(|(n, aut)| Ok((n.clone(), Substitution::from_monomial_aut(aut)?)))
            .collect::<Result<Vec<_>>>()?;
        let get = |n: &str| -> &Substitution { &subs.iter().find(|(g, _)| g == n).unwrap().1 };
        let v3 = mobius_image(2, m, 0, variant);
        let v4 = get("s").apply(&v3)?;
        let swap_ok = get("s").apply(&v4)?.eq(&v3);
        let tau_ok = get("t").apply(&v3)?.eq(&v3) && get("t").apply(&v4)?.eq(&v4);
        let lam_ok = get("l").apply(&v3)?.eq(&v3.neg()) && get("l").apply(&v4)?.eq(&v4.neg());
        // evaluation sanity point: v(0) = 1 for the standard variant
        if variant == MobiusVariant::Standard {
            let at_zero = Substitution {
                images: vec![RationalFn::zero(2, m), RationalFn::zero(2, m)],
            };
            if !at_zero.apply(&v3)?.eq(&RationalFn::one(2, m)) {
                return Ok((false, false, false));
            }
        }
        Ok((swap_ok, tau_ok, lam_ok))
    })();
    match result {
        Ok((swap_ok, tau_ok, lam_ok)) => cert.check(
            "mobius",
            anchor,
            swap_ok && tau_ok && lam_ok,
            json!({
                "variant_v3": format!("{variant:?}"),
                "v4_defined_as": "sigma(v3)",
                "sigma_swaps": swap_ok,
                "tau_fixes": tau_ok,
                "lambda_negates": lam_ok,
            }),
        ),
        Err(e) => cert.check("mobius", anchor, false, json!({ "error": e.to_string() })),
    }
}

