//! Vectors in the regular representation V* = sum over g of K x(g), the
//! eigenvector and translate constructions built from them, and extraction
//! of the induced permutation-with-scalar action on a stable subspace.

use crate::cyclo::{Cyclo, Root};
use crate::fpgroups::{Elem, PermGroup, Presentation};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// Sparse vector in V* with cyclotomic coefficients. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupVector {
    pub modulus: u32,
    coeffs: BTreeMap<Elem, Cyclo>,
}

impl GroupVector {
    pub fn zero(modulus: u32) -> Self {
        GroupVector {
            modulus,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis vector x(g).
    pub fn basis(modulus: u32, g: Elem) -> Self {
        let mut v = GroupVector::zero(modulus);
        v.coeffs.insert(g, Cyclo::one(modulus));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> Vec<Elem> {
        self.coeffs.keys().copied().collect()
    }

    pub fn coeff(&self, g: Elem) -> Cyclo {
        self.coeffs
            .get(&g)
            .cloned()
            .unwrap_or_else(|| Cyclo::zero(self.modulus))
    }

    pub fn insert(&mut self, g: Elem, c: Cyclo) {
        if c.is_zero() {
            self.coeffs.remove(&g);
        } else {
            self.coeffs.insert(g, c);
        }
    }

    pub fn add(&self, other: &GroupVector) -> GroupVector {
        let mut out = self.clone();
        for (g, c) in &other.coeffs {
            let sum = out.coeff(*g).add(c);
            out.insert(*g, sum);
        }
        out
    }

    pub fn scale(&self, k: &Cyclo) -> GroupVector {
        let mut out = GroupVector::zero(self.modulus);
        for (g, c) in &self.coeffs {
            out.insert(*g, c.mul(k));
        }
        out
    }

    pub fn scale_root(&self, r: &Root) -> GroupVector {
        self.scale(&Cyclo::from_root(self.modulus, r))
    }
}

/// The left-translation action g . x(h) = x(gh), extended linearly.
pub fn act(gp: &PermGroup, g: Elem, v: &GroupVector) -> GroupVector {
    let mut out = GroupVector::zero(v.modulus);
    for (h, c) in &v.coeffs {
        out.insert(gp.mul(g, *h), c.clone());
    }
    out
}

/// Sum of x(h * base) over the listed subgroup elements h.
pub fn orbit_sum(gp: &PermGroup, modulus: u32, elems: &[Elem], base: Elem) -> GroupVector {
    let mut out = GroupVector::zero(modulus);
    for &h in elems {
        out.insert(gp.mul(h, base), Cyclo::one(modulus));
    }
    out
}

/// Y = sum over 0 <= j < len of c^{-j} g^j . v. The postconditions
/// g . Y = c Y and Y != 0 are enforced, not assumed.
pub fn character_average(
    gp: &PermGroup,
    v: &GroupVector,
    g: Elem,
    c: &Root,
    len: u32,
) -> Result<GroupVector> {
    let m = v.modulus;
    // preconditions: g^len stabilizes v and c^len = 1
    let mut glen: Elem = 0;
    for _ in 0..len {
        glen = gp.mul(glen, g);
    }
    if act(gp, glen, v) != *v {
        return Err(Error::Structural {
            detail: "g^len does not stabilize the base vector".into(),
        });
    }
    if !c.pow(len as i64).is_one() {
        return Err(Error::Structural {
            detail: "character value is not a len-th root of unity".into(),
        });
    }
    let mut acc = GroupVector::zero(m);
    let mut translate = v.clone();
    for j in 0..len {
        acc = acc.add(&translate.scale_root(&c.pow(-(j as i64))));
        if j + 1 < len {
            translate = act(gp, g, &translate);
        }
    }
    if acc.is_zero() {
        return Err(Error::DegenerateEigenvector);
    }
    let eigen = act(gp, g, &acc);
    if eigen != acc.scale_root(c) {
        return Err(Error::Structural {
            detail: "character average does not satisfy its eigen-equation".into(),
        });
    }
    Ok(acc)
}

/// Check an eigen-equation g . v = c v exactly.
pub fn is_eigenvector(gp: &PermGroup, g: Elem, v: &GroupVector, c: &Root) -> bool {
    !v.is_zero() && act(gp, g, v) == v.scale_root(c)
}

/// Translates t^i . v for 0 <= i < count.
pub fn translate_chain(gp: &PermGroup, v: &GroupVector, t: Elem, count: u32) -> Vec<GroupVector> {
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = v.clone();
    for i in 0..count {
        out.push(cur.clone());
        if i + 1 < count {
            cur = act(gp, t, &cur);
        }
    }
    out
}

/// Translates by an explicit element list.
pub fn translates(gp: &PermGroup, v: &GroupVector, by: &[Elem]) -> Vec<GroupVector> {
    by.iter().map(|&g| act(gp, g, v)).collect()
}

/// Translate each input vector through the chain 1, t, t^2, ..., t^{count-1}
/// and verify the combined family is linearly independent over Q(zeta).
pub fn translate_basis(
    gp: &PermGroup,
    vecs: &[GroupVector],
    translator: Elem,
    count: u32,
) -> Result<Vec<Vec<GroupVector>>> {
    let chains: Vec<Vec<GroupVector>> = vecs
        .iter()
        .map(|v| translate_chain(gp, v, translator, count))
        .collect();
    let all: Vec<GroupVector> = chains.iter().flatten().cloned().collect();
    check_independent(&all)?;
    Ok(chains)
}

/// Exact rank check over Q(zeta_m): the vectors must be linearly
/// independent. On failure the witness names a vector that reduced to zero
/// against its predecessors.
pub fn check_independent(vectors: &[GroupVector]) -> Result<()> {
    if vectors.is_empty() {
        return Ok(());
    }
    let m = vectors[0].modulus;
    // sparse Gaussian elimination; rows keyed by support element
    let mut echelon: Vec<BTreeMap<Elem, Cyclo>> = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut row: BTreeMap<Elem, Cyclo> = v.coeffs.clone();
        for e in &echelon {
            let pivot = e.keys().next().unwrap();
            if let Some(c) = row.get(pivot).cloned() {
                if c.is_zero() {
                    continue;
                }
                // row -= c * e (e is normalized to pivot coefficient 1)
                for (k, ec) in e {
                    let delta = c.mul(ec);
                    let cur = row.get(k).cloned().unwrap_or_else(|| Cyclo::zero(m));
                    let new = cur.sub(&delta);
                    if new.is_zero() {
                        row.remove(k);
                    } else {
                        row.insert(*k, new);
                    }
                }
            }
        }
        row.retain(|_, c| !c.is_zero());
        if row.is_empty() {
            return Err(Error::Dependence {
                detail: format!("vector {idx} lies in the span of its predecessors"),
            });
        }
        let lead = row.values().next().unwrap().clone();
        let inv = lead.inv();
        let normalized: BTreeMap<Elem, Cyclo> =
            row.iter().map(|(k, c)| (*k, c.mul(&inv))).collect();
        echelon.push(normalized);
    }
    Ok(())
}

/// Permutation-with-scalar table: for each generator, var j maps to
/// zeta^scal[j] times var target[j].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MonomialPermTable {
    pub vars: Vec<String>,
    pub modulus: u32,
    /// (generator name, per-variable (target index, scalar exponent))
    pub gens: Vec<(String, Vec<(usize, i64)>)>,
}

impl MonomialPermTable {
    pub fn gen_row(&self, name: &str) -> &[(usize, i64)] {
        &self
            .gens
            .iter()
            .find(|(g, _)| g == name)
            .unwrap_or_else(|| panic!("no generator {name} in table"))
            .1
    }

    /// Serialization shape used inside certificates:
    /// generator -> [(target_index, scalar_exponent, scalar_modulus)].
    pub fn to_cert_map(&self) -> BTreeMap<String, Vec<(usize, i64, u32)>> {
        self.gens
            .iter()
            .map(|(g, row)| {
                (
                    g.clone(),
                    row.iter().map(|&(t, e)| (t, e, self.modulus)).collect(),
                )
            })
            .collect()
    }

    fn compose_rows(
        outer: &[(usize, i64)],
        inner: &[(usize, i64)],
        m: u32,
    ) -> Vec<(usize, i64)> {
        inner
            .iter()
            .map(|&(t, e)| {
                let (t2, e2) = outer[t];
                (t2, (e + e2).rem_euclid(m as i64))
            })
            .collect()
    }

    fn identity_row(&self) -> Vec<(usize, i64)> {
        (0..self.vars.len()).map(|j| (j, 0)).collect()
    }

    /// Evaluate a relator through the table; identity means the table is
    /// consistent with that relation.
    pub fn eval_word(&self, word: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let m = self.modulus;
        let mut acc = self.identity_row();
        for &(g, e) in word {
            let base = &self.gens[g].1;
            let inv_base = invert_row(base, m);
            let step = if e >= 0 { base.clone() } else { inv_base };
            for _ in 0..e.unsigned_abs() {
                acc = Self::compose_rows(&acc, &step, m);
            }
        }
        acc
    }

    pub fn satisfies(&self, pres: &Presentation) -> bool {
        let id = self.identity_row();
        pres.relators.iter().all(|w| self.eval_word(w) == id)
    }
}

fn invert_row(row: &[(usize, i64)], m: u32) -> Vec<(usize, i64)> {
    let mut out = vec![(0usize, 0i64); row.len()];
    for (j, &(t, e)) in row.iter().enumerate() {
        out[t] = (j, (-e).rem_euclid(m as i64));
    }
    out
}

/// For each group generator, express its action on the given basis vectors
/// as scalar times another basis vector. Errors if some image is not of
/// that shape.
pub fn extract_action(
    gp: &PermGroup,
    basis: &[(String, GroupVector)],
    modulus: u32,
) -> Result<MonomialPermTable> {
    let mut gens = Vec::new();
    for gi in 0..gp.num_gens() {
        let gname = gp.gen_names()[gi].clone();
        let g = gp.generator(gi);
        let mut row = Vec::with_capacity(basis.len());
        for (vname, v) in basis {
            let image = act(gp, g, v);
            // several basis vectors can share a support, so test each
            let mut found = None;
            for (target, (_, b)) in basis.iter().enumerate() {
                if b.support() != image.support() {
                    continue;
                }
                let lead = *image.support().first().unwrap();
                let scalar = image.coeff(lead).div(&b.coeff(lead));
                if image == b.scale(&scalar) {
                    if let Some(root) = scalar.as_root() {
                        found = Some((target, root.exp as i64));
                        break;
                    }
                }
            }
            let hit = found.ok_or_else(|| Error::NotMonomial {
                gen: gname.clone(),
                var: vname.clone(),
            })?;
            row.push(hit);
        }
        gens.push((gname, row));
    }
    Ok(MonomialPermTable {
        vars: basis.iter().map(|(n, _)| n.clone()).collect(),
        modulus,
        gens,
    })
}

/// Elements acting trivially (identity permutation, all scalars 1) on the
/// span of the table's variables.
pub fn table_kernel(gp: &PermGroup, table: &MonomialPermTable) -> Vec<Elem> {
    let m = table.modulus as i64;
    let nvars = table.vars.len();
    let id: Vec<(usize, i64)> = (0..nvars).map(|j| (j, 0)).collect();
    // automorphism of each group element by breadth-first composition
    let mut auts: Vec<Option<Vec<(usize, i64)>>> = vec![None; gp.order() as usize];
    auts[0] = Some(id.clone());
    let mut queue = vec![0 as Elem];
    let mut head = 0;
    while head < queue.len() {
        let e = queue[head];
        head += 1;
        let base = auts[e as usize].clone().unwrap();
        for gi in 0..gp.num_gens() {
            let next = gp.mul(e, gp.generator(gi));
            if auts[next as usize].is_none() {
                // automorphism of e*g: apply g's table first, then e's
                let grow = &table.gens[gi].1;
                let composed: Vec<(usize, i64)> = grow
                    .iter()
                    .map(|&(t, s)| {
                        let (t2, s2) = base[t];
                        (t2, (s + s2).rem_euclid(m))
                    })
                    .collect();
                auts[next as usize] = Some(composed);
                queue.push(next);
            }
        }
    }
    gp.elements()
        .filter(|&e| auts[e as usize].as_ref() == Some(&id))
        .collect()
}

/// True iff only the identity acts trivially on the table's variables.
pub fn faithful_check(gp: &PermGroup, table: &MonomialPermTable) -> bool {
    table_kernel(gp, table) == vec![0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroups::{build_presentation, realize, realize_family, FamilySpec, Theorem};

    fn g1_p3_n3() -> (PermGroup, u32) {
        let spec = FamilySpec::new(Theorem::OddP, 1, 3, 3);
        (realize_family(&spec).unwrap(), 3) // zeta_{p^{n-2}} = zeta_3
    }

    #[test]
    fn identity_acts_trivially_and_sigma_moves_x1() {
        let (gp, m) = g1_p3_n3();
        let v = GroupVector::basis(m, 0);
        assert_eq!(act(&gp, 0, &v), v);
        let s = gp.generator(0);
        let moved = act(&gp, s, &v);
        assert_eq!(moved.support(), vec![s]);
    }

    #[test]
    fn case1_eigenvectors_and_table() {
        // the full Step-1 construction for G1 at p=3, n=3
        let spec = FamilySpec::new(Theorem::OddP, 1, 3, 3);
        let gp = realize_family(&spec).unwrap();
        let m = 3u32; // p^{n-2}
        let s = gp.generator(0);
        let t = gp.generator(1);
        let l = gp.generator(2);

        let s_cyc = gp.closure(&[s]);
        let l_cyc = gp.closure(&[l]);
        let x1 = orbit_sum(&gp, m, &s_cyc, 0);
        assert_eq!(x1.support().len(), 3);
        let x2 = orbit_sum(&gp, m, &l_cyc, 0);
        assert_eq!(x2.support().len(), 3);
        assert_eq!(act(&gp, s, &x1), x1);
        assert_eq!(act(&gp, l, &x2), x2);

        // lambda . X1 has support { lambda sigma^j }
        let lx1 = act(&gp, l, &x1);
        let expect: Vec<Elem> = {
            let mut v: Vec<Elem> = s_cyc.iter().map(|&h| gp.mul(l, h)).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(lx1.support(), expect);

        let omega = Root::new(3, 1); // zeta^{p^{n-3}} = zeta at n=3
        let zeta = Root::new(3, 1);
        let y1 = character_average(&gp, &x1, l, &omega, 3).unwrap();
        let y2 = character_average(&gp, &x2, s, &zeta, 3).unwrap();
        assert!(is_eigenvector(&gp, l, &y1, &omega));
        assert!(is_eigenvector(&gp, s, &y2, &zeta));
        assert!(is_eigenvector(&gp, s, &y1, &Root::one(3)));
        assert!(is_eigenvector(&gp, l, &y2, &Root::one(3)));

        // translate bases x_i = tau^i Y1, y_i = tau^i Y2
        let xs = translate_chain(&gp, &y1, t, 3);
        let ys = translate_chain(&gp, &y2, t, 3);
        let mut basis: Vec<(String, GroupVector)> = Vec::new();
        for (i, v) in xs.iter().enumerate() {
            basis.push((format!("x{i}"), v.clone()));
        }
        for (i, v) in ys.iter().enumerate() {
            basis.push((format!("y{i}"), v.clone()));
        }
        let all: Vec<GroupVector> = basis.iter().map(|(_, v)| v.clone()).collect();
        check_independent(&all).unwrap();

        let table = extract_action(&gp, &basis, m).unwrap();
        // sigma: x_i -> omega^i x_i, y_i -> zeta y_i (q = p^{n-3} = 1 here)
        let srow = table.gen_row("s");
        assert_eq!(srow[0], (0, 0));
        assert_eq!(srow[1], (1, 1));
        assert_eq!(srow[2], (2, 2));
        assert_eq!(srow[3], (3, 1));
        assert_eq!(srow[4], (4, 1));
        assert_eq!(srow[5], (5, 1));
        // tau cycles both blocks
        let trow = table.gen_row("t");
        assert_eq!(trow[0], (1, 0));
        assert_eq!(trow[1], (2, 0));
        assert_eq!(trow[2], (0, 0));
        assert_eq!(trow[3], (4, 0));
        // lambda: x_i -> omega x_i, y_i fixed
        let lrow = table.gen_row("l");
        assert_eq!(lrow[0], (0, 1));
        assert_eq!(lrow[1], (1, 1));
        assert_eq!(lrow[2], (2, 1));
        assert_eq!(lrow[3], (3, 0));

        // table respects the defining relators and is faithful
        let pres = build_presentation(&spec).unwrap();
        assert!(table.satisfies(&pres));
        assert!(faithful_check(&gp, &table));

        // the y-block alone spans a G-stable subspace that is not faithful:
        // lambda lies in its kernel (just as sigma fixes the Y1 line)
        let ybasis: Vec<(String, GroupVector)> = ys
            .iter()
            .enumerate()
            .map(|(i, v)| (format!("y{i}"), v.clone()))
            .collect();
        let ytable = extract_action(&gp, &ybasis, m).unwrap();
        assert!(table_kernel(&gp, &ytable).contains(&l));
        assert!(!faithful_check(&gp, &ytable));

        // the Y1 line itself is not stable under tau: not-monomial error
        let single = vec![("y1vec".to_string(), y1.clone())];
        match extract_action(&gp, &single, m) {
            Err(Error::NotMonomial { .. }) => {}
            other => panic!("expected not-monomial, got {other:?}"),
        }
    }

    #[test]
    fn trivial_group_identity_table_is_faithful() {
        let pres = Presentation::new(vec!["g"], vec![vec![(0, 1)]]);
        let gp = realize(&pres).unwrap();
        let basis = vec![("x".to_string(), GroupVector::basis(1, 0))];
        let table = extract_action(&gp, &basis, 1).unwrap();
        assert!(faithful_check(&gp, &table));
    }

    #[test]
    fn degenerate_character_average_is_an_error() {
        let (gp, m) = g1_p3_n3();
        let s = gp.generator(0);
        // averaging x(1) over <s> against a nontrivial character of <s>
        // kills the orbit sum of the s-line... build the s-invariant vector
        // and average it against a nontrivial character: the result is zero
        let s_cyc = gp.closure(&[s]);
        let x1 = orbit_sum(&gp, m, &s_cyc, 0);
        match character_average(&gp, &x1, s, &Root::new(3, 1), 3) {
            Err(Error::DegenerateEigenvector) => {}
            other => panic!("expected degenerate eigenvector, got {other:?}"),
        }
    }

    #[test]
    fn dependence_is_reported_with_witness() {
        let (_, m) = g1_p3_n3();
        let a = GroupVector::basis(m, 0);
        let b = GroupVector::basis(m, 1);
        let c = a.add(&b);
        let err = check_independent(&[a, b, c]).unwrap_err();
        match err {
            Error::Dependence { detail } => assert!(detail.contains("vector 2")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
