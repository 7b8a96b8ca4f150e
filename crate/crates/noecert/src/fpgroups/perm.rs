//! Permutation groups in their regular representation. Elements are
//! indices into the coset space; multiplication is a table lookup against
//! the stored right-translation permutations.

use super::Word;
use crate::{Error, Result};
use serde::Serialize;

/// Element id: an index into the regular coset space, 0 is the identity.
pub type Elem = u16;

#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gen_names: Vec<String>,
    gen_elems: Vec<Elem>,
    /// right[e][c] = c * e; one permutation per element.
    right: Vec<Vec<u16>>,
    inv: Vec<Elem>,
}

impl PermGroup {
    /// Close the generator permutations (right translations on the coset
    /// space) into the full element table. The action must be regular.
    pub fn from_generator_perms(gen_names: Vec<String>, perms: Vec<Vec<u32>>) -> Result<PermGroup> {
        let degree = perms.first().map_or(1, |p| p.len());
        if degree > u16::MAX as usize {
            return Err(Error::Structural {
                detail: format!("degree {degree} exceeds element table limit"),
            });
        }
        let gen_tables: Vec<Vec<u16>> = perms
            .iter()
            .map(|p| p.iter().map(|&v| v as u16).collect())
            .collect();
        let mut right: Vec<Option<Vec<u16>>> = vec![None; degree];
        right[0] = Some((0..degree as u16).collect());
        let mut queue = vec![0u16];
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            let base = right[e as usize].clone().unwrap();
            for gt in &gen_tables {
                let composed: Vec<u16> = base.iter().map(|&c| gt[c as usize]).collect();
                let idx = composed[0];
                if right[idx as usize].is_none() {
                    right[idx as usize] = Some(composed);
                    queue.push(idx);
                }
            }
        }
        if right.iter().any(|r| r.is_none()) {
            return Err(Error::Structural {
                detail: "generator permutations do not act regularly".into(),
            });
        }
        let right: Vec<Vec<u16>> = right.into_iter().map(|r| r.unwrap()).collect();
        let mut inv = vec![0u16; degree];
        for (x, row) in right.iter().enumerate() {
            // y with y*x = identity
            let y = row.iter().position(|&v| v == 0).unwrap();
            inv[x] = y as u16;
        }
        let gen_elems: Vec<Elem> = gen_tables.iter().map(|t| t[0]).collect();
        Ok(PermGroup {
            degree,
            gen_names,
            gen_elems,
            right,
            inv,
        })
    }

    pub fn order(&self) -> u64 {
        self.degree as u64
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn num_gens(&self) -> usize {
        self.gen_elems.len()
    }

    pub fn generator(&self, i: usize) -> Elem {
        self.gen_elems[i]
    }

    pub fn generator_named(&self, name: &str) -> Elem {
        let i = self
            .gen_names
            .iter()
            .position(|g| g == name)
            .unwrap_or_else(|| panic!("no generator named {name}"));
        self.gen_elems[i]
    }

    /// The permutation table of each generator (for determinism checks and
    /// serialization).
    pub fn generator_perms(&self) -> Vec<Vec<u16>> {
        self.gen_elems
            .iter()
            .map(|&g| self.right[g as usize].clone())
            .collect()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.right[b as usize][a as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut acc: Elem = 0;
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn conj(&self, x: Elem, by: Elem) -> Elem {
        self.mul(self.mul(self.inv(by), x), by)
    }

    pub fn eval_word(&self, w: &Word) -> Elem {
        let mut acc: Elem = 0;
        for &(g, e) in w {
            let x = self.pow(self.gen_elems[g], e);
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> u32 {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.degree as Elem
    }

    /// Orders of every element (index = element id).
    pub fn order_spectrum(&self) -> Vec<u32> {
        self.elements().map(|e| self.element_order(e)).collect()
    }

    pub fn exponent(&self) -> u32 {
        fn lcm(a: u64, b: u64) -> u64 {
            fn gcd(a: u64, b: u64) -> u64 {
                if b == 0 {
                    a
                } else {
                    gcd(b, a % b)
                }
            }
            a / gcd(a, b) * b
        }
        self.order_spectrum()
            .iter()
            .fold(1u64, |acc, &o| lcm(acc, o as u64)) as u32
    }

    pub fn is_abelian(&self) -> bool {
        self.gen_elems.iter().all(|&a| {
            self.gen_elems
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Closure of a generating set, as a sorted element list.
    pub fn closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.degree];
        seen[0] = true;
        let mut out = vec![0u16];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn contains(set: &[Elem], x: Elem) -> bool {
        set.binary_search(&x).is_ok()
    }

    /// Is H (given as a sorted element list) normal in the whole group?
    pub fn is_normal(&self, subgroup: &[Elem]) -> bool {
        self.gen_elems.iter().all(|&g| {
            subgroup
                .iter()
                .all(|&h| Self::contains(subgroup, self.conj(h, g)))
        })
    }

    pub fn centralizes(&self, c: Elem) -> bool {
        self.gen_elems
            .iter()
            .all(|&g| self.mul(c, g) == self.mul(g, c))
    }

    pub fn center(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.centralizes(x)).collect()
    }

    pub fn subgroup_props(&self, gens: &[Elem]) -> SubgroupProps {
        let elems = self.closure(gens);
        let order = elems.len() as u64;
        let is_abelian = elems
            .iter()
            .all(|&a| elems.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
        let is_cyclic = elems.iter().any(|&x| self.element_order(x) as u64 == order);
        let is_normal = self.is_normal(&elems);
        let quotient_cyclic_order = if is_normal {
            let q = self.order() / order;
            let cyclic = self.elements().any(|x| {
                // order of the coset xH in G/H
                let mut k = 1u64;
                let mut y = x;
                while !Self::contains(&elems, y) {
                    y = self.mul(y, x);
                    k += 1;
                }
                k == q
            });
            if cyclic {
                Some(q)
            } else {
                None
            }
        } else {
            None
        };
        SubgroupProps {
            order,
            is_abelian,
            is_normal,
            is_cyclic,
            quotient_cyclic_order,
        }
    }

    /// True iff <h_gens> and <c> intersect trivially, c is central, and the
    /// orders multiply up to |G|.
    pub fn direct_product_check(&self, h_gens: &[Elem], c: Elem) -> bool {
        if !self.centralizes(c) {
            return false;
        }
        let h = self.closure(h_gens);
        let cc = self.closure(&[c]);
        let inter = cc.iter().filter(|&&x| Self::contains(&h, x)).count();
        inter == 1 && h.len() as u64 * cc.len() as u64 == self.order()
    }

    /// True iff <s> is normal in <s, t> and the quotient is cyclic,
    /// generated by the image of t.
    pub fn metacyclic_check(&self, s: Elem, t: Elem) -> bool {
        let ambient = self.closure(&[s, t]);
        let n = self.closure(&[s]);
        // normality inside the ambient subgroup
        let normal = ambient
            .iter()
            .all(|&g| n.iter().all(|&h| Self::contains(&n, self.conj(h, g))));
        if !normal {
            return false;
        }
        let q = ambient.len() as u64 / n.len() as u64;
        // order of tN in the quotient
        let mut k = 1u64;
        let mut y = t;
        while !Self::contains(&n, y) {
            y = self.mul(y, t);
            k += 1;
        }
        k == q
    }

    /// A cheap isomorphism invariant: order, element-order spectrum,
    /// center size, derived-subgroup size, conjugacy-class sizes, and the
    /// per-element (order, class size, is-a-square) multiset.
    pub fn fingerprint(&self) -> Vec<u64> {
        let spectrum = self.order_spectrum();
        let mut squares = vec![false; self.degree];
        for x in self.elements() {
            squares[self.mul(x, x) as usize] = true;
        }
        // conjugacy classes by orbit of conjugation
        let mut class_of = vec![usize::MAX; self.degree];
        let mut class_sizes = Vec::new();
        for x in self.elements() {
            if class_of[x as usize] != usize::MAX {
                continue;
            }
            let id = class_sizes.len();
            let mut orbit = vec![x];
            class_of[x as usize] = id;
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head];
                head += 1;
                for g in 0..self.num_gens() {
                    let z = self.conj(y, self.gen_elems[g]);
                    if class_of[z as usize] == usize::MAX {
                        class_of[z as usize] = id;
                        orbit.push(z);
                    }
                }
            }
            class_sizes.push(orbit.len() as u64);
        }
        let derived = {
            let mut comms = Vec::new();
            for a in self.elements() {
                for b in self.elements() {
                    comms.push(self.mul(
                        self.mul(self.inv(a), self.inv(b)),
                        self.mul(a, b),
                    ));
                }
            }
            comms.sort_unstable();
            comms.dedup();
            self.closure(&comms).len() as u64
        };
        let mut per_elem: Vec<u64> = self
            .elements()
            .map(|x| {
                spectrum[x as usize] as u64 * 10000
                    + class_sizes[class_of[x as usize]] * 10
                    + squares[x as usize] as u64
            })
            .collect();
        per_elem.sort_unstable();
        let mut sorted_spec: Vec<u64> = spectrum.iter().map(|&o| o as u64).collect();
        sorted_spec.sort_unstable();
        let mut sorted_classes = class_sizes.clone();
        sorted_classes.sort_unstable();
        let mut fp = vec![self.order(), self.center().len() as u64, derived];
        fp.extend(sorted_spec);
        fp.extend(sorted_classes);
        fp.extend(per_elem);
        fp
    }

    /// Per-element invariant labels used by the isomorphism test: order,
    /// conjugacy class size, square-ness, order of the square.
    fn element_labels(&self) -> Vec<u64> {
        let spectrum = self.order_spectrum();
        let mut squares = vec![false; self.degree];
        for x in self.elements() {
            squares[self.mul(x, x) as usize] = true;
        }
        let mut class_size = vec![0u64; self.degree];
        let mut seen = vec![false; self.degree];
        for x in self.elements() {
            if seen[x as usize] {
                continue;
            }
            let mut orbit = vec![x];
            seen[x as usize] = true;
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head];
                head += 1;
                for g in 0..self.num_gens() {
                    let z = self.conj(y, self.gen_elems[g]);
                    if !seen[z as usize] {
                        seen[z as usize] = true;
                        orbit.push(z);
                    }
                }
            }
            for &y in &orbit {
                class_size[y as usize] = orbit.len() as u64;
            }
        }
        self.elements()
            .map(|x| {
                let sq_ord = spectrum[self.mul(x, x) as usize] as u64;
                spectrum[x as usize] as u64 * 1_000_000
                    + class_size[x as usize] * 1_000
                    + sq_ord * 2
                    + squares[x as usize] as u64
            })
            .collect()
    }

    /// A small generating tuple: single element, a pair, or a triple.
    pub fn generating_tuple(&self) -> Vec<Elem> {
        let n = self.degree;
        let mut by_order: Vec<Elem> = self.elements().collect();
        let spectrum = self.order_spectrum();
        by_order.sort_by_key(|&x| std::cmp::Reverse(spectrum[x as usize]));
        for &a in &by_order {
            if self.closure(&[a]).len() == n {
                return vec![a];
            }
        }
        for &a in &by_order {
            for b in self.elements() {
                if self.closure(&[a, b]).len() == n {
                    return vec![a, b];
                }
            }
        }
        for &a in &by_order {
            for b in self.elements() {
                if self.closure(&[a, b]).len() == n {
                    continue;
                }
                for c in self.elements() {
                    if self.closure(&[a, b, c]).len() == n {
                        return vec![a, b, c];
                    }
                }
            }
        }
        panic!("group not generated by three elements");
    }

    /// Exact isomorphism test by backtracking over generator images,
    /// after cheap invariant pre-filters.
    pub fn isomorphic_to(&self, other: &PermGroup) -> bool {
        if self.order() != other.order() {
            return false;
        }
        if self.fingerprint() != other.fingerprint() {
            return false;
        }
        let gens = self.generating_tuple();
        let self_labels = self.element_labels();
        let other_labels = other.element_labels();
        // candidate images, filtered by label; the first generator only needs
        // one candidate per conjugacy class of the target
        let mut candidates: Vec<Vec<Elem>> = gens
            .iter()
            .map(|&g| {
                other
                    .elements()
                    .filter(|&h| other_labels[h as usize] == self_labels[g as usize])
                    .collect()
            })
            .collect();
        let mut class_rep = vec![false; other.degree];
        {
            let mut seen = vec![false; other.degree];
            for x in other.elements() {
                if seen[x as usize] {
                    continue;
                }
                class_rep[x as usize] = true;
                let mut orbit = vec![x];
                seen[x as usize] = true;
                let mut head = 0;
                while head < orbit.len() {
                    let y = orbit[head];
                    head += 1;
                    for g in 0..other.num_gens() {
                        let z = other.conj(y, other.gen_elems[g]);
                        if !seen[z as usize] {
                            seen[z as usize] = true;
                            orbit.push(z);
                        }
                    }
                }
            }
        }
        candidates[0].retain(|&h| class_rep[h as usize]);

        let mut imgs = vec![0 as Elem; gens.len()];
        self.search_images(other, &gens, &candidates, &mut imgs, 0)
    }

    fn search_images(
        &self,
        other: &PermGroup,
        gens: &[Elem],
        candidates: &[Vec<Elem>],
        imgs: &mut [Elem],
        depth: usize,
    ) -> bool {
        if depth == gens.len() {
            return self.map_extends(other, gens, imgs);
        }
        for &h in &candidates[depth] {
            imgs[depth] = h;
            if self.search_images(other, gens, candidates, imgs, depth + 1) {
                return true;
            }
        }
        false
    }

    /// Does gens -> imgs extend to an isomorphism? Breadth-first definition
    /// along the Cayley graph with every edge checked.
    fn map_extends(&self, other: &PermGroup, gens: &[Elem], imgs: &[Elem]) -> bool {
        const UNDEF: u16 = u16::MAX;
        let n = self.degree;
        let mut f = vec![UNDEF; n];
        let mut hit = vec![false; n];
        f[0] = 0;
        hit[0] = true;
        let mut queue = vec![0u16];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (&g, &h) in gens.iter().zip(imgs) {
                let y = self.mul(x, g);
                let fy = other.mul(f[x as usize], h);
                if f[y as usize] == UNDEF {
                    if hit[fy as usize] {
                        return false; // not injective
                    }
                    f[y as usize] = fy;
                    hit[fy as usize] = true;
                    queue.push(y);
                } else if f[y as usize] != fy {
                    return false;
                }
            }
        }
        queue.len() == n
    }

    /// The structural claims of the classification for one (p, n) instance.
    pub fn family_claims(&self, p: u32, n: u32) -> ClaimReport {
        let expected_order = (p as u64).pow(n);
        let spectrum = self.order_spectrum();
        let pn2 = (p as u64).pow(n.saturating_sub(2)) as u32;
        let pn1 = (p as u64).pow(n.saturating_sub(1)) as u32;
        let max_order = spectrum.iter().copied().max().unwrap_or(1);
        let witness = spectrum
            .iter()
            .position(|&o| o as u64 == pn2 as u64)
            .map(|i| i as Elem);
        let exponent = self.exponent();
        ClaimReport {
            order: self.order(),
            expected_order,
            non_abelian: !self.is_abelian(),
            max_order,
            has_element_of_order_pn2: witness.is_some(),
            witness_of_order_pn2: witness,
            no_element_of_order_pn1: !spectrum.contains(&pn1),
            exponent,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupProps {
    pub order: u64,
    pub is_abelian: bool,
    pub is_normal: bool,
    pub is_cyclic: bool,
    pub quotient_cyclic_order: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub order: u64,
    pub expected_order: u64,
    pub non_abelian: bool,
    pub max_order: u32,
    pub has_element_of_order_pn2: bool,
    pub witness_of_order_pn2: Option<Elem>,
    pub no_element_of_order_pn1: bool,
    pub exponent: u32,
}

impl ClaimReport {
    pub fn all_hold(&self) -> bool {
        self.order == self.expected_order
            && self.non_abelian
            && self.has_element_of_order_pn2
            && self.no_element_of_order_pn1
    }
}
