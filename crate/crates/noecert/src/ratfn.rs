//! Exact multivariate rational functions over Q(zeta_m), with the
//! substitution machinery behind the non-monomial steps: the t_i
//! linearization, the affine shift T_i = t_i - 1/p, and the Moebius
//! substitutions v = (1 - u)/(1 + u).
//!
//! Equality is decided by cross-multiplication and canonical polynomial
//! comparison, never by sampling. Fractions are normalized by monomial and
//! scalar content plus exact trial division; that is enough because every
//! reduced fraction in scope keeps total degree at most p.

use crate::cyclo::Cyclo;
use crate::monomial::{MonomialAction, MonomialAut};
use crate::{Error, Result};
use num::rational::BigRational;
use num::BigInt;
use std::collections::BTreeMap;
use std::fmt;

/// Sparse polynomial: exponent vector -> nonzero cyclotomic coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub nvars: usize,
    pub modulus: u32,
    terms: BTreeMap<Vec<u32>, Cyclo>,
}

impl Poly {
    pub fn zero(nvars: usize, modulus: u32) -> Self {
        Poly {
            nvars,
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Cyclo) -> Self {
        let modulus = c.modulus;
        let mut p = Poly::zero(nvars, modulus);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize, modulus: u32) -> Self {
        Poly::constant(nvars, Cyclo::one(modulus))
    }

    pub fn var(nvars: usize, modulus: u32, i: usize) -> Self {
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars, modulus);
        p.terms.insert(e, Cyclo::one(modulus));
        p
    }

    pub fn monomial(nvars: usize, modulus: u32, exps: &[u32], c: Cyclo) -> Self {
        let mut p = Poly::zero(nvars, modulus);
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&vec![0; self.nvars])
                .is_some_and(|c| *c == Cyclo::one(self.modulus))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn insert(&mut self, e: Vec<u32>, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(cur) => {
                let s = cur.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *cur = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.nvars, self.modulus);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars, self.modulus);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, k: &Cyclo) -> Poly {
        let mut out = Poly::zero(self.nvars, self.modulus);
        if k.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c.mul(k));
        }
        out
    }

    /// Leading term in the lexicographic order.
    fn leading(&self) -> (&Vec<u32>, &Cyclo) {
        self.terms.iter().next_back().unwrap()
    }

    /// Exact division: Some(q) iff self = q * div with zero remainder.
    pub fn div_exact(&self, div: &Poly) -> Option<Poly> {
        if div.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut quo = Poly::zero(self.nvars, self.modulus);
        let (de, dc) = {
            let (e, c) = div.leading();
            (e.clone(), c.clone())
        };
        let dcinv = dc.inv();
        while !rem.is_zero() {
            let (re, rc) = {
                let (e, c) = rem.leading();
                (e.clone(), c.clone())
            };
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let qc = rc.mul(&dcinv);
            let t = Poly::monomial(self.nvars, self.modulus, &qe, qc);
            quo = quo.add(&t);
            rem = rem.sub(&t.mul(div));
        }
        Some(quo)
    }

    /// Strip the largest monomial dividing every term; returns the stripped
    /// polynomial and the removed exponent vector.
    fn monomial_content(&self) -> (Poly, Vec<u32>) {
        if self.is_zero() {
            return (self.clone(), vec![0; self.nvars]);
        }
        let mut min: Vec<u32> = self.terms.keys().next().unwrap().clone();
        for e in self.terms.keys() {
            for (m, v) in min.iter_mut().zip(e) {
                *m = (*m).min(*v);
            }
        }
        if min.iter().all(|&v| v == 0) {
            return (self.clone(), min);
        }
        let mut out = Poly::zero(self.nvars, self.modulus);
        for (e, c) in &self.terms {
            let ne: Vec<u32> = e.iter().zip(&min).map(|(a, b)| a - b).collect();
            out.terms.insert(ne, c.clone());
        }
        (out, min)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &x) in e.iter().enumerate() {
                if x == 1 {
                    write!(f, "*x{i}")?;
                } else if x > 1 {
                    write!(f, "*x{i}^{x}")?;
                }
            }
        }
        Ok(())
    }
}

/// A reduced fraction of sparse polynomials.
#[derive(Clone, Debug)]
pub struct RationalFn {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFn {
    pub fn from_poly(num: Poly) -> Self {
        let den = Poly::one(num.nvars, num.modulus);
        RationalFn { num, den }.normalized()
    }

    pub fn constant(nvars: usize, c: Cyclo) -> Self {
        RationalFn::from_poly(Poly::constant(nvars, c))
    }

    pub fn one(nvars: usize, modulus: u32) -> Self {
        RationalFn::from_poly(Poly::one(nvars, modulus))
    }

    pub fn zero(nvars: usize, modulus: u32) -> Self {
        RationalFn::from_poly(Poly::zero(nvars, modulus))
    }

    pub fn var(nvars: usize, modulus: u32, i: usize) -> Self {
        RationalFn::from_poly(Poly::var(nvars, modulus, i))
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DegenerateSubstitution);
        }
        Ok(RationalFn { num, den }.normalized())
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den = Poly::one(self.num.nvars, self.num.modulus);
            return self;
        }
        // strip shared monomial content
        let (n, ne) = self.num.monomial_content();
        let (d, de) = self.den.monomial_content();
        let shared: Vec<u32> = ne.iter().zip(&de).map(|(a, b)| *a.min(b)).collect();
        let put_back = |p: &Poly, own: &[u32]| -> Poly {
            let back: Vec<u32> = own.iter().zip(&shared).map(|(a, b)| a - b).collect();
            if back.iter().all(|&v| v == 0) {
                p.clone()
            } else {
                p.mul(&Poly::monomial(
                    p.nvars,
                    p.modulus,
                    &back,
                    Cyclo::one(p.modulus),
                ))
            }
        };
        self.num = put_back(&n, &ne);
        self.den = put_back(&d, &de);
        // exact cancellation when one side divides the other
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = Poly::one(self.num.nvars, self.num.modulus);
        } else if let Some(q) = self.den.div_exact(&self.num) {
            // num/den = 1/q
            self.den = q;
            self.num = Poly::one(self.num.nvars, self.num.modulus);
        }
        // make the denominator's leading coefficient 1
        let lead = self.den.leading().1.clone();
        if lead != Cyclo::one(self.den.modulus) {
            let inv = lead.inv();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        RationalFn {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
        .normalized()
    }

    pub fn sub(&self, other: &RationalFn) -> RationalFn {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
        .normalized()
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
        .normalized()
    }

    pub fn div(&self, other: &RationalFn) -> Result<RationalFn> {
        if other.is_zero() {
            return Err(Error::DegenerateSubstitution);
        }
        Ok(RationalFn {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        }
        .normalized())
    }

    pub fn inv(&self) -> Result<RationalFn> {
        RationalFn::one(self.num.nvars, self.num.modulus).div(self)
    }

    pub fn pow(&self, e: i64) -> Result<RationalFn> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RationalFn::one(self.num.nvars, self.num.modulus);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Mathematical equality of fractions by cross-multiplication; this
    /// is deliberately not PartialEq, which would compare representations.
    #[allow(clippy::should_implement_trait)]
    pub fn eq(&self, other: &RationalFn) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn total_degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }
}

/// Map from variables to their images.
#[derive(Clone, Debug)]
pub struct Substitution {
    pub images: Vec<RationalFn>,
}

impl Substitution {
    pub fn identity(nvars: usize, modulus: u32) -> Self {
        Substitution {
            images: (0..nvars).map(|i| RationalFn::var(nvars, modulus, i)).collect(),
        }
    }

    /// The substitution a monomial automorphism induces:
    /// x_j -> zeta^{scal_j} prod x_i^{mat[i][j]}.
    pub fn from_monomial_aut(aut: &MonomialAut) -> Result<Self> {
        let k = aut.rank();
        let m = aut.modulus;
        let mut images = Vec::with_capacity(k);
        for j in 0..k {
            let mut f = RationalFn::constant(k, Cyclo::zeta_pow(m, aut.scal[j]));
            for i in 0..k {
                let e = aut.mat[(i, j)];
                if e != 0 {
                    f = f.mul(&RationalFn::var(k, m, i).pow(e)?);
                }
            }
            images.push(f);
        }
        Ok(Substitution { images })
    }

    pub fn apply_poly(&self, p: &Poly) -> Result<RationalFn> {
        let nvars = self.images.len();
        let m = p.modulus;
        let mut acc = RationalFn::zero(nvars, m);
        for (e, c) in &p.terms {
            let mut term = RationalFn::constant(nvars, c.clone());
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    term = term.mul(&self.images[i].pow(x as i64)?);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Exact composition f(images), reduced. Errors if the denominator
    /// vanishes identically.
    pub fn apply(&self, f: &RationalFn) -> Result<RationalFn> {
        let num = self.apply_poly(&f.num)?;
        let den = self.apply_poly(&f.den)?;
        if den.is_zero() {
            return Err(Error::DegenerateSubstitution);
        }
        num.div(&den)
    }

    /// Compose: (self o other)(x) = self applied to other's images...
    /// i.e. first substitute `other`, then `self` into the result.
    pub fn then(&self, other: &Substitution) -> Result<Substitution> {
        let images = other
            .images
            .iter()
            .map(|f| self.apply(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Substitution { images })
    }
}

fn rat(n: i64, d: i64) -> Cyclo {
    Cyclo::from_rat(
        1,
        BigRational::new(BigInt::from(n), BigInt::from(d)),
    )
}

/// The linearization tuple for a cyclic-with-inversion action on
/// v_1 .. v_{p-1}:
/// t_0 = 1 + v_1 + v_1 v_2 + ... + v_1 ... v_{p-1}, t_1 = 1/t_0,
/// t_i = v_1 ... v_{i-1} / t_0 for 2 <= i <= p.
/// Returns [t_0, t_1, ..., t_p] in p-1 variables over Q(zeta_m).
pub fn build_t_substitution(p: u32, modulus: u32) -> Vec<RationalFn> {
    let k = (p - 1) as usize;
    let mut t0 = Poly::one(k, modulus);
    let mut prefix = Poly::one(k, modulus);
    for i in 0..k {
        prefix = prefix.mul(&Poly::var(k, modulus, i));
        t0 = t0.add(&prefix);
    }
    let mut out = Vec::with_capacity(p as usize + 1);
    out.push(RationalFn::from_poly(t0.clone()));
    // t_1 = 1 / t_0
    out.push(RationalFn::new(Poly::one(k, modulus), t0.clone()).unwrap());
    let mut pref = Poly::one(k, modulus);
    for i in 2..=p as usize {
        pref = pref.mul(&Poly::var(k, modulus, i - 2));
        out.push(RationalFn::new(pref.clone(), t0.clone()).unwrap());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LinearizationReport {
    pub shift_cycle_ok: bool,
    pub last_is_one_minus_sum: bool,
    pub sum_is_one: bool,
    pub t0_maps_to_t0_over_v1: bool,
    pub recovery_ok: bool,
    pub round_trip_ok: bool,
}

use serde::Serialize;

impl LinearizationReport {
    pub fn all_ok(&self) -> bool {
        self.shift_cycle_ok
            && self.last_is_one_minus_sum
            && self.sum_is_one
            && self.t0_maps_to_t0_over_v1
            && self.recovery_ok
            && self.round_trip_ok
    }
}

/// Verify that the cyclic generator (as a substitution on the v variables)
/// linearizes through the t-tuple:
/// tau(t_i) = t_{i+1} for 1 <= i <= p-1, t_p = 1 - t_1 - ... - t_{p-1},
/// tau(t_0) = t_0 / v_1, and the coordinate change inverts via
/// v_i = t_{i+1} / t_i.
pub fn verify_linearization(tau: &Substitution, p: u32, modulus: u32) -> Result<LinearizationReport> {
    let k = (p - 1) as usize;
    let ts = build_t_substitution(p, modulus);
    let mut shift_cycle_ok = true;
    for i in 1..=k {
        let img = tau.apply(&ts[i])?;
        if !img.eq(&ts[i + 1]) {
            shift_cycle_ok = false;
        }
    }
    let mut sum = RationalFn::zero(k, modulus);
    for t in &ts[1..=p as usize] {
        sum = sum.add(t);
    }
    let sum_is_one = sum.eq(&RationalFn::one(k, modulus));
    let mut one_minus = RationalFn::one(k, modulus);
    for t in &ts[1..k + 1] {
        one_minus = one_minus.sub(t);
    }
    let last_is_one_minus_sum = ts[p as usize].eq(&one_minus);
    let t0_image = tau.apply(&ts[0])?;
    let t0_over_v1 = ts[0].div(&RationalFn::var(k, modulus, 0))?;
    let t0_maps_to_t0_over_v1 = t0_image.eq(&t0_over_v1);
    // recovery v_i = t_{i+1} / t_i
    let mut recovery_ok = true;
    let mut recovered = Vec::with_capacity(k);
    for i in 1..=k {
        let v = ts[i + 1].div(&ts[i])?;
        if !v.eq(&RationalFn::var(k, modulus, i - 1)) {
            recovery_ok = false;
        }
        recovered.push(v);
    }
    // round trip: composing recovery with the forward images is the identity
    let recovery = Substitution { images: recovered };
    let round = recovery.then(&Substitution::identity(k, modulus))?;
    let round_trip_ok = round
        .images
        .iter()
        .enumerate()
        .all(|(i, f)| f.eq(&RationalFn::var(k, modulus, i)));
    Ok(LinearizationReport {
        shift_cycle_ok,
        last_is_one_minus_sum,
        sum_is_one,
        t0_maps_to_t0_over_v1,
        recovery_ok,
        round_trip_ok,
    })
}

/// With T_i = t_i - 1/p the action becomes linear with zero constant term:
/// T_1 -> T_2 -> ... -> T_{p-1} -> -(T_1 + ... + T_{p-1}).
pub fn affine_shift_check(tau: &Substitution, p: u32, modulus: u32) -> Result<bool> {
    let k = (p - 1) as usize;
    let ts = build_t_substitution(p, modulus);
    let shift = RationalFn::constant(k, rat(1, p as i64).lift_to(modulus));
    let cap: Vec<RationalFn> = (1..=k).map(|i| ts[i].sub(&shift)).collect();
    for i in 0..k {
        let img = tau.apply(&cap[i])?;
        let expect = if i + 1 < k {
            cap[i + 1].clone()
        } else {
            let mut acc = RationalFn::zero(k, modulus);
            for c in &cap {
                acc = acc.sub(c);
            }
            acc
        };
        if !img.eq(&expect) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which Moebius substitution to use per variable. Standard is
/// v = (1 - u)/(1 + u) and flipped its reciprocal; they turn u -> 1/u into
/// v -> -v. The twisted variants (u -+ i)/(u +- i), with i the fourth root
/// of unity, do the same for u -> -1/u.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum MobiusVariant {
    Standard,
    Flipped,
    TwistPlus,
    TwistMinus,
}

pub fn mobius_image(nvars: usize, modulus: u32, var: usize, variant: MobiusVariant) -> RationalFn {
    let one = Poly::one(nvars, modulus);
    let u = Poly::var(nvars, modulus, var);
    match variant {
        MobiusVariant::Standard => RationalFn::new(one.sub(&u), one.add(&u)).unwrap(),
        MobiusVariant::Flipped => RationalFn::new(one.add(&u), one.sub(&u)).unwrap(),
        MobiusVariant::TwistPlus | MobiusVariant::TwistMinus => {
            assert!(modulus.is_multiple_of(4), "twisted variants need a fourth root of unity");
            let i = Poly::constant(nvars, Cyclo::zeta_pow(modulus, modulus as i64 / 4));
            match variant {
                MobiusVariant::TwistPlus => RationalFn::new(u.sub(&i), u.add(&i)).unwrap(),
                _ => RationalFn::new(u.add(&i), u.sub(&i)).unwrap(),
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MobiusReport {
    pub variants: Vec<MobiusVariant>,
    /// per generator: the images of (v3, v4) expressed in (v3, v4), as
    /// (sign, target) pairs meaning v_i -> sign * v_target, or a swap check
    pub table_ok: bool,
}

/// Verify the Moebius step for one pair of variables: under the given
/// generator substitutions (on the ambient u variables), the transformed
/// pair (v_a, v_b) must realize the claimed signed-permutation table.
/// `expected` lists, per generator, the images of (v_a, v_b) as
/// (target in {0, 1}, sign) pairs.
pub fn mobius_check(
    gens: &[(String, Substitution)],
    modulus: u32,
    pair: (usize, usize),
    variants: (MobiusVariant, MobiusVariant),
    expected: &[(String, [(usize, i64); 2])],
) -> Result<MobiusReport> {
    let nvars = gens
        .first()
        .map(|(_, s)| s.images.len())
        .unwrap_or(2);
    let v = [
        mobius_image(nvars, modulus, pair.0, variants.0),
        mobius_image(nvars, modulus, pair.1, variants.1),
    ];
    let mut table_ok = true;
    for (gname, row) in expected {
        let sub = &gens.iter().find(|(n, _)| n == gname).unwrap().1;
        for (slot, &(target, sign)) in row.iter().enumerate() {
            let image = sub.apply(&v[slot])?;
            let want = if sign >= 0 {
                v[target].clone()
            } else {
                v[target].neg()
            };
            if !image.eq(&want) {
                table_ok = false;
            }
        }
    }
    Ok(MobiusReport {
        variants: vec![variants.0, variants.1],
        table_ok,
    })
}

/// Substitutions for all generators of a monomial action.
pub fn action_substitutions(action: &MonomialAction) -> Result<Vec<(String, Substitution)>> {
    action
        .gens
        .iter()
        .map(|(n, aut)| Ok((n.clone(), Substitution::from_monomial_aut(aut)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat::Mat;
    use proptest::prelude::*;

    fn cyclic_inversion_sub(p: u32, modulus: u32) -> Substitution {
        // v_1 -> v_2 -> ... -> v_{p-1} -> (v_1 ... v_{p-1})^-1
        let k = (p - 1) as usize;
        let mut mat = Mat::zero(k, k);
        for j in 0..k.saturating_sub(1) {
            mat[(j + 1, j)] = 1;
        }
        for i in 0..k {
            mat[(i, k - 1)] = -1;
        }
        if k == 1 {
            mat[(0, 0)] = -1;
        }
        let aut = MonomialAut {
            mat,
            scal: vec![0; k],
            modulus,
        };
        Substitution::from_monomial_aut(&aut).unwrap()
    }

    #[test]
    fn identity_substitution_is_identity() {
        let f = RationalFn::new(
            Poly::one(2, 3).add(&Poly::var(2, 3, 0)),
            Poly::var(2, 3, 1),
        )
        .unwrap();
        let id = Substitution::identity(2, 3);
        assert!(id.apply(&f).unwrap().eq(&f));
    }

    #[test]
    fn reciprocal_substitution_example() {
        // v1 -> 1/v1 applied to 1/(1+v1) gives v1/(1+v1)
        let m = 1;
        let f = RationalFn::new(Poly::one(1, m), Poly::one(1, m).add(&Poly::var(1, m, 0))).unwrap();
        let sub = Substitution {
            images: vec![RationalFn::var(1, m, 0).inv().unwrap()],
        };
        let img = sub.apply(&f).unwrap();
        let want =
            RationalFn::new(Poly::var(1, m, 0), Poly::one(1, m).add(&Poly::var(1, m, 0))).unwrap();
        assert!(img.eq(&want));
    }

    #[test]
    fn t_substitution_shapes() {
        // p = 2: t_0 = 1 + v1, t_1 = 1/(1+v1)
        let ts = build_t_substitution(2, 1);
        assert!(ts[0].eq(&RationalFn::from_poly(
            Poly::one(1, 1).add(&Poly::var(1, 1, 0))
        )));
        assert!(ts[1].eq(&RationalFn::new(
            Poly::one(1, 1),
            Poly::one(1, 1).add(&Poly::var(1, 1, 0))
        )
        .unwrap()));
        // p = 3: t_2 = v1 / (1 + v1 + v1 v2)
        let ts = build_t_substitution(3, 1);
        let v1 = Poly::var(2, 1, 0);
        let v1v2 = v1.mul(&Poly::var(2, 1, 1));
        let t0 = Poly::one(2, 1).add(&v1).add(&v1v2);
        assert!(ts[2].eq(&RationalFn::new(v1, t0).unwrap()));
    }

    #[test]
    fn linearization_p2_p3_p5() {
        for p in [2u32, 3, 5] {
            let tau = cyclic_inversion_sub(p, 1);
            let report = verify_linearization(&tau, p, 1).unwrap();
            assert!(report.all_ok(), "p = {p}: {report:?}");
            assert!(affine_shift_check(&tau, p, 1).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn tau_sends_t2_to_t3_and_t3_is_one_minus_sum() {
        let tau = cyclic_inversion_sub(3, 1);
        let ts = build_t_substitution(3, 1);
        let img = tau.apply(&ts[2]).unwrap();
        assert!(img.eq(&ts[3]));
        let expect = RationalFn::one(2, 1).sub(&ts[1]).sub(&ts[2]);
        assert!(ts[3].eq(&expect));
    }

    #[test]
    fn wrong_action_fails_linearization() {
        // the identity action on the v's is not the cyclic shape
        let id = Substitution::identity(2, 1);
        let report = verify_linearization(&id, 3, 1).unwrap();
        assert!(!report.all_ok());
    }

    #[test]
    fn mobius_case5_and_case8() {
        // case 5 shape: sigma swaps u3, u4; tau fixes; lambda inverts
        let m = 4;
        let swap = Substitution {
            images: vec![RationalFn::var(2, m, 1), RationalFn::var(2, m, 0)],
        };
        let invert = Substitution {
            images: vec![
                RationalFn::var(2, m, 0).inv().unwrap(),
                RationalFn::var(2, m, 1).inv().unwrap(),
            ],
        };
        let fix = Substitution::identity(2, m);
        let gens = vec![
            ("s".to_string(), swap),
            ("t".to_string(), fix),
            ("l".to_string(), invert),
        ];
        let expected = vec![
            ("s".to_string(), [(1usize, 1i64), (0, 1)]),
            ("t".to_string(), [(0, 1), (1, 1)]),
            ("l".to_string(), [(0, -1), (1, -1)]),
        ];
        let report = mobius_check(
            &gens,
            m,
            (0, 1),
            (MobiusVariant::Standard, MobiusVariant::Standard),
            &expected,
        )
        .unwrap();
        assert!(report.table_ok);

        // case 8 shape: sigma: u3 -> -u4, u4 -> -u3 with the mixed variants
        let minus_one = Cyclo::zeta_pow(m, 2);
        let signed_swap = Substitution {
            images: vec![
                RationalFn::var(2, m, 1).mul(&RationalFn::constant(2, minus_one.clone())),
                RationalFn::var(2, m, 0).mul(&RationalFn::constant(2, minus_one)),
            ],
        };
        let invert2 = Substitution {
            images: vec![
                RationalFn::var(2, m, 0).inv().unwrap(),
                RationalFn::var(2, m, 1).inv().unwrap(),
            ],
        };
        let gens8 = vec![("s".to_string(), signed_swap), ("l".to_string(), invert2)];
        let expected8 = vec![
            ("s".to_string(), [(1usize, 1i64), (0, 1)]),
            ("l".to_string(), [(0, -1), (1, -1)]),
        ];
        let report8 = mobius_check(
            &gens8,
            m,
            (0, 1),
            (MobiusVariant::Standard, MobiusVariant::Flipped),
            &expected8,
        )
        .unwrap();
        assert!(report8.table_ok);
    }

    #[test]
    fn mobius_at_zero_is_one() {
        // evaluation sanity point: v(0) = 1
        let v = mobius_image(1, 1, 0, MobiusVariant::Standard);
        let at_zero = Substitution {
            images: vec![RationalFn::zero(1, 1)],
        };
        assert!(at_zero.apply(&v).unwrap().eq(&RationalFn::one(1, 1)));
    }

    #[test]
    fn vanishing_denominator_is_reported() {
        // v -> 1 applied to 1/(1 - v)
        let f = RationalFn::new(Poly::one(1, 1), Poly::one(1, 1).sub(&Poly::var(1, 1, 0))).unwrap();
        let sub = Substitution {
            images: vec![RationalFn::one(1, 1)],
        };
        match sub.apply(&f) {
            Err(Error::DegenerateSubstitution) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degree_bound_in_scope() {
        for p in [2u32, 3, 5] {
            for t in build_t_substitution(p, 1) {
                assert!(t.total_degree() <= p);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn substitution_is_a_field_homomorphism(
            coeffs1 in proptest::collection::vec(-3i64..4, 4),
            coeffs2 in proptest::collection::vec(-3i64..4, 4),
        ) {
            // random small polynomials in v1, v2 against the cyclic substitution
            let m = 1u32;
            let make = |cs: &[i64]| {
                let mut p = Poly::zero(2, m);
                let exps = [[0u32, 0], [1, 0], [0, 1], [1, 1]];
                for (e, &c) in exps.iter().zip(cs) {
                    if c != 0 {
                        p = p.add(&Poly::monomial(2, m, e, Cyclo::from_int(m, c)));
                    }
                }
                RationalFn::from_poly(p)
            };
            let f = make(&coeffs1);
            let g = make(&coeffs2);
            let tau = cyclic_inversion_sub(3, m);
            let lhs_mul = tau.apply(&f.mul(&g)).unwrap();
            let rhs_mul = tau.apply(&f).unwrap().mul(&tau.apply(&g).unwrap());
            prop_assert!(lhs_mul.eq(&rhs_mul));
            let lhs_add = tau.apply(&f.add(&g)).unwrap();
            let rhs_add = tau.apply(&f).unwrap().add(&tau.apply(&g).unwrap());
            prop_assert!(lhs_add.eq(&rhs_add));
        }
    }
}
