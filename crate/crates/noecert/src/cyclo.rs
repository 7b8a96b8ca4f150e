//! Exact arithmetic for roots of unity, the cyclotomic fields Q(zeta_m),
//! and the ring Z[omega] = Z[T]/Phi_p(T) of p-th cyclotomic integers.
//!
//! Field elements are kept reduced modulo the m-th cyclotomic polynomial so
//! equality is canonical; all coefficients are arbitrary-precision rationals.

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::intmat::Mat;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// zeta_m^e with 0 <= e < m.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Root {
    pub modulus: u32,
    pub exp: u32,
}

impl Root {
    pub fn new(modulus: u32, exp: i64) -> Self {
        assert!(modulus >= 1);
        let m = modulus as i64;
        Root {
            modulus,
            exp: exp.rem_euclid(m) as u32,
        }
    }

    pub fn one(modulus: u32) -> Self {
        Root { modulus, exp: 0 }
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0
    }

    /// Order of the element: m / gcd(m, e).
    pub fn order(&self) -> u32 {
        (self.modulus as u64 / gcd(self.modulus as u64, self.exp as u64)) as u32
    }

    /// Multiply after lifting both factors to the lcm modulus.
    pub fn mul(&self, other: &Root) -> Root {
        let m = lcm(self.modulus as u64, other.modulus as u64) as u32;
        let e = self.exp as u64 * (m / self.modulus) as u64
            + other.exp as u64 * (m / other.modulus) as u64;
        Root::new(m, (e % m as u64) as i64)
    }

    pub fn pow(&self, k: i64) -> Root {
        Root::new(self.modulus, self.exp as i64 * k)
    }

    pub fn inv(&self) -> Root {
        self.pow(-1)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.exp, self.modulus) {
            (0, _) => write!(f, "1"),
            (e, m) if 2 * e == m => write!(f, "-1"),
            (1, m) => write!(f, "zeta_{m}"),
            (e, m) => write!(f, "zeta_{m}^{e}"),
        }
    }
}

/// Coefficients of the m-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_poly(m: u32) -> Vec<i64> {
    static CACHE: Mutex<Option<HashMap<u32, Vec<i64>>>> = Mutex::new(None);
    let mut guard = CACHE.lock().unwrap();
    let cache = guard.get_or_insert_with(HashMap::new);
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    // Phi_k = (x^k - 1) / prod_{d | k, d < k} Phi_d, filled in bottom-up
    for k in 1..=m {
        if !m.is_multiple_of(k) || cache.contains_key(&k) {
            continue;
        }
        let mut num = vec![0i64; k as usize + 1];
        num[0] = -1;
        num[k as usize] = 1;
        for d in 1..k {
            if k % d == 0 {
                num = poly_div_exact(&num, &cache[&d]);
            }
        }
        cache.insert(k, num);
    }
    cache[&m].clone()
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem: Vec<i64> = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let mut quo = vec![0i64; rem.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        if c != 0 {
            for (i, &dc) in den.iter().enumerate() {
                rem[k + i] -= c * dc;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    quo
}

/// An element of Q(zeta_m), reduced mod Phi_m. The coefficient vector has
/// length phi(m) and represents sum c_i * zeta_m^i.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclo {
    pub modulus: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn zero(modulus: u32) -> Self {
        let d = euler_phi(modulus as u64) as usize;
        Cyclo {
            modulus,
            coeffs: vec![BigRational::zero(); d],
        }
    }

    pub fn one(modulus: u32) -> Self {
        Cyclo::from_int(modulus, 1)
    }

    pub fn from_int(modulus: u32, v: i64) -> Self {
        let mut c = Cyclo::zero(modulus);
        c.coeffs[0] = BigRational::from_integer(BigInt::from(v));
        c
    }

    pub fn from_rat(modulus: u32, r: BigRational) -> Self {
        let mut c = Cyclo::zero(modulus);
        c.coeffs[0] = r;
        c
    }

    pub fn from_root(modulus: u32, r: &Root) -> Self {
        assert!(
            modulus.is_multiple_of(r.modulus),
            "root modulus {} does not divide field modulus {}",
            r.modulus,
            modulus
        );
        let e = (r.exp as u64 * (modulus / r.modulus) as u64) % modulus as u64;
        let mut dense = vec![BigRational::zero(); modulus as usize];
        dense[e as usize] = BigRational::one();
        Cyclo::reduce(modulus, dense)
    }

    /// zeta_m^e
    pub fn zeta_pow(modulus: u32, e: i64) -> Self {
        Cyclo::from_root(modulus, &Root::new(modulus, e))
    }

    fn reduce(modulus: u32, mut dense: Vec<BigRational>) -> Self {
        let phi = cyclotomic_poly(modulus);
        let d = phi.len() - 1;
        // reduce high powers: zeta^d = -sum_{i<d} phi_i zeta^i
        for k in (d..dense.len()).rev() {
            if dense[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut dense[k], BigRational::zero());
            for i in 0..d {
                if phi[i] != 0 {
                    let delta = &c * BigRational::from_integer(BigInt::from(phi[i]));
                    dense[k - d + i] -= delta;
                }
            }
        }
        dense.truncate(d);
        dense.resize(d, BigRational::zero());
        Cyclo {
            modulus,
            coeffs: dense,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        assert_eq!(self.modulus, other.modulus);
        let mut r = self.clone();
        for (a, b) in r.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        r
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        assert_eq!(self.modulus, other.modulus);
        let mut r = self.clone();
        for (a, b) in r.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        r
    }

    pub fn neg(&self) -> Cyclo {
        let mut r = self.clone();
        for a in r.coeffs.iter_mut() {
            *a = -a.clone();
        }
        r
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        assert_eq!(self.modulus, other.modulus);
        let d = self.coeffs.len();
        let mut dense = vec![BigRational::zero(); 2 * d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                dense[i + j] += a * b;
            }
        }
        Cyclo::reduce(self.modulus, dense)
    }

    pub fn inv(&self) -> Cyclo {
        assert!(!self.is_zero(), "division by zero in Q(zeta)");
        // extended euclid in Q[T] against Phi_m
        let phi: Vec<BigRational> = cyclotomic_poly(self.modulus)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let a: Vec<BigRational> = self.coeffs.clone();
        let (g, s) = poly_xgcd(&a, &phi);
        // g is a nonzero constant since Phi_m is irreducible
        assert_eq!(poly_deg(&g), Some(0), "element not invertible?");
        let ginv = g[0].recip();
        let mut dense: Vec<BigRational> = s.iter().map(|c| c * &ginv).collect();
        dense.resize(dense.len().max(1), BigRational::zero());
        Cyclo::reduce(self.modulus, dense)
    }

    pub fn div(&self, other: &Cyclo) -> Cyclo {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Cyclo {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = Cyclo::one(self.modulus);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// If this element is a power of zeta_m, return it as a root of unity.
    pub fn as_root(&self) -> Option<Root> {
        for e in 0..self.modulus {
            if *self == Cyclo::zeta_pow(self.modulus, e as i64) {
                return Some(Root::new(self.modulus, e as i64));
            }
        }
        None
    }

    /// Lift into Q(zeta_m2) where m | m2.
    pub fn lift_to(&self, m2: u32) -> Cyclo {
        assert!(m2.is_multiple_of(self.modulus));
        if m2 == self.modulus {
            return self.clone();
        }
        let k = (m2 / self.modulus) as usize;
        let mut dense = vec![BigRational::zero(); self.coeffs.len() * k];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[i * k] = c.clone();
        }
        Cyclo::reduce(m2, dense)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "zeta_{}", self.modulus)?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

fn poly_deg(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Returns (g, s) with s*a = g mod b and g = gcd(a, b).
fn poly_xgcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let zero = || vec![BigRational::zero()];
    let mut r0: Vec<BigRational> = a.to_vec();
    let mut r1: Vec<BigRational> = b.to_vec();
    let mut s0 = vec![BigRational::one()];
    let mut s1 = zero();
    while poly_deg(&r1).is_some() {
        // compute quotient of r0 by r1
        let d1 = poly_deg(&r1).unwrap();
        let mut q = vec![BigRational::zero(); poly_deg(&r0).map_or(0, |d| d.saturating_sub(d1)) + 1];
        let mut rem = r0.clone();
        while let Some(dr) = poly_deg(&rem) {
            if dr < d1 {
                break;
            }
            let c = &rem[dr] / &r1[d1];
            q[dr - d1] = c.clone();
            for i in 0..=d1 {
                let delta = &c * &r1[i];
                rem[dr - d1 + i] -= delta;
            }
        }
        let new_s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = new_s;
    }
    (r0, s0)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = vec![BigRational::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        r.resize(b.len(), BigRational::zero());
    }
    for (i, y) in b.iter().enumerate() {
        r[i] -= y;
    }
    r
}

/// An element of Z[omega] = Z[T]/Phi_p(T), coefficient vector of length p-1.
#[derive(Clone, PartialEq, Eq)]
pub struct ZOmega {
    pub p: u32,
    pub coeffs: Vec<i64>,
}

impl ZOmega {
    pub fn zero(p: u32) -> Self {
        ZOmega {
            p,
            coeffs: vec![0; (p - 1) as usize],
        }
    }

    pub fn one(p: u32) -> Self {
        let mut z = ZOmega::zero(p);
        z.coeffs[0] = 1;
        z
    }

    pub fn from_int(p: u32, v: i64) -> Self {
        let mut z = ZOmega::zero(p);
        z.coeffs[0] = v;
        z
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &ZOmega) -> ZOmega {
        let mut r = self.clone();
        for (a, b) in r.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        r
    }

    pub fn sub(&self, other: &ZOmega) -> ZOmega {
        let mut r = self.clone();
        for (a, b) in r.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        r
    }

    pub fn mul(&self, other: &ZOmega) -> ZOmega {
        let d = (self.p - 1) as usize;
        let mut dense = vec![0i64; 2 * d];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                dense[i + j] += a * b;
            }
        }
        phi_p_reduce(&dense, self.p)
    }

    /// Matrix of multiplication by this element in the basis 1, T, .., T^{p-2}.
    pub fn regular_matrix(&self) -> Mat {
        let d = (self.p - 1) as usize;
        let mut m = Mat::zero(d, d);
        for j in 0..d {
            let mut tj = ZOmega::zero(self.p);
            tj.coeffs[j] = 1;
            let col = self.mul(&tj);
            for i in 0..d {
                m[(i, j)] = col.coeffs[i];
            }
        }
        m
    }
}

impl fmt::Debug for ZOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZOmega(p={}, {:?})", self.p, self.coeffs)
    }
}

/// Canonical representative of an integer polynomial in T modulo
/// Phi_p(T) = 1 + T + ... + T^{p-1}.
pub fn phi_p_reduce(poly: &[i64], p: u32) -> ZOmega {
    let d = (p - 1) as usize;
    let mut dense: Vec<i64> = poly.to_vec();
    if dense.len() < d {
        dense.resize(d, 0);
    }
    // T^{p-1} = -(1 + T + ... + T^{p-2}); higher powers peel off one at a time
    for k in (d..dense.len()).rev() {
        let c = std::mem::take(&mut dense[k]);
        if c != 0 {
            for i in 0..d {
                dense[k - d + i] -= c;
            }
        }
    }
    dense.truncate(d);
    ZOmega { p, coeffs: dense }
}

/// Solve `a x = b` over Z[omega] by flattening each entry to its regular
/// representation over Z and running the integer elimination engine.
/// Solvability over Z[omega] is equivalent to solvability of the flattened
/// system; the result is substitution-checked before returning.
pub fn zomega_solve(a: &[Vec<ZOmega>], b: &[ZOmega], p: u32) -> Option<Vec<ZOmega>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let d = (p - 1) as usize;
    let mut flat = Mat::zero(rows * d, cols * d);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), cols);
        for (j, entry) in row.iter().enumerate() {
            let block = entry.regular_matrix();
            for bi in 0..d {
                for bj in 0..d {
                    flat[(i * d + bi, j * d + bj)] = block[(bi, bj)];
                }
            }
        }
    }
    let mut rhs = vec![0i64; rows * d];
    for (i, entry) in b.iter().enumerate() {
        for bi in 0..d {
            rhs[i * d + bi] = entry.coeffs[bi];
        }
    }
    let flat_x = crate::intmat::solve(&flat, &rhs)?;
    let x: Vec<ZOmega> = (0..cols)
        .map(|j| ZOmega {
            p,
            coeffs: flat_x[j * d..(j + 1) * d].to_vec(),
        })
        .collect();
    // substitution check
    for (i, row) in a.iter().enumerate() {
        let mut acc = ZOmega::zero(p);
        for (j, entry) in row.iter().enumerate() {
            acc = acc.add(&entry.mul(&x[j]));
        }
        if acc != b[i] {
            return None;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn root_multiplication() {
        let i = Root::new(4, 1);
        assert_eq!(i.mul(&i), Root::new(4, 2)); // zeta_4^2 = -1
        let a = Root::new(9, 3);
        let b = Root::new(9, 6);
        assert_eq!(a.mul(&b), Root::new(9, 0));
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn omega_times_its_inverse_power() {
        // omega = zeta_{p^{n-2}}^{p^{n-3}} for p=3, n=4: zeta_9^3, of order 3
        let omega = Root::new(9, 3);
        assert_eq!(omega.order(), 3);
        assert!(omega.mul(&omega.pow(2)).is_one());
    }

    #[test]
    fn root_lifts_to_lcm_modulus() {
        let a = Root::new(4, 1);
        let b = Root::new(3, 1);
        let c = a.mul(&b);
        assert_eq!(c.modulus, 12);
        assert_eq!(c.exp, 7); // zeta_4 * zeta_3 = zeta_12^{3+4}
    }

    #[test]
    fn primitivity_of_zeta() {
        for m in [2u32, 3, 4, 5, 8, 9, 16, 25, 27] {
            let z = Cyclo::zeta_pow(m, 1);
            let mut acc = Cyclo::one(m);
            for k in 1..m {
                acc = acc.mul(&z);
                assert!(acc != Cyclo::one(m), "zeta_{m}^{k} = 1");
            }
            acc = acc.mul(&z);
            assert_eq!(acc, Cyclo::one(m));
        }
    }

    #[test]
    fn field_inverse() {
        let x = Cyclo::zeta_pow(9, 2).add(&Cyclo::from_int(9, 3));
        let inv = x.inv();
        assert_eq!(x.mul(&inv), Cyclo::one(9));
    }

    #[test]
    fn embedding_respects_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = [3u32, 4, 8, 9][rng.gen_range(0..4)];
            let a = Root::new(m, rng.gen_range(0..m as i64));
            let b = Root::new(m, rng.gen_range(0..m as i64));
            let lhs = Cyclo::from_root(m, &a.mul(&b));
            let rhs = Cyclo::from_root(m, &a).mul(&Cyclo::from_root(m, &b));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ring_axioms_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let m = 9u32;
        let rnd = |rng: &mut ChaCha8Rng| {
            let mut c = Cyclo::zero(m);
            for e in 0..6 {
                let k: i64 = rng.gen_range(-3..4);
                if k != 0 {
                    c = c.add(&Cyclo::zeta_pow(m, e).mul(&Cyclo::from_int(m, k)));
                }
            }
            c
        };
        for _ in 0..1000 {
            let (a, b, c) = (rnd(&mut rng), rnd(&mut rng), rnd(&mut rng));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.mul(&b), b.mul(&a));
        }
    }

    #[test]
    fn phi_reduce_examples() {
        // T^2 mod Phi_3 = -1 - T
        let r = phi_p_reduce(&[0, 0, 1], 3);
        assert_eq!(r.coeffs, vec![-1, -1]);
        // Phi_p itself reduces to zero
        let r = phi_p_reduce(&[1, 1, 1], 3);
        assert!(r.is_zero());
        let r = phi_p_reduce(&[1, 1, 1, 1, 1], 5);
        assert!(r.is_zero());
    }

    #[test]
    fn phi_reduce_cube_of_one_plus_t() {
        // (1+T)^3 = 1 + 3T + 3T^2 + T^3; oracle: long division by Phi_3.
        let poly = [1i64, 3, 3, 1];
        let oracle = {
            // naive long division remainder by T^2 + T + 1
            let mut rem: Vec<i64> = poly.to_vec();
            for k in (2..rem.len()).rev() {
                let c = rem[k];
                rem[k] = 0;
                rem[k - 1] -= c;
                rem[k - 2] -= c;
            }
            rem.truncate(2);
            rem
        };
        // (1+omega)^3 = -omega^6 = -1, since 1 + omega = -omega^2
        assert_eq!(oracle, vec![-1, 0]);
        let r = phi_p_reduce(&poly, 3);
        assert_eq!(r.coeffs, oracle);
    }

    #[test]
    fn phi_reduce_t_to_the_p() {
        for p in [2u32, 3, 5] {
            let mut poly = vec![0i64; p as usize + 1];
            poly[p as usize] = 1;
            assert_eq!(phi_p_reduce(&poly, p), ZOmega::one(p));
        }
    }

    #[test]
    fn zomega_ring_axioms_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [3u32, 5] {
            let rnd = |rng: &mut ChaCha8Rng| ZOmega {
                p,
                coeffs: (0..p - 1).map(|_| rng.gen_range(-4i64..5)).collect(),
            };
            for _ in 0..1000 {
                let (a, b, c) = (rnd(&mut rng), rnd(&mut rng), rnd(&mut rng));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                assert_eq!(a.mul(&b), b.mul(&a));
            }
        }
    }

    #[test]
    fn zomega_identity_solve() {
        let p = 3;
        let b = vec![
            ZOmega {
                p,
                coeffs: vec![2, -1],
            },
            ZOmega {
                p,
                coeffs: vec![0, 5],
            },
        ];
        let a = vec![
            vec![ZOmega::one(p), ZOmega::zero(p)],
            vec![ZOmega::zero(p), ZOmega::one(p)],
        ];
        assert_eq!(zomega_solve(&a, &b, p), Some(b.clone()));
    }

    #[test]
    fn zomega_one_by_one() {
        let p = 3;
        let one_plus_t = ZOmega {
            p,
            coeffs: vec![1, 1],
        };
        let x = zomega_solve(&[vec![one_plus_t.clone()]], std::slice::from_ref(&one_plus_t), p).unwrap();
        assert_eq!(x, vec![ZOmega::one(p)]);
        // 1+T is a unit, so any rhs is solvable; T itself:
        let t = ZOmega {
            p,
            coeffs: vec![0, 1],
        };
        let x = zomega_solve(&[vec![one_plus_t.clone()]], std::slice::from_ref(&t), p).unwrap();
        assert_eq!(one_plus_t.mul(&x[0]), t);
    }

    #[test]
    fn zomega_unsolvable_reports_none() {
        let p = 3;
        // (1 - T) generates the prime over 3; 1 is not a multiple of it... in fact
        // norm(1-T) = 3, so (1-T) x = 1 has no solution in Z[omega].
        let a = ZOmega {
            p,
            coeffs: vec![1, -1],
        };
        assert!(zomega_solve(&[vec![a]], &[ZOmega::one(p)], p).is_none());
    }
}
