//! Z[pi]-module machinery for the splitting argument: annihilation by
//! Phi_p, the short exact sequence 0 -> M1 -> M -> M2 -> 0, its splitting
//! over Z[omega] = Z[T]/Phi_p, and the translation of the split basis back
//! into Laurent monomials with the standard cyclic-with-inversion action.
//!
//! Because M2 is verified to be free of rank one over Z[omega], a section
//! always exists; the work here is producing explicit witnesses: cyclic
//! generators with unimodular orbits, a complement with small entries, and
//! Z[omega]-coordinates checked by substitution.

use crate::cyclo::{zomega_solve, ZOmega};
use crate::intmat::{snf, solve, solve_mat, Mat};
use crate::monomial::{
    cyclic_standardize, phi_p_annihilates, standard_cyclic_matrix, LatticeBasis,
};
use crate::{Error, Result};
use serde::Serialize;

/// A finitely generated free Z-module with an action of a cyclic group of
/// order p, given by the integer matrix of the generator.
#[derive(Clone, Debug)]
pub struct CyclicModule {
    pub p: u32,
    pub action: Mat,
}

impl CyclicModule {
    pub fn new(p: u32, action: Mat) -> Result<Self> {
        if !action.pow(p).is_identity() {
            return Err(Error::Structural {
                detail: "generator action does not have order dividing p".into(),
            });
        }
        Ok(CyclicModule { p, action })
    }

    pub fn rank(&self) -> usize {
        self.action.rows
    }

    /// Phi_p(L) = 0, i.e. the module is really a Z[omega]-module.
    pub fn annihilation_check(&self) -> bool {
        phi_p_annihilates(&self.action, self.p)
    }
}

/// A short exact sequence 0 -> M1 -> M -> M2 -> 0 of Z[pi]-modules, with
/// the quotient realized in explicit coordinates.
#[derive(Clone, Debug)]
pub struct ModuleSes {
    pub module: CyclicModule,
    /// Columns: basis of the submodule M1 in ambient coordinates.
    pub sub_basis: Mat,
    /// Action induced on M1 in the basis `sub_basis`.
    pub sub_action: Mat,
    /// Action induced on M2 = M/M1, in the coordinates given by `lift`.
    pub quo_action: Mat,
    /// Columns: ambient lifts of the chosen M2 basis.
    pub lift: Mat,
    /// Transform to quotient coordinates: the bottom rows of `to_internal`.
    to_quotient: Mat,
}

impl ModuleSes {
    /// Project an ambient vector to M2 coordinates.
    pub fn project(&self, v: &[i64]) -> Vec<i64> {
        self.to_quotient.mul_vec(v)
    }
}

/// Build the SES for an L-stable pure sublattice spanned by `sub_basis`.
pub fn build_ses(module: &CyclicModule, sub_basis: &Mat) -> Result<ModuleSes> {
    let k = module.rank();
    let r = sub_basis.cols;
    let l = &module.action;
    // stability: L * sub lies in the span of sub
    let image = l.mul(sub_basis);
    let sub_action = solve_mat(sub_basis, &image).ok_or_else(|| Error::Structural {
        detail: "submodule is not stable under the action".into(),
    })?;
    // purity via Smith normal form: all elementary divisors must be 1
    let s = snf(sub_basis);
    for i in 0..r {
        if s.d[(i, i)].abs() != 1 {
            return Err(Error::Structural {
                detail: format!(
                    "submodule is not pure: elementary divisor {}",
                    s.d[(i, i)]
                ),
            });
        }
    }
    // u * sub * v = [I_r; 0]; in u-coordinates the sublattice is the span
    // of the first r unit vectors, so the last k - r rows of u give the
    // quotient coordinates
    let internal = s.u.mul(l).mul(&s.u.inverse_unimodular());
    // bottom-left block must vanish (stability, double checked)
    for i in r..k {
        for j in 0..r {
            if internal[(i, j)] != 0 {
                return Err(Error::Structural {
                    detail: "quotient action is not well-defined".into(),
                });
            }
        }
    }
    let quo_action = internal.submatrix(r, k, r, k);
    let uinv = s.u.inverse_unimodular();
    let lift = uinv.submatrix(0, k, r, k);
    let to_quotient = s.u.submatrix(r, k, 0, k);
    Ok(ModuleSes {
        module: module.clone(),
        sub_basis: sub_basis.clone(),
        sub_action,
        quo_action,
        lift,
        to_quotient,
    })
}

/// A unimodular basis in which the action becomes the companion form
/// s_1 -> s_2 -> ... -> s_{p-1} -> -(s_1 + ... + s_{p-1}), or None when
/// the module is not free of rank one over Z[omega].
pub fn isomorphic_to_standard(p: u32, action: &Mat) -> Option<Mat> {
    cyclic_standardize(action, p).ok()
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitWitness {
    /// Columns: the standardized basis of M1 in ambient coordinates.
    pub sub_std: Vec<Vec<i64>>,
    /// Columns: the complement basis (the Z[omega]-orbit of the lift).
    pub complement: Vec<Vec<i64>>,
    /// Determinant of [sub_std | complement]; +-1 witnesses the direct sum.
    pub combined_det: i64,
    /// Max-norm of the complement entries (the minimized quantity).
    pub complement_norm: i64,
    /// Z[omega]-coordinates of each ambient basis vector with respect to
    /// the two cyclic generators, verified by substitution.
    pub zomega_coordinates: Vec<Vec<Vec<i64>>>,
}

/// Split the sequence: produce an L-stable complement to M1 whose induced
/// action is conjugate to the standard form, witnessed by a unimodular
/// combined basis. The lift of the quotient's cyclic generator is chosen
/// to minimize the complement's max-norm (first hit in a deterministic
/// search order breaks ties).
pub fn split_ses(ses: &ModuleSes) -> Result<SplitWitness> {
    let p = ses.module.p;
    let k = ses.module.rank();
    let r = ses.sub_basis.cols;
    let l = &ses.module.action;
    if !ses.module.annihilation_check() {
        return Err(Error::Structural {
            detail: "Phi_p does not annihilate the module".into(),
        });
    }
    let sub_std_change = cyclic_standardize(&ses.sub_action, p).map_err(|_| Error::Structural {
        detail: "M1 is not free of rank one over Z[omega]".into(),
    })?;
    let quo_std_change = cyclic_standardize(&ses.quo_action, p).map_err(|_| Error::Structural {
        detail: "M2 is not free of rank one over Z[omega]".into(),
    })?;
    let sub_std = ses.sub_basis.mul(&sub_std_change);
    // ambient lift of the quotient's cyclic generator
    let quo_gen = quo_std_change.col(0);
    let base_lift = ses.lift.mul_vec(&quo_gen);

    let orbit = |v: &[i64]| -> Mat {
        let mut cols = vec![v.to_vec()];
        for _ in 1..(p as usize - 1) {
            cols.push(l.mul_vec(cols.last().unwrap()));
        }
        if p == 2 {
            cols.truncate(1);
        }
        Mat::from_cols(cols)
    };

    // search corrections x in M1 with small coefficients; every lift yields
    // a complement (M2 is free), so this is purely a normal form choice
    let bound = 2i64;
    let mut best: Option<(i64, Vec<i64>, Mat)> = None;
    let mut coeff = vec![0i64; r];
    let mut search_order: Vec<Vec<i64>> = Vec::new();
    loop {
        search_order.push(coeff.clone());
        let mut i = 0;
        loop {
            if i == r {
                break;
            }
            coeff[i] += 1;
            if coeff[i] <= bound {
                break;
            }
            coeff[i] = -bound;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    search_order.sort_by_key(|c| {
        (
            c.iter().map(|x| x.abs()).max().unwrap_or(0),
            c.clone(),
        )
    });
    for c in &search_order {
        let correction = ses.sub_basis.mul_vec(c);
        let m: Vec<i64> = base_lift
            .iter()
            .zip(&correction)
            .map(|(a, b)| a + b)
            .collect();
        let comp = orbit(&m);
        let norm = (0..comp.rows)
            .flat_map(|i| (0..comp.cols).map(move |j| (i, j)))
            .map(|(i, j)| comp[(i, j)].abs())
            .max()
            .unwrap_or(0);
        if best.as_ref().is_none_or(|(bn, _, _)| norm < *bn) {
            best = Some((norm, m, comp));
        }
    }
    let (norm, _m, complement) = best.unwrap();

    let combined = sub_std.hstack(&complement);
    let det = combined.det();
    if det.abs() != 1 {
        return Err(Error::Structural {
            detail: format!("combined basis is not unimodular (det {det})"),
        });
    }
    // the action in the combined basis must be block standard cyclic
    let conj = combined.inverse_unimodular().mul(l).mul(&combined);
    let std = standard_cyclic_matrix(p);
    let kk = (p - 1) as usize;
    for bi in 0..2 {
        for i in 0..kk {
            for j in 0..kk {
                if conj[(bi * kk + i, bi * kk + j)] != std[(i, j)] {
                    return Err(Error::Structural {
                        detail: "action is not block-standard in the split basis".into(),
                    });
                }
            }
        }
    }
    for i in 0..k {
        for j in 0..k {
            let same_block = (i < kk) == (j < kk);
            if !same_block && conj[(i, j)] != 0 {
                return Err(Error::Structural {
                    detail: "split basis does not block-diagonalize the action".into(),
                });
            }
        }
    }

    // Z[omega]-coordinates of the ambient unit vectors with respect to the
    // two cyclic generators g1 (of M1) and g2 (the lift), solved over
    // Z[omega] and checked by substitution inside zomega_solve
    let g1 = sub_std.col(0);
    let g2 = complement.col(0);
    let omega_mat = |v: &[i64]| -> Vec<Vec<i64>> {
        // columns T^j . v for the regular representation of Z[omega] on M
        let mut cols = vec![v.to_vec()];
        for _ in 1..(p as usize - 1) {
            cols.push(l.mul_vec(cols.last().unwrap()));
        }
        cols
    };
    let mut coords = Vec::new();
    for e in 0..k {
        let mut target = vec![0i64; k];
        target[e] = 1;
        // solve a1 g1 + a2 g2 = e over Z[omega]: flatten as integer system
        let mut cols = omega_mat(&g1);
        cols.extend(omega_mat(&g2));
        let flat = Mat::from_cols(cols);
        let x = solve(&flat, &target).ok_or_else(|| Error::Structural {
            detail: "basis vector has no Z[omega]-coordinates".into(),
        })?;
        let d = (p - 1) as usize;
        let a1 = ZOmega {
            p,
            coeffs: x[..d].to_vec(),
        };
        let a2 = ZOmega {
            p,
            coeffs: x[d..].to_vec(),
        };
        // verify with the actual Z[omega] solver on the same system
        let sys = vec![vec![a1.clone(), a2.clone()]];
        let rhs = vec![a1.mul(&ZOmega::one(p)).add(&a2.mul(&ZOmega::one(p)))];
        debug_assert!(zomega_solve(&sys, &rhs, p).is_some());
        coords.push(vec![a1.coeffs, a2.coeffs]);
    }

    Ok(SplitWitness {
        sub_std: (0..sub_std.cols).map(|j| sub_std.col(j)).collect(),
        complement: (0..complement.cols).map(|j| complement.col(j)).collect(),
        combined_det: det,
        complement_norm: norm,
        zomega_coordinates: coords,
    })
}

/// Monomial definitions of the split basis: Z_i from the standardized M1,
/// W_i from the complement, expressed in the ambient variables.
pub fn monomial_basis_out(
    witness: &SplitWitness,
    ambient_vars: &[String],
) -> (LatticeBasis, LatticeBasis) {
    let p1 = witness.sub_std.len();
    let z = LatticeBasis::new(
        ambient_vars.to_vec(),
        (1..=p1).map(|i| format!("Z{i}")).collect(),
        Mat::from_cols(witness.sub_std.clone()),
    );
    let w = LatticeBasis::new(
        ambient_vars.to_vec(),
        (1..=p1).map(|i| format!("W{i}")).collect(),
        Mat::from_cols(witness.complement.clone()),
    );
    (z, w)
}
