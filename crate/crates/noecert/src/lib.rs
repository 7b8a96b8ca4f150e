//! Exact verification engine for the rationality constructions attached to
//! the classification of non-abelian p-groups that contain a cyclic subgroup
//! of index p^2 (theorem 3.1 for odd p, theorem 3.2 for p = 2).
//!
//! Every family in the classification is realized as a concrete permutation
//! group by coset enumeration, the eigenvector / translate-basis / quotient
//! constructions of the case analysis are rebuilt in exact cyclotomic
//! arithmetic, and each claim (action tables, fixed-field generators, module
//! splittings, linearizations) is checked symbolically. The outcome is a
//! machine-readable certificate per (family, p, n) instance.
//!
//! Module map:
//! * [`intmat`] — integer matrices, Smith/Hermite normal forms, lattice solves
//! * [`cyclo`] — roots of unity, Q(zeta_m) arithmetic, Z[omega] = Z[T]/Phi_p
//! * [`fpgroups`] — family presentations, coset enumeration, permutation groups
//! * [`regrep`] — vectors in the regular representation and monomial tables
//! * [`monomial`] — monomial actions on Laurent lattices, fixed lattices
//! * [`ratfn`] — exact multivariate rational functions and substitutions
//! * [`zmodule`] — Z[pi]-module splitting machinery
//! * [`cert`] — case scripts, theorem gates, certificates, reports

pub mod cert;
pub mod cyclo;
pub mod fpgroups;
pub mod intmat;
pub mod monomial;
pub mod ratfn;
pub mod regrep;
pub mod zmodule;

pub use cert::{run_all, run_case, Certificate, Report, RunConfig};
pub use fpgroups::{FamilySpec, Presentation, Theorem};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of range for family {family} of theorem {theorem}: {detail}")]
    ParamRange {
        theorem: String,
        family: u32,
        detail: String,
    },
    #[error("coset enumeration exceeded the cap of {cap} cosets")]
    CosetLimit { cap: usize },
    #[error("coset table left incomplete; the presentation does not define a finite group within bounds")]
    IncompleteEnumeration,
    #[error("relator {relator} does not act trivially on the enumerated cosets")]
    RelatorViolation { relator: String },
    #[error("eigenvector collapsed to zero; wrong character choice")]
    DegenerateEigenvector,
    #[error("image of {var} under {gen} is not a scalar multiple of a basis vector")]
    NotMonomial { gen: String, var: String },
    #[error("linear dependence among translates: {detail}")]
    Dependence { detail: String },
    #[error("denominator vanishes identically after substitution")]
    DegenerateSubstitution,
    #[error("span of the requested basis is not stable under generator {gen}")]
    UnstableSpan { gen: String },
    #[error("action is not standardizable: {detail}")]
    NotStandardizable { detail: String },
    #[error("structural check failed: {detail}")]
    Structural { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
