//! Exact computer algebra for Hermitian lattices over imaginary quadratic
//! fields and the modular forms attached to their unitary groups.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`] — arithmetic in F = Q(sqrt d) and its ring of integers;
//! * [`linalg`] — exact rational/field linear algebra and Smith normal form;
//! * [`hermlat`] — Hermitian lattices of signature (n,1), trace forms,
//!   duals, discriminant groups, and vector enumeration;
//! * [`reflections`] — unitary reflections, lemma-based classification and
//!   brute-force membership;
//! * [`formal`] — coefficient rings: exact rationals and formal-constant
//!   polynomial extensions with rewrite rules;
//! * [`qseries`] — truncated q-expansions (eta, Eisenstein series, the Serre
//!   derivative, named level-2/3 forms);
//! * [`taylorforms`] — Taylor-series models of unitary modular forms and the
//!   modular Jacobian;
//! * [`embed`] — the complex structure on the trace lattice, U(V) membership,
//!   holomorphic splitting, and tube-series restriction;
//! * [`hp`] — fixed-point evaluation of pi, square roots and exponentials;
//! * [`freealg`] — machine-readable generator/relation tables with automated
//!   weight, divisibility and Hilbert-series verification.
//!
//! Series and Taylor forms are generic over the coefficient ring through the
//! [`formal::Coeff`] trait; the concrete instantiations used throughout are
//! exported as [`RationalSeries`] and [`FormalSeries`].

pub mod embed;
pub mod field;
pub mod formal;
pub mod freealg;
pub mod hermlat;
pub mod hp;
pub mod linalg;
pub mod qseries;
pub mod reflections;
pub mod taylorforms;

pub use field::{FieldElement, QuadraticField, UnitElement};
pub use formal::{Coeff, FormalPoly, RelationSet};
pub use hermlat::HermitianLattice;
pub use qseries::FourierSeries;
pub use taylorforms::TaylorForm;

/// q-series with exact rational coefficients.
pub type RationalSeries = qseries::FourierSeries<num::BigRational>;
/// q-series with coefficients in a formal-constant extension of Q.
pub type FormalSeries = qseries::FourierSeries<formal::FormalPoly>;
/// Taylor form with exact rational coefficients.
pub type RationalTaylorForm = taylorforms::TaylorForm<num::BigRational>;
/// Taylor form with formal-constant coefficients.
pub type FormalTaylorForm = taylorforms::TaylorForm<formal::FormalPoly>;
