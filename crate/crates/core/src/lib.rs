//! Exact Chevalley–Eilenberg cohomology of the Lie algebra of Hamiltonian
//! vector fields on the plane, restricted to Sp-basic cochains.
//!
//! Arithmetic is exact over the rationals throughout. The crate builds the
//! weight-graded complexes, their differentials, Betti numbers and explicit
//! cohomology representatives, and ships transcribed reference data that
//! can be replayed against the computation.

pub mod cochain;
pub mod cohomology;
pub mod complex;
pub mod error;
pub mod groebner;
pub mod ham;
pub mod linalg;
pub mod paper_data;

pub use cochain::{apply_differential, apply_sl2, Cochain, GenOrder, WedgeMonomial};
pub use complex::{
    coordinates, differential_matrix, enumerate_monomials, sp_basic_subspace, wedge_omega,
    CochainComplex, GradedBasis,
};
pub use error::{Error, Result};
pub use groebner::{
    gb_linear, kernel_via_normal_form, normal_form, parse_form, parse_form_list, quotient_gb,
    GroebnerBasis, LinearForm, VarOrder,
};
pub use ham::{
    bracket_coefficient, generators_of, poisson_bracket, sl2_coadjoint, AlgebraVariant, Generator,
    HamElement, HamMonomial, QuadraticGenerator,
};
pub use linalg::{nullspace_basis, rank, rref, QMatrix, QVector, Rational, Rref};
