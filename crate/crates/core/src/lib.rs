//! Exact homology of polynomial multivector fields under the Schouten bracket.
//!
//! The chain complex is the super-exterior algebra of `g = sum_i g_{i,j}`,
//! where `g_{i,j}` holds `(i+1)`-vector fields with `(j+1)`-homogeneous
//! polynomial coefficients on n-space, with the boundary built from the
//! Schouten bracket. Everything is computed over the rationals.

pub mod basis;
pub mod boundary;
pub mod chain;
pub mod error;
pub mod homology;
pub mod homotopy;
pub mod mvf;
pub mod rational;
pub mod sparse;
pub mod verify;

pub use basis::{chain_to_vector, enumerate_basis, max_arity, vector_to_chain, BasisIndex};
pub use boundary::{boundary, boundary_matrix, left_action, BoundaryMatrix};
pub use chain::{canonicalize_word, wedge_chain, weight_signature, Chain, WedgeWord, WeightSignature};
pub use error::{Error, Result};
pub use homology::{betti, euler_characteristic, scalar_dim, is_poisson, HomologyReport};
pub use mvf::{schouten_bracket, wedge_mv, DirectionSet, Generator, MonomialMV, MultiIndex, MultiVector};
pub use rational::Rational;
pub use sparse::{kernel_basis, rank_exact, SparseMatrixQ};
pub use homotopy::{
    annihilating_polynomial, capital_phi, certify_exact, check_certificate, classify_type, phi_op, project_stratum,
    psi, structured_descent, verify_psi_structure, ExactnessCertificate, PairStratum, Poly, Stratification, WordType,
};
