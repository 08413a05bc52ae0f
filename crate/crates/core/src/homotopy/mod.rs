//! Homotopy operators on the diagonal 2-chain blocks and the exactness certifier.

mod certificate;
mod descent;
mod krylov;
mod operators;
mod strata;
mod structure;

pub use certificate::{certify_exact, certify_exact_in, check_certificate, BlockId, ExactnessCertificate};
pub use descent::{descent_product, structured_descent, DescentPhase, DescentStep, DescentTrace};
pub use krylov::{annihilating_polynomial, annihilating_polynomial_in, Poly};
pub use operators::{capital_phi, d_capital_phi, phi_op, psi, psi_word, PsiBlock};
pub use strata::{classify_type, project_stratum, strata_present, PairStratum, Stratification, WordType};
pub use structure::{stratum_basis, verify_eigen_lemma, verify_psi_structure, EigenReport, PsiStructureReport, PsiViolation};
