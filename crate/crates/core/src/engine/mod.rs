//! Theorem procedures: on-shell reduction, ideal decompositions, the
//! quasi-Noether first and second theorems, triviality and the
//! subset-variable flux decomposition.

mod ansatz;
mod first;
mod law;
mod reduce;
mod second;
mod system;

pub use ansatz::{multiplier_search, MultiplierAnsatz};
pub use first::{
    characteristic_from_fluxes, check_alternative_lagrangian, equivalent_characteristics,
    first_theorem_quasi, first_theorem_variational, is_symmetry, law_from_combination,
    QuasiNoetherDerivation, SymmetryCheck,
};
pub use law::{ConservationLaw, DeltaCombination, DifferentialIdentity};
pub use reduce::{
    ideal_decompose, ideal_decompose_capped, on_shell_reduce, on_shell_reduce_capped,
    reduce_with_constraints, IdealDecomposition,
};
pub use second::{
    identity_for_function, second_theorem_identity, subset_variable_theorem, triviality_classify,
    FluxDecomposition, SubsetTheoremOutcome, Triviality, TrivialityReport,
};
pub use system::DifferentialSystem;

use crate::expr::{Expr, JetAtom};
use crate::jet::ReconstructError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("equation {equation} is not linear in any admissible leading atom")]
    RankingIncomplete { equation: usize },
    #[error("rewriting {atom:?} needs a derivative beyond the order cap {cap}")]
    CapExceeded { atom: JetAtom, cap: usize },
    #[error("on-shell reduction did not reach a fixed point")]
    NoFixedPoint,
    #[error("leading atom {0:?} occurs inside a function or a negative power")]
    AtomInFunction(JetAtom),
    #[error("invalid equation name `{0}`")]
    BadEquationName(String),
    #[error("shape mismatch: expected {0}")]
    Shape(&'static str),
    #[error("not quasi-Noether: Euler operators do not vanish on-shell")]
    NotQuasiNoether(Vec<Expr>),
    #[error("not a symmetry: the prolonged field does not annihilate the system on-shell")]
    NotASymmetry(Vec<Expr>),
    #[error("alternative Lagrangian differs from the multiplier combination")]
    MultiplierMismatch(Expr),
    #[error("not a variational symmetry: the variation of the Lagrangian is not a divergence")]
    NotVariationalSymmetry(Vec<Expr>),
    #[error("supplied fluxes do not have the variation of the Lagrangian as divergence")]
    FluxMismatch(Expr),
    #[error("not conserved: divergence does not vanish on-shell")]
    NotConserved(Expr),
    #[error("identity from arbitrary function `{function}` fails")]
    IdentityFails { function: String, residue: Expr },
    #[error("not linear and homogeneous in arbitrary function `{0}`")]
    NotLinearInFunction(String),
    #[error("arbitrary function `{0}` has the wrong set of dependencies for this theorem")]
    FunctionScope(String),
    #[error("unknown arbitrary function `{0}`")]
    UnknownFunction(String),
    #[error("conservation law carries no arbitrary function")]
    NoArbitraryFunction,
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
}
