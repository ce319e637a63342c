//! Explicit finite ternary frames and models.
//!
//! Worlds are `0..n`. Axioms are checked by exhaustive quantification,
//! formulas are evaluated on world bitsets, and frame validity is decided by
//! enumerating valuations under an explicit budget.

mod axioms;
mod constructions;
mod counterexample;
mod eval;
mod frame;
mod order;

use thiserror::Error;

pub use axioms::{check_axiom, AxiomId, CheckReport, AXIOM_IDS};
pub use constructions::{
    check_b9_finite, check_b9_finite_bounded, check_bounded_morphism, disjoint_union, generated_subframe, m_relation,
    ultrafilter_extension_finite, B9Report, Coord, MorphismReport, MorphismSpec, UeReport,
};
pub use counterexample::{counterexample, Construction, Counterexample, Verification, COUNTEREXAMPLE_NAMES};
pub use eval::{
    eval_finite, extension_finite, frame_valid_finite, frame_valid_finite_with_budget, ValidityReport, DEFAULT_BUDGET,
    MAX_WORLDS,
};
pub use frame::{order_to_betweenness, FiniteModel, Frame3, OrderFrame};
pub use order::{betweenness_to_order, check_order_axiom, OrderAxiom};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FiniteError {
    #[error("unbound propositional variable '{0}'")]
    UnboundProp(String),
    #[error("unbound nominal '{0}'")]
    UnboundNominal(String),
    #[error("world {world} is out of range (frame has {n} worlds)")]
    WorldOutOfRange { world: usize, n: usize },
    #[error("frame has {n} worlds, more than the supported {max}")]
    TooManyWorlds { n: usize, max: usize },
    #[error("enumeration needs {needed} valuations, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("frame has no worlds")]
    EmptyFrame,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown axiom '{0}'")]
    UnknownAxiom(String),
    #[error("frame violates {axiom} at {witness:?}")]
    Precondition { axiom: String, witness: Vec<usize> },
    #[error("{0}")]
    Invalid(String),
}
