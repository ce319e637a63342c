//! Hilbert-style derivations in the hybrid betweenness logics.
//!
//! Axiom lines are checked by matching a schema or, for `CT`, by a truth
//! table over the line's atoms. Rule lines are rebuilt from their cited
//! premises with the side conditions of `Name` and `Paste` enforced.

mod derivation;
mod probe;
mod schema;
mod tautology;

use thiserror::Error;

pub use derivation::{check_derivation, parse_substitution, Derivation, Justification, ProofLine};
pub use probe::{probe_carrier, soundness_probe, sqrt2_split, ProbeCounterexample, ProbeReport, PROBE_FRAMES};
pub use schema::{axiom_names, match_schema, schema, Logic, Rule, Schema, SideCondition, RULES};
pub use tautology::{is_tautology, MAX_ATOMS};

use crate::dense::DenseError;
use crate::finite::FiniteError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown axiom '{0}'")]
    UnknownAxiom(String),
    #[error("unknown rule '{0}'")]
    UnknownRule(String),
    #[error("unknown logic '{0}' (expected Bh or Bh+)")]
    UnknownLogic(String),
    #[error("axiom {axiom} is not part of {logic}")]
    NotInLogic { axiom: String, logic: Logic },
    #[error("line {line}: cites line {cited}, which does not come before it")]
    ForwardReference { line: usize, cited: usize },
    #[error("line {line}: cites line {cited}, which does not exist")]
    MissingPremise { line: usize, cited: usize },
    #[error("line {line}: {rule} takes {expected} premise(s), {found} given")]
    PremiseCount {
        line: usize,
        rule: Rule,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: not an instance of {schema}")]
    BadMatch { line: usize, schema: String },
    #[error("line {line}: not a classical tautology")]
    NotTautology { line: usize },
    #[error("line {line}: more than {max} propositional atoms")]
    TooManyAtoms { line: usize, max: usize },
    #[error("line {line}: bad premise shape for {rule}: {message}")]
    BadPremiseShape { line: usize, rule: Rule, message: String },
    #[error("line {line}: side condition of {rule} violated: {message}")]
    SideCondition { line: usize, rule: Rule, message: String },
    #[error("line {line}: the conclusion is not a substitution instance of the premise")]
    SubstitutionMismatch { line: usize },
    #[error("{0} is a schema family and cannot be probed")]
    NotProbeable(String),
    #[error("bad carrier: {0}")]
    BadCarrier(String),
    #[error(transparent)]
    Dense(#[from] DenseError),
    #[error(transparent)]
    Finite(#[from] FiniteError),
}
