//! DATALOG¬ syntax and semantics: grounding, the Gelfond–Lifschitz reduct,
//! least models, and stable/supported model checks.

pub mod eval;
pub mod ground;
pub mod semantics;
pub mod syntax;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("variable {var} has no binding")]
    UnboundVariable { var: String },
    #[error("program is not Horn: some clause has a negative body")]
    NotHorn,
}

pub use ground::{
    ground_instance, ground_program, AtomId, AtomTable, GroundClause, GroundProgram, GroundProgramBuilder,
};
pub use semantics::{gl_reduct, is_stable, is_supported, least_model, tp_step, Interpretation};
pub use syntax::{Atom, Clause, GroundAtom, PredClass, PredKey, Program, Term};
