//! Textual formats: logic programs, machine description files, and run
//! tables.

mod machine;
mod program;
mod runs;

use thiserror::Error;

pub use machine::{parse_machine, MachineSpec};
pub use program::parse_program;
pub use runs::{format_run, format_runs};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}: {msg}")]
    Semantic { line: usize, msg: String },
}
