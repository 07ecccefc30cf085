//! The uniform coding of a machine, runtime bound and input as a logic
//! program: an instance-specific extensional database joined with one fixed
//! transition program, and the translations between valid runs and stable
//! models.
//!
//! Constants: time points and cells are numerals; a state `q` becomes
//! `st_q`, a tape symbol `x` becomes `sym_x`; directions are `l`, `r` and
//! `lambda`.

mod decode;
mod edb;
mod trg;
mod verify;

use std::collections::HashMap;

use thiserror::Error;

use crate::grounder::{relational_ground, EdbSplit, GroundError};
use crate::logic::{Clause, GroundAtom, GroundProgram, LogicError, Program};
use crate::symbol::Sym;
use crate::turing::{Direction, Machine, RuntimePolynomial, StateId, SymbolId, TuringError};

pub use decode::{model_to_run, run_to_model};
pub use edb::build_edb;
pub use trg::{p_trg, TrgProgram, GROUP_SIZES};
pub use verify::{compare_runs_and_models, verify_bijection, BijectionReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodingError {
    #[error(transparent)]
    Machine(#[from] TuringError),
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("invalid run: {0}")]
    InvalidRun(String),
    #[error("malformed model: {0}")]
    MalformedModel(String),
}

/// What a program constant stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    State(StateId),
    Symbol(SymbolId),
    Int(usize),
    Dir(Direction),
}

/// The extensional database for one `(M, p, σ)` with the dictionaries needed
/// to decode models.
#[derive(Clone, Debug)]
pub struct EncodingInstance {
    machine: Machine,
    poly: RuntimePolynomial,
    input: Vec<SymbolId>,
    horizon: usize,
    edb: Vec<GroundAtom>,
    states: Vec<Sym>,
    symbols: Vec<Sym>,
    ints: Vec<Sym>,
    lookup: HashMap<Sym, Constant>,
}

impl EncodingInstance {
    /// The normalized machine.
    pub fn machine(&self) -> &Machine {
        &self.machine
    }

    pub fn poly(&self) -> &RuntimePolynomial {
        &self.poly
    }

    pub fn input(&self) -> &[SymbolId] {
        &self.input
    }

    /// `p(n)`.
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// The facts, sorted.
    pub fn edb(&self) -> &[GroundAtom] {
        &self.edb
    }

    pub fn edb_program(&self) -> Program {
        Program::new(self.edb.iter().map(|a| Clause::fact(a.to_atom())))
    }

    /// `edb ∪ P_Trg`.
    pub fn program(&self) -> Program {
        let mut p = self.edb_program();
        p.extend(p_trg().program().clauses().cloned());
        p
    }

    /// Relational grounding of [`EncodingInstance::program`] under the
    /// automatic split.
    pub fn ground(&self) -> Result<GroundProgram, GroundError> {
        let program = self.program();
        relational_ground(&program, &EdbSplit::auto(&program))
    }

    pub fn state_const(&self, s: StateId) -> Sym {
        self.states[s.0 as usize]
    }

    pub fn symbol_const(&self, x: SymbolId) -> Sym {
        self.symbols[x.0 as usize]
    }

    /// Time point or cell `i`, for `0 ≤ i ≤ p(n)`.
    pub fn int_const(&self, i: usize) -> Sym {
        self.ints[i]
    }

    pub fn dir_const(d: Direction) -> Sym {
        Sym::new(d.name())
    }

    pub fn decode_const(&self, c: Sym) -> Option<Constant> {
        self.lookup.get(&c).copied()
    }
}
