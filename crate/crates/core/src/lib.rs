//! Function-free logic programs under the stable-model semantics, and a
//! uniform coding of nondeterministic polynomial-time Turing machines into
//! them.
//!
//! The pipeline is: describe a machine ([`turing`]), build its extensional
//! database and join it with the fixed transition program ([`encoding`]),
//! ground the result ([`grounder`]), enumerate stable models ([`solver`]),
//! and decode each model back into an accepting run.

pub mod encoding;
pub mod grounder;
pub mod logic;
pub mod solver;
pub mod symbol;
pub mod text;
pub mod turing;

pub use logic::{
    gl_reduct, ground_instance, ground_program, is_stable, is_supported, least_model, tp_step, Atom, AtomId, Clause,
    GroundAtom, GroundProgram, GroundProgramBuilder, Interpretation, LogicError, PredClass, PredKey, Program, Term,
};
pub use symbol::Sym;

pub use encoding::{
    build_edb, model_to_run, p_trg, run_to_model, verify_bijection, BijectionReport, EncodingError, EncodingInstance,
    TrgProgram,
};
pub use grounder::{check_domain_restricted, naive_ground_live, relational_ground, EdbSplit, GroundError};
pub use solver::{
    enumerate_stable_models, enumerate_supported_models, enumerate_supported_models_bruteforce, is_antichain, ModelSet,
    SolveError, SolveLimits,
};
pub use text::{format_runs, parse_machine, parse_program, MachineSpec, TextError};
pub use turing::{
    enumerate_valid_runs, initial_configuration_tape, is_valid_run, successors, Configuration, Direction, Instruction,
    Machine, Run, RuntimePolynomial, StateId, SymbolId, TuringError,
};
