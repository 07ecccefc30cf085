//! Nondeterministic Turing machines on a tape truncated to `p(n)` cells, the
//! one-step transition relation between configurations, and an exhaustive
//! enumerator of valid runs.
//!
//! Conventions: a configuration carries the instruction about to execute, a
//! run has exactly `p(n) + 1` configurations, and a run is valid when its last
//! instruction is the padding instruction `(f, a, f, a, λ)`. On a normalized
//! machine the final state has only padding instructions, so a run that
//! reaches `f` stays there with the tape and head frozen.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

/// Default ceiling on `p(n)` for run enumeration.
pub const DEFAULT_RUN_BOUND: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TuringError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown tape symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{0}` is declared twice")]
    DuplicateName(String),
    #[error("`{0}` is not a valid name: use letters, digits and `_`")]
    InvalidName(String),
    #[error("the blank symbol `{0}` may not be an input symbol")]
    BlankInAlphabet(String),
    #[error("input symbol `{0}` is not in the input alphabet")]
    InvalidInput(String),
    #[error("polynomial coefficients must be nonempty with a nonzero leading coefficient")]
    InvalidPolynomial,
    #[error("p(n) = 0: the tape must have at least one cell")]
    EmptyTape,
    #[error("input of length {n} does not fit on a tape of {horizon} cells")]
    InputTooLong { n: usize, horizon: usize },
    #[error("p(n) = {horizon} exceeds the enumeration bound {bound}")]
    BoundExceeded { horizon: usize, bound: usize },
    #[error("machine is not normalized: the final state must have exactly the padding instructions")]
    NotNormalized,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct StateId(pub u16);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SymbolId(pub u16);

/// Head motion. Declaration order (`l`, `r`, `λ`) is the enumeration order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Direction {
    Left,
    Right,
    Stay,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::Left, Direction::Right, Direction::Stay];

    /// Textual spelling; `λ` is written `lambda`.
    pub fn name(self) -> &'static str {
        match self {
            Direction::Left => "l",
            Direction::Right => "r",
            Direction::Stay => "lambda",
        }
    }

    pub fn parse(s: &str) -> Option<Direction> {
        match s {
            "l" => Some(Direction::Left),
            "r" => Some(Direction::Right),
            "lambda" | "λ" => Some(Direction::Stay),
            _ => None,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A quintuple `(q, a, q1, a1, d)`: in state `q` reading `a`, write `a1`,
/// enter `q1` and move `d`. The derived order compares `(q, a)` first, then
/// `(q1, a1, d)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Instruction {
    pub state: StateId,
    pub read: SymbolId,
    pub next: StateId,
    pub write: SymbolId,
    pub dir: Direction,
}

impl Instruction {
    pub fn padding(f: StateId, a: SymbolId) -> Instruction {
        Instruction { state: f, read: a, next: f, write: a, dir: Direction::Stay }
    }
}

/// `(Q, Σ, Γ = Σ ∪ {B}, D, δ, s0, f)`. Symbol ids `0..|Σ|` are the input
/// symbols in declaration order and id `|Σ|` is the blank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Machine {
    states: Vec<String>,
    alphabet: Vec<String>,
    blank: String,
    start: StateId,
    final_state: StateId,
    delta: BTreeSet<Instruction>,
}

impl Machine {
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        blank: &str,
        start: &str,
        final_state: &str,
    ) -> Result<Machine, TuringError> {
        for name in states.iter().chain(&alphabet).map(String::as_str).chain([blank]) {
            if !is_name(name) {
                return Err(TuringError::InvalidName(name.to_owned()));
            }
        }
        let mut seen = HashSet::new();
        for s in &states {
            if !seen.insert(s.as_str()) {
                return Err(TuringError::DuplicateName(s.clone()));
            }
        }
        let mut seen = HashSet::new();
        for x in &alphabet {
            if x == blank {
                return Err(TuringError::BlankInAlphabet(blank.to_owned()));
            }
            if !seen.insert(x.as_str()) {
                return Err(TuringError::DuplicateName(x.clone()));
            }
        }
        let find = |name: &str| {
            states
                .iter()
                .position(|s| s == name)
                .map(|i| StateId(i as u16))
                .ok_or_else(|| TuringError::UnknownState(name.to_owned()))
        };
        let start = find(start)?;
        let final_state = find(final_state)?;
        Ok(Machine { states, alphabet, blank: blank.to_owned(), start, final_state, delta: BTreeSet::new() })
    }

    pub fn add_instruction(&mut self, i: Instruction) -> Result<(), TuringError> {
        for s in [i.state, i.next] {
            if s.0 as usize >= self.states.len() {
                return Err(TuringError::UnknownState(format!("#{}", s.0)));
            }
        }
        for a in [i.read, i.write] {
            if a.0 as usize > self.alphabet.len() {
                return Err(TuringError::UnknownSymbol(format!("#{}", a.0)));
            }
        }
        self.delta.insert(i);
        Ok(())
    }

    /// Adds `(q, a, q1, a1, d)` by name.
    pub fn add_transition(&mut self, q: &str, a: &str, q1: &str, a1: &str, d: Direction) -> Result<(), TuringError> {
        let i = Instruction {
            state: self.state_id(q)?,
            read: self.symbol_id(a)?,
            next: self.state_id(q1)?,
            write: self.symbol_id(a1)?,
            dir: d,
        };
        self.add_instruction(i)
    }

    pub fn state_id(&self, name: &str) -> Result<StateId, TuringError> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(|i| StateId(i as u16))
            .ok_or_else(|| TuringError::UnknownState(name.to_owned()))
    }

    pub fn symbol_id(&self, name: &str) -> Result<SymbolId, TuringError> {
        if name == self.blank {
            return Ok(self.blank());
        }
        self.alphabet
            .iter()
            .position(|s| s == name)
            .map(|i| SymbolId(i as u16))
            .ok_or_else(|| TuringError::UnknownSymbol(name.to_owned()))
    }

    /// Parses an input word over Σ (the blank is not allowed).
    pub fn input_word<S: AsRef<str>>(&self, word: &[S]) -> Result<Vec<SymbolId>, TuringError> {
        word.iter()
            .map(|s| {
                let id = self.symbol_id(s.as_ref()).map_err(|_| TuringError::InvalidInput(s.as_ref().to_owned()))?;
                if id == self.blank() {
                    Err(TuringError::InvalidInput(s.as_ref().to_owned()))
                } else {
                    Ok(id)
                }
            })
            .collect()
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s.0 as usize]
    }

    pub fn symbol_name(&self, a: SymbolId) -> &str {
        if a == self.blank() {
            &self.blank
        } else {
            &self.alphabet[a.0 as usize]
        }
    }

    pub fn states(&self) -> impl ExactSizeIterator<Item = StateId> {
        (0..self.states.len()).map(|i| StateId(i as u16))
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn input_alphabet(&self) -> impl ExactSizeIterator<Item = SymbolId> {
        (0..self.alphabet.len()).map(|i| SymbolId(i as u16))
    }

    pub fn input_names(&self) -> &[String] {
        &self.alphabet
    }

    /// Γ = Σ ∪ {B}, blank last.
    pub fn tape_alphabet(&self) -> impl ExactSizeIterator<Item = SymbolId> {
        (0..self.alphabet.len() + 1).map(|i| SymbolId(i as u16))
    }

    pub fn blank(&self) -> SymbolId {
        SymbolId(self.alphabet.len() as u16)
    }

    pub fn blank_name(&self) -> &str {
        &self.blank
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn final_state(&self) -> StateId {
        self.final_state
    }

    pub fn delta(&self) -> &BTreeSet<Instruction> {
        &self.delta
    }

    /// δ(q, a) in `(q1, a1, d)` order.
    pub fn instructions(&self, q: StateId, a: SymbolId) -> impl Iterator<Item = &Instruction> {
        let lo = Instruction { state: q, read: a, next: StateId(0), write: SymbolId(0), dir: Direction::Left };
        let hi =
            Instruction { state: q, read: a, next: StateId(u16::MAX), write: SymbolId(u16::MAX), dir: Direction::Stay };
        self.delta.range(lo..=hi)
    }

    /// Description size |Q| + |Γ| + |δ|.
    pub fn size(&self) -> usize {
        self.states.len() + self.alphabet.len() + 1 + self.delta.len()
    }

    /// Replaces δ(f, ·) by exactly the padding instructions `(f, a, f, a, λ)`.
    pub fn normalize(&self) -> Machine {
        let f = self.final_state;
        let mut m = self.clone();
        m.delta.retain(|i| i.state != f);
        for a in self.tape_alphabet() {
            m.delta.insert(Instruction::padding(f, a));
        }
        m
    }

    pub fn is_normalized(&self) -> bool {
        let f = self.final_state;
        let from_f: Vec<&Instruction> = self.delta.iter().filter(|i| i.state == f).collect();
        from_f.len() == self.alphabet.len() + 1 && from_f.iter().all(|i| **i == Instruction::padding(f, i.read))
    }
}

/// Machine names become parts of program constants.
fn is_name(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|c| c.is_ascii_alphanumeric() || c == b'_')
}

/// `p(n) = a_0 + a_1 n + ... + a_k n^k` with natural coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RuntimePolynomial {
    coeffs: Vec<u64>,
}

impl RuntimePolynomial {
    /// Coefficients, constant term first.
    pub fn new(coeffs: Vec<u64>) -> Result<Self, TuringError> {
        match coeffs.last() {
            None => Err(TuringError::InvalidPolynomial),
            Some(0) if coeffs.len() > 1 => Err(TuringError::InvalidPolynomial),
            Some(_) => Ok(RuntimePolynomial { coeffs }),
        }
    }

    pub fn constant(c: u64) -> Self {
        RuntimePolynomial { coeffs: vec![c] }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Saturates at `u64::MAX`.
    pub fn eval(&self, n: u64) -> u64 {
        self.coeffs.iter().rev().fold(0u64, |acc, &a| acc.saturating_mul(n).saturating_add(a))
    }

    /// Tape length `p(n)` for an input of length `n`; must hold the input and
    /// be nonempty.
    pub fn horizon(&self, n: usize) -> Result<usize, TuringError> {
        let h = usize::try_from(self.eval(n as u64)).unwrap_or(usize::MAX);
        if h == 0 {
            Err(TuringError::EmptyTape)
        } else if h < n {
            Err(TuringError::InputTooLong { n, horizon: h })
        } else {
            Ok(h)
        }
    }
}

impl fmt::Display for RuntimePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(i, &a)| a != 0 || (*i == 0 && self.coeffs.len() == 1))
            .map(|(i, a)| match i {
                0 => a.to_string(),
                1 => format!("{a}n"),
                _ => format!("{a}n^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Initial tape: the input in cells `0..n`, blanks in `n..p(n)`.
pub fn initial_configuration_tape(
    m: &Machine,
    p: &RuntimePolynomial,
    input: &[SymbolId],
) -> Result<Vec<SymbolId>, TuringError> {
    for &x in input {
        if x.0 as usize >= m.alphabet.len() {
            return Err(TuringError::InvalidInput(format!("#{}", x.0)));
        }
    }
    let h = p.horizon(input.len())?;
    let mut tape = input.to_vec();
    tape.resize(h, m.blank());
    Ok(tape)
}

/// `⟨i, S, k⟩`: the instruction about to execute, the tape, the head cell.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Configuration {
    pub instr: Instruction,
    pub tape: Vec<SymbolId>,
    pub head: usize,
}

impl Configuration {
    /// The instruction reads the symbol under the head.
    pub fn is_coherent(&self) -> bool {
        self.tape.get(self.head) == Some(&self.instr.read)
    }
}

/// Head position after executing `d` at cell `k` on a tape of `p_n` cells;
/// `None` if the move would leave the tape.
fn moved(k: usize, d: Direction, p_n: usize) -> Option<usize> {
    match d {
        Direction::Left if k != 0 => Some(k - 1),
        Direction::Right if k + 1 != p_n => Some(k + 1),
        Direction::Stay => Some(k),
        _ => None,
    }
}

/// All `D` with `c ⊢ D`: the next state is `c`'s target state, the head moves
/// as instructed unless blocked by a tape end, exactly cell `k` is rewritten,
/// and one successor exists per instruction coherent with the new head cell.
pub fn successors(m: &Machine, p_n: usize, c: &Configuration) -> Vec<Configuration> {
    let i = c.instr;
    let Some(head) = moved(c.head, i.dir, p_n) else {
        return Vec::new();
    };
    let mut tape = c.tape.clone();
    tape[c.head] = i.write;
    m.instructions(i.next, tape[head]).map(|&j| Configuration { instr: j, tape: tape.clone(), head }).collect()
}

/// `C_0 … C_{p(n)}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Run {
    pub configs: Vec<Configuration>,
}

impl Run {
    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }
}

/// Every valid run of a normalized machine on `input`, by depth-first search
/// in instruction order.
pub fn enumerate_valid_runs(
    m: &Machine,
    p: &RuntimePolynomial,
    input: &[SymbolId],
    bound: usize,
) -> Result<Vec<Run>, TuringError> {
    if !m.is_normalized() {
        return Err(TuringError::NotNormalized);
    }
    let tape = initial_configuration_tape(m, p, input)?;
    let p_n = tape.len();
    if p_n > bound {
        return Err(TuringError::BoundExceeded { horizon: p_n, bound });
    }
    let mut runs = Vec::new();
    let mut path = Vec::with_capacity(p_n + 1);
    for &i in m.instructions(m.start(), tape[0]) {
        path.push(Configuration { instr: i, tape: tape.clone(), head: 0 });
        extend(m, p_n, &mut path, &mut runs);
        path.pop();
    }
    Ok(runs)
}

fn extend(m: &Machine, p_n: usize, path: &mut Vec<Configuration>, runs: &mut Vec<Run>) {
    let last = path.last().unwrap();
    if path.len() == p_n + 1 {
        if last.instr.state == m.final_state() {
            runs.push(Run { configs: path.clone() });
        }
        return;
    }
    for next in successors(m, p_n, last) {
        path.push(next);
        extend(m, p_n, path, runs);
        path.pop();
    }
}

/// Checks every run condition: length `p(n)+1`, the start configuration,
/// membership of every instruction in δ, coherence, the one-step relation
/// between neighbours, and the padding instruction at the end.
pub fn is_valid_run(m: &Machine, p: &RuntimePolynomial, input: &[SymbolId], run: &Run) -> bool {
    let Ok(tape) = initial_configuration_tape(m, p, input) else {
        return false;
    };
    let p_n = tape.len();
    let Some(first) = run.configs.first() else {
        return false;
    };
    if run.configs.len() != p_n + 1 || first.head != 0 || first.tape != tape || first.instr.state != m.start() {
        return false;
    }
    for c in &run.configs {
        if c.tape.len() != p_n || c.head >= p_n || !c.is_coherent() || !m.delta().contains(&c.instr) {
            return false;
        }
    }
    for w in run.configs.windows(2) {
        if !step_holds(p_n, &w[0], &w[1]) {
            return false;
        }
    }
    let last = run.configs.last().unwrap().instr;
    last.state == m.final_state() && last == Instruction::padding(m.final_state(), last.read)
}

/// `c ⊢ d` for coherent configurations whose instructions are in δ.
fn step_holds(p_n: usize, c: &Configuration, d: &Configuration) -> bool {
    let i = c.instr;
    if d.instr.state != i.next || moved(c.head, i.dir, p_n) != Some(d.head) {
        return false;
    }
    c.tape.iter().zip(&d.tape).enumerate().all(|(n, (&s, &t))| if n == c.head { t == i.write } else { t == s })
        && d.instr.read == d.tape[d.head]
}
