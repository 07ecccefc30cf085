//! Runs to stable models and back.

use std::collections::{BTreeSet, HashSet};

use super::{Constant, EncodingError, EncodingInstance};
use crate::logic::eval::reduct_least_model;
use crate::logic::GroundAtom;
use crate::symbol::Sym;
use crate::turing::{is_valid_run, Configuration, Direction, Instruction, Run, SymbolId};

/// Predicates that occur under negation in the transition program. A
/// candidate model is stable iff the least model of its reduct agrees with it
/// on these.
const NEGATED: [(&str, usize); 4] = [("otherInstr", 6), ("instr_def", 1), ("a", 0), ("completion", 0)];

fn is_negated(a: &GroundAtom) -> bool {
    NEGATED.iter().any(|&(p, n)| a.pred.as_str() == p && a.args.len() == n)
}

/// The stable model corresponding to a valid run.
///
/// The negated part of the model is fixed by the run: `completion`, every
/// `instr_def(t)`, and `otherInstr(x, t)` for every well-typed instruction
/// tuple `x` other than the one executed at `t`. The rest is the least model
/// of the reduct with respect to that guess, and the guess is confirmed by
/// checking that the least model reproduces it and decodes back to the run.
pub fn run_to_model(inst: &EncodingInstance, run: &Run) -> Result<BTreeSet<GroundAtom>, EncodingError> {
    let m = inst.machine();
    if !is_valid_run(m, inst.poly(), inst.input(), run) {
        return Err(EncodingError::InvalidRun("not a valid run of the instance".into()));
    }
    let mut guess: HashSet<GroundAtom> = HashSet::new();
    guess.insert(GroundAtom::new("completion", []));
    let dirs: Vec<Sym> = Direction::ALL.iter().map(|&d| EncodingInstance::dir_const(d)).collect();
    for (t, c) in run.configs.iter().enumerate() {
        let time = inst.int_const(t);
        guess.insert(GroundAtom::from_syms(Sym::new("instr_def"), [time]));
        let chosen = instr_args(inst, &c.instr);
        for s in m.states() {
            for q in m.tape_alphabet() {
                for s1 in m.states() {
                    for q1 in m.tape_alphabet() {
                        for &d in &dirs {
                            let args = [
                                inst.state_const(s),
                                inst.symbol_const(q),
                                inst.state_const(s1),
                                inst.symbol_const(q1),
                                d,
                            ];
                            if args != chosen {
                                guess.insert(GroundAtom::from_syms(
                                    Sym::new("otherInstr"),
                                    args.into_iter().chain([time]),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    let model = reduct_least_model(&inst.program(), |a| guess.contains(a))?;
    let negated: Vec<&GroundAtom> = model.iter().filter(|a| is_negated(a)).collect();
    if negated.len() != guess.len() || !negated.iter().all(|a| guess.contains(*a)) {
        return Err(EncodingError::InvalidRun("the reduct does not reproduce the run's negated atoms".into()));
    }
    if model_to_run(inst, &model)? != *run {
        return Err(EncodingError::InvalidRun("the model decodes to a different run".into()));
    }
    Ok(model)
}

fn instr_args(inst: &EncodingInstance, i: &Instruction) -> [Sym; 5] {
    [
        inst.state_const(i.state),
        inst.symbol_const(i.read),
        inst.state_const(i.next),
        inst.symbol_const(i.write),
        EncodingInstance::dir_const(i.dir),
    ]
}

/// Reads the run off a stable model: per time point the unique `instr` atom,
/// the unique `position` atom, and per cell the unique `tape` atom. One pass
/// over the atoms.
pub fn model_to_run<'a>(
    inst: &EncodingInstance,
    model: impl IntoIterator<Item = &'a GroundAtom>,
) -> Result<Run, EncodingError> {
    let p = inst.horizon();
    let mut instr: Vec<Vec<Instruction>> = vec![Vec::new(); p + 1];
    let mut position: Vec<Vec<usize>> = vec![Vec::new(); p + 1];
    let mut tape: Vec<Vec<Vec<SymbolId>>> = vec![vec![Vec::new(); p]; p + 1];
    let mut completion = false;

    let bad = |a: &GroundAtom| EncodingError::MalformedModel(format!("ill-typed atom {a}"));
    let int = |c: Sym, bound: usize| match inst.decode_const(c) {
        Some(Constant::Int(i)) if i < bound => Some(i),
        _ => None,
    };
    let state = |c: Sym| match inst.decode_const(c) {
        Some(Constant::State(s)) => Some(s),
        _ => None,
    };
    let symbol = |c: Sym| match inst.decode_const(c) {
        Some(Constant::Symbol(x)) => Some(x),
        _ => None,
    };
    for a in model {
        match (a.pred.as_str(), a.args.as_slice()) {
            ("completion", []) => completion = true,
            ("instr", &[s, q, s1, q1, d, t]) => {
                let dir = match inst.decode_const(d) {
                    Some(Constant::Dir(d)) => d,
                    _ => return Err(bad(a)),
                };
                let i = (|| {
                    Some(Instruction { state: state(s)?, read: symbol(q)?, next: state(s1)?, write: symbol(q1)?, dir })
                })()
                .ok_or_else(|| bad(a))?;
                instr[int(t, p + 1).ok_or_else(|| bad(a))?].push(i);
            }
            ("position", &[k, t]) => {
                let k = int(k, p).ok_or_else(|| bad(a))?;
                position[int(t, p + 1).ok_or_else(|| bad(a))?].push(k);
            }
            ("tape", &[k, x, t]) => {
                let k = int(k, p).ok_or_else(|| bad(a))?;
                let x = symbol(x).ok_or_else(|| bad(a))?;
                tape[int(t, p + 1).ok_or_else(|| bad(a))?][k].push(x);
            }
            _ => {}
        }
    }
    if !completion {
        return Err(EncodingError::MalformedModel("completion is missing".into()));
    }
    let mut configs = Vec::with_capacity(p + 1);
    for t in 0..=p {
        let [i] = instr[t][..] else {
            return Err(EncodingError::MalformedModel(format!("{} instr atoms at time {t}", instr[t].len())));
        };
        let [head] = position[t][..] else {
            return Err(EncodingError::MalformedModel(format!("{} position atoms at time {t}", position[t].len())));
        };
        let cells = tape[t]
            .iter()
            .enumerate()
            .map(|(k, xs)| match xs[..] {
                [x] => Ok(x),
                _ => Err(EncodingError::MalformedModel(format!("{} tape atoms for cell {k} at time {t}", xs.len()))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        configs.push(Configuration { instr: i, tape: cells, head });
    }
    Ok(Run { configs })
}
