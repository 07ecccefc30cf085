//! The instance-specific facts.

use std::collections::HashMap;

use super::{Constant, EncodingError, EncodingInstance};
use crate::logic::GroundAtom;
use crate::symbol::Sym;
use crate::turing::{initial_configuration_tape, Direction, Machine, RuntimePolynomial, SymbolId};

/// Builds the extensional database for `m` (normalized first), runtime bound
/// `p` and input word `input`.
pub fn build_edb(m: &Machine, p: &RuntimePolynomial, input: &[SymbolId]) -> Result<EncodingInstance, EncodingError> {
    let machine = m.normalize();
    let tape = initial_configuration_tape(&machine, p, input)?;
    let horizon = tape.len();

    let states: Vec<Sym> = machine.state_names().iter().map(|s| Sym::new(&format!("st_{s}"))).collect();
    let symbols: Vec<Sym> =
        machine.tape_alphabet().map(|x| Sym::new(&format!("sym_{}", machine.symbol_name(x)))).collect();
    let ints: Vec<Sym> = (0..=horizon).map(|i| Sym::new(&i.to_string())).collect();
    let dirs: Vec<Sym> = Direction::ALL.iter().map(|d| Sym::new(d.name())).collect();

    let mut lookup = HashMap::new();
    for (i, &c) in states.iter().enumerate() {
        lookup.insert(c, Constant::State(crate::turing::StateId(i as u16)));
    }
    for (i, &c) in symbols.iter().enumerate() {
        lookup.insert(c, Constant::Symbol(SymbolId(i as u16)));
    }
    for (i, &c) in ints.iter().enumerate() {
        lookup.insert(c, Constant::Int(i));
    }
    for (&d, &c) in Direction::ALL.iter().zip(&dirs) {
        lookup.insert(c, Constant::Dir(d));
    }

    let mut facts = Vec::new();
    let mut fact = |pred: &str, args: &[Sym]| facts.push(GroundAtom::from_syms(Sym::new(pred), args.iter().copied()));
    for &s in &states {
        fact("state", &[s]);
    }
    for &x in &symbols {
        fact("symb", &[x]);
    }
    let st = |s: crate::turing::StateId| states[s.0 as usize];
    let sy = |x: SymbolId| symbols[x.0 as usize];
    for i in machine.delta() {
        fact("delta", &[st(i.state), sy(i.read), st(i.next), sy(i.write), Sym::new(i.dir.name())]);
    }
    for i in 0..horizon {
        fact("succ", &[ints[i], ints[i + 1]]);
    }
    for &t in &ints {
        fact("time", &[t]);
    }
    for (k, &x) in tape.iter().enumerate() {
        fact("cell", &[ints[k]]);
        fact("data", &[ints[k], sy(x)]);
    }
    for &d in &dirs {
        fact("dir", &[d]);
    }
    fact("i_position", &[ints[0]]);
    let compared: Vec<Sym> = states.iter().chain(&symbols).chain(&ints).copied().collect();
    for &a in &compared {
        fact("eq", &[a, a]);
        for &b in &compared {
            if a != b {
                fact("neq", &[a, b]);
            }
        }
    }
    for &a in &dirs {
        for &b in &dirs {
            if a != b {
                fact("neqDir", &[a, b]);
            }
        }
    }
    fact("moveLeft", &[dirs[0]]);
    fact("moveRight", &[dirs[1]]);
    fact("stay", &[dirs[2]]);
    fact("zero", &[ints[0]]);
    fact("initState", &[st(machine.start())]);
    fact("finalState", &[st(machine.final_state())]);
    fact("lastTime", &[ints[horizon]]);
    fact("lastCell", &[ints[horizon - 1]]);
    facts.sort();
    facts.dedup();

    Ok(EncodingInstance {
        machine,
        poly: p.clone(),
        input: input.to_vec(),
        horizon,
        edb: facts,
        states,
        symbols,
        ints,
        lookup,
    })
}
