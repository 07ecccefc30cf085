#![allow(dead_code)]

use proptest::prelude::*;
use ulp_core::{Direction, Instruction, Machine, RuntimePolynomial, StateId, SymbolId};

/// A small machine with its runtime bound and input word.
#[derive(Clone, Debug)]
pub struct Instance {
    pub machine: Machine,
    pub poly: RuntimePolynomial,
    pub input: Vec<SymbolId>,
}

pub fn machine(states: usize, letters: usize, delta: &[(usize, usize, usize, usize, usize)]) -> Machine {
    let mut names = vec!["s0".to_string()];
    names.extend((1..states - 1).map(|i| format!("q{i}")));
    names.push("f".to_string());
    let alphabet = (0..letters).map(|i| i.to_string()).collect();
    let mut m = Machine::new(names, alphabet, "B", "s0", "f").unwrap();
    for &(q, a, q1, a1, d) in delta {
        let i = Instruction {
            state: StateId(q as u16),
            read: SymbolId(a as u16),
            next: StateId(q1 as u16),
            write: SymbolId(a1 as u16),
            dir: Direction::ALL[d],
        };
        m.add_instruction(i).unwrap();
    }
    m
}

/// Random instances with `|Q| <= 4`, `|Σ| <= 2`, `|σ| <= 3` and a constant
/// bound `p <= max_p`.
pub fn instances(max_p: u64) -> impl Strategy<Value = Instance> {
    (2usize..=4, 1usize..=2).prop_flat_map(move |(nq, ns)| {
        let gamma = ns + 1;
        let instr = (0..nq, 0..gamma, 0..nq, 0..gamma, 0..3usize);
        (prop::collection::vec(instr, 1..=8), prop::collection::vec(0..ns, 0..=3), 0..=max_p).prop_map(
            move |(delta, input, extra)| {
                let p = (input.len() as u64).max(1) + extra;
                Instance {
                    machine: machine(nq, ns, &delta),
                    poly: RuntimePolynomial::constant(p.min(max_p.max(input.len() as u64))),
                    input: input.into_iter().map(|x| SymbolId(x as u16)).collect(),
                }
            },
        )
    })
}
