mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use ulp_core::{
    enumerate_valid_runs, initial_configuration_tape, is_valid_run, parse_machine, successors, Configuration,
    Direction, Instruction, Machine, Run, RuntimePolynomial, SymbolId, TuringError,
};

use common::instances;

/// Valid runs by trying every sequence of instructions and simulating it
/// directly.
fn brute_force_runs(m: &Machine, p: &RuntimePolynomial, input: &[SymbolId]) -> BTreeSet<Run> {
    let tape = initial_configuration_tape(m, p, input).unwrap();
    let p_n = tape.len();
    let delta: Vec<Instruction> = m.delta().iter().copied().collect();
    let mut runs = BTreeSet::new();
    let total = delta.len().pow(p_n as u32 + 1);
    'seq: for code in 0..total {
        let mut code = code;
        let mut tape = tape.clone();
        let mut head = 0usize;
        let mut state = m.start();
        let mut configs = Vec::new();
        for t in 0..=p_n {
            let i = delta[code % delta.len()];
            code /= delta.len();
            if i.state != state || i.read != tape[head] {
                continue 'seq;
            }
            configs.push(Configuration { instr: i, tape: tape.clone(), head });
            if t == p_n {
                break;
            }
            tape[head] = i.write;
            head = match i.dir {
                Direction::Left if head > 0 => head - 1,
                Direction::Right if head + 1 < p_n => head + 1,
                Direction::Stay => head,
                _ => continue 'seq,
            };
            state = i.next;
        }
        let last = configs.last().unwrap().instr;
        if last.state == m.final_state()
            && last.next == m.final_state()
            && last.write == last.read
            && last.dir == Direction::Stay
        {
            runs.insert(Run { configs });
        }
    }
    runs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn search_matches_brute_force(inst in instances(3)) {
        let m = inst.machine.normalize();
        let runs = enumerate_valid_runs(&m, &inst.poly, &inst.input, 12).unwrap();
        let set: BTreeSet<Run> = runs.iter().cloned().collect();
        prop_assert_eq!(set.len(), runs.len());
        prop_assert_eq!(set, brute_force_runs(&m, &inst.poly, &inst.input));
    }

    #[test]
    fn runs_are_valid_and_well_formed(inst in instances(5)) {
        let m = inst.machine.normalize();
        let runs = enumerate_valid_runs(&m, &inst.poly, &inst.input, 12).unwrap();
        let p_n = inst.poly.horizon(inst.input.len()).unwrap();
        for run in &runs {
            prop_assert!(is_valid_run(&m, &inst.poly, &inst.input, run));
            prop_assert_eq!(run.len(), p_n + 1);
            for w in run.configs.windows(2) {
                prop_assert!(w[1].is_coherent());
                prop_assert!(successors(&m, p_n, &w[0]).contains(&w[1]));
                for k in 0..p_n {
                    if k != w[0].head {
                        prop_assert_eq!(w[0].tape[k], w[1].tape[k]);
                    }
                }
                prop_assert_eq!(w[1].tape[w[0].head], w[0].instr.write);
            }
        }
    }

    #[test]
    fn normalization_is_idempotent(inst in instances(3)) {
        let once = inst.machine.normalize();
        prop_assert!(once.is_normalized());
        prop_assert_eq!(once.normalize(), once.clone());
        let f = once.final_state();
        let padding: Vec<&Instruction> = once.delta().iter().filter(|i| i.state == f).collect();
        prop_assert_eq!(padding.len(), once.tape_alphabet().len());
        for (i, a) in padding.iter().zip(once.tape_alphabet()) {
            prop_assert_eq!(**i, Instruction::padding(f, a));
        }
    }

    #[test]
    fn final_state_pads(inst in instances(5)) {
        let m = inst.machine.normalize();
        let f = m.final_state();
        for run in enumerate_valid_runs(&m, &inst.poly, &inst.input, 12).unwrap() {
            let Some(t) = run.configs.iter().position(|c| c.instr.state == f) else {
                panic!("accepting run never enters the final state");
            };
            for w in run.configs[t..].windows(2) {
                prop_assert_eq!(w[0].instr, Instruction::padding(f, w[0].instr.read));
                prop_assert_eq!(&w[0].tape, &w[1].tape);
                prop_assert_eq!(w[0].head, w[1].head);
            }
        }
    }

    #[test]
    fn spec_text_round_trips(inst in instances(4)) {
        let spec = ulp_core::MachineSpec { machine: inst.machine.clone(), poly: inst.poly.clone(), input: inst.input.clone() };
        let back = parse_machine(&spec.to_string()).unwrap();
        prop_assert_eq!(back.machine, spec.machine);
        prop_assert_eq!(back.poly, spec.poly);
        prop_assert_eq!(back.input, spec.input);
    }
}

fn spec(text: &str) -> ulp_core::MachineSpec {
    parse_machine(text).unwrap()
}

#[test]
fn two_binary_choices_have_four_runs() {
    let s = spec(
        "states: s0 q f\nstart: s0\nfinal: f\nalphabet: 0 1\n\
         delta: s0 B -> q 0 r\ndelta: s0 B -> q 1 r\ndelta: q B -> f 0 lambda\ndelta: q B -> f 1 lambda\npoly: 3\n",
    );
    let m = s.machine.normalize();
    let runs = enumerate_valid_runs(&m, &s.poly, &s.input, 12).unwrap();
    assert_eq!(runs.len(), 4);
    let tapes: BTreeSet<Vec<&str>> =
        runs.iter().map(|r| r.configs.last().unwrap().tape.iter().map(|&x| m.symbol_name(x)).collect()).collect();
    assert_eq!(tapes.len(), 4);
    assert!(tapes.contains(&vec!["1", "0", "B"]));
}

#[test]
fn moving_off_the_tape_blocks_the_run() {
    let s = spec("states: s0 f\nstart: s0\nfinal: f\nalphabet: 1\ndelta: s0 B -> f B l\npoly: 2\n");
    let m = s.machine.normalize();
    assert!(enumerate_valid_runs(&m, &s.poly, &s.input, 12).unwrap().is_empty());
}

#[test]
fn unnormalized_machine_is_refused() {
    let s = spec("states: s0 f\nstart: s0\nfinal: f\nalphabet: 1\ndelta: s0 B -> f B lambda\npoly: 2\n");
    let err = enumerate_valid_runs(&s.machine, &s.poly, &s.input, 12).unwrap_err();
    assert_eq!(err, TuringError::NotNormalized);
}

#[test]
fn horizon_checks() {
    let p = RuntimePolynomial::new(vec![1, 0, 1]).unwrap();
    assert_eq!(p.eval(3), 10);
    assert_eq!(p.horizon(3), Ok(10));
    assert_eq!(p.to_string(), "1 + 1n^2");
    assert!(matches!(RuntimePolynomial::constant(2).horizon(3), Err(TuringError::InputTooLong { n: 3, horizon: 2 })));
    assert_eq!(RuntimePolynomial::constant(0).horizon(0), Err(TuringError::EmptyTape));
}

#[test]
fn bound_is_enforced() {
    let s = spec("states: s0 f\nstart: s0\nfinal: f\nalphabet: 1\ndelta: s0 B -> f B lambda\npoly: 20\n");
    let m = s.machine.normalize();
    assert!(matches!(
        enumerate_valid_runs(&m, &s.poly, &s.input, 12),
        Err(TuringError::BoundExceeded { horizon: 20, bound: 12 })
    ));
}
