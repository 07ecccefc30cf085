//! Fixtures shared by the benchmarks.

use ulp_core::{parse_machine, parse_program, GroundAtom, GroundProgram, GroundProgramBuilder, MachineSpec, Program};

/// A machine that walks right writing guessed symbols and may stop on any
/// cell. It has `2^(cells + 1) - 2` accepting runs.
pub fn guesser(cells: usize) -> MachineSpec {
    let text = format!(
        "states: s0 f\nstart: s0\nfinal: f\nalphabet: 0 1\n\
         delta: s0 B -> s0 0 r\ndelta: s0 B -> s0 1 r\ndelta: s0 B -> f 0 lambda\ndelta: s0 B -> f 1 lambda\n\
         poly: {cells}\n"
    );
    parse_machine(&text).expect("fixture parses")
}

/// Independent-set choice over a path graph with `n` nodes.
pub fn path_choice(n: usize) -> Program {
    let mut text = String::new();
    for i in 1..=n {
        text.push_str(&format!("node({i}).\n"));
        if i < n {
            text.push_str(&format!("edge({i},{}).\n", i + 1));
        }
    }
    text.push_str(
        "in(X) :- node(X), not out(X).\nout(X) :- node(X), not in(X).\nbad :- edge(X,Y), in(X), in(Y), not bad.\n",
    );
    parse_program(&text).expect("fixture parses")
}

/// `n` independent even loops: `2^n` stable models.
pub fn even_loops(n: usize) -> GroundProgram {
    let mut b = GroundProgramBuilder::new();
    for i in 0..n {
        let (a, c) = (format!("a{i}"), format!("b{i}"));
        b.add(GroundAtom::new(&a, []), [], [GroundAtom::new(&c, [])]);
        b.add(GroundAtom::new(&c, []), [], [GroundAtom::new(&a, [])]);
    }
    b.build()
}
