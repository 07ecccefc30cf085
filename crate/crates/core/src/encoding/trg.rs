//! The fixed transition program.

use std::sync::OnceLock;

use crate::logic::{PredKey, Program};
use crate::text::parse_program;

/// Clause counts of the six groups: head position, tape, state, instruction
/// selection, instruction exclusion, completion.
pub const GROUP_SIZES: [usize; 6] = [4, 3, 2, 2, 7, 2];

const GROUPS: [&str; 6] = [
    "\
position(P,T) :- time(T), cell(P), zero(T), i_position(P).
position(P1,T1) :- time(T;T1), cell(P;P1), state(S;S1), dir(D), symb(Q;Q1), succ(T,T1), succ(P1,P), position(P,T), state(S,T), tape(P,Q,T), instr(S,Q,S1,Q1,D,T), moveLeft(D), zero(Z), neq(P,Z).
position(P1,T1) :- time(T;T1), cell(P;P1), state(S;S1), dir(D), symb(Q;Q1), succ(T,T1), succ(P,P1), position(P,T), state(S,T), tape(P,Q,T), instr(S,Q,S1,Q1,D,T), moveRight(D), lastCell(L), neq(P,L).
position(P1,T1) :- time(T;T1), cell(P;P1), state(S;S1), symb(Q;Q1), dir(D), succ(T,T1), eq(P,P1), position(P,T), state(S,T), tape(P,Q,T), instr(S,Q,S1,Q1,D,T), stay(D).
",
    "\
tape(P,Q,T) :- time(T), cell(P), symb(Q), zero(T), data(P,Q).
tape(P,Q1,T1) :- time(T;T1), cell(P), state(S;S1), symb(Q;Q1), dir(D), succ(T,T1), position(P,T), state(S,T), tape(P,Q,T), instr(S,Q,S1,Q1,D,T).
tape(P,Q,T1) :- time(T;T1), cell(P;P1), symb(Q), succ(T,T1), tape(P,Q,T), position(P1,T), neq(P,P1).
",
    "\
state(S,T) :- time(T), state(S), zero(T), initState(S).
state(S1,T1) :- time(T;T1), cell(P), symb(Q;Q1), state(S;S1), dir(D), succ(T,T1), position(P,T), state(S,T), tape(P,Q,T), instr(S,Q,S1,Q1,D,T).
",
    "\
instr(S,Q,S1,Q1,D,T) :- state(S;S1), symb(Q;Q1), dir(D), time(T), zero(T), initState(S), i_position(P), tape(P,Q,T), delta(S,Q,S1,Q1,D), not otherInstr(S,Q,S1,Q1,D,T).
instr(S,Q,S1,Q1,D,T) :- state(S;S1), symb(Q;Q1), dir(D), time(T), zero(Z), neq(T,Z), cell(P), position(P,T), state(S,T), tape(P,Q,T), delta(S,Q,S1,Q1,D), not otherInstr(S,Q,S1,Q1,D,T).
",
    "\
otherInstr(S,Q,S1,Q1,D1,T) :- state(S;Sp;S1;S2), symb(Q;Qp;Q1;Q2), time(T), dir(D1;D2), instr(Sp,Qp,S2,Q2,D2,T), neq(S2,S1).
otherInstr(S,Q,S1,Q1,D1,T) :- state(S;Sp;S1;S2), symb(Q;Qp;Q1;Q2), time(T), dir(D1;D2), instr(Sp,Qp,S2,Q2,D2,T), neq(Q2,Q1).
otherInstr(S,Q,S1,Q1,D1,T) :- state(S;Sp;S1;S2), symb(Q;Qp;Q1;Q2), time(T), dir(D1;D2), instr(Sp,Qp,S2,Q2,D2,T), neqDir(D2,D1).
otherInstr(S,Q,S1,Q1,D1,T) :- state(S;Sp;S1;S2), symb(Q;Qp;Q1;Q2), time(T), dir(D1;D2), instr(Sp,Qp,S2,Q2,D2,T), neq(Sp,S).
otherInstr(S,Q,S1,Q1,D1,T) :- state(S;Sp;S1;S2), symb(Q;Qp;Q1;Q2), time(T), dir(D1;D2), instr(Sp,Qp,S2,Q2,D2,T), neq(Qp,Q).
instr_def(T) :- state(S;S1), symb(Q;Q1), dir(D), time(T), instr(S,Q,S1,Q1,D,T).
a :- time(T), not instr_def(T), not a.
",
    "\
completion :- symb(Q), finalState(F), lastTime(L), stay(D), instr(F,Q,F,Q,D,L).
a :- not completion, not a.
",
];

/// The transition program with its group boundaries.
#[derive(Debug)]
pub struct TrgProgram {
    program: Program,
    groups: [usize; 6],
}

impl TrgProgram {
    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn groups(&self) -> [usize; 6] {
        self.groups
    }

    pub fn len(&self) -> usize {
        self.program.len()
    }

    pub fn is_empty(&self) -> bool {
        self.program.is_empty()
    }

    /// The extensional predicates the program reads, which every instance
    /// database must supply.
    pub fn edb_predicates(&self) -> Vec<PredKey> {
        let heads: Vec<PredKey> = self.program.clauses().map(|c| c.head.key()).collect();
        self.program.predicates().into_iter().filter(|p| !heads.contains(p)).collect()
    }

    /// Serialized form, one clause per line.
    pub fn text(&self) -> String {
        self.program.to_string()
    }
}

/// The fixed program, parsed once.
pub fn p_trg() -> &'static TrgProgram {
    static TRG: OnceLock<TrgProgram> = OnceLock::new();
    TRG.get_or_init(|| {
        let mut program = Program::default();
        let mut groups = [0; 6];
        for (g, text) in GROUPS.iter().enumerate() {
            let part = parse_program(text).expect("fixed program parses");
            groups[g] = part.len();
            program.extend(part.clauses().cloned());
        }
        TrgProgram { program, groups }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grounder::{check_domain_restricted, EdbSplit};

    #[test]
    fn group_sizes() {
        let trg = p_trg();
        assert_eq!(trg.groups(), GROUP_SIZES);
        assert_eq!(trg.len(), 20);
    }

    #[test]
    fn constraint_shapes() {
        let lines: Vec<String> = p_trg().program().clauses().map(|c| c.to_string()).collect();
        assert_eq!(lines[17], "a :- time(T), not instr_def(T), not a.");
        assert_eq!(lines[19], "a :- not completion, not a.");
    }

    #[test]
    fn constant_free_and_domain_restricted() {
        let trg = p_trg().program();
        assert!(trg.constants().is_empty());
        let split = EdbSplit::from_parts(p_trg().edb_predicates(), []);
        assert!(check_domain_restricted(trg, &split));
    }

    #[test]
    fn edb_signature() {
        let names: Vec<String> = p_trg().edb_predicates().iter().map(|p| p.to_string()).collect();
        for want in [
            "cell/1",
            "data/2",
            "delta/5",
            "dir/1",
            "eq/2",
            "finalState/1",
            "i_position/1",
            "initState/1",
            "lastCell/1",
            "lastTime/1",
            "moveLeft/1",
            "moveRight/1",
            "neq/2",
            "neqDir/2",
            "stay/1",
            "state/1",
            "succ/2",
            "symb/1",
            "time/1",
            "zero/1",
        ] {
            assert!(names.contains(&want.to_string()), "{want}");
        }
        assert_eq!(names.len(), 20);
    }
}
