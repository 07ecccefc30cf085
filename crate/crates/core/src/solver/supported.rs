//! Supported models: fixed points of the one-step operator, i.e. models of
//! the program's completion.

use std::collections::VecDeque;

use super::{ModelSet, SolveError, SolveLimits};
use crate::logic::{tp_step, AtomId, GroundProgram, Interpretation};

pub const BRUTEFORCE_ATOM_LIMIT: usize = 22;

/// Every `m` with `tp_step(pg, m) = m`, by trying all subsets of the atom
/// table. Models come out in increasing bitmask order.
pub fn enumerate_supported_models_bruteforce(pg: &GroundProgram) -> Result<ModelSet, SolveError> {
    let n = pg.atom_count();
    if n > BRUTEFORCE_ATOM_LIMIT {
        return Err(SolveError::BaseTooLarge { atoms: n, limit: BRUTEFORCE_ATOM_LIMIT });
    }
    let bit = |ids: &[AtomId]| ids.iter().fold(0u32, |m, a| m | 1 << a.0);
    let clauses: Vec<(u32, u32, u32)> = pg.clauses().map(|c| (1 << c.head.0, bit(c.pos), bit(c.neg))).collect();
    let mut models = Vec::new();
    for m in 0u32..(1u32 << n) {
        let tp = clauses
            .iter()
            .filter(|&&(_, pos, neg)| pos & m == pos && neg & m == 0)
            .fold(0u32, |acc, &(h, _, _)| acc | h);
        if tp == m {
            models.push(Interpretation::from_ids((0..n as u32).filter(|i| m >> i & 1 == 1).map(AtomId)));
        }
    }
    Ok(ModelSet { models, complete: true })
}

const UNKNOWN: u8 = 0;
const TRUE: u8 = 1;
const FALSE: u8 = 2;

/// Every supported model, by case splitting on atoms under the propagation
/// rules of the completion `a ↔ body_1 ∨ … ∨ body_k`:
///
/// * a clause whose body holds makes its head true;
/// * a head all of whose bodies fail is false;
/// * a false head falsifies the last open literal of an otherwise true body;
/// * a true head with a single body that has not failed makes that body true.
pub fn enumerate_supported_models(pg: &GroundProgram, limits: SolveLimits) -> ModelSet {
    let mut s = Completion::new(pg);
    let mut out = ModelSet::default();
    let mut decisions = 0u64;
    // (trail length before the decision, atom, second branch tried)
    let mut stack: Vec<(usize, AtomId, bool)> = Vec::new();
    let mut ok = s.propagate();
    loop {
        if ok {
            match (0..pg.atom_count()).find(|&i| s.val[i] == UNKNOWN) {
                None => {
                    let m = Interpretation::from_ids(
                        (0..pg.atom_count()).filter(|&i| s.val[i] == TRUE).map(|i| AtomId(i as u32)),
                    );
                    if tp_step(pg, &m) == m {
                        out.models.push(m);
                        if limits.max_models.is_some_and(|k| out.models.len() >= k) {
                            return out;
                        }
                    }
                    ok = false;
                }
                Some(i) => {
                    if limits.max_decisions.is_some_and(|k| decisions >= k) {
                        return out;
                    }
                    decisions += 1;
                    stack.push((s.trail.len(), AtomId(i as u32), false));
                    ok = s.assign(AtomId(i as u32), FALSE) && s.propagate();
                }
            }
            continue;
        }
        loop {
            let Some(top) = stack.last_mut() else {
                out.complete = true;
                return out;
            };
            let (mark, atom, retried) = *top;
            s.undo(mark);
            if retried {
                stack.pop();
                continue;
            }
            top.2 = true;
            ok = s.assign(atom, TRUE) && s.propagate();
            if ok {
                break;
            }
        }
    }
}

struct Completion<'a> {
    pg: &'a GroundProgram,
    /// Clauses defining each atom.
    defs: Vec<Vec<u32>>,
    /// Clauses whose body mentions each atom.
    occ: Vec<Vec<u32>>,
    val: Vec<u8>,
    trail: Vec<AtomId>,
    queue: VecDeque<AtomId>,
}

#[derive(PartialEq, Eq)]
enum Body {
    True,
    False,
    /// Open, with the single unassigned literal if there is exactly one.
    Open(Option<(AtomId, bool)>),
}

impl<'a> Completion<'a> {
    fn new(pg: &'a GroundProgram) -> Self {
        let n = pg.atom_count();
        let mut defs = vec![Vec::new(); n];
        let mut occ = vec![Vec::new(); n];
        for (i, c) in pg.clauses().enumerate() {
            defs[c.head.index()].push(i as u32);
            for a in c.pos.iter().chain(c.neg) {
                if occ[a.index()].last() != Some(&(i as u32)) {
                    occ[a.index()].push(i as u32);
                }
            }
        }
        let queue = (0..n as u32).map(AtomId).collect();
        Completion { pg, defs, occ, val: vec![UNKNOWN; n], trail: Vec::new(), queue }
    }

    fn assign(&mut self, a: AtomId, v: u8) -> bool {
        match self.val[a.index()] {
            UNKNOWN => {
                self.val[a.index()] = v;
                self.trail.push(a);
                self.queue.push_back(a);
                true
            }
            cur => cur == v,
        }
    }

    fn undo(&mut self, mark: usize) {
        for a in self.trail.drain(mark..) {
            self.val[a.index()] = UNKNOWN;
        }
        self.queue.clear();
    }

    fn body(&self, ci: u32) -> Body {
        let c = self.pg.clause(ci as usize);
        let mut open = None;
        let mut n_open = 0;
        for (a, positive) in c.pos.iter().map(|&a| (a, true)).chain(c.neg.iter().map(|&a| (a, false))) {
            match (self.val[a.index()], positive) {
                (TRUE, false) | (FALSE, true) => return Body::False,
                (UNKNOWN, _) => {
                    n_open += 1;
                    open = Some((a, positive));
                }
                _ => {}
            }
        }
        match n_open {
            0 => Body::True,
            1 => Body::Open(open),
            _ => Body::Open(None),
        }
    }

    /// Applies the completion rules for the definition of `h`.
    fn examine(&mut self, h: AtomId) -> bool {
        let defs = std::mem::take(&mut self.defs[h.index()]);
        let ok = self.examine_defs(h, &defs);
        self.defs[h.index()] = defs;
        ok
    }

    fn examine_defs(&mut self, h: AtomId, defs: &[u32]) -> bool {
        let mut alive = Vec::new();
        for &ci in defs {
            match self.body(ci) {
                Body::True => return self.assign(h, TRUE),
                Body::False => {}
                b => alive.push((ci, b)),
            }
        }
        match (self.val[h.index()], alive.len()) {
            (_, 0) => self.assign(h, FALSE),
            (FALSE, _) => {
                for (_, b) in alive {
                    if let Body::Open(Some((a, positive))) = b {
                        if !self.assign(a, if positive { FALSE } else { TRUE }) {
                            return false;
                        }
                    }
                }
                true
            }
            (TRUE, 1) => {
                let c = self.pg.clause(alive[0].0 as usize);
                c.pos.iter().all(|&a| self.assign(a, TRUE)) && c.neg.iter().all(|&a| self.assign(a, FALSE))
            }
            _ => true,
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(a) = self.queue.pop_front() {
            if !self.examine(a) {
                return false;
            }
            for k in 0..self.occ[a.index()].len() {
                let h = self.pg.clause(self.occ[a.index()][k] as usize).head;
                if !self.examine(h) {
                    return false;
                }
            }
        }
        true
    }
}
