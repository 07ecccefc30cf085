//! Backtracking over the atoms that occur negatively, with bound propagation.
//!
//! For a partial decision on those atoms, every stable model `M` that agrees
//! with it satisfies `L ⊆ M ⊆ U`, where `L` is the least model of the clauses
//! whose negative atoms are all decided absent and `U` the least model of the
//! clauses with no negative atom decided present. A decided-present atom
//! outside `U`, or a decided-absent atom inside `L`, is a conflict; an
//! undecided atom inside `L` or outside `U` is forced. Once every atom is
//! decided the two bounds coincide and `L` is a stable model.

use std::collections::HashSet;

use super::{ModelSet, SearchStats, SolveLimits};
use crate::logic::semantics::HornIndex;
use crate::logic::{AtomId, GroundProgram, Interpretation};

const UNKNOWN: u8 = 0;
const TRUE: u8 = 1;
const FALSE: u8 = 2;

pub fn enumerate_stable_models(pg: &GroundProgram, limits: SolveLimits) -> ModelSet {
    let mut models = Vec::new();
    let stats = for_each_stable_model(pg, limits, |m| {
        models.push(m.clone());
        true
    });
    ModelSet { models, complete: stats.complete }
}

/// Streams stable models to `f` in discovery order; `f` returns false to
/// stop. Stopping early, like hitting a limit, leaves `complete` false.
pub fn for_each_stable_model<F>(pg: &GroundProgram, limits: SolveLimits, mut f: F) -> SearchStats
where
    F: FnMut(&Interpretation) -> bool,
{
    let mut stats = SearchStats::default();
    let Some(mut s) = Search::new(pg) else {
        stats.complete = true;
        return stats;
    };
    let check = HornIndex::new(pg);
    let mut scratch = vec![false; pg.atom_count()];
    let mut seen: HashSet<Interpretation> = HashSet::new();
    let mut stack: Vec<Frame> = Vec::new();

    // `ok` is true when the current assignment is propagated and consistent.
    let mut ok = true;
    loop {
        if ok {
            match s.choose() {
                None => {
                    let m = Interpretation::from_mask(&s.lower);
                    if is_stable_with(pg, &check, &m, &mut scratch) && seen.insert(m.clone()) {
                        stats.models += 1;
                        if !f(&m) || limits.max_models.is_some_and(|k| stats.models >= k) {
                            return stats;
                        }
                    }
                    ok = false;
                }
                Some(a) => {
                    if limits.max_decisions.is_some_and(|k| stats.decisions >= k) {
                        return stats;
                    }
                    stats.decisions += 1;
                    stack.push(Frame { saved: s.val.clone(), atom: a, retried: false });
                    s.val[a.index()] = FALSE;
                    ok = s.propagate();
                    if !ok {
                        stats.conflicts += 1;
                    }
                }
            }
            continue;
        }
        // Backtrack to the most recent decision with an untried branch.
        loop {
            let Some(frame) = stack.last_mut() else {
                stats.complete = true;
                return stats;
            };
            if frame.retried {
                stack.pop();
                continue;
            }
            frame.retried = true;
            s.val.clone_from(&frame.saved);
            s.val[frame.atom.index()] = TRUE;
            ok = s.propagate();
            if ok {
                break;
            }
            stats.conflicts += 1;
        }
    }
}

struct Frame {
    saved: Vec<u8>,
    atom: AtomId,
    retried: bool,
}

fn is_stable_with(pg: &GroundProgram, index: &HornIndex, m: &Interpretation, out: &mut [bool]) -> bool {
    let mask = m.mask(pg.atom_count());
    index.least_model_into(pg, |c| !c.neg.iter().any(|a| mask[a.index()]), out);
    *out == mask[..]
}

struct Search {
    pg: GroundProgram,
    index: HornIndex,
    /// Decision atoms in order of first negative occurrence.
    na: Vec<AtomId>,
    val: Vec<u8>,
    lower: Vec<bool>,
    upper: Vec<bool>,
}

impl Search {
    /// Propagates at the root and drops clauses that cannot fire in any
    /// stable model. `None` if there is no stable model at all.
    fn new(pg: &GroundProgram) -> Option<Search> {
        let n = pg.atom_count();
        let mut s = Search {
            pg: pg.clone(),
            index: HornIndex::new(pg),
            na: negative_atoms(pg),
            val: vec![UNKNOWN; n],
            lower: vec![false; n],
            upper: vec![false; n],
        };
        // An atom all of whose clauses contain its own negation is absent
        // from every stable model.
        let mut guarded = vec![None::<bool>; n];
        for c in pg.clauses() {
            let g = &mut guarded[c.head.index()];
            *g = Some(g.unwrap_or(true) && c.neg.contains(&c.head));
        }
        for &a in &s.na {
            if guarded[a.index()] == Some(true) {
                s.val[a.index()] = FALSE;
            }
        }
        if !s.propagate() {
            return None;
        }
        let (lower, upper, val) = (&s.lower, &s.upper, &s.val);
        s.pg = pg.derive(|c| {
            let dead = c.pos.iter().any(|a| !upper[a.index()])
                || c.neg.iter().any(|a| lower[a.index()] || val[a.index()] == TRUE);
            (!dead).then(|| (c.pos.to_vec(), c.neg.to_vec()))
        });
        s.index = HornIndex::new(&s.pg);
        s.na = negative_atoms(&s.pg);
        Some(s)
    }

    /// Recomputes both bounds and applies forced decisions until nothing
    /// changes. Returns false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            let Search { pg, index, na, val, lower, upper } = self;
            index.least_model_into(pg, |c| c.neg.iter().all(|a| val[a.index()] == FALSE), lower);
            index.least_model_into(pg, |c| !c.neg.iter().any(|a| val[a.index()] == TRUE), upper);
            let mut changed = false;
            for &a in na.iter() {
                let i = a.index();
                match val[i] {
                    TRUE if !upper[i] => return false,
                    FALSE if lower[i] => return false,
                    UNKNOWN if lower[i] => {
                        val[i] = TRUE;
                        changed = true;
                    }
                    UNKNOWN if !upper[i] => {
                        val[i] = FALSE;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// The first undecided negative atom of the first clause whose positive
    /// body already holds and which is not blocked; failing that, the first
    /// undecided atom overall.
    fn choose(&self) -> Option<AtomId> {
        for c in self.pg.clauses() {
            if c.neg.iter().any(|a| self.val[a.index()] == TRUE) || !c.pos.iter().all(|a| self.lower[a.index()]) {
                continue;
            }
            if let Some(&a) = c.neg.iter().find(|a| self.val[a.index()] == UNKNOWN) {
                return Some(a);
            }
        }
        self.na.iter().copied().find(|a| self.val[a.index()] == UNKNOWN)
    }
}

fn negative_atoms(pg: &GroundProgram) -> Vec<AtomId> {
    let mut seen = vec![false; pg.atom_count()];
    let mut out = Vec::new();
    for c in pg.clauses() {
        for &a in c.neg {
            if !seen[a.index()] {
                seen[a.index()] = true;
                out.push(a);
            }
        }
    }
    out
}
