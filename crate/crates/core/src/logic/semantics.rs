//! Gelfond–Lifschitz reduct, least models of Horn programs, the one-step
//! provability operator, and the stable/supported model tests built on them.

use std::fmt;

use super::ground::{AtomId, GroundProgram};
use super::LogicError;

/// A set of ground atoms of some [`GroundProgram`], kept as sorted ids.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation(Vec<AtomId>);

impl Interpretation {
    pub fn empty() -> Self {
        Interpretation(Vec::new())
    }

    pub fn from_ids(ids: impl IntoIterator<Item = AtomId>) -> Self {
        let mut v: Vec<AtomId> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Interpretation(v)
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        Interpretation(mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| AtomId(i as u32)).collect())
    }

    pub fn contains(&self, id: AtomId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = AtomId> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.len() <= other.len() && self.iter().all(|a| other.contains(a))
    }

    pub fn is_proper_subset(&self, other: &Interpretation) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    /// Membership mask sized for a program with `n` atoms.
    pub(crate) fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for a in self.iter() {
            if a.index() < n {
                m[a.index()] = true;
            }
        }
        m
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter().map(|a| a.0)).finish()
    }
}

/// Drops every clause whose negative body meets `m` and strips the negative
/// bodies of the rest.
pub fn gl_reduct(pg: &GroundProgram, m: &Interpretation) -> GroundProgram {
    let mask = m.mask(pg.atom_count());
    pg.derive(|c| if c.neg.iter().any(|a| mask[a.index()]) { None } else { Some((c.pos.to_vec(), Vec::new())) })
}

/// Least model of a Horn program, by counting unresolved positive body atoms
/// per clause and firing each clause once its count reaches zero.
pub fn least_model(horn: &GroundProgram) -> Result<Interpretation, LogicError> {
    if !horn.is_horn() {
        return Err(LogicError::NotHorn);
    }
    let mut out = vec![false; horn.atom_count()];
    HornIndex::new(horn).least_model_into(horn, |_| true, &mut out);
    Ok(Interpretation::from_mask(&out))
}

/// `{ head(C) : pos(C) ⊆ m, neg(C) ∩ m = ∅ }`.
pub fn tp_step(pg: &GroundProgram, m: &Interpretation) -> Interpretation {
    let mask = m.mask(pg.atom_count());
    let mut out = vec![false; pg.atom_count()];
    for c in pg.clauses() {
        if c.pos.iter().all(|a| mask[a.index()]) && !c.neg.iter().any(|a| mask[a.index()]) {
            out[c.head.index()] = true;
        }
    }
    Interpretation::from_mask(&out)
}

pub fn is_stable(pg: &GroundProgram, m: &Interpretation) -> bool {
    if m.iter().any(|a| a.index() >= pg.atom_count()) {
        return false;
    }
    let mask = m.mask(pg.atom_count());
    let mut out = vec![false; pg.atom_count()];
    HornIndex::new(pg).least_model_into(pg, |c| !c.neg.iter().any(|a| mask[a.index()]), &mut out);
    out == mask
}

pub fn is_supported(pg: &GroundProgram, m: &Interpretation) -> bool {
    tp_step(pg, m) == *m
}

/// Occurrence lists for linear-time least-model computation over a subset of
/// clauses, ignoring negative bodies.
pub(crate) struct HornIndex {
    /// `occ[starts[a]..starts[a+1]]` are the clauses with `a` in the positive
    /// body.
    starts: Vec<u32>,
    occ: Vec<u32>,
}

impl HornIndex {
    pub fn new(pg: &GroundProgram) -> Self {
        let n = pg.atom_count();
        let mut counts = vec![0u32; n + 1];
        for c in pg.clauses() {
            for a in c.pos {
                counts[a.index() + 1] += 1;
            }
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let starts = counts.clone();
        let mut fill = counts;
        let mut occ = vec![0u32; *starts.last().unwrap_or(&0) as usize];
        for (ci, c) in pg.clauses().enumerate() {
            for a in c.pos {
                let slot = &mut fill[a.index()];
                occ[*slot as usize] = ci as u32;
                *slot += 1;
            }
        }
        HornIndex { starts, occ }
    }

    /// Least model of the clauses selected by `active`, reading only their
    /// positive bodies. `out` must have one entry per atom; it is overwritten.
    pub fn least_model_into<F>(&self, pg: &GroundProgram, active: F, out: &mut [bool])
    where
        F: Fn(super::ground::GroundClause<'_>) -> bool,
    {
        out.iter_mut().for_each(|b| *b = false);
        let mut waiting: Vec<u32> = Vec::with_capacity(pg.len());
        let mut queue: Vec<AtomId> = Vec::new();
        for c in pg.clauses() {
            let on = active(c);
            // Inactive clauses never reach zero.
            waiting.push(if on { c.pos.len() as u32 } else { u32::MAX });
            if on && c.pos.is_empty() && !out[c.head.index()] {
                out[c.head.index()] = true;
                queue.push(c.head);
            }
        }
        while let Some(a) = queue.pop() {
            let (s, e) = (self.starts[a.index()] as usize, self.starts[a.index() + 1] as usize);
            for &ci in &self.occ[s..e] {
                let w = &mut waiting[ci as usize];
                if *w == u32::MAX {
                    continue;
                }
                *w -= 1;
                if *w == 0 {
                    let h = pg.clause(ci as usize).head;
                    if !out[h.index()] {
                        out[h.index()] = true;
                        queue.push(h);
                    }
                }
            }
        }
    }
}
