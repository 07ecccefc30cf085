//! Ground programs with interned atoms, and naive grounding over the
//! Herbrand universe.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use hashbrown::HashTable;
use indexmap::IndexSet;
use rustc_hash::{FxBuildHasher, FxHasher};
use smallvec::SmallVec;

use super::semantics::Interpretation;
use super::syntax::{Atom, Clause, GroundAtom, PredKey, Program, Term};
use super::LogicError;
use crate::symbol::Sym;

/// Dense index of a ground atom inside an [`AtomTable`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AtomId(pub u32);

impl AtomId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Default, Debug)]
pub struct AtomTable {
    atoms: IndexSet<GroundAtom, FxBuildHasher>,
}

impl AtomTable {
    pub fn intern(&mut self, atom: GroundAtom) -> AtomId {
        let (i, _) = self.atoms.insert_full(atom);
        AtomId(i as u32)
    }

    pub fn get(&self, atom: &GroundAtom) -> Option<AtomId> {
        self.atoms.get_index_of(atom).map(|i| AtomId(i as u32))
    }

    pub fn atom(&self, id: AtomId) -> &GroundAtom {
        &self.atoms[id.index()]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (AtomId, &GroundAtom)> {
        self.atoms.iter().enumerate().map(|(i, a)| (AtomId(i as u32), a))
    }
}

/// Borrowed view of one ground clause.
#[derive(Clone, Copy, Debug)]
pub struct GroundClause<'a> {
    pub head: AtomId,
    pub pos: &'a [AtomId],
    pub neg: &'a [AtomId],
}

/// Flat clause storage: clause `i` owns `lits[starts[i]..starts[i+1]]`, the
/// first `npos[i]` of which form the positive body.
#[derive(Clone, Debug)]
struct ClauseData {
    heads: Vec<AtomId>,
    starts: Vec<u32>,
    npos: Vec<u32>,
    lits: Vec<AtomId>,
}

impl Default for ClauseData {
    fn default() -> Self {
        ClauseData { heads: Vec::new(), starts: vec![0], npos: Vec::new(), lits: Vec::new() }
    }
}

impl ClauseData {
    fn len(&self) -> usize {
        self.heads.len()
    }

    fn get(&self, i: usize) -> GroundClause<'_> {
        let (s, e) = (self.starts[i] as usize, self.starts[i + 1] as usize);
        let split = s + self.npos[i] as usize;
        GroundClause { head: self.heads[i], pos: &self.lits[s..split], neg: &self.lits[split..e] }
    }

    fn hash_of(head: AtomId, pos: &[AtomId], neg: &[AtomId]) -> u64 {
        let mut h = FxHasher::default();
        head.hash(&mut h);
        pos.hash(&mut h);
        neg.hash(&mut h);
        h.finish()
    }
}

/// Deduplicating clause set keyed on (head, sorted pos, sorted neg).
#[derive(Default)]
struct ClauseSet {
    data: ClauseData,
    index: HashTable<u32>,
}

impl ClauseSet {
    fn insert(&mut self, head: AtomId, pos: &mut Vec<AtomId>, neg: &mut Vec<AtomId>) -> bool {
        pos.sort_unstable();
        pos.dedup();
        neg.sort_unstable();
        neg.dedup();
        let hash = ClauseData::hash_of(head, pos, neg);
        let ClauseSet { data, index } = self;
        let found = index.find(hash, |&i| {
            let c = data.get(i as usize);
            c.head == head && c.pos == &pos[..] && c.neg == &neg[..]
        });
        if found.is_some() {
            return false;
        }
        let id = data.len() as u32;
        data.heads.push(head);
        data.npos.push(pos.len() as u32);
        data.lits.extend_from_slice(pos);
        data.lits.extend_from_slice(neg);
        data.starts.push(data.lits.len() as u32);
        index.insert_unique(hash, id, |&i| {
            let c = data.get(i as usize);
            ClauseData::hash_of(c.head, c.pos, c.neg)
        });
        true
    }
}

/// A finite set of variable-free clauses over an interned atom table.
///
/// Programs derived from one another (for instance a reduct) share the atom
/// table, so atom ids and interpretations carry over between them.
#[derive(Clone)]
pub struct GroundProgram {
    atoms: Arc<AtomTable>,
    clauses: ClauseData,
}

impl GroundProgram {
    pub fn atoms(&self) -> &AtomTable {
        &self.atoms
    }

    pub fn atom(&self, id: AtomId) -> &GroundAtom {
        self.atoms.atom(id)
    }

    pub fn lookup(&self, atom: &GroundAtom) -> Option<AtomId> {
        self.atoms.get(atom)
    }

    /// Number of clauses.
    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.len() == 0
    }

    /// Number of atoms in the table, i.e. the atoms that can appear in any
    /// model of this program or of a program derived from it.
    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn clause(&self, i: usize) -> GroundClause<'_> {
        self.clauses.get(i)
    }

    pub fn clauses(&self) -> impl ExactSizeIterator<Item = GroundClause<'_>> + '_ {
        (0..self.clauses.len()).map(move |i| self.clauses.get(i))
    }

    pub fn is_horn(&self) -> bool {
        self.clauses().all(|c| c.neg.is_empty())
    }

    /// Total literal count plus one per clause head.
    pub fn size(&self) -> usize {
        self.clauses.heads.len() + self.clauses.lits.len()
    }

    /// Builds a new program over the same atom table from a per-clause
    /// rewrite. `f` returns `None` to drop a clause, or the new positive and
    /// negative bodies.
    pub fn derive<F>(&self, mut f: F) -> GroundProgram
    where
        F: FnMut(GroundClause<'_>) -> Option<(Vec<AtomId>, Vec<AtomId>)>,
    {
        let mut set = ClauseSet::default();
        for c in self.clauses() {
            if let Some((mut pos, mut neg)) = f(c) {
                set.insert(c.head, &mut pos, &mut neg);
            }
        }
        GroundProgram { atoms: Arc::clone(&self.atoms), clauses: set.data }
    }

    /// Maps symbolic atoms onto this program's ids. Returns `None` if some atom
    /// does not occur in the program: such a set cannot be a model of it.
    pub fn interpretation<'a>(&self, atoms: impl IntoIterator<Item = &'a GroundAtom>) -> Option<Interpretation> {
        atoms.into_iter().map(|a| self.lookup(a)).collect::<Option<Vec<_>>>().map(Interpretation::from_ids)
    }

    pub fn to_symbolic(&self, m: &Interpretation) -> BTreeSet<GroundAtom> {
        m.iter().map(|id| self.atom(id).clone()).collect()
    }

    /// Symbolic clauses, for tests and printing.
    pub fn to_clauses(&self) -> Vec<Clause> {
        self.clauses()
            .map(|c| Clause {
                head: self.atom(c.head).to_atom(),
                pos: c.pos.iter().map(|&a| self.atom(a).to_atom()).collect(),
                neg: c.neg.iter().map(|&a| self.atom(a).to_atom()).collect(),
            })
            .collect()
    }
}

impl fmt::Display for GroundProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.to_clauses() {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroundProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroundProgram").field("atoms", &self.atoms.len()).field("clauses", &self.clauses.len()).finish()
    }
}

#[derive(Default)]
pub struct GroundProgramBuilder {
    atoms: AtomTable,
    clauses: ClauseSet,
}

impl GroundProgramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, atom: GroundAtom) -> AtomId {
        self.atoms.intern(atom)
    }

    /// Adds a clause by atom id. Bodies are sorted in place. Returns false if
    /// the clause was already present.
    pub fn add_ids(&mut self, head: AtomId, pos: &mut Vec<AtomId>, neg: &mut Vec<AtomId>) -> bool {
        self.clauses.insert(head, pos, neg)
    }

    pub fn add(
        &mut self,
        head: GroundAtom,
        pos: impl IntoIterator<Item = GroundAtom>,
        neg: impl IntoIterator<Item = GroundAtom>,
    ) -> bool {
        let head = self.intern(head);
        let mut pos: Vec<_> = pos.into_iter().map(|a| self.intern(a)).collect();
        let mut neg: Vec<_> = neg.into_iter().map(|a| self.intern(a)).collect();
        self.add_ids(head, &mut pos, &mut neg)
    }

    /// Adds a variable-free clause.
    pub fn add_clause(&mut self, clause: &Clause) -> Result<bool, LogicError> {
        let ground = |a: &Atom| {
            a.to_ground().ok_or_else(|| LogicError::UnboundVariable { var: a.vars().next().unwrap().to_string() })
        };
        let head = ground(&clause.head)?;
        let pos = clause.pos.iter().map(ground).collect::<Result<Vec<_>, _>>()?;
        let neg = clause.neg.iter().map(ground).collect::<Result<Vec<_>, _>>()?;
        Ok(self.add(head, pos, neg))
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.data.len()
    }

    pub fn build(self) -> GroundProgram {
        GroundProgram { atoms: Arc::new(self.atoms), clauses: self.clauses.data }
    }
}

impl GroundProgram {
    /// Propositional program from `(head, pos, neg)` atom names.
    pub fn propositional(clauses: &[(&str, &[&str], &[&str])]) -> GroundProgram {
        let mut b = GroundProgramBuilder::new();
        for (h, pos, neg) in clauses {
            b.add(
                GroundAtom::new(h, []),
                pos.iter().map(|p| GroundAtom::new(p, [])),
                neg.iter().map(|p| GroundAtom::new(p, [])),
            );
        }
        b.build()
    }
}

impl FromIterator<Clause> for Result<GroundProgram, LogicError> {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        let mut b = GroundProgramBuilder::new();
        for c in iter {
            b.add_clause(&c)?;
        }
        Ok(b.build())
    }
}

/// Simultaneous substitution of constants for the variables of `clause`.
pub fn ground_instance(clause: &Clause, subst: &HashMap<Sym, Sym>) -> Result<Clause, LogicError> {
    let apply = |atom: &Atom| -> Result<Atom, LogicError> {
        let args = atom
            .args
            .iter()
            .map(|t| match *t {
                Term::Const(c) => Ok(Term::Const(c)),
                Term::Var(v) => subst
                    .get(&v)
                    .map(|&c| Term::Const(c))
                    .ok_or_else(|| LogicError::UnboundVariable { var: v.to_string() }),
            })
            .collect::<Result<_, _>>()?;
        Ok(Atom { pred: atom.pred, args })
    };
    Ok(Clause {
        head: apply(&clause.head)?,
        pos: clause.pos.iter().map(apply).collect::<Result<_, _>>()?,
        neg: clause.neg.iter().map(apply).collect::<Result<_, _>>()?,
    })
}

/// Every ground instance of every clause, substituting over the program's own
/// constants. The output has |universe|^|vars| instances per clause, so this
/// is only practical for small programs.
pub fn ground_program(program: &Program) -> GroundProgram {
    let universe = program.constants();
    let mut builder = GroundProgramBuilder::new();
    for clause in program.clauses() {
        Instantiator::new(clause).run_over_universe(&universe, &mut builder, |_| true);
    }
    builder.build()
}

/// An argument position: a fixed constant or a variable slot.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Slot {
    Const(Sym),
    Var(usize),
}

/// An atom with variables replaced by slot indices into a binding vector.
#[derive(Clone, Debug)]
pub(crate) struct Pattern {
    pub pred: Sym,
    pub args: SmallVec<[Slot; 6]>,
    /// Number of leading variables that must be bound for this atom to be
    /// ground.
    pub level: usize,
}

impl Pattern {
    pub fn key(&self) -> PredKey {
        PredKey { name: self.pred, arity: self.args.len() }
    }

    pub fn ground(&self, binding: &[Sym]) -> GroundAtom {
        GroundAtom {
            pred: self.pred,
            args: self
                .args
                .iter()
                .map(|s| match *s {
                    Slot::Const(c) => c,
                    Slot::Var(v) => binding[v],
                })
                .collect(),
        }
    }
}

/// A clause compiled against a fixed variable order.
pub(crate) struct Instantiator {
    pub vars: Vec<Sym>,
    pub head: Pattern,
    pub pos: Vec<Pattern>,
    pub neg: Vec<Pattern>,
}

impl Instantiator {
    pub fn new(clause: &Clause) -> Self {
        Self::with_order(clause, clause.vars())
    }

    pub fn with_order(clause: &Clause, vars: Vec<Sym>) -> Self {
        let slot_of: HashMap<Sym, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let compile = |a: &Atom| {
            let args: SmallVec<[Slot; 6]> = a
                .args
                .iter()
                .map(|t| match *t {
                    Term::Const(c) => Slot::Const(c),
                    Term::Var(v) => Slot::Var(slot_of[&v]),
                })
                .collect();
            let level = args
                .iter()
                .filter_map(|s| match s {
                    Slot::Var(v) => Some(v + 1),
                    Slot::Const(_) => None,
                })
                .max()
                .unwrap_or(0);
            Pattern { pred: a.pred, args, level }
        };
        Instantiator {
            head: compile(&clause.head),
            pos: clause.pos.iter().map(compile).collect(),
            neg: clause.neg.iter().map(compile).collect(),
            vars,
        }
    }

    /// Enumerates assignments of universe constants to the variables in order.
    /// Each positive body atom is handed to `live` as soon as it is ground; a
    /// `false` answer skips every completion of the current partial
    /// assignment. Surviving instances are added to `builder` unchanged.
    pub fn run_over_universe<F>(&self, universe: &[Sym], builder: &mut GroundProgramBuilder, mut live: F)
    where
        F: FnMut(&GroundAtom) -> bool,
    {
        let n = self.vars.len();
        if n > 0 && universe.is_empty() {
            return;
        }
        let atoms: Vec<(&Pattern, bool)> = std::iter::once((&self.head, false))
            .chain(self.pos.iter().map(|p| (p, true)))
            .chain(self.neg.iter().map(|p| (p, false)))
            .collect();
        let mut by_level: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (i, (p, _)) in atoms.iter().enumerate() {
            by_level[p.level].push(i);
        }
        let mut ids = vec![AtomId(0); atoms.len()];
        let mut binding = vec![universe.first().copied().unwrap_or(Sym::new("")); n];

        // Ground the atoms that become variable-free at `level`.
        let mut settle = |level: usize, binding: &[Sym], ids: &mut [AtomId], b: &mut GroundProgramBuilder| {
            for &i in &by_level[level] {
                let (p, check) = atoms[i];
                let g = p.ground(binding);
                if check && !live(&g) {
                    return false;
                }
                ids[i] = b.intern(g);
            }
            true
        };

        if !settle(0, &binding, &mut ids, builder) {
            return;
        }
        let npos = self.pos.len();
        let emit = |ids: &[AtomId], b: &mut GroundProgramBuilder| {
            let mut pos = ids[1..1 + npos].to_vec();
            let mut neg = ids[1 + npos..].to_vec();
            b.add_ids(ids[0], &mut pos, &mut neg);
        };
        if n == 0 {
            emit(&ids, builder);
            return;
        }
        // Iterative odometer: choice[l] is the universe index bound to var l.
        let mut choice = vec![0usize; n];
        let mut level = 0;
        loop {
            if choice[level] == universe.len() {
                if level == 0 {
                    return;
                }
                choice[level] = 0;
                level -= 1;
                choice[level] += 1;
                continue;
            }
            binding[level] = universe[choice[level]];
            if !settle(level + 1, &binding, &mut ids, builder) {
                choice[level] += 1;
                continue;
            }
            if level + 1 == n {
                emit(&ids, builder);
                choice[level] += 1;
            } else {
                level += 1;
            }
        }
    }
}
