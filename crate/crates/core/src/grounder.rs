//! Grounding of domain-restricted programs by joining extensional relations.
//!
//! A predicate is extensional when every clause defining it is a fact. In a
//! domain-restricted program every variable of a clause occurs in some
//! positive extensional body atom, so the substitutions worth considering are
//! exactly the tuples of the join of those atoms' relations. Every other
//! substitution makes some positive body atom a non-fact of an extensional
//! predicate; such an atom heads no clause, so the instance can never fire.

use std::collections::{BTreeSet, HashMap, HashSet};

use rustc_hash::FxBuildHasher;
use smallvec::SmallVec;
use thiserror::Error;

use crate::logic::ground::{Instantiator, Pattern, Slot};
use crate::logic::syntax::saturating_pow;
use crate::logic::{AtomId, Clause, GroundAtom, GroundProgram, GroundProgramBuilder, PredClass, PredKey, Program};
use crate::symbol::Sym;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroundError {
    #[error("clause `{clause}` is not domain-restricted: {var} does not occur in a positive extensional atom")]
    NotDomainRestricted { clause: String, var: String },
    #[error("{pred} is declared extensional but is defined by a clause that is not a ground fact")]
    InvalidSplit { pred: String },
}

/// Partition of a program's predicates into extensional and intensional.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EdbSplit {
    edb: BTreeSet<PredKey>,
    idb: BTreeSet<PredKey>,
}

impl EdbSplit {
    /// Extensional iff every defining clause is a fact, so predicates with no
    /// clauses at all are extensional. `#edb`/`#idb` directives in the program
    /// take precedence.
    pub fn auto(program: &Program) -> EdbSplit {
        let mut split = EdbSplit::by_clauses(program);
        for &(pred, class) in program.directives() {
            split.edb.remove(&pred);
            split.idb.remove(&pred);
            match class {
                PredClass::Extensional => split.edb.insert(pred),
                PredClass::Intensional => split.idb.insert(pred),
            };
        }
        split
    }

    /// The automatic split, ignoring directives.
    pub fn by_clauses(program: &Program) -> EdbSplit {
        let mut idb = BTreeSet::new();
        for c in program.clauses() {
            if !c.is_fact() {
                idb.insert(c.head.key());
            }
        }
        let edb = program.predicates().into_iter().filter(|p| !idb.contains(p)).collect();
        EdbSplit { edb, idb }
    }

    pub fn from_parts(edb: impl IntoIterator<Item = PredKey>, idb: impl IntoIterator<Item = PredKey>) -> EdbSplit {
        EdbSplit { edb: edb.into_iter().collect(), idb: idb.into_iter().collect() }
    }

    /// Predicates not mentioned on either side count as intensional.
    pub fn is_edb(&self, pred: &PredKey) -> bool {
        self.edb.contains(pred)
    }

    pub fn edb_predicates(&self) -> &BTreeSet<PredKey> {
        &self.edb
    }

    pub fn idb_predicates(&self) -> &BTreeSet<PredKey> {
        &self.idb
    }
}

/// First variable of `clause` that is not bound by a positive extensional
/// body atom.
fn unrestricted_var(clause: &Clause, split: &EdbSplit) -> Option<Sym> {
    let bound: HashSet<Sym> = clause.pos.iter().filter(|a| split.is_edb(&a.key())).flat_map(|a| a.vars()).collect();
    clause.vars().into_iter().find(|v| !bound.contains(v))
}

pub fn check_domain_restricted(program: &Program, split: &EdbSplit) -> bool {
    program.clauses().all(|c| unrestricted_var(c, split).is_none())
}

type Tuple = SmallVec<[Sym; 6]>;

#[derive(Default)]
struct Relation {
    tuples: Vec<Tuple>,
    members: HashSet<Tuple, FxBuildHasher>,
    /// Bound-column mask to (key columns' values → tuple indices).
    indexes: HashMap<u32, HashMap<Tuple, Vec<u32>, FxBuildHasher>>,
}

impl Relation {
    fn insert(&mut self, t: Tuple) {
        if self.members.insert(t.clone()) {
            self.tuples.push(t);
        }
    }

    fn ensure_index(&mut self, mask: u32) {
        if mask == 0 || self.indexes.contains_key(&mask) {
            return;
        }
        let mut idx: HashMap<Tuple, Vec<u32>, FxBuildHasher> = HashMap::default();
        for (i, t) in self.tuples.iter().enumerate() {
            let key: Tuple = t.iter().enumerate().filter(|(c, _)| mask >> c & 1 == 1).map(|(_, &s)| s).collect();
            idx.entry(key).or_default().push(i as u32);
        }
        self.indexes.insert(mask, idx);
    }
}

/// One positive extensional atom in join order.
struct Step {
    rel: PredKey,
    mask: u32,
    /// Values of the bound columns, in column order.
    key: SmallVec<[Slot; 6]>,
    /// Columns that bind a fresh variable.
    binds: SmallVec<[(usize, usize); 6]>,
    /// Columns repeating a variable bound earlier in the same atom.
    checks: SmallVec<[(usize, usize); 6]>,
}

struct Plan {
    inst: Instantiator,
    steps: Vec<Step>,
    /// Positions in `inst.pos` of intensional atoms.
    idb_pos: Vec<usize>,
    /// Negative atoms, each flagged extensional or not.
    neg: Vec<(usize, bool)>,
}

fn plan(clause: &Clause, split: &EdbSplit) -> Plan {
    let edb_atoms: Vec<usize> = (0..clause.pos.len()).filter(|&i| split.is_edb(&clause.pos[i].key())).collect();
    let mut order: Vec<Sym> = Vec::new();
    for &i in &edb_atoms {
        for v in clause.pos[i].vars() {
            if !order.contains(&v) {
                order.push(v);
            }
        }
    }
    let inst = Instantiator::with_order(clause, order);
    let mut bound = vec![false; inst.vars.len()];
    let mut steps = Vec::new();
    for &i in &edb_atoms {
        let p: &Pattern = &inst.pos[i];
        let mut step =
            Step { rel: p.key(), mask: 0, key: SmallVec::new(), binds: SmallVec::new(), checks: SmallVec::new() };
        let mut fresh_here: SmallVec<[usize; 6]> = SmallVec::new();
        for (col, slot) in p.args.iter().enumerate() {
            match *slot {
                Slot::Const(_) => {
                    step.mask |= 1 << col;
                    step.key.push(*slot);
                }
                Slot::Var(v) if bound[v] => {
                    step.mask |= 1 << col;
                    step.key.push(*slot);
                }
                Slot::Var(v) if fresh_here.contains(&v) => step.checks.push((col, v)),
                Slot::Var(v) => {
                    fresh_here.push(v);
                    step.binds.push((col, v));
                }
            }
        }
        for v in fresh_here {
            bound[v] = true;
        }
        steps.push(step);
    }
    let idb_pos = (0..clause.pos.len()).filter(|i| !edb_atoms.contains(i)).collect();
    let neg = clause.neg.iter().enumerate().map(|(i, a)| (i, split.is_edb(&a.key()))).collect();
    Plan { inst, steps, idb_pos, neg }
}

fn check_split(program: &Program, split: &EdbSplit) -> Result<(), GroundError> {
    for c in program.clauses() {
        if split.is_edb(&c.head.key()) && !(c.is_fact() && c.head.is_ground()) {
            return Err(GroundError::InvalidSplit { pred: c.head.key().to_string() });
        }
    }
    Ok(())
}

/// Grounds a domain-restricted program by joining, for each clause, the
/// relations of its positive extensional atoms from left to right.
///
/// Extensional facts are kept as ground facts. Positive extensional body
/// atoms are dropped from ground bodies since they hold in every model; a
/// negative extensional literal either drops the clause (the atom is a fact)
/// or is itself dropped (it is not).
pub fn relational_ground(program: &Program, split: &EdbSplit) -> Result<GroundProgram, GroundError> {
    check_split(program, split)?;
    for c in program.clauses() {
        if let Some(v) = unrestricted_var(c, split) {
            return Err(GroundError::NotDomainRestricted { clause: c.to_string(), var: v.to_string() });
        }
    }

    let mut relations: HashMap<PredKey, Relation> = HashMap::new();
    for p in split.edb_predicates() {
        relations.entry(*p).or_default();
    }
    let mut builder = GroundProgramBuilder::new();
    for c in program.clauses() {
        if split.is_edb(&c.head.key()) {
            let g = c.head.to_ground().expect("checked by check_split");
            relations.entry(g.key()).or_default().insert(g.args.clone());
            let id = builder.intern(g);
            builder.add_ids(id, &mut Vec::new(), &mut Vec::new());
        }
    }

    for c in program.clauses() {
        if split.is_edb(&c.head.key()) {
            continue;
        }
        let plan = plan(c, split);
        for s in &plan.steps {
            relations.entry(s.rel).or_default().ensure_index(s.mask);
        }
        let mut binding = vec![Sym::new(""); plan.inst.vars.len()];
        let mut emitter =
            Emitter { plan: &plan, relations: &relations, builder: &mut builder, pos: Vec::new(), neg: Vec::new() };
        join(&plan, &relations, 0, &mut binding, &mut emitter);
    }
    Ok(builder.build())
}

struct Emitter<'a> {
    plan: &'a Plan,
    relations: &'a HashMap<PredKey, Relation>,
    builder: &'a mut GroundProgramBuilder,
    pos: Vec<AtomId>,
    neg: Vec<AtomId>,
}

impl Emitter<'_> {
    fn emit(&mut self, binding: &[Sym]) {
        let inst = &self.plan.inst;
        self.neg.clear();
        for &(i, edb) in &self.plan.neg {
            let g = inst.neg[i].ground(binding);
            if edb {
                if self.relations.get(&g.key()).is_some_and(|r| r.members.contains(&g.args)) {
                    return;
                }
            } else {
                let id = self.builder.intern(g);
                self.neg.push(id);
            }
        }
        self.pos.clear();
        for &i in &self.plan.idb_pos {
            let id = self.builder.intern(inst.pos[i].ground(binding));
            self.pos.push(id);
        }
        let head = self.builder.intern(inst.head.ground(binding));
        self.builder.add_ids(head, &mut self.pos, &mut self.neg);
    }
}

fn join(plan: &Plan, relations: &HashMap<PredKey, Relation>, depth: usize, binding: &mut [Sym], out: &mut Emitter<'_>) {
    let Some(step) = plan.steps.get(depth) else {
        out.emit(binding);
        return;
    };
    let rel = &relations[&step.rel];
    let resolve = |s: &Slot, binding: &[Sym]| match *s {
        Slot::Const(c) => c,
        Slot::Var(v) => binding[v],
    };
    if step.binds.is_empty() {
        // Fully bound: a membership test.
        let mut t: Tuple = SmallVec::new();
        let mut k = step.key.iter();
        for col in 0..step.rel.arity {
            if step.mask >> col & 1 == 1 {
                t.push(resolve(k.next().unwrap(), binding));
            } else {
                t.push(Sym::new(""));
            }
        }
        if rel.members.contains(&t) {
            join(plan, relations, depth + 1, binding, out);
        }
        return;
    }
    let mut visit = |t: &Tuple, binding: &mut [Sym]| {
        for &(col, v) in &step.binds {
            binding[v] = t[col];
        }
        if step.checks.iter().all(|&(col, v)| binding[v] == t[col]) {
            join(plan, relations, depth + 1, binding, out);
        }
    };
    if step.mask == 0 {
        for t in &rel.tuples {
            visit(t, binding);
        }
    } else {
        let key: Tuple = step.key.iter().map(|s| resolve(s, binding)).collect();
        if let Some(hits) = rel.indexes[&step.mask].get(&key) {
            for &i in hits {
                visit(&rel.tuples[i as usize], binding);
            }
        }
    }
}

/// Naive grounding with dead instances removed: substitutions range over the
/// whole Herbrand universe, but an instance is skipped as soon as one of its
/// positive body atoms belongs to a fact-only predicate without being one of
/// its facts. Such an atom heads no clause, so it is absent from every
/// reduct's least model and every supported model, and the skipped instance
/// never fires. Kept instances are copied verbatim, bodies included.
pub fn naive_ground_live(program: &Program) -> GroundProgram {
    let split = EdbSplit::by_clauses(program);
    let facts: HashSet<GroundAtom> =
        program.clauses().filter(|c| split.is_edb(&c.head.key())).filter_map(|c| c.head.to_ground()).collect();
    let universe = program.constants();
    let mut builder = GroundProgramBuilder::new();
    for c in program.clauses() {
        Instantiator::new(c)
            .run_over_universe(&universe, &mut builder, |a| !split.is_edb(&a.key()) || facts.contains(a));
    }
    builder.build()
}

/// Bounds on the clause count of the naive grounding, without building it.
/// Distinct substitutions of one clause give distinct instances, so the
/// largest per-clause count `|U|^vars` is a lower bound; the sum over clauses
/// is an upper bound. Both saturate at `u128::MAX`.
pub fn naive_size_bounds(program: &Program) -> (u128, u128) {
    let u = program.constants().len() as u128;
    program
        .clauses()
        .map(|c| saturating_pow(u, c.vars().len()))
        .fold((0, 0), |(lo, hi), n| (lo.max(n), hi.saturating_add(n)))
}
