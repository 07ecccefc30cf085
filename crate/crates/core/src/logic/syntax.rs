//! Abstract syntax of function-free logic programs with negation as failure.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexSet;
use smallvec::SmallVec;

use crate::symbol::Sym;

/// A constant or a variable. Constants and variables live in disjoint
/// namespaces: `Const(x)` and `Var(x)` never denote the same thing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Const(Sym),
    Var(Sym),
}

impl Term {
    pub fn constant(name: &str) -> Term {
        Term::Const(Sym::new(name))
    }

    pub fn var(name: &str) -> Term {
        Term::Var(Sym::new(name))
    }

    pub fn as_var(self) -> Option<Sym> {
        match self {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) | Term::Var(c) => write!(f, "{c}"),
        }
    }
}

/// Predicate identity: `state/1` and `state/2` are different predicates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PredKey {
    pub name: Sym,
    pub arity: usize,
}

impl PredKey {
    pub fn new(name: &str, arity: usize) -> PredKey {
        PredKey { name: Sym::new(name), arity }
    }
}

impl Ord for PredKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name.cmp(&other.name).then(self.arity.cmp(&other.arity))
    }
}

impl PartialOrd for PredKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PredKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Atom {
    pub pred: Sym,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: &str, args: impl IntoIterator<Item = Term>) -> Atom {
        Atom { pred: Sym::new(pred), args: args.into_iter().collect() }
    }

    pub fn prop(pred: &str) -> Atom {
        Atom { pred: Sym::new(pred), args: Vec::new() }
    }

    pub fn key(&self) -> PredKey {
        PredKey { name: self.pred, arity: self.args.len() }
    }

    pub fn vars(&self) -> impl Iterator<Item = Sym> + '_ {
        self.args.iter().filter_map(|t| t.as_var())
    }

    pub fn is_ground(&self) -> bool {
        self.vars().next().is_none()
    }

    pub fn to_ground(&self) -> Option<GroundAtom> {
        let mut args = SmallVec::with_capacity(self.args.len());
        for t in &self.args {
            match t {
                Term::Const(c) => args.push(*c),
                Term::Var(_) => return None,
            }
        }
        Some(GroundAtom { pred: self.pred, args })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pred)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, t) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A variable-free atom.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroundAtom {
    pub pred: Sym,
    pub args: SmallVec<[Sym; 6]>,
}

impl GroundAtom {
    pub fn new<'a>(pred: &str, args: impl IntoIterator<Item = &'a str>) -> GroundAtom {
        GroundAtom { pred: Sym::new(pred), args: args.into_iter().map(Sym::new).collect() }
    }

    pub fn from_syms(pred: Sym, args: impl IntoIterator<Item = Sym>) -> GroundAtom {
        GroundAtom { pred, args: args.into_iter().collect() }
    }

    pub fn key(&self) -> PredKey {
        PredKey { name: self.pred, arity: self.args.len() }
    }

    pub fn to_atom(&self) -> Atom {
        Atom { pred: self.pred, args: self.args.iter().map(|&c| Term::Const(c)).collect() }
    }
}

/// Predicate name, then arity, then arguments left to right.
impl Ord for GroundAtom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pred
            .cmp(&other.pred)
            .then(self.args.len().cmp(&other.args.len()))
            .then_with(|| self.args.iter().cmp(other.args.iter()))
    }
}

impl PartialOrd for GroundAtom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pred)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, c) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// `head :- pos_body, not neg_body.`
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Clause {
    pub head: Atom,
    pub pos: Vec<Atom>,
    pub neg: Vec<Atom>,
}

impl Clause {
    pub fn new(head: Atom, pos: Vec<Atom>, neg: Vec<Atom>) -> Clause {
        Clause { head, pos, neg }
    }

    pub fn fact(head: Atom) -> Clause {
        Clause { head, pos: Vec::new(), neg: Vec::new() }
    }

    pub fn is_fact(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn is_ground(&self) -> bool {
        self.atoms().all(Atom::is_ground)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        std::iter::once(&self.head).chain(&self.pos).chain(&self.neg)
    }

    /// Distinct variables in order of first occurrence (head, then positive
    /// body, then negative body).
    pub fn vars(&self) -> Vec<Sym> {
        let mut seen = IndexSet::new();
        for atom in self.atoms() {
            seen.extend(atom.vars());
        }
        seen.into_iter().collect()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.is_fact() {
            f.write_str(" :- ")?;
            let lits = self.pos.iter().map(|a| a.to_string()).chain(self.neg.iter().map(|a| format!("not {a}")));
            for (i, lit) in lits.enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&lit)?;
            }
        }
        f.write_str(".")
    }
}

/// Override of the automatic extensional/intensional classification.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PredClass {
    Extensional,
    Intensional,
}

/// A finite set of clauses. Insertion order is kept for printing and for
/// deterministic grounding; duplicate clauses collapse.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Program {
    clauses: IndexSet<Clause>,
    directives: Vec<(PredKey, PredClass)>,
}

impl Program {
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> Program {
        Program { clauses: clauses.into_iter().collect(), directives: Vec::new() }
    }

    pub fn push(&mut self, clause: Clause) -> bool {
        self.clauses.insert(clause)
    }

    pub fn extend(&mut self, clauses: impl IntoIterator<Item = Clause>) {
        self.clauses.extend(clauses);
    }

    pub fn add_directive(&mut self, pred: PredKey, class: PredClass) {
        self.directives.retain(|(p, _)| *p != pred);
        self.directives.push((pred, class));
    }

    pub fn directives(&self) -> &[(PredKey, PredClass)] {
        &self.directives
    }

    pub fn clauses(&self) -> impl ExactSizeIterator<Item = &Clause> {
        self.clauses.iter()
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn is_ground(&self) -> bool {
        self.clauses.iter().all(Clause::is_ground)
    }

    /// The Herbrand universe: every constant occurring in the program, in
    /// printing order.
    pub fn constants(&self) -> Vec<Sym> {
        let set: BTreeSet<Sym> = self
            .clauses
            .iter()
            .flat_map(Clause::atoms)
            .flat_map(|a| a.args.iter())
            .filter_map(|t| match t {
                Term::Const(c) => Some(*c),
                Term::Var(_) => None,
            })
            .collect();
        set.into_iter().collect()
    }

    pub fn predicates(&self) -> Vec<PredKey> {
        let set: BTreeSet<PredKey> = self.clauses.iter().flat_map(Clause::atoms).map(Atom::key).collect();
        set.into_iter().collect()
    }

    /// Size of the (untyped) Herbrand base: sum over predicates of
    /// |universe|^arity. Saturates instead of overflowing.
    pub fn herbrand_base_len(&self) -> u128 {
        let u = self.constants().len() as u128;
        self.predicates().iter().map(|p| saturating_pow(u, p.arity)).fold(0u128, u128::saturating_add)
    }

    /// Every ground atom over the program's predicates and constants.
    /// Only sensible for small programs; see [`Program::herbrand_base_len`].
    pub fn herbrand_base(&self) -> Vec<GroundAtom> {
        let universe = self.constants();
        let mut out = Vec::new();
        for p in self.predicates() {
            let mut args: SmallVec<[Sym; 6]> = SmallVec::new();
            collect_tuples(p.name, p.arity, &universe, &mut args, &mut out);
        }
        out
    }
}

fn collect_tuples(
    pred: Sym,
    arity: usize,
    universe: &[Sym],
    prefix: &mut SmallVec<[Sym; 6]>,
    out: &mut Vec<GroundAtom>,
) {
    if prefix.len() == arity {
        out.push(GroundAtom { pred, args: prefix.clone() });
        return;
    }
    for &c in universe {
        prefix.push(c);
        collect_tuples(pred, arity, universe, prefix, out);
        prefix.pop();
    }
}

pub(crate) fn saturating_pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pred, class) in &self.directives {
            let kw = match class {
                PredClass::Extensional => "#edb",
                PredClass::Intensional => "#idb",
            };
            writeln!(f, "{kw} {pred}.")?;
        }
        for c in &self.clauses {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str, args: &[&str]) -> Atom {
        Atom::new(
            name,
            args.iter().map(|a| {
                if a.starts_with(|c: char| c.is_ascii_uppercase()) {
                    Term::var(a)
                } else {
                    Term::constant(a)
                }
            }),
        )
    }

    #[test]
    fn arity_participates_in_identity() {
        assert_ne!(p("state", &["s0"]).key(), p("state", &["s0", "T"]).key());
    }

    #[test]
    fn clause_display_and_vars() {
        let c = Clause::new(p("p", &["X", "Y"]), vec![p("q", &["X"])], vec![p("r", &["Y"])]);
        assert_eq!(c.to_string(), "p(X,Y) :- q(X), not r(Y).");
        assert_eq!(c.vars(), vec![Sym::new("X"), Sym::new("Y")]);
        assert_eq!(Clause::fact(p("a", &[])).to_string(), "a.");
    }

    #[test]
    fn duplicates_collapse() {
        let c = Clause::fact(p("q", &["c"]));
        let prog = Program::new([c.clone(), c]);
        assert_eq!(prog.len(), 1);
    }

    #[test]
    fn herbrand_universe_and_base() {
        let prog = Program::new([
            Clause::new(p("p", &["X"]), vec![p("q", &["X"])], vec![]),
            Clause::fact(p("q", &["c"])),
            Clause::fact(p("q", &["d"])),
        ]);
        assert_eq!(prog.constants(), vec![Sym::new("c"), Sym::new("d")]);
        assert_eq!(prog.herbrand_base_len(), 4);
        assert_eq!(prog.herbrand_base().len(), 4);
    }
}
