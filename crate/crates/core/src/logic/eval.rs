//! Bottom-up evaluation of a non-ground program whose negative literals are
//! decided by a fixed interpretation.
//!
//! With `guess` fixed, evaluating `not a` as "`a` is not in `guess`" turns the
//! program into the reduct with respect to `guess`, and the fixpoint reached
//! here is that reduct's least model. This avoids materialising the full
//! grounding when only one candidate model is of interest.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::ground::{Instantiator, Pattern, Slot};
use super::syntax::{GroundAtom, PredKey, Program};
use super::LogicError;
use crate::symbol::Sym;

#[derive(Default)]
struct Db {
    by_pred: HashMap<PredKey, Vec<GroundAtom>>,
    all: HashSet<GroundAtom>,
}

impl Db {
    fn insert(&mut self, a: GroundAtom) -> bool {
        if self.all.contains(&a) {
            return false;
        }
        self.by_pred.entry(a.key()).or_default().push(a.clone());
        self.all.insert(a);
        true
    }

    fn relation(&self, key: PredKey) -> &[GroundAtom] {
        self.by_pred.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Least model of the reduct of `program` with respect to `guess`: the
/// fixpoint of all clauses whose negative atoms are absent from `guess`.
///
/// Every variable must occur in a positive body atom.
pub fn reduct_least_model<F>(program: &Program, guess: F) -> Result<BTreeSet<GroundAtom>, LogicError>
where
    F: Fn(&GroundAtom) -> bool,
{
    let compiled: Vec<Instantiator> = program
        .clauses()
        .map(|c| {
            let safe: HashSet<Sym> = c.pos.iter().flat_map(|a| a.vars()).collect();
            match c.vars().into_iter().find(|v| !safe.contains(v)) {
                Some(v) => Err(LogicError::UnboundVariable { var: v.to_string() }),
                None => Ok(Instantiator::new(c)),
            }
        })
        .collect::<Result<_, _>>()?;

    let mut db = Db::default();
    loop {
        let mut changed = false;
        for inst in &compiled {
            let order = plan(inst, &db);
            let mut binding: Vec<Option<Sym>> = vec![None; inst.vars.len()];
            let mut derived = Vec::new();
            join(inst, &order, 0, &db, &mut binding, &mut |b| {
                let full: Vec<Sym> = b.iter().map(|s| s.unwrap()).collect();
                if inst.neg.iter().all(|p| !guess(&p.ground(&full))) {
                    derived.push(inst.head.ground(&full));
                }
            });
            for a in derived {
                changed |= db.insert(a);
            }
        }
        if !changed {
            break;
        }
    }
    Ok(db.all.into_iter().collect())
}

/// Join order for the positive body: atoms whose variables are already bound
/// go first; otherwise the atom with the smallest relation per newly bound
/// variable.
fn plan(inst: &Instantiator, db: &Db) -> Vec<usize> {
    let mut bound = vec![false; inst.vars.len()];
    let mut left: Vec<usize> = (0..inst.pos.len()).collect();
    let mut order = Vec::with_capacity(left.len());
    while !left.is_empty() {
        let score = |i: usize| -> f64 {
            let p = &inst.pos[i];
            let fresh: HashSet<usize> = p
                .args
                .iter()
                .filter_map(|s| match *s {
                    Slot::Var(v) if !bound[v] => Some(v),
                    _ => None,
                })
                .collect();
            if fresh.is_empty() {
                return f64::NEG_INFINITY;
            }
            let size = db.relation(p.key()).len() as f64;
            if size == 0.0 {
                return f64::NEG_INFINITY;
            }
            size.ln() / fresh.len() as f64
        };
        let (k, _) = left.iter().enumerate().map(|(k, &i)| (k, score(i))).fold((0, f64::INFINITY), |best, cur| {
            if cur.1 < best.1 {
                cur
            } else {
                best
            }
        });
        let i = left.remove(k);
        for s in &inst.pos[i].args {
            if let Slot::Var(v) = *s {
                bound[v] = true;
            }
        }
        order.push(i);
    }
    order
}

fn join<F>(inst: &Instantiator, order: &[usize], depth: usize, db: &Db, binding: &mut Vec<Option<Sym>>, emit: &mut F)
where
    F: FnMut(&[Option<Sym>]),
{
    if depth == order.len() {
        emit(binding);
        return;
    }
    let p: &Pattern = &inst.pos[order[depth]];
    let all_bound = p.args.iter().all(|s| match *s {
        Slot::Const(_) => true,
        Slot::Var(v) => binding[v].is_some(),
    });
    if all_bound {
        let g = GroundAtom::from_syms(
            p.pred,
            p.args.iter().map(|s| match *s {
                Slot::Const(c) => c,
                Slot::Var(v) => binding[v].unwrap(),
            }),
        );
        if db.all.contains(&g) {
            join(inst, order, depth + 1, db, binding, emit);
        }
        return;
    }
    let mut newly = Vec::new();
    for tuple in db.relation(p.key()) {
        newly.clear();
        let mut ok = true;
        for (slot, &c) in p.args.iter().zip(&tuple.args) {
            match *slot {
                Slot::Const(k) => ok = k == c,
                Slot::Var(v) => match binding[v] {
                    Some(b) => ok = b == c,
                    None => {
                        binding[v] = Some(c);
                        newly.push(v);
                    }
                },
            }
            if !ok {
                break;
            }
        }
        if ok {
            join(inst, order, depth + 1, db, binding, emit);
        }
        for &v in &newly {
            binding[v] = None;
        }
    }
}
