//! Stable and supported model enumeration for ground programs.

mod stable;
mod supported;

use serde::Serialize;
use thiserror::Error;

use crate::logic::Interpretation;

pub use stable::{enumerate_stable_models, for_each_stable_model};
pub use supported::{enumerate_supported_models, enumerate_supported_models_bruteforce, BRUTEFORCE_ATOM_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("{atoms} atoms exceed the brute-force limit of {limit}")]
    BaseTooLarge { atoms: usize, limit: usize },
}

/// Search cut-offs; `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveLimits {
    pub max_models: Option<usize>,
    pub max_decisions: Option<u64>,
}

impl SolveLimits {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_max_models(mut self, n: usize) -> Self {
        self.max_models = Some(n);
        self
    }

    pub fn with_max_decisions(mut self, n: u64) -> Self {
        self.max_decisions = Some(n);
        self
    }
}

/// Models in discovery order. `complete` is false when a limit stopped the
/// search early.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelSet {
    pub models: Vec<Interpretation>,
    pub complete: bool,
}

impl ModelSet {
    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn contains(&self, m: &Interpretation) -> bool {
        self.models.contains(m)
    }

    /// Models in canonical (sorted) order.
    pub fn sorted(&self) -> Vec<Interpretation> {
        let mut v = self.models.clone();
        v.sort();
        v
    }
}

/// Counters from one search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub models: usize,
    pub decisions: u64,
    pub conflicts: u64,
    pub complete: bool,
}

/// True iff no model is a proper subset of another.
pub fn is_antichain(models: &ModelSet) -> bool {
    let ms = &models.models;
    ms.iter().enumerate().all(|(i, a)| ms.iter().enumerate().all(|(j, b)| i == j || !a.is_proper_subset(b)))
}
