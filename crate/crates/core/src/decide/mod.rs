//! Decision procedures: emptiness, inclusion and equivalence of types and of
//! variable-typing sets.

mod ext;
mod search;
mod tidy;
mod vtset;
mod witness;

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

use serde::Serialize;

pub use ext::{ExtType, SeqExpr};
pub use witness::{enumerate_witness, ext_member};

use crate::error::Result;
use crate::types::{RuleSet, Type};
use search::{dnf_key, ext_dnf, Search};

/// Memo table of emptiness answers keyed by canonical form.
#[derive(Debug, Default, Clone)]
pub struct EmptinessCache {
    table: HashMap<String, bool>,
    pub hits: u64,
    pub misses: u64,
}

impl EmptinessCache {
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Counters over emptiness checks.
#[derive(Debug, Default, Clone, Copy, PartialEq, Serialize)]
pub struct CheckStats {
    pub total_checks: u64,
    pub distinct_checks: u64,
    /// Checks that ran the search rather than hitting the table.
    pub computations: u64,
}

impl CheckStats {
    /// Average number of times each distinct check was requested.
    pub fn repetition(&self) -> f64 {
        if self.distinct_checks == 0 {
            0.0
        } else {
            self.total_checks as f64 / self.distinct_checks as f64
        }
    }
}

/// Entry point for all semantic questions about types over a rule set.
pub struct Decider<'r> {
    rules: &'r RuleSet,
    tabling: bool,
    cache: RefCell<EmptinessCache>,
    seen: RefCell<HashSet<String>>,
    stats: RefCell<CheckStats>,
}

impl<'r> Decider<'r> {
    pub fn new(rules: &'r RuleSet) -> Decider<'r> {
        Decider::with_tabling(rules, true)
    }

    pub fn with_tabling(rules: &'r RuleSet, tabling: bool) -> Decider<'r> {
        Decider {
            rules,
            tabling,
            cache: RefCell::new(EmptinessCache::default()),
            seen: RefCell::new(HashSet::new()),
            stats: RefCell::new(CheckStats::default()),
        }
    }

    pub fn rules(&self) -> &'r RuleSet {
        self.rules
    }

    pub fn tabling(&self) -> bool {
        self.tabling
    }

    pub fn stats(&self) -> CheckStats {
        *self.stats.borrow()
    }

    pub fn cache(&self) -> EmptinessCache {
        self.cache.borrow().clone()
    }

    /// True when `e` denotes the empty set.
    pub fn etype(&self, e: &ExtType) -> Result<bool> {
        for t in e.base_types() {
            self.rules.validate(t)?;
        }
        Ok(self.etype_unchecked(e))
    }

    pub(crate) fn etype_unchecked(&self, e: &ExtType) -> bool {
        let goals = ext_dnf(e);
        let key = dnf_key(&goals);
        {
            let mut st = self.stats.borrow_mut();
            st.total_checks += 1;
            if self.seen.borrow_mut().insert(key.clone()) {
                st.distinct_checks += 1;
            }
        }
        if self.tabling {
            let mut cache = self.cache.borrow_mut();
            if let Some(&v) = cache.table.get(&key) {
                cache.hits += 1;
                return v;
            }
            cache.misses += 1;
        }
        let empty = !Search::new(self.rules).nonempty_dnf(&goals);
        self.stats.borrow_mut().computations += 1;
        if self.tabling {
            self.cache.borrow_mut().table.insert(key, empty);
        }
        empty
    }

    /// Emptiness together with the number of search states explored. Bypasses
    /// the table and the counters.
    pub fn etype_with_states(&self, e: &ExtType) -> Result<(bool, usize)> {
        for t in e.base_types() {
            self.rules.validate(t)?;
        }
        let mut s = Search::new(self.rules);
        let nonempty = s.nonempty_dnf(&ext_dnf(e));
        Ok((!nonempty, s.states()))
    }

    pub(crate) fn is_empty_unchecked(&self, t: &Type) -> bool {
        match t {
            Type::Zero => true,
            Type::One | Type::Prim(_) => false,
            _ => self.etype_unchecked(&ExtType::Base(t.clone())),
        }
    }

    pub fn is_empty(&self, t: &Type) -> Result<bool> {
        self.etype(&ExtType::Base(t.clone()))
    }

    /// `sub` is included in `sup`.
    pub fn includes(&self, sup: &Type, sub: &Type) -> Result<bool> {
        self.etype(&ExtType::diff(sub.clone(), sup.clone()))
    }

    pub(crate) fn includes_unchecked(&self, sup: &Type, sub: &Type) -> bool {
        if sup == sub || *sup == Type::One || *sub == Type::Zero {
            return true;
        }
        self.etype_unchecked(&ExtType::diff(sub.clone(), sup.clone()))
    }

    pub fn equivalent(&self, a: &Type, b: &Type) -> Result<bool> {
        Ok(self.includes(a, b)? && self.includes(b, a)?)
    }

    /// Emptiness of a sequence expression: complements are pushed into the
    /// positions, the result is put in disjunctive form, and a conjunction
    /// is empty when one of its positions is.
    pub fn etype_seq(&self, e: &SeqExpr) -> Result<bool> {
        for conj in e.conjunctions() {
            let mut all_nonempty = true;
            for items in conj {
                let pos = items.into_iter().reduce(ExtType::and).unwrap_or(Type::One.into());
                if self.etype(&pos)? {
                    all_nonempty = false;
                    break;
                }
            }
            if all_nonempty {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
