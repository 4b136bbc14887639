//! Inclusion and redundancy for sets of variable typings.

use std::collections::BTreeSet;

use crate::decide::{Decider, ExtType};
use crate::domain::{VarTyping, VtSet};
use crate::error::Result;
use crate::term::Var;
use crate::types::Type;

impl Decider<'_> {
    /// `a` describes no more substitutions than `b`.
    pub fn vtset_leq(&self, a: &VtSet, b: &VtSet) -> Result<bool> {
        self.validate_set(a)?;
        self.validate_set(b)?;
        Ok(self.vtset_leq_unchecked(a, b))
    }

    pub fn vtset_equiv(&self, a: &VtSet, b: &VtSet) -> Result<bool> {
        Ok(self.vtset_leq(a, b)? && self.vtset_leq(b, a)?)
    }

    pub(crate) fn vtset_leq_unchecked(&self, a: &VtSet, b: &VtSet) -> bool {
        a.iter().all(|t| self.typing_covered(t, b.typings()))
    }

    fn validate_set(&self, s: &VtSet) -> Result<()> {
        for t in s.iter() {
            for (_, ty) in t.iter() {
                self.rules().validate(ty)?;
            }
        }
        Ok(())
    }

    /// Removes typings that are empty or covered by the union of the others.
    /// Candidates are visited in ascending canonical order and compared with
    /// the typings still present.
    pub fn remove_redundant(&self, s: &VtSet) -> VtSet {
        let mut items: Vec<(String, VarTyping)> = s
            .iter()
            .filter(|t| !t.iter().any(|(_, ty)| self.is_empty_unchecked(ty)))
            .map(|t| (t.canonical_key(), t.clone()))
            .collect();
        items.sort_by(|a, b| a.0.cmp(&b.0));
        items.dedup_by(|a, b| a.0 == b.0);
        let mut alive = vec![true; items.len()];
        for i in 0..items.len() {
            let others: Vec<VarTyping> = items
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i && alive[*j])
                .map(|(_, (_, t))| t.clone())
                .collect();
            if self.typing_covered(&items[i].1, &others) {
                alive[i] = false;
            }
        }
        VtSet::from_typings(
            items.into_iter().zip(alive).filter(|(_, a)| *a).map(|((_, t), _)| t),
        )
    }

    /// `t` and not (or of `others`) is empty. The complement of each typing
    /// is a disjunction over variables, so this searches for a choice of one
    /// variable per typing that keeps every variable's type non-empty.
    fn typing_covered(&self, t: &VarTyping, others: &[VarTyping]) -> bool {
        let mut vars: BTreeSet<Var> = t.vars().cloned().collect();
        for o in others {
            vars.extend(o.vars().cloned());
        }
        let vars: Vec<Var> = vars.into_iter().collect();
        let own: Vec<Type> = vars.iter().map(|v| t.get(v)).collect();
        if own.iter().any(|ty| self.is_empty_unchecked(ty)) {
            return true;
        }
        if others.iter().any(|o| o.is_top()) {
            return true;
        }
        let rows: Vec<Vec<Type>> =
            others.iter().map(|o| vars.iter().map(|v| o.get(v)).collect()).collect();
        let mut negs: Vec<Vec<Type>> = vec![Vec::new(); vars.len()];
        !self.escape(&own, &rows, &mut negs, 0)
    }

    fn escape(&self, own: &[Type], rows: &[Vec<Type>], negs: &mut [Vec<Type>], j: usize) -> bool {
        if j == rows.len() {
            return true;
        }
        for p in 0..own.len() {
            let ty = &rows[j][p];
            if *ty == Type::One {
                continue;
            }
            negs[p].push(ty.clone());
            let e = negs[p]
                .iter()
                .fold(ExtType::Base(own[p].clone()), |acc, n| {
                    ExtType::and(acc, ExtType::not(ExtType::Base(n.clone())))
                });
            let ok = !self.etype_unchecked(&e) && self.escape(own, rows, negs, j + 1);
            negs[p].pop();
            if ok {
                return true;
            }
        }
        false
    }
}
