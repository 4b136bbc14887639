//! Abstract substitutions: sets of variable typings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::decide::Decider;
use crate::error::{Error, Result};
use crate::term::{Subst, Term, Var};
use crate::types::{RuleSet, Type};

/// A map from variables to types. Absent variables have type `1`, which is
/// never stored explicitly.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarTyping {
    map: BTreeMap<Var, Type>,
}

impl VarTyping {
    pub fn new() -> VarTyping {
        VarTyping::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Type)>) -> VarTyping {
        let mut t = VarTyping::new();
        for (v, ty) in pairs {
            t.set(v, ty);
        }
        t
    }

    pub fn get(&self, v: &Var) -> Type {
        self.map.get(v).cloned().unwrap_or(Type::One)
    }

    pub fn set(&mut self, v: Var, t: Type) {
        if t == Type::One {
            self.map.remove(&v);
        } else {
            self.map.insert(v, t);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Type)> {
        self.map.iter()
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.map.keys()
    }

    pub fn is_top(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map_types(&self, mut f: impl FnMut(&Type) -> Type) -> VarTyping {
        VarTyping::from_pairs(self.map.iter().map(|(v, t)| (v.clone(), f(t))))
    }

    /// Pointwise conjunction.
    pub fn meet(&self, other: &VarTyping) -> VarTyping {
        let mut out = self.clone();
        for (v, t) in &other.map {
            let cur = out.get(v);
            out.set(v.clone(), Type::and(cur, t.clone()));
        }
        out
    }

    /// Keeps only the variables accepted by `keep`.
    pub fn project(&self, mut keep: impl FnMut(&Var) -> bool) -> VarTyping {
        VarTyping { map: self.map.iter().filter(|(v, _)| keep(v)).map(|(v, t)| (v.clone(), t.clone())).collect() }
    }

    /// Printed form with every type in canonical form.
    pub fn canonical_key(&self) -> String {
        self.map_types(Type::canonical).to_string()
    }

    /// Whether the substitution `theta` is described by this typing.
    pub fn satisfied_by(&self, theta: &Subst, rules: &RuleSet) -> bool {
        self.map.iter().all(|(v, t)| {
            let val = theta.get(v).cloned().unwrap_or_else(|| Term::Var(v.clone()));
            rules.member_unchecked(&val, t)
        })
    }
}

impl fmt::Display for VarTyping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}/{t}")?;
        }
        f.write_str("]")
    }
}

/// A finite set of variable typings, read disjunctively.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VtSet {
    items: Vec<VarTyping>,
}

impl VtSet {
    /// The empty set: no substitution.
    pub fn empty() -> VtSet {
        VtSet::default()
    }

    /// The identity element of meet: every substitution.
    pub fn top() -> VtSet {
        VtSet { items: vec![VarTyping::new()] }
    }

    pub fn singleton(t: VarTyping) -> VtSet {
        VtSet { items: vec![t] }
    }

    pub fn from_typings(items: impl IntoIterator<Item = VarTyping>) -> VtSet {
        let mut s = VtSet::empty();
        for t in items {
            s.insert(t);
        }
        s
    }

    pub fn insert(&mut self, t: VarTyping) {
        if !self.items.contains(&t) {
            self.items.push(t);
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VarTyping> {
        self.items.iter()
    }

    pub fn typings(&self) -> &[VarTyping] {
        &self.items
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.items.iter().flat_map(|t| t.vars().cloned()).collect()
    }

    pub fn map_types(&self, mut f: impl FnMut(&Type) -> Type) -> VtSet {
        VtSet::from_typings(self.items.iter().map(|t| t.map_types(&mut f)))
    }

    /// Union of the types of `v` over all typings.
    pub fn type_of_var(&self, v: &Var) -> Type {
        Type::or_all(self.items.iter().map(|t| t.get(v)))
    }

    /// Pairwise pointwise conjunction.
    pub fn meet(&self, other: &VtSet) -> VtSet {
        let mut out = VtSet::empty();
        for a in &self.items {
            for b in &other.items {
                out.insert(a.meet(b));
            }
        }
        out
    }

    pub fn union(&self, other: &VtSet) -> VtSet {
        let mut out = self.clone();
        for t in &other.items {
            out.insert(t.clone());
        }
        out
    }

    /// Union followed by removal of redundant typings.
    pub fn join(&self, other: &VtSet, dec: &Decider) -> VtSet {
        dec.remove_redundant(&self.union(other))
    }

    /// Pairwise union of typings over disjoint variable sets.
    pub fn disjoint_union(&self, other: &VtSet) -> Result<VtSet> {
        let left = self.vars();
        if let Some(v) = other.vars().iter().find(|v| left.contains(*v)) {
            return Err(Error::DomainOverlap(v.to_string()));
        }
        let mut out = VtSet::empty();
        for a in &self.items {
            for b in &other.items {
                let mut t = a.clone();
                for (v, ty) in b.iter() {
                    t.set(v.clone(), ty.clone());
                }
                out.insert(t);
            }
        }
        Ok(out)
    }

    /// Drops typings that describe no substitution, then forgets the renamed
    /// variables.
    pub fn restrict_out(&self, dec: &Decider) -> VtSet {
        VtSet::from_typings(
            self.items
                .iter()
                .filter(|t| !t.iter().any(|(_, ty)| dec.is_empty_unchecked(ty)))
                .map(|t| t.project(|v| !v.primed)),
        )
    }

    /// Some typing describes `theta`.
    pub fn satisfied_by(&self, theta: &Subst, rules: &RuleSet) -> bool {
        self.items.iter().any(|t| t.satisfied_by(theta, rules))
    }
}

impl fmt::Display for VtSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}
