//! Emptiness of extended types under the ground semantics.
//!
//! A goal is a conjunction of positive and negated atoms. It is non-empty when
//! some candidate principal symbol admits argument tuples whose positions are
//! in turn non-empty goals. Goals met again while still being explored count
//! as empty on that path; this yields the least fixpoint, i.e. finite
//! witnesses only. A negative answer is memoised only once every goal it
//! relied on has completed.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::decide::ext::ExtType;
use crate::term::Functor;
use crate::types::{Prim, RuleSet, Type};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Goal {
    pub pos: Vec<Type>,
    pub neg: Vec<Type>,
}

impl Goal {
    fn top() -> Goal {
        Goal { pos: Vec::new(), neg: Vec::new() }
    }

    fn merge(&self, other: &Goal) -> Goal {
        Goal {
            pos: self.pos.iter().chain(&other.pos).cloned().collect(),
            neg: self.neg.iter().chain(&other.neg).cloned().collect(),
        }
    }

    /// Sorts, deduplicates and rejects trivially contradictory goals.
    fn normalize(mut self) -> Option<Goal> {
        self.pos.sort();
        self.pos.dedup();
        self.neg.sort();
        self.neg.dedup();
        if self.pos.iter().any(|a| self.neg.binary_search(a).is_ok()) {
            return None;
        }
        Some(self)
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.pos.iter().map(|a| a.to_string()).collect();
        parts.extend(self.neg.iter().map(|a| format!("~{a}")));
        parts.sort();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" & "))
        }
    }
}

fn canonical_atom(a: &Type) -> Type {
    match a {
        Type::Con(c, args) => Type::Con(c.clone(), args.iter().map(Type::canonical).collect()),
        other => other.clone(),
    }
}

/// DNF of `t` (positive) or of its complement (negative).
fn type_dnf(t: &Type, positive: bool) -> Vec<Goal> {
    let conjs = t.disjuncts();
    if positive {
        let mut out = Vec::new();
        'next: for conj in conjs {
            let mut g = Goal::top();
            for a in conj {
                match a {
                    Type::One => {}
                    Type::Zero => continue 'next,
                    a => g.pos.push(canonical_atom(&a)),
                }
            }
            out.push(g);
        }
        out
    } else {
        // ~(c1 or .. or cn) = ~c1 and .. and ~cn, each ~ci a disjunction.
        let mut acc = vec![Goal::top()];
        for conj in conjs {
            let mut factor = Vec::new();
            for a in conj {
                match a {
                    Type::One => {}
                    Type::Zero => {
                        factor = vec![Goal::top()];
                        break;
                    }
                    a => factor.push(Goal { pos: vec![], neg: vec![canonical_atom(&a)] }),
                }
            }
            acc = product(&acc, &factor);
            if acc.is_empty() {
                break;
            }
        }
        acc
    }
}

/// Conjunction of two DNFs, reduced so that repeated complements stay small.
fn product(a: &[Goal], b: &[Goal]) -> Vec<Goal> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            if let Some(g) = x.merge(y).normalize() {
                out.push(g);
            }
        }
    }
    absorb(out)
}

fn sorted_subset(small: &[Type], big: &[Type]) -> bool {
    small.iter().all(|a| big.binary_search(a).is_ok())
}

/// Sorts, deduplicates and drops every goal whose atoms include those of
/// another goal. Goals must be normalised.
fn absorb(mut goals: Vec<Goal>) -> Vec<Goal> {
    goals.sort();
    goals.dedup();
    goals.sort_by_key(|g| g.pos.len() + g.neg.len());
    let mut kept: Vec<Goal> = Vec::with_capacity(goals.len());
    for g in goals {
        if !kept.iter().any(|k| sorted_subset(&k.pos, &g.pos) && sorted_subset(&k.neg, &g.neg)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

fn ext_dnf_raw(e: &ExtType, positive: bool) -> Vec<Goal> {
    match (e, positive) {
        (ExtType::Base(t), p) => type_dnf(t, p),
        (ExtType::Not(x), p) => ext_dnf_raw(x, !p),
        (ExtType::And(a, b), true) | (ExtType::Or(a, b), false) => {
            product(&ext_dnf_raw(a, positive), &ext_dnf_raw(b, positive))
        }
        (ExtType::Or(a, b), true) | (ExtType::And(a, b), false) => {
            let mut v = ext_dnf_raw(a, positive);
            v.extend(ext_dnf_raw(b, positive));
            v
        }
    }
}

/// Normalised DNF of an extended type, sorted and without duplicates.
pub(crate) fn ext_dnf(e: &ExtType) -> Vec<Goal> {
    absorb(ext_dnf_raw(e, true).into_iter().filter_map(Goal::normalize).collect())
}

/// Canonical key of an extended type, used for tabling.
pub(crate) fn dnf_key(goals: &[Goal]) -> String {
    if goals.is_empty() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = goals.iter().map(|g| g.to_string()).collect();
    parts.sort();
    parts.dedup();
    parts.join(" | ")
}

/// A candidate principal symbol of a ground witness.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Head {
    Sym(Functor),
    /// A value of the given class that no rule mentions.
    Fresh(Prim),
    /// The encoding of a variable; also stands for any compound term whose
    /// symbol no rule mentions.
    Rho,
}

impl Head {
    fn in_class(&self, p: Prim) -> bool {
        match self {
            Head::Sym(f) => p.contains(f),
            Head::Fresh(q) => q.leq(p),
            Head::Rho => false,
        }
    }
}

const FRESH: [Prim; 4] = [Prim::Integer, Prim::Float, Prim::String, Prim::Atom];
const NONE: usize = usize::MAX;

pub(crate) struct Search<'a> {
    rules: &'a RuleSet,
    memo: HashMap<Goal, bool>,
    stack: HashMap<Goal, usize>,
    pending: Vec<Goal>,
    seen: HashSet<Goal>,
}

impl<'a> Search<'a> {
    pub fn new(rules: &'a RuleSet) -> Search<'a> {
        Search {
            rules,
            memo: HashMap::new(),
            stack: HashMap::new(),
            pending: Vec::new(),
            seen: HashSet::new(),
        }
    }

    /// Number of distinct goals expanded so far.
    pub fn states(&self) -> usize {
        self.seen.len()
    }

    pub fn nonempty_dnf(&mut self, goals: &[Goal]) -> bool {
        goals.iter().any(|g| self.goal(g).0)
    }

    fn goal(&mut self, g: &Goal) -> (bool, usize) {
        if let Some(&v) = self.memo.get(g) {
            return (v, NONE);
        }
        if let Some(&i) = self.stack.get(g) {
            return (false, i);
        }
        // Nothing positive to satisfy: the variable encoding is a witness.
        if g.pos.is_empty() {
            return (true, NONE);
        }
        self.seen.insert(g.clone());
        let idx = self.stack.len();
        self.stack.insert(g.clone(), idx);
        let mark = self.pending.len();
        let mut low = NONE;
        let mut found = false;
        for h in self.heads(g) {
            let (ok, l) = self.try_head(g, &h);
            low = low.min(l);
            if ok {
                found = true;
                break;
            }
        }
        self.stack.remove(g);
        if found {
            self.pending.truncate(mark);
            self.memo.insert(g.clone(), true);
            (true, NONE)
        } else if low >= idx {
            for p in self.pending.drain(mark..) {
                self.memo.insert(p, false);
            }
            self.memo.insert(g.clone(), false);
            (false, NONE)
        } else {
            self.pending.push(g.clone());
            (false, low)
        }
    }

    fn heads(&self, g: &Goal) -> Vec<Head> {
        if let Some(Type::Con(c, _)) = g.pos.iter().find(|a| matches!(a, Type::Con(..))) {
            let mut fs: Vec<Functor> = self
                .rules
                .rules()
                .iter()
                .filter(|r| r.ctor == *c)
                .map(|r| r.functor.clone())
                .collect();
            fs.sort();
            fs.dedup();
            return fs.into_iter().map(Head::Sym).collect();
        }
        let mut hs: Vec<Head> = self.rules.functors().iter().cloned().map(Head::Sym).collect();
        hs.extend(FRESH.iter().map(|&p| Head::Fresh(p)));
        hs.push(Head::Rho);
        hs.retain(|h| {
            g.pos.iter().all(|a| match a {
                Type::Prim(p) => h.in_class(*p),
                _ => true,
            })
        });
        hs
    }

    fn try_head(&mut self, g: &Goal, h: &Head) -> (bool, usize) {
        for a in &g.pos {
            if let Type::Prim(p) = a {
                if !h.in_class(*p) {
                    return (false, NONE);
                }
            }
        }
        for a in &g.neg {
            if let Type::Prim(p) = a {
                if h.in_class(*p) {
                    return (false, NONE);
                }
            }
        }
        let f = match h {
            Head::Sym(f) => f,
            // No rule produces these, so only positive constructors can fail.
            _ => return (!g.pos.iter().any(|a| matches!(a, Type::Con(..))), NONE),
        };
        let n = f.arity();
        let mut alts: Vec<Vec<Vec<Type>>> = Vec::new();
        for a in &g.pos {
            if let Type::Con(c, args) = a {
                let v: Vec<Vec<Type>> =
                    self.rules.rules_for(c, f).map(|r| r.instantiate(args)).collect();
                if v.is_empty() {
                    return (false, NONE);
                }
                alts.push(v);
            }
        }
        let mut clauses: Vec<Vec<Type>> = Vec::new();
        for a in &g.neg {
            if let Type::Con(d, args) = a {
                for r in self.rules.rules_for(d, f) {
                    if n == 0 {
                        return (false, NONE);
                    }
                    clauses.push(r.instantiate(args));
                }
            }
        }
        let mut low = NONE;
        let mut choice = vec![0usize; alts.len()];
        loop {
            let mut pos: Vec<Vec<Type>> = vec![Vec::new(); n];
            for (k, &i) in choice.iter().enumerate() {
                for (p, t) in alts[k][i].iter().enumerate() {
                    if *t != Type::One {
                        pos[p].push(t.clone());
                    }
                }
            }
            let mut neg: Vec<Vec<Type>> = vec![Vec::new(); n];
            let mut viable = true;
            for p in 0..n {
                let (ok, l) = self.position(&pos[p], &[]);
                low = low.min(l);
                if !ok {
                    viable = false;
                    break;
                }
            }
            if viable {
                let (ok, l) = self.assign(&pos, &mut neg, &clauses, 0);
                low = low.min(l);
                if ok {
                    return (true, NONE);
                }
            }
            if !advance(&mut choice, &alts) {
                break;
            }
        }
        (false, low)
    }

    /// Places each negated rule instance at some argument position, keeping
    /// every position non-empty.
    fn assign(
        &mut self,
        pos: &[Vec<Type>],
        neg: &mut [Vec<Type>],
        clauses: &[Vec<Type>],
        j: usize,
    ) -> (bool, usize) {
        if j == clauses.len() {
            return (true, NONE);
        }
        let mut low = NONE;
        for l in 0..pos.len() {
            let t = &clauses[j][l];
            match t {
                Type::One => continue,
                Type::Zero => {
                    let (ok, lw) = self.assign(pos, neg, clauses, j + 1);
                    low = low.min(lw);
                    if ok {
                        return (true, NONE);
                    }
                    continue;
                }
                _ => {}
            }
            neg[l].push(t.clone());
            let (ok, lw) = self.position(&pos[l], &neg[l]);
            low = low.min(lw);
            if ok {
                let (ok2, l2) = self.assign(pos, neg, clauses, j + 1);
                low = low.min(l2);
                if ok2 {
                    neg[l].pop();
                    return (true, NONE);
                }
            }
            neg[l].pop();
        }
        (false, low)
    }

    fn position(&mut self, pos: &[Type], neg: &[Type]) -> (bool, usize) {
        if pos.is_empty() && neg.is_empty() {
            return (true, NONE);
        }
        let mut acc = vec![Goal::top()];
        for t in pos {
            acc = product(&acc, &type_dnf(t, true));
        }
        for t in neg {
            acc = product(&acc, &type_dnf(t, false));
        }
        let mut low = NONE;
        for g in acc.into_iter().filter_map(Goal::normalize) {
            let (ok, l) = self.goal(&g);
            low = low.min(l);
            if ok {
                return (true, NONE);
            }
        }
        (false, low)
    }
}

fn advance(choice: &mut [usize], alts: &[Vec<Vec<Type>>]) -> bool {
    for k in (0..choice.len()).rev() {
        choice[k] += 1;
        if choice[k] < alts[k].len() {
            return true;
        }
        choice[k] = 0;
    }
    false
}
