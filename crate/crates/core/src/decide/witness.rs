//! Brute-force witness search, used to cross-check the emptiness procedure.
//!
//! Ground terms are built level by level from the rule symbols, the variable
//! encoding and one unmentioned value per built-in class. Terms are kept only
//! when their membership profile over a set of types closed under rule
//! unfolding is new, so each level stays finite and no witness is lost.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::decide::ext::ExtType;
use crate::term::{Functor, Term};
use crate::types::{RuleSet, Type};

/// Smallest-depth ground term in `e`, up to `max_depth`, if any.
pub fn enumerate_witness(e: &ExtType, rules: &RuleSet, max_depth: usize) -> Option<Term> {
    let closure = closure(e, rules);
    let profile = |t: &Term| -> Vec<bool> {
        closure.iter().map(|ty| rules.member_unchecked(t, ty)).collect()
    };
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut reps: Vec<Term> = Vec::new();
    let mut fresh: Vec<Term> = Vec::new();

    for t in constants(rules) {
        if ext_member(rules, &t, e) {
            return Some(t);
        }
        if seen.insert(profile(&t)) {
            fresh.push(t);
        }
    }
    let compound: Vec<&Functor> = rules.functors().iter().filter(|f| f.arity() > 0).collect();
    for _ in 0..max_depth {
        if fresh.is_empty() {
            break;
        }
        let old = reps.len();
        reps.append(&mut fresh);
        for f in &compound {
            let Functor::Sym { name, arity } = f else { continue };
            for args in tuples(&reps, *arity, old) {
                let t = Term::App(name.clone(), args);
                if ext_member(rules, &t, e) {
                    return Some(t);
                }
                if seen.insert(profile(&t)) {
                    fresh.push(t);
                }
            }
        }
    }
    None
}

/// Membership in an extended type, straight from the definition.
pub fn ext_member(rules: &RuleSet, t: &Term, e: &ExtType) -> bool {
    match e {
        ExtType::Base(ty) => rules.member_unchecked(t, ty),
        ExtType::Not(x) => !ext_member(rules, t, x),
        ExtType::And(a, b) => ext_member(rules, t, a) && ext_member(rules, t, b),
        ExtType::Or(a, b) => ext_member(rules, t, a) || ext_member(rules, t, b),
    }
}

fn constants(rules: &RuleSet) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    let mut names: BTreeSet<Arc<str>> = BTreeSet::new();
    let mut ints = BTreeSet::new();
    for f in rules.functors() {
        match f {
            Functor::Sym { name, arity: 0 } => {
                names.insert(name.clone());
                out.push(Term::App(name.clone(), vec![]));
            }
            Functor::Int(i) => {
                ints.insert(*i);
                out.push(Term::Int(*i));
            }
            Functor::Float(x) => out.push(Term::Float(*x)),
            Functor::Str(s) => out.push(Term::Str(s.clone())),
            _ => {}
        }
    }
    let mut k = 0;
    while names.contains(format!("fresh{k}").as_str()) {
        k += 1;
    }
    out.push(Term::atom(&format!("fresh{k}")));
    let mut i = 7919;
    while ints.contains(&i) {
        i += 1;
    }
    out.push(Term::Int(i));
    let mut x = 0.5;
    while rules.covers_functor(&Functor::Float(x.into())) {
        x += 1.0;
    }
    out.push(Term::float(x));
    let mut s = String::from("s");
    while rules.covers_functor(&Functor::Str(s.as_str().into())) {
        s.push('s');
    }
    out.push(Term::string(&s));
    out.push(Term::rho());
    out
}

/// Argument tuples over `reps` with at least one component at index
/// `>= new_from`, so that every tuple is new at this level.
fn tuples(reps: &[Term], n: usize, new_from: usize) -> Vec<Vec<Term>> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    if reps.is_empty() {
        return out;
    }
    loop {
        if idx.iter().any(|&i| i >= new_from) {
            out.push(idx.iter().map(|&i| reps[i].clone()).collect());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < reps.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// All types whose membership can influence membership in `e`.
fn closure(e: &ExtType, rules: &RuleSet) -> Vec<Type> {
    let mut out: Vec<Type> = Vec::new();
    let mut seen: HashSet<Type> = HashSet::new();
    let mut work: Vec<Type> = e.base_types().into_iter().cloned().collect();
    while let Some(t) = work.pop() {
        if !seen.insert(t.clone()) {
            continue;
        }
        match &t {
            Type::And(a, b) | Type::Or(a, b) => {
                work.push((**a).clone());
                work.push((**b).clone());
            }
            Type::Con(c, args) => {
                for r in rules.rules().iter().filter(|r| r.ctor == *c) {
                    work.extend(r.instantiate(args));
                }
            }
            _ => {}
        }
        out.push(t);
    }
    out
}
