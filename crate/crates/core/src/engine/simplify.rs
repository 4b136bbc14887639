//! The simplified analysis: types without `or`/`and` and a single typing
//! per point.

use std::collections::BTreeSet;

use crate::decide::Decider;
use crate::domain::{VarTyping, VtSet};
use crate::types::Type;

/// Least upper bound without `or`: the larger side when comparable, the
/// argument-wise bound for equal constructors, otherwise `1`.
pub fn lub(a: &Type, b: &Type, dec: &Decider) -> Type {
    if dec.includes_unchecked(b, a) {
        return b.clone();
    }
    if dec.includes_unchecked(a, b) {
        return a.clone();
    }
    match (a, b) {
        (Type::Con(c, xs), Type::Con(d, ys)) if c == d => {
            Type::Con(c.clone(), xs.iter().zip(ys).map(|(x, y)| lub(x, y, dec)).collect())
        }
        _ => Type::One,
    }
}

/// Removes `or` by bounding and `and` by keeping the included side, or the
/// left one when neither is.
pub fn simplify(t: &Type, dec: &Decider) -> Type {
    match t {
        Type::Or(a, b) => lub(&simplify(a, dec), &simplify(b, dec), dec),
        Type::And(a, b) => {
            let (x, y) = (simplify(a, dec), simplify(b, dec));
            if dec.includes_unchecked(&x, &y) {
                y
            } else {
                x
            }
        }
        Type::Con(c, args) => Type::Con(c.clone(), args.iter().map(|a| simplify(a, dec)).collect()),
        other => other.clone(),
    }
}

/// Collapses a set into at most one typing.
pub fn collapse(s: &VtSet, dec: &Decider) -> VtSet {
    let live: Vec<VarTyping> = s
        .iter()
        .filter(|t| !t.iter().any(|(_, ty)| dec.is_empty_unchecked(ty)))
        .map(|t| t.map_types(|ty| simplify(ty, dec)))
        .collect();
    if live.is_empty() {
        return VtSet::empty();
    }
    let vars: BTreeSet<_> = live.iter().flat_map(|t| t.vars().cloned()).collect();
    let mut out = VarTyping::new();
    for v in vars {
        let ty = live.iter().map(|t| t.get(&v)).reduce(|a, b| lub(&a, &b, dec)).unwrap_or(Type::One);
        out.set(v, ty);
    }
    VtSet::singleton(out)
}
