//! Type propagation through unification: downward from types to variables
//! (`vts`, `down`), upward from variables to terms (`type_of`, `up`), and the
//! abstract unification built from both.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::decide::Decider;
use crate::domain::{VarTyping, VtSet};
use crate::error::{Error, Result};
use crate::term::{mgu, psi, Functor, Term, Var};
use crate::types::{Prim, RuleSet, Scheme, Type};

/// A substitution from type parameters to types, with explicit top and bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeSubst {
    Top,
    Bottom,
    Map(BTreeMap<Arc<str>, Type>),
}

impl TypeSubst {
    pub fn map(pairs: impl IntoIterator<Item = (Arc<str>, Type)>) -> TypeSubst {
        TypeSubst::Map(pairs.into_iter().collect())
    }

    pub fn apply(&self, s: &Scheme) -> Type {
        match self {
            TypeSubst::Top => Type::One,
            TypeSubst::Bottom => Type::Zero,
            TypeSubst::Map(m) => s.apply(m),
        }
    }

    /// Pointwise `or`; a missing parameter reads as `0`.
    pub fn join(&self, other: &TypeSubst) -> TypeSubst {
        match (self, other) {
            (TypeSubst::Top, _) | (_, TypeSubst::Top) => TypeSubst::Top,
            (TypeSubst::Bottom, k) | (k, TypeSubst::Bottom) => k.clone(),
            (TypeSubst::Map(a), TypeSubst::Map(b)) => {
                let mut out = a.clone();
                for (p, t) in b {
                    let cur = out.remove(p).unwrap_or(Type::Zero);
                    out.insert(p.clone(), Type::or(cur, t.clone()));
                }
                TypeSubst::Map(out)
            }
        }
    }

    /// Pointwise `and` over the common parameters.
    pub fn meet(&self, other: &TypeSubst) -> TypeSubst {
        match (self, other) {
            (TypeSubst::Bottom, _) | (_, TypeSubst::Bottom) => TypeSubst::Bottom,
            (TypeSubst::Top, k) | (k, TypeSubst::Top) => k.clone(),
            (TypeSubst::Map(a), TypeSubst::Map(b)) => TypeSubst::Map(
                a.iter()
                    .filter_map(|(p, t)| b.get(p).map(|u| (p.clone(), Type::and(t.clone(), u.clone()))))
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for TypeSubst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeSubst::Top => f.write_str("top"),
            TypeSubst::Bottom => f.write_str("bottom"),
            TypeSubst::Map(m) => {
                let parts: Vec<String> = m.iter().map(|(p, t)| format!("{p}/{t}")).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
    }
}

pub type CoverSet = Vec<TypeSubst>;

fn push_unique(out: &mut CoverSet, k: TypeSubst) {
    if !out.contains(&k) {
        out.push(k);
    }
}

pub fn coverset_join(a: &[TypeSubst], b: &[TypeSubst]) -> CoverSet {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            push_unique(&mut out, x.join(y));
        }
    }
    out
}

pub fn coverset_meet(a: &[TypeSubst], b: &[TypeSubst]) -> CoverSet {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            push_unique(&mut out, x.meet(y));
        }
    }
    out
}

/// Type substitutions whose instances of `scheme` together include `r`.
pub fn cover(r: &Type, scheme: &Scheme) -> CoverSet {
    match (r, scheme) {
        (Type::One, _) => vec![TypeSubst::Top],
        (Type::Zero, _) => vec![TypeSubst::Bottom],
        (Type::Or(a, b), s) => {
            let mut out = cover(a, s);
            for k in cover(b, s) {
                push_unique(&mut out, k);
            }
            out
        }
        (Type::And(a, b), s) => coverset_meet(&cover(a, s), &cover(b, s)),
        (r, Scheme::Param(p)) => vec![TypeSubst::map([(p.clone(), r.clone())])],
        (Type::Con(c, args), Scheme::Con(d, params)) if c == d && args.len() == params.len() => {
            let mut m: BTreeMap<Arc<str>, Type> = BTreeMap::new();
            for (p, a) in params.iter().zip(args) {
                let t = match m.remove(p) {
                    Some(prev) => Type::and(prev, a.clone()),
                    None => a.clone(),
                };
                m.insert(p.clone(), t);
            }
            vec![TypeSubst::Map(m)]
        }
        _ => vec![TypeSubst::Top],
    }
}

/// Type of a term under a variable typing: the conjunction, over the rules
/// producing its principal symbol, of the rule heads instantiated by covers
/// of the argument types.
pub fn type_of(t: &Term, mu: &VarTyping, rules: &RuleSet) -> Result<Type> {
    let f = match t {
        Term::Var(x) => return Ok(mu.get(x)),
        t => t.functor().expect("non-variable term"),
    };
    let matching: Vec<_> = rules.with_functor(&f).collect();
    if matching.is_empty() {
        return match &f {
            Functor::Int(_) => Ok(Type::Prim(Prim::Integer)),
            Functor::Float(_) => Ok(Type::Prim(Prim::Float)),
            Functor::Str(_) => Ok(Type::Prim(Prim::String)),
            f if f.is_atom() => Ok(Type::Prim(Prim::Atom)),
            f => Err(Error::UnknownSymbol(f.to_string())),
        };
    }
    let arg_types = t.args().iter().map(|a| type_of(a, mu, rules)).collect::<Result<Vec<_>>>()?;
    let mut acc = Type::One;
    for rule in matching {
        let mut k: CoverSet = vec![TypeSubst::Map(BTreeMap::new())];
        for (ty, scheme) in arg_types.iter().zip(&rule.args) {
            k = coverset_join(&k, &cover(ty, scheme));
        }
        let head = Scheme::Con(rule.ctor.clone(), rule.params.clone());
        let alt = Type::or_all(k.iter().map(|kappa| kappa.apply(&head)));
        acc = Type::and(acc, alt);
    }
    Ok(acc)
}

/// Variable typings that describe every instance of `t` lying in `r`.
pub fn vts(r: &Type, t: &Term, rules: &RuleSet) -> VtSet {
    match (r, t) {
        (Type::One, _) => VtSet::top(),
        (r, Term::Var(x)) => VtSet::singleton(VarTyping::from_pairs([(x.clone(), r.clone())])),
        (Type::And(a, b), t) => vts(a, t, rules).meet(&vts(b, t, rules)),
        (Type::Or(a, b), t) => vts(a, t, rules).union(&vts(b, t, rules)),
        (Type::Zero, _) => VtSet::empty(),
        (Type::Prim(p), t) => {
            if t.functor().is_some_and(|f| p.contains(&f)) {
                VtSet::top()
            } else {
                VtSet::empty()
            }
        }
        (Type::Con(c, actual), t) => {
            let f = t.functor().expect("non-variable term");
            let mut out = VtSet::empty();
            for rule in rules.rules_for(c, &f) {
                let mut acc = VtSet::top();
                for (ty, arg) in rule.instantiate(actual).iter().zip(t.args()) {
                    acc = acc.meet(&vts(ty, arg, rules));
                    if acc.is_empty() {
                        break;
                    }
                }
                out = out.union(&acc);
            }
            out
        }
    }
}

/// Downward propagation of each typing through the equations.
pub fn down(eqs: &[(Var, Term)], s: &VtSet, rules: &RuleSet) -> VtSet {
    let mut out = VtSet::empty();
    for mu in s.iter() {
        let mut acc = VtSet::singleton(mu.clone());
        for (x, t) in eqs {
            acc = acc.meet(&vts(&mu.get(x), t, rules));
            if acc.is_empty() {
                break;
            }
        }
        out = out.union(&acc);
    }
    out
}

/// Upward propagation: each bound variable is narrowed by the type of its
/// binding.
pub fn up(eqs: &[(Var, Term)], s: &VtSet, rules: &RuleSet) -> Result<VtSet> {
    let mut out = VtSet::empty();
    for mu in s.iter() {
        let mut next = mu.clone();
        for (x, t) in eqs {
            next.set(x.clone(), Type::and(mu.get(x), type_of(t, mu, rules)?));
        }
        out.insert(next);
    }
    Ok(out)
}

pub fn solve(eqs: &[(Var, Term)], s: &VtSet, rules: &RuleSet) -> Result<VtSet> {
    up(eqs, &down(eqs, s, rules), rules)
}

/// Renames every variable of every typing.
pub fn rename_set(s: &VtSet) -> Result<VtSet> {
    let mut out = VtSet::empty();
    for t in s.iter() {
        let mut r = VarTyping::new();
        for (v, ty) in t.iter() {
            r.set(v.renamed()?, ty.clone());
        }
        out.insert(r);
    }
    Ok(out)
}

/// Abstract unification of `a1` under `s1` with `a2` under `s2`. The result
/// describes the unified bindings over the variables of `a2`'s side.
pub fn aunify(a1: &Term, s1: &VtSet, a2: &Term, s2: &VtSet, dec: &Decider) -> Result<VtSet> {
    let a1 = psi(a1)?;
    let Some(theta) = mgu(&a1, a2) else {
        return Ok(VtSet::empty());
    };
    let eqs = theta.equations();
    let joint = rename_set(s1)?.disjoint_union(s2)?;
    let solved = solve(&eqs, &joint, dec.rules())?;
    let solved = solved.map_types(|t| dec.tidy(t));
    Ok(dec.remove_redundant(&solved.restrict_out(dec)))
}

/// The abstract identity: one typing, every variable of type `1`.
pub fn id_abstract() -> VtSet {
    VtSet::top()
}
