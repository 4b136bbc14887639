//! First-order terms, substitutions and syntactic unification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use ordered_float::OrderedFloat;

use crate::error::{Error, Result};

/// Reserved name of the constant that stands for every variable in the
/// ground encoding. The lexer cannot produce it.
pub const RHO: &str = "$rho";

pub const NIL: &str = "[]";
pub const CONS: &str = "[|]";

/// A program variable. `scope` separates the variables of different clauses;
/// `primed` marks the renamed copy produced by [`psi`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: Arc<str>,
    pub scope: u32,
    pub primed: bool,
}

impl Var {
    pub fn new(name: &str) -> Var {
        Var { name: name.into(), scope: 0, primed: false }
    }

    pub fn scoped(name: &str, scope: u32) -> Var {
        Var { name: name.into(), scope, primed: false }
    }

    pub fn renamed(&self) -> Result<Var> {
        if self.primed {
            return Err(Error::AlreadyRenamed(self.to_string()));
        }
        Ok(Var { primed: true, ..self.clone() })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if self.primed {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// The principal symbol of a non-variable term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Functor {
    Sym { name: Arc<str>, arity: usize },
    Int(i64),
    Float(OrderedFloat<f64>),
    Str(Arc<str>),
}

impl Functor {
    pub fn sym(name: &str, arity: usize) -> Functor {
        Functor::Sym { name: name.into(), arity }
    }

    pub fn arity(&self) -> usize {
        match self {
            Functor::Sym { arity, .. } => *arity,
            _ => 0,
        }
    }

    /// A 0-ary symbol, i.e. a Prolog atom.
    pub fn is_atom(&self) -> bool {
        matches!(self, Functor::Sym { name, arity: 0 } if &**name != RHO)
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functor::Sym { name, arity } => write!(f, "{}/{}", quote_atom(name), arity),
            Functor::Int(i) => write!(f, "{i}"),
            Functor::Float(x) => write!(f, "{}", fmt_float(x.0)),
            Functor::Str(s) => write!(f, "{s:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var),
    App(Arc<str>, Vec<Term>),
    Int(i64),
    Float(OrderedFloat<f64>),
    Str(Arc<str>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    pub fn atom(name: &str) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    pub fn float(x: f64) -> Term {
        Term::Float(OrderedFloat(x))
    }

    pub fn string(s: &str) -> Term {
        Term::Str(s.into())
    }

    pub fn nil() -> Term {
        Term::atom(NIL)
    }

    pub fn cons(head: Term, tail: Term) -> Term {
        Term::App(CONS.into(), vec![head, tail])
    }

    /// Builds a proper list, or a partial one ending in `tail`.
    pub fn list(items: Vec<Term>, tail: Option<Term>) -> Term {
        let mut acc = tail.unwrap_or_else(Term::nil);
        for t in items.into_iter().rev() {
            acc = Term::cons(t, acc);
        }
        acc
    }

    pub fn rho() -> Term {
        Term::atom(RHO)
    }

    pub fn functor(&self) -> Option<Functor> {
        match self {
            Term::Var(_) => None,
            Term::App(name, args) => Some(Functor::Sym { name: name.clone(), arity: args.len() }),
            Term::Int(i) => Some(Functor::Int(*i)),
            Term::Float(x) => Some(Functor::Float(*x)),
            Term::Str(s) => Some(Functor::Str(s.clone())),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::App(_, args) => args,
            _ => &[],
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
            _ => true,
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            _ => {}
        }
    }

    pub fn occurs(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App(_, args) => args.iter().any(|a| a.occurs(v)),
            _ => false,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::App(_, args) if !args.is_empty() => {
                1 + args.iter().map(Term::depth).max().unwrap_or(0)
            }
            _ => 0,
        }
    }

    pub fn map_vars(&self, f: &mut impl FnMut(&Var) -> Term) -> Term {
        match self {
            Term::Var(v) => f(v),
            Term::App(name, args) => {
                Term::App(name.clone(), args.iter().map(|a| a.map_vars(f)).collect())
            }
            other => other.clone(),
        }
    }
}

/// Renames every variable of `t` to its primed copy. Fails on input that is
/// already primed, which keeps the two namespaces disjoint.
pub fn psi(t: &Term) -> Result<Term> {
    let mut err = None;
    let out = t.map_vars(&mut |v| match v.renamed() {
        Ok(w) => Term::Var(w),
        Err(e) => {
            err.get_or_insert(e);
            Term::Var(v.clone())
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Ground encoding: every variable becomes the reserved constant.
pub fn ground_encode(t: &Term) -> Term {
    t.map_vars(&mut |_| Term::rho())
}

/// An idempotent substitution in solved form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Subst {
    map: BTreeMap<Var, Term>,
}

impl Subst {
    pub fn new() -> Subst {
        Subst::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Term)>) -> Subst {
        Subst { map: pairs.into_iter().collect() }
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.map.get(v)
    }

    pub fn apply(&self, t: &Term) -> Term {
        t.map_vars(&mut |v| match self.map.get(v) {
            Some(b) => b.clone(),
            None => Term::Var(v.clone()),
        })
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    /// The equation set `{x = θ(x)}` for every bound `x`.
    pub fn equations(&self) -> Vec<(Var, Term)> {
        self.map.iter().map(|(v, t)| (v.clone(), t.clone())).collect()
    }
}

impl fmt::Display for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}/{t}")?;
        }
        f.write_str("}")
    }
}

/// Most general unifier of a set of equations, with occurs check.
pub fn mgu_all(eqs: &[(Term, Term)]) -> Option<Subst> {
    let mut bind: BTreeMap<Var, Term> = BTreeMap::new();
    let mut stack: Vec<(Term, Term)> = eqs.to_vec();
    while let Some((a, b)) = stack.pop() {
        let a = walk(&bind, &a);
        let b = walk(&bind, &b);
        match (a, b) {
            (Term::Var(x), Term::Var(y)) if x == y => {}
            (Term::Var(x), t) | (t, Term::Var(x)) => {
                if occurs_deep(&bind, &x, &t) {
                    return None;
                }
                bind.insert(x, t);
            }
            (Term::App(f, xs), Term::App(g, ys)) => {
                if f != g || xs.len() != ys.len() {
                    return None;
                }
                stack.extend(xs.into_iter().zip(ys));
            }
            (a, b) => {
                if a != b {
                    return None;
                }
            }
        }
    }
    let keys: Vec<Var> = bind.keys().cloned().collect();
    let mut map = BTreeMap::new();
    for k in keys {
        let t = resolve(&bind, &Term::Var(k.clone()));
        if t != Term::Var(k.clone()) {
            map.insert(k, t);
        }
    }
    Some(Subst { map })
}

pub fn mgu(a: &Term, b: &Term) -> Option<Subst> {
    mgu_all(&[(a.clone(), b.clone())])
}

fn walk(bind: &BTreeMap<Var, Term>, t: &Term) -> Term {
    let mut cur = t.clone();
    while let Term::Var(v) = &cur {
        match bind.get(v) {
            Some(next) => cur = next.clone(),
            None => break,
        }
    }
    cur
}

fn occurs_deep(bind: &BTreeMap<Var, Term>, v: &Var, t: &Term) -> bool {
    match walk(bind, t) {
        Term::Var(w) => &w == v,
        Term::App(_, args) => args.iter().any(|a| occurs_deep(bind, v, a)),
        _ => false,
    }
}

fn resolve(bind: &BTreeMap<Var, Term>, t: &Term) -> Term {
    match walk(bind, t) {
        Term::App(f, args) => Term::App(f, args.iter().map(|a| resolve(bind, a)).collect()),
        other => other,
    }
}

pub(crate) fn fmt_float(x: f64) -> String {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{x:.1}")
    } else {
        format!("{x}")
    }
}

pub(crate) fn quote_atom(name: &str) -> String {
    let plain = name
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_lowercase())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    let symbolic = !name.is_empty() && name.chars().all(|c| "+-*/\\^<>=~:.?@#&$".contains(c));
    if plain || symbolic || matches!(name, "[]" | "!" | ";" | "{}" | "[|]") {
        name.to_string()
    } else {
        format!("'{}'", name.replace('\\', "\\\\").replace('\'', "\\'"))
    }
}

const INFIX: &[&str] = &[
    "=", "==", "\\=", "\\==", "<", ">", "=<", ">=", "=:=", "=\\=", "is", "@<", "@>", "@=<",
    "@>=", "+", "-", "*", "/", "//", "mod",
];

fn infix_priority(op: &str) -> u32 {
    match op {
        "+" | "-" => 500,
        "*" | "/" | "//" | "mod" => 400,
        _ => 700,
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Int(i) => write!(f, "{i}"),
            Term::Float(x) => f.write_str(&fmt_float(x.0)),
            Term::Str(s) => write!(f, "{s:?}"),
            Term::App(name, args) if &**name == CONS && args.len() == 2 => {
                f.write_str("[")?;
                write!(f, "{}", args[0])?;
                let mut tail = &args[1];
                loop {
                    match tail {
                        Term::App(n, a) if &**n == CONS && a.len() == 2 => {
                            write!(f, ",{}", a[0])?;
                            tail = &a[1];
                        }
                        Term::App(n, a) if &**n == NIL && a.is_empty() => break,
                        other => {
                            write!(f, "|{other}")?;
                            break;
                        }
                    }
                }
                f.write_str("]")
            }
            Term::App(name, args) if args.len() == 2 && INFIX.contains(&&**name) => {
                let outer = infix_priority(name);
                let side = |t: &Term, left: bool| match t {
                    Term::App(n, a) if a.len() == 2 && INFIX.contains(&&**n) => {
                        let inner = infix_priority(n);
                        if inner > outer || (inner == outer && !left) {
                            format!("({t})")
                        } else {
                            t.to_string()
                        }
                    }
                    _ => t.to_string(),
                };
                let sep = if name.chars().all(|c| c.is_ascii_alphabetic()) { " " } else { "" };
                write!(f, "{}{sep}{name}{sep}{}", side(&args[0], true), side(&args[1], false))
            }
            Term::App(name, args) => {
                f.write_str(&quote_atom(name))?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}
