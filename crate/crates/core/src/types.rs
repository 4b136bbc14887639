//! Type expressions, type rules and the purely syntactic operations on them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::term::{Functor, Term, RHO};

/// Built-in classes of atomic values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prim {
    Integer,
    Float,
    Number,
    String,
    Atom,
    Atomic,
}

impl Prim {
    pub const ALL: [Prim; 6] =
        [Prim::Integer, Prim::Float, Prim::Number, Prim::String, Prim::Atom, Prim::Atomic];

    pub fn name(self) -> &'static str {
        match self {
            Prim::Integer => "integer",
            Prim::Float => "float",
            Prim::Number => "number",
            Prim::String => "string",
            Prim::Atom => "atom",
            Prim::Atomic => "atomic",
        }
    }

    pub fn from_name(s: &str) -> Option<Prim> {
        Prim::ALL.into_iter().find(|p| p.name() == s)
    }

    /// Class containment: `self` denotes a subset of `other`.
    pub fn leq(self, other: Prim) -> bool {
        use Prim::*;
        self == other
            || matches!(
                (self, other),
                (Integer | Float, Number) | (Integer | Float | Number | Atom, Atomic)
            )
    }

    /// Whether terms with principal symbol `f` belong to this class.
    pub fn contains(self, f: &Functor) -> bool {
        let leaf = match f {
            Functor::Int(_) => Prim::Integer,
            Functor::Float(_) => Prim::Float,
            Functor::Str(_) => Prim::String,
            f if f.is_atom() => Prim::Atom,
            _ => return false,
        };
        leaf.leq(self)
    }
}

/// A type expression.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Type {
    Zero,
    One,
    And(Box<Type>, Box<Type>),
    Or(Box<Type>, Box<Type>),
    Con(Arc<str>, Vec<Type>),
    Prim(Prim),
}

impl Type {
    pub fn con(name: &str, args: Vec<Type>) -> Type {
        Type::Con(name.into(), args)
    }

    pub fn atom_ctor(name: &str) -> Type {
        Type::Con(name.into(), Vec::new())
    }

    /// Plain binary `or`, with no simplification.
    pub fn or_raw(a: Type, b: Type) -> Type {
        Type::Or(Box::new(a), Box::new(b))
    }

    pub fn and_raw(a: Type, b: Type) -> Type {
        Type::And(Box::new(a), Box::new(b))
    }

    /// `or` that folds the units and identical operands.
    pub fn or(a: Type, b: Type) -> Type {
        match (a, b) {
            (Type::Zero, r) | (r, Type::Zero) => r,
            (Type::One, _) | (_, Type::One) => Type::One,
            (a, b) if a == b => a,
            (a, b) => Type::or_raw(a, b),
        }
    }

    /// `and` that folds the units and identical operands.
    pub fn and(a: Type, b: Type) -> Type {
        match (a, b) {
            (Type::One, r) | (r, Type::One) => r,
            (Type::Zero, _) | (_, Type::Zero) => Type::Zero,
            (a, b) if a == b => a,
            (a, b) => Type::and_raw(a, b),
        }
    }

    pub fn or_all(items: impl IntoIterator<Item = Type>) -> Type {
        items.into_iter().fold(Type::Zero, Type::or)
    }

    pub fn and_all(items: impl IntoIterator<Item = Type>) -> Type {
        items.into_iter().fold(Type::One, Type::and)
    }

    /// An atomic expression: neither `and` nor `or`.
    pub fn is_atomic(&self) -> bool {
        !matches!(self, Type::And(..) | Type::Or(..))
    }

    pub fn key(&self) -> String {
        self.to_string()
    }

    /// Largest depth of a constructor atom, where depth counts the
    /// constructor applications strictly above it. `1` and `0` are not atoms.
    pub fn atom_depth_max(&self) -> usize {
        self.atom_depth().unwrap_or(0)
    }

    fn atom_depth(&self) -> Option<usize> {
        match self {
            Type::And(a, b) | Type::Or(a, b) => a.atom_depth().max(b.atom_depth()),
            Type::Con(_, args) => Some(args.iter().filter_map(|a| a.atom_depth().map(|d| d + 1)).max().unwrap_or(0)),
            Type::Prim(_) => Some(0),
            Type::One | Type::Zero => None,
        }
    }

    /// Replaces the arguments of every constructor atom at depth exactly `k`
    /// by `1`.
    pub fn depth_abstract(&self, k: usize) -> Result<Type> {
        if k == 0 {
            return Err(Error::ZeroDepth);
        }
        Ok(self.cut_at(k, 0))
    }

    fn cut_at(&self, k: usize, d: usize) -> Type {
        match self {
            Type::And(a, b) => Type::and_raw(a.cut_at(k, d), b.cut_at(k, d)),
            Type::Or(a, b) => Type::or_raw(a.cut_at(k, d), b.cut_at(k, d)),
            Type::Con(c, args) if d == k => Type::Con(c.clone(), vec![Type::One; args.len()]),
            Type::Con(c, args) => {
                Type::Con(c.clone(), args.iter().map(|a| a.cut_at(k, d + 1)).collect())
            }
            other => other.clone(),
        }
    }

    /// Disjunctive normal form by distributing `and` over `or`. Atoms are left
    /// untouched and nothing is deduplicated.
    pub fn dnf(&self) -> Type {
        match self {
            Type::Or(a, b) => Type::or_raw(a.dnf(), b.dnf()),
            Type::And(a, b) => distribute(a.dnf(), b.dnf()),
            other => other.clone(),
        }
    }

    /// The disjuncts of the DNF, each a list of atoms.
    pub fn disjuncts(&self) -> Vec<Vec<Type>> {
        match self {
            Type::Or(a, b) => {
                let mut out = a.disjuncts();
                out.extend(b.disjuncts());
                out
            }
            Type::And(a, b) => {
                let left = a.disjuncts();
                let right = b.disjuncts();
                let mut out = Vec::with_capacity(left.len() * right.len());
                for l in &left {
                    for r in &right {
                        let mut c = l.clone();
                        c.extend(r.iter().cloned());
                        out.push(c);
                    }
                }
                out
            }
            atom => vec![vec![atom.clone()]],
        }
    }

    /// Canonical form: DNF with canonical arguments, units folded, duplicate
    /// atoms and disjuncts removed, and both levels sorted by printed form.
    pub fn canonical(&self) -> Type {
        let mut conjs: Vec<(String, Vec<Type>)> = Vec::new();
        'outer: for conj in self.disjuncts() {
            let mut atoms: Vec<(String, Type)> = Vec::new();
            for a in conj {
                let a = match a {
                    Type::Con(c, args) => {
                        Type::Con(c, args.iter().map(Type::canonical).collect())
                    }
                    Type::One => continue,
                    Type::Zero => continue 'outer,
                    other => other,
                };
                atoms.push((a.key(), a));
            }
            atoms.sort_by(|x, y| x.0.cmp(&y.0));
            atoms.dedup_by(|x, y| x.0 == y.0);
            if atoms.is_empty() {
                return Type::One;
            }
            let atoms: Vec<Type> = atoms.into_iter().map(|(_, a)| a).collect();
            let body = chain(atoms.clone(), Type::and_raw);
            conjs.push((body.key(), atoms));
        }
        conjs.sort_by(|x, y| x.0.cmp(&y.0));
        conjs.dedup_by(|x, y| x.0 == y.0);
        if conjs.is_empty() {
            return Type::Zero;
        }
        chain(conjs.into_iter().map(|(_, c)| chain(c, Type::and_raw)).collect(), Type::or_raw)
    }

    pub fn contains_ctor(&self, name: &str) -> bool {
        match self {
            Type::And(a, b) | Type::Or(a, b) => a.contains_ctor(name) || b.contains_ctor(name),
            Type::Con(c, args) => &**c == name || args.iter().any(|a| a.contains_ctor(name)),
            _ => false,
        }
    }
}

fn distribute(a: Type, b: Type) -> Type {
    match (a, b) {
        (Type::Or(a1, a2), b) => Type::or_raw(distribute(*a1, b.clone()), distribute(*a2, b)),
        (a, Type::Or(b1, b2)) => Type::or_raw(distribute(a.clone(), *b1), distribute(a, *b2)),
        (a, b) => Type::and_raw(a, b),
    }
}

/// Right-nested chain of a non-empty list.
fn chain(mut items: Vec<Type>, op: fn(Type, Type) -> Type) -> Type {
    let mut acc = items.pop().expect("chain of an empty list");
    while let Some(x) = items.pop() {
        acc = op(x, acc);
    }
    acc
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Zero => f.write_str("0"),
            Type::One => f.write_str("1"),
            Type::Prim(p) => f.write_str(p.name()),
            Type::Or(a, b) => write!(f, "{a} or {b}"),
            Type::And(a, b) => {
                let side = |t: &Type| match t {
                    Type::Or(..) => format!("({t})"),
                    _ => t.to_string(),
                };
                write!(f, "{} and {}", side(a), side(b))
            }
            Type::Con(c, args) => {
                f.write_str(c)?;
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

/// Argument position of a type rule: a parameter or a constructor applied
/// to parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scheme {
    Param(Arc<str>),
    Con(Arc<str>, Vec<Arc<str>>),
}

impl Scheme {
    pub fn params(&self) -> Vec<&Arc<str>> {
        match self {
            Scheme::Param(p) => vec![p],
            Scheme::Con(_, ps) => ps.iter().collect(),
        }
    }

    /// Instantiates the scheme; parameters outside `binding` map to `0`.
    pub fn apply(&self, binding: &BTreeMap<Arc<str>, Type>) -> Type {
        let get = |p: &Arc<str>| binding.get(p).cloned().unwrap_or(Type::Zero);
        match self {
            Scheme::Param(p) => get(p),
            Scheme::Con(c, ps) => Type::Con(c.clone(), ps.iter().map(get).collect()),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Param(p) => f.write_str(p),
            Scheme::Con(c, ps) if ps.is_empty() => f.write_str(c),
            Scheme::Con(c, ps) => {
                let ps: Vec<&str> = ps.iter().map(|p| &**p).collect();
                write!(f, "{c}({})", ps.join(","))
            }
        }
    }
}

/// `ctor(params) -> functor(args)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeRule {
    pub ctor: Arc<str>,
    pub params: Vec<Arc<str>>,
    pub functor: Functor,
    pub args: Vec<Scheme>,
}

impl TypeRule {
    /// The argument types of the rule body under head arguments `actual`.
    pub fn instantiate(&self, actual: &[Type]) -> Vec<Type> {
        let binding: BTreeMap<Arc<str>, Type> =
            self.params.iter().cloned().zip(actual.iter().cloned()).collect();
        self.args.iter().map(|s| s.apply(&binding)).collect()
    }
}

impl fmt::Display for TypeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = Scheme::Con(self.ctor.clone(), self.params.clone());
        let body: Vec<String> = self.args.iter().map(|a| a.to_string()).collect();
        let sym = match &self.functor {
            Functor::Sym { name, .. } => crate::term::quote_atom(name),
            other => other.to_string(),
        };
        if body.is_empty() {
            write!(f, "{head} -> {sym}")
        } else {
            write!(f, "{head} -> {sym}({})", body.join(","))
        }
    }
}

/// A validated set of type rules.
#[derive(Debug, Clone, Default)]
pub struct RuleSet {
    rules: Vec<TypeRule>,
    arity: BTreeMap<Arc<str>, usize>,
    by_functor: HashMap<Functor, Vec<usize>>,
    functors: Vec<Functor>,
    atoms: BTreeSet<Arc<str>>,
}

impl RuleSet {
    pub fn new(rules: Vec<TypeRule>) -> Result<RuleSet> {
        RuleSet::with_atoms(rules, [])
    }

    /// Builds a rule set; `atoms` lists extra 0-ary symbols of the signature.
    pub fn with_atoms(
        rules: Vec<TypeRule>,
        atoms: impl IntoIterator<Item = Arc<str>>,
    ) -> Result<RuleSet> {
        let mut arity: BTreeMap<Arc<str>, usize> = BTreeMap::new();
        for (i, r) in rules.iter().enumerate() {
            let n = i + 1;
            if Prim::from_name(&r.ctor).is_some() {
                return Err(Error::BadRule(format!("rule {n}: {} is a built-in class", r.ctor)));
            }
            if let Some(&m) = arity.get(&r.ctor) {
                if m != r.params.len() {
                    return Err(Error::BadRule(format!(
                        "rule {n}: {} used with arities {} and {}",
                        r.ctor,
                        m,
                        r.params.len()
                    )));
                }
            }
            arity.insert(r.ctor.clone(), r.params.len());
            let distinct: BTreeSet<_> = r.params.iter().collect();
            if distinct.len() != r.params.len() {
                return Err(Error::BadRule(format!("rule {n}: repeated parameter in {r}")));
            }
            if r.functor.arity() != r.args.len() {
                return Err(Error::BadRule(format!("rule {n}: functor arity mismatch in {r}")));
            }
            if matches!(&r.functor, Functor::Sym { name, .. } if &**name == RHO) {
                return Err(Error::BadRule(format!("rule {n}: reserved symbol in {r}")));
            }
            for s in &r.args {
                for p in s.params() {
                    if !distinct.contains(p) {
                        return Err(Error::BadRule(format!("rule {n}: parameter {p} not in head of {r}")));
                    }
                }
            }
        }
        for (i, r) in rules.iter().enumerate() {
            let n = i + 1;
            for s in &r.args {
                if let Scheme::Con(c, ps) = s {
                    match arity.get(c) {
                        None => return Err(Error::UnknownCtor(format!("{c} (rule {n})"))),
                        Some(&m) if m != ps.len() => {
                            return Err(Error::CtorArity {
                                name: format!("{c} (rule {n})"),
                                expected: m,
                                got: ps.len(),
                            })
                        }
                        _ => {}
                    }
                }
            }
        }
        let mut by_functor: HashMap<Functor, Vec<usize>> = HashMap::new();
        let mut functors = Vec::new();
        for (i, r) in rules.iter().enumerate() {
            let e = by_functor.entry(r.functor.clone()).or_default();
            if e.is_empty() {
                functors.push(r.functor.clone());
            }
            e.push(i);
        }
        functors.sort();
        Ok(RuleSet { rules, arity, by_functor, functors, atoms: atoms.into_iter().collect() })
    }

    pub fn rules(&self) -> &[TypeRule] {
        &self.rules
    }

    pub fn ctor_arity(&self, ctor: &str) -> Option<usize> {
        self.arity.get(ctor).copied()
    }

    pub fn ctors(&self) -> impl Iterator<Item = (&Arc<str>, usize)> {
        self.arity.iter().map(|(c, n)| (c, *n))
    }

    /// Distinct right-hand-side symbols, sorted.
    pub fn functors(&self) -> &[Functor] {
        &self.functors
    }

    pub fn declared_atoms(&self) -> &BTreeSet<Arc<str>> {
        &self.atoms
    }

    /// Rules whose right-hand side has principal symbol `f`.
    pub fn with_functor<'a>(&'a self, f: &Functor) -> impl Iterator<Item = &'a TypeRule> + 'a {
        self.by_functor.get(f).into_iter().flatten().map(move |&i| &self.rules[i])
    }

    /// Rules `ctor(..) -> f(..)`.
    pub fn rules_for<'a>(
        &'a self,
        ctor: &'a str,
        f: &Functor,
    ) -> impl Iterator<Item = &'a TypeRule> + 'a {
        self.with_functor(f).filter(move |r| &*r.ctor == ctor)
    }

    pub fn covers_functor(&self, f: &Functor) -> bool {
        self.by_functor.contains_key(f)
    }

    /// Checks that every constructor in `t` is defined with the right arity.
    pub fn validate(&self, t: &Type) -> Result<()> {
        match t {
            Type::And(a, b) | Type::Or(a, b) => {
                self.validate(a)?;
                self.validate(b)
            }
            Type::Con(c, args) => {
                match self.arity.get(c) {
                    None => return Err(Error::UnknownCtor(c.to_string())),
                    Some(&n) if n != args.len() => {
                        return Err(Error::CtorArity {
                            name: c.to_string(),
                            expected: n,
                            got: args.len(),
                        })
                    }
                    _ => {}
                }
                args.iter().try_for_each(|a| self.validate(a))
            }
            _ => Ok(()),
        }
    }

    /// Membership of a term in the meaning of a type. Variables belong to `1`
    /// only.
    pub fn member(&self, t: &Term, r: &Type) -> Result<bool> {
        self.validate(r)?;
        Ok(self.member_unchecked(t, r))
    }

    pub(crate) fn member_unchecked(&self, t: &Term, r: &Type) -> bool {
        match r {
            Type::One => true,
            Type::Zero => false,
            Type::And(a, b) => self.member_unchecked(t, a) && self.member_unchecked(t, b),
            Type::Or(a, b) => self.member_unchecked(t, a) || self.member_unchecked(t, b),
            Type::Prim(p) => t.functor().is_some_and(|f| p.contains(&f)),
            Type::Con(c, actual) => {
                let Some(f) = t.functor() else { return false };
                self.rules_for(c, &f).any(|rule| {
                    rule.instantiate(actual)
                        .iter()
                        .zip(t.args())
                        .all(|(ty, arg)| self.member_unchecked(arg, ty))
                })
            }
        }
    }
}
