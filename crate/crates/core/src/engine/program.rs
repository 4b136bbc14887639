use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::engine::builtins::Builtin;
use crate::error::{Error, Result};
use crate::term::{Functor, Term, Var};
use crate::types::RuleSet;

/// Predicate name and arity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredKey {
    pub name: Arc<str>,
    pub arity: usize,
}

impl PredKey {
    pub fn of(atom: &Term) -> Option<PredKey> {
        match atom {
            Term::App(name, args) => Some(PredKey { name: name.clone(), arity: args.len() }),
            _ => None,
        }
    }
}

impl fmt::Display for PredKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Call(Term),
    Builtin(Builtin, Term),
    /// Negation as failure around a single call or builtin.
    Neg(Box<Literal>),
}

impl Literal {
    pub fn atom(&self) -> &Term {
        match self {
            Literal::Call(t) | Literal::Builtin(_, t) => t,
            Literal::Neg(l) => l.atom(),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Call(t) | Literal::Builtin(_, t) => write!(f, "{t}"),
            Literal::Neg(l) => write!(f, "\\+ {l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clause {
    /// `None` for the query.
    pub head: Option<Term>,
    pub body: Vec<Literal>,
    pub vars: BTreeSet<Var>,
    /// Source names of the named variables.
    pub names: BTreeMap<String, Var>,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.body.iter().map(|l| l.to_string()).collect();
        match (&self.head, body.is_empty()) {
            (Some(h), true) => write!(f, "{h}."),
            (Some(h), false) => write!(f, "{h} :- {}.", body.join(", ")),
            (None, _) => write!(f, ":- {}.", body.join(", ")),
        }
    }
}

/// A program with exactly one query. Clauses keep their textual order; the
/// query is one of them.
#[derive(Debug, Clone)]
pub struct Program {
    pub clauses: Vec<Clause>,
    pub query: usize,
}

impl Program {
    pub fn query(&self) -> &Clause {
        &self.clauses[self.query]
    }

    /// Indices of the clauses defining `key`, in textual order.
    pub fn clauses_of(&self, key: &PredKey) -> Vec<usize> {
        self.clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| c.head.as_ref().and_then(PredKey::of).as_ref() == Some(key))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn defined(&self) -> BTreeSet<PredKey> {
        self.clauses.iter().filter_map(|c| c.head.as_ref().and_then(PredKey::of)).collect()
    }

    /// Checks that every called predicate is defined and that every compound
    /// symbol outside arithmetic is described by some type rule.
    pub fn check(&self, rules: &RuleSet) -> Result<()> {
        let defined = self.defined();
        for c in &self.clauses {
            if let Some(h) = &c.head {
                check_symbols(h.args(), rules)?;
            }
            for lit in &c.body {
                let inner = match lit {
                    Literal::Neg(l) => l,
                    l => l,
                };
                match inner {
                    Literal::Call(t) => {
                        let key = PredKey::of(t).expect("call atom");
                        if !defined.contains(&key) {
                            return Err(Error::UndefinedPredicate(key.to_string()));
                        }
                        check_symbols(t.args(), rules)?;
                    }
                    Literal::Builtin(b, t) if !b.is_arithmetic() => check_symbols(t.args(), rules)?,
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

fn check_symbols(terms: &[Term], rules: &RuleSet) -> Result<()> {
    for t in terms {
        if let Term::App(name, args) = t {
            if !args.is_empty() {
                let f = Functor::Sym { name: name.clone(), arity: args.len() };
                if !rules.covers_functor(&f) {
                    return Err(Error::UnknownSymbol(f.to_string()));
                }
                check_symbols(args, rules)?;
            }
        }
    }
    Ok(())
}
