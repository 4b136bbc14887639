//! Type expressions with complement, and sequences of them.

use std::fmt;

use crate::types::Type;

/// A type expression that may contain complements. Constructor arguments
/// stay complement-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtType {
    Base(Type),
    Not(Box<ExtType>),
    And(Box<ExtType>, Box<ExtType>),
    Or(Box<ExtType>, Box<ExtType>),
}

impl ExtType {
    pub fn not(e: ExtType) -> ExtType {
        ExtType::Not(Box::new(e))
    }

    pub fn and(a: ExtType, b: ExtType) -> ExtType {
        ExtType::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: ExtType, b: ExtType) -> ExtType {
        ExtType::Or(Box::new(a), Box::new(b))
    }

    /// `a and not b`.
    pub fn diff(a: Type, b: Type) -> ExtType {
        ExtType::and(ExtType::Base(a), ExtType::not(ExtType::Base(b)))
    }

    pub fn base_types(&self) -> Vec<&Type> {
        match self {
            ExtType::Base(t) => vec![t],
            ExtType::Not(e) => e.base_types(),
            ExtType::And(a, b) | ExtType::Or(a, b) => {
                let mut v = a.base_types();
                v.extend(b.base_types());
                v
            }
        }
    }
}

impl From<Type> for ExtType {
    fn from(t: Type) -> ExtType {
        ExtType::Base(t)
    }
}

impl fmt::Display for ExtType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtType::Base(t) if t.is_atomic() => write!(f, "{t}"),
            ExtType::Base(t) => write!(f, "({t})"),
            ExtType::Not(e) => write!(f, "~{e}"),
            ExtType::And(a, b) => write!(f, "({a} and {b})"),
            ExtType::Or(a, b) => write!(f, "({a} or {b})"),
        }
    }
}

/// Boolean combinations of fixed-length sequences of extended types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqExpr {
    Seq(Vec<ExtType>),
    And(Box<SeqExpr>, Box<SeqExpr>),
    Or(Box<SeqExpr>, Box<SeqExpr>),
    Not(Box<SeqExpr>),
    /// The empty set of sequences of the given length.
    Never(usize),
}

impl SeqExpr {
    pub fn seq(items: Vec<Type>) -> SeqExpr {
        SeqExpr::Seq(items.into_iter().map(ExtType::Base).collect())
    }

    pub fn and(a: SeqExpr, b: SeqExpr) -> SeqExpr {
        SeqExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: SeqExpr, b: SeqExpr) -> SeqExpr {
        SeqExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn not(a: SeqExpr) -> SeqExpr {
        SeqExpr::Not(Box::new(a))
    }

    pub fn len(&self) -> usize {
        match self {
            SeqExpr::Seq(v) => v.len(),
            SeqExpr::And(a, _) | SeqExpr::Or(a, _) => a.len(),
            SeqExpr::Not(a) => a.len(),
            SeqExpr::Never(k) => *k,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Moves every sequence-level complement into the positions:
    /// `~(R1..Rk)` becomes the disjunction over `l` of `(1,..,~Rl,..,1)`.
    pub fn push_complement(&self) -> SeqExpr {
        self.push(false)
    }

    fn push(&self, negated: bool) -> SeqExpr {
        match (self, negated) {
            (SeqExpr::Seq(v), false) => SeqExpr::Seq(v.clone()),
            (SeqExpr::Seq(v), true) => {
                let k = v.len();
                let parts = (0..k).map(|l| {
                    let mut items = vec![ExtType::Base(Type::One); k];
                    items[l] = ExtType::not(v[l].clone());
                    SeqExpr::Seq(items)
                });
                parts.reduce(SeqExpr::or).unwrap_or(SeqExpr::Never(0))
            }
            (SeqExpr::Never(k), false) => SeqExpr::Never(*k),
            (SeqExpr::Never(k), true) => SeqExpr::Seq(vec![ExtType::Base(Type::One); *k]),
            (SeqExpr::Not(a), n) => a.push(!n),
            (SeqExpr::And(a, b), false) => SeqExpr::and(a.push(false), b.push(false)),
            (SeqExpr::Or(a, b), false) => SeqExpr::or(a.push(false), b.push(false)),
            (SeqExpr::And(a, b), true) => SeqExpr::or(a.push(true), b.push(true)),
            (SeqExpr::Or(a, b), true) => SeqExpr::and(a.push(true), b.push(true)),
        }
    }

    /// Disjunctive normal form of a complement-free expression: a list of
    /// sequence conjunctions, each a list of per-position conjuncts.
    pub(crate) fn conjunctions(&self) -> Vec<Vec<Vec<ExtType>>> {
        match self {
            SeqExpr::Seq(v) => vec![v.iter().map(|e| vec![e.clone()]).collect()],
            SeqExpr::Or(a, b) => {
                let mut out = a.conjunctions();
                out.extend(b.conjunctions());
                out
            }
            SeqExpr::And(a, b) => {
                let mut out = Vec::new();
                for l in a.conjunctions() {
                    for r in b.conjunctions() {
                        let merged = l
                            .iter()
                            .zip(&r)
                            .map(|(x, y)| x.iter().chain(y).cloned().collect())
                            .collect();
                        out.push(merged);
                    }
                }
                out
            }
            SeqExpr::Not(_) => self.push_complement().conjunctions(),
            SeqExpr::Never(_) => Vec::new(),
        }
    }
}

impl fmt::Display for SeqExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqExpr::Seq(v) => {
                let items: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "<{}>", items.join(", "))
            }
            SeqExpr::And(a, b) => write!(f, "({a} and {b})"),
            SeqExpr::Or(a, b) => write!(f, "({a} or {b})"),
            SeqExpr::Not(a) => write!(f, "~{a}"),
            SeqExpr::Never(_) => f.write_str("0"),
        }
    }
}
