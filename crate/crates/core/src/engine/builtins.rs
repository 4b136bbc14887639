//! Abstract transfer functions for the supported built-in predicates.

use crate::decide::Decider;
use crate::domain::VtSet;
use crate::error::Result;
use crate::propagate::{solve, type_of, vts};
use crate::term::{mgu, Term};
use crate::types::{Prim, Type};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// Never succeeds.
    Fail,
    /// Succeeds without binding anything the analysis tracks.
    Identity,
    Compound,
    /// Type test or output predicate that constrains its first argument.
    Class(&'static [Prim]),
    Var,
    Unify,
    /// `format/1,2,3`; the field is the arity.
    Format(usize),
    Arith,
    Length,
    Compare,
    Name,
}

const INTEGER: &[Prim] = &[Prim::Integer];

impl Builtin {
    pub fn lookup(name: &str, arity: usize) -> Option<Builtin> {
        use Builtin::*;
        Some(match (name, arity) {
            ("abort" | "fail" | "false", 0) => Fail,
            ("!" | "listing" | "nl" | "repeat" | "true", 0) => Identity,
            ("@<" | "@>" | "@=<" | "@>=" | "\\==" | "\\=", 2) => Identity,
            ("display" | "ground" | "listing" | "nonvar" | "portray_clause" | "print" | "read"
            | "write" | "writeq", 1) => Identity,
            ("compound", 1) => Compound,
            ("atom", 1) => Class(&[Prim::Atom]),
            ("atomic", 1) => Class(&[Prim::Atomic]),
            ("float", 1) => Class(&[Prim::Float]),
            ("erase" | "integer" | "tab", 1) => Class(INTEGER),
            ("number", 1) => Class(&[Prim::Number]),
            ("put", 1) => Class(&[Prim::Atom, Prim::Integer]),
            ("string", 1) => Class(&[Prim::String]),
            ("var", 1) => Var,
            ("=" | "==", 2) => Unify,
            ("format", n @ 1..=3) => Format(n),
            ("<" | ">" | "=<" | ">=" | "=:=" | "=\\=" | "is", 2) => Arith,
            ("length", 2) => Length,
            ("compare", 3) => Compare,
            ("name", 2) => Name,
            _ => return None,
        })
    }

    /// Builtins whose arguments are evaluated as arithmetic expressions.
    pub fn is_arithmetic(self) -> bool {
        self == Builtin::Arith
    }

    /// Abstract effect of calling `atom` in state `s`.
    pub fn transfer(self, atom: &Term, s: &VtSet, dec: &Decider) -> Result<VtSet> {
        let rules = dec.rules();
        let args = atom.args();
        let list_of = |t: Type| match rules.ctor_arity("list") {
            Some(1) => Type::con("list", vec![t]),
            // Without a list constructor the constraint cannot be expressed.
            _ => Type::One,
        };
        Ok(match self {
            Builtin::Fail => VtSet::empty(),
            Builtin::Identity => s.clone(),
            Builtin::Compound => {
                let atomic = Type::Prim(Prim::Atomic);
                let mut out = VtSet::empty();
                for mu in s.iter() {
                    let t = type_of(&args[0], mu, rules)?;
                    if !dec.includes_unchecked(&atomic, &t) {
                        out.insert(mu.clone());
                    }
                }
                out
            }
            Builtin::Class(prims) => {
                let ty = Type::or_all(prims.iter().map(|p| Type::Prim(*p)));
                s.meet(&vts(&ty, &args[0], rules))
            }
            Builtin::Var => {
                let mut out = VtSet::empty();
                for mu in s.iter() {
                    let t = type_of(&args[0], mu, rules)?;
                    if dec.includes_unchecked(&t, &Type::One) {
                        out.insert(mu.clone());
                    }
                }
                out
            }
            Builtin::Unify => match mgu(&args[0], &args[1]) {
                None => VtSet::empty(),
                Some(theta) => solve(&theta.equations(), s, rules)?,
            },
            Builtin::Format(n) => {
                let target = if n == 3 { &args[1] } else { &args[0] };
                let ty = Type::or_all([
                    Type::Prim(Prim::Atom),
                    list_of(Type::Prim(Prim::Integer)),
                    Type::Prim(Prim::String),
                ]);
                s.meet(&vts(&ty, target, rules))
            }
            Builtin::Arith => {
                let number = Type::Prim(Prim::Number);
                let mut out = s.clone();
                for a in args {
                    // Compound arguments are expressions, evaluated rather
                    // than matched.
                    if matches!(a, Term::Var(_) | Term::Int(_) | Term::Float(_)) {
                        out = out.meet(&vts(&number, a, rules));
                    }
                }
                out
            }
            Builtin::Length => s
                .meet(&vts(&list_of(Type::One), &args[0], rules))
                .meet(&vts(&Type::Prim(Prim::Integer), &args[1], rules)),
            Builtin::Compare => s.meet(&vts(&Type::Prim(Prim::Atom), &args[0], rules)),
            Builtin::Name => s
                .meet(&vts(
                    &Type::or(Type::Prim(Prim::Atom), Type::Prim(Prim::Integer)),
                    &args[0],
                    rules,
                ))
                .meet(&vts(&Type::Prim(Prim::String), &args[1], rules)),
        })
    }
}
