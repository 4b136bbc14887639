//! Readers for programs, type-rule files, type expressions and typings.

mod lexer;
mod parser;

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::engine::builtins::Builtin;
use crate::engine::program::{Clause, Literal, Program};
use crate::error::{Error, Result};
use crate::term::Term;
use crate::types::{Prim, RuleSet, Scheme, Type, TypeRule};
pub use parser::{OpTable, Parser};

type Pos = (usize, usize);

fn syntax_error(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Parse { line: pos.0, col: pos.1, msg: msg.into() }
}

/// Reads a program of definite clauses with exactly one `:- Goal.` query.
pub fn parse_program(src: &str) -> Result<Program> {
    let ops = OpTable::program();
    let mut p = Parser::new(src, &ops)?;
    let mut clauses = Vec::new();
    let mut query = None;
    while !p.at_eof() {
        let scope = clauses.len() as u32;
        p.begin_clause(scope);
        let t = p.clause()?;
        let pos = p.clause_pos();
        let (head, body) = match &t {
            Term::App(n, a) if &**n == ":-" && a.len() == 1 => (None, Some(&a[0])),
            Term::App(n, a) if &**n == ":-" && a.len() == 2 => (Some(a[0].clone()), Some(&a[1])),
            _ => (Some(t.clone()), None),
        };
        if let Some(h) = &head {
            match h {
                Term::App(name, _) if Builtin::lookup(name, h.args().len()).is_some() => {
                    return Err(syntax_error(pos, format!("cannot redefine builtin {h}")));
                }
                Term::App(name, _) if &**name != "," && &**name != ";" && &**name != "\\+" => {}
                _ => return Err(syntax_error(pos, format!("invalid clause head {h}"))),
            }
        }
        let body = match body {
            Some(b) => body_literals(b, pos)?,
            None => Vec::new(),
        };
        if head.is_none() {
            if query.is_some() {
                return Err(syntax_error(pos, "more than one query"));
            }
            query = Some(clauses.len());
        }
        let mut vars = BTreeSet::new();
        if let Some(h) = &head {
            h.collect_vars(&mut vars);
        }
        for l in &body {
            l.atom().collect_vars(&mut vars);
        }
        let names = p.named_vars().into_iter().collect();
        clauses.push(Clause { head, body, vars, names });
    }
    let query = query.ok_or_else(|| syntax_error((1, 1), "program has no query"))?;
    Ok(Program { clauses, query })
}

fn body_literals(t: &Term, pos: Pos) -> Result<Vec<Literal>> {
    match t {
        Term::App(n, a) if &**n == "," && a.len() == 2 => {
            let mut v = body_literals(&a[0], pos)?;
            v.extend(body_literals(&a[1], pos)?);
            Ok(v)
        }
        Term::App(n, a) if &**n == "\\+" && a.len() == 1 => {
            let inner = literal(&a[0], pos)?;
            Ok(vec![Literal::Neg(Box::new(inner))])
        }
        t => Ok(vec![literal(t, pos)?]),
    }
}

fn literal(t: &Term, pos: Pos) -> Result<Literal> {
    match t {
        Term::App(n, a) if (&**n == ";" || &**n == "->") && a.len() == 2 => {
            Err(syntax_error(pos, format!("unsupported control construct {n}")))
        }
        Term::App(n, a) if &**n == "," || (&**n == "\\+" && a.len() == 1) => {
            Err(syntax_error(pos, "negation must wrap a single goal"))
        }
        Term::App(n, a) => Ok(match Builtin::lookup(n, a.len()) {
            Some(b) => Literal::Builtin(b, t.clone()),
            None => Literal::Call(t.clone()),
        }),
        other => Err(syntax_error(pos, format!("invalid goal {other}"))),
    }
}

/// Reads type rules `ctor(B1,..,Bn) -> f(args).` and optional
/// `:- atoms(a, b, ..).` declarations of extra atom symbols.
pub fn parse_rules(src: &str) -> Result<RuleSet> {
    let ops = OpTable::program();
    let mut p = Parser::new(src, &ops)?;
    let mut rules = Vec::new();
    let mut atoms: Vec<Arc<str>> = Vec::new();
    while !p.at_eof() {
        p.begin_clause(0);
        let t = p.clause()?;
        let pos = p.clause_pos();
        match &t {
            Term::App(n, a) if &**n == ":-" && a.len() == 1 => match &a[0] {
                Term::App(d, names) if &**d == "atoms" => {
                    for x in names {
                        match x {
                            Term::App(s, args) if args.is_empty() => atoms.push(s.clone()),
                            other => return Err(syntax_error(pos, format!("not an atom: {other}"))),
                        }
                    }
                }
                other => return Err(syntax_error(pos, format!("unknown directive {other}"))),
            },
            Term::App(n, a) if &**n == "->" && a.len() == 2 => rules.push(rule(&a[0], &a[1], pos)?),
            other => return Err(syntax_error(pos, format!("expected a type rule, got {other}"))),
        }
    }
    RuleSet::with_atoms(rules, atoms)
}

fn param_name(t: &Term) -> Option<Arc<str>> {
    match t {
        Term::Var(v) if !v.name.starts_with('_') => Some(v.name.clone()),
        _ => None,
    }
}

fn rule(head: &Term, rhs: &Term, pos: Pos) -> Result<TypeRule> {
    let (ctor, params) = match head {
        Term::App(c, args) => {
            let params = args
                .iter()
                .map(|a| param_name(a).ok_or_else(|| syntax_error(pos, format!("bad parameter {a}"))))
                .collect::<Result<Vec<_>>>()?;
            (c.clone(), params)
        }
        other => return Err(syntax_error(pos, format!("bad rule head {other}"))),
    };
    let functor = rhs.functor().ok_or_else(|| syntax_error(pos, "rule body cannot be a variable"))?;
    let args = rhs
        .args()
        .iter()
        .map(|a| match a {
            Term::Var(_) => Ok(Scheme::Param(param_name(a).ok_or_else(|| syntax_error(pos, "anonymous parameter"))?)),
            Term::App(d, ps) => {
                let ps = ps
                    .iter()
                    .map(|p| param_name(p).ok_or_else(|| syntax_error(pos, format!("nested scheme {a}"))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Scheme::Con(d.clone(), ps))
            }
            other => Err(syntax_error(pos, format!("bad rule argument {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TypeRule { ctor, params, functor, args })
}

/// Reads a type expression such as `list(atom or float)`.
pub fn parse_type(src: &str) -> Result<Type> {
    let ops = OpTable::types();
    let t = Parser::new(src, &ops)?.whole()?;
    term_to_type(&t, (1, 1))
}

fn term_to_type(t: &Term, pos: Pos) -> Result<Type> {
    match t {
        Term::Int(0) => Ok(Type::Zero),
        Term::Int(1) => Ok(Type::One),
        Term::App(n, a) if (&**n == "or" || &**n == "and") && a.len() == 2 => {
            let l = term_to_type(&a[0], pos)?;
            let r = term_to_type(&a[1], pos)?;
            Ok(if &**n == "or" { Type::or_raw(l, r) } else { Type::and_raw(l, r) })
        }
        Term::App(n, a) if a.is_empty() => match Prim::from_name(n) {
            Some(p) => Ok(Type::Prim(p)),
            None => Ok(Type::Con(n.clone(), vec![])),
        },
        Term::App(n, a) if &**n != "~" && &**n != ":" && &**n != "," => {
            Ok(Type::Con(n.clone(), a.iter().map(|x| term_to_type(x, pos)).collect::<Result<_>>()?))
        }
        other => Err(syntax_error(pos, format!("not a type expression: {other}"))),
    }
}

/// Reads `X:T1, Y:T2, ..` into name/type pairs.
pub fn parse_typings(src: &str) -> Result<Vec<(String, Type)>> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    let ops = OpTable::types();
    let t = Parser::new(src, &ops)?.whole()?;
    let pos = (1, 1);
    let mut items = Vec::new();
    let mut cur = &t;
    loop {
        match cur {
            Term::App(n, a) if &**n == "," && a.len() == 2 => {
                items.push(&a[0]);
                cur = &a[1];
            }
            last => {
                items.push(last);
                break;
            }
        }
    }
    items
        .into_iter()
        .map(|item| match item {
            Term::App(n, a) if &**n == ":" && a.len() == 2 => match &a[0] {
                Term::Var(v) => Ok((v.name.to_string(), term_to_type(&a[1], pos)?)),
                other => Err(syntax_error(pos, format!("expected a variable, got {other}"))),
            },
            other => Err(syntax_error(pos, format!("expected Var:Type, got {other}"))),
        })
        .collect()
}
