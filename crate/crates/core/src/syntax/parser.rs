//! Operator-precedence reader for clause-shaped text.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::syntax::lexer::{tokenize, Tok, Token};
use crate::term::{Term, Var, CONS, NIL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assoc {
    Xfx,
    Xfy,
    Yfx,
    Fy,
    Fx,
}

pub struct OpTable {
    infix: HashMap<&'static str, (u32, Assoc)>,
    prefix: HashMap<&'static str, (u32, Assoc)>,
}

impl OpTable {
    fn new(infix: &[(&'static str, u32, Assoc)], prefix: &[(&'static str, u32, Assoc)]) -> OpTable {
        OpTable {
            infix: infix.iter().map(|&(n, p, a)| (n, (p, a))).collect(),
            prefix: prefix.iter().map(|&(n, p, a)| (n, (p, a))).collect(),
        }
    }

    /// Operators for programs and rule files.
    pub fn program() -> OpTable {
        use Assoc::*;
        let mut infix = vec![
            (":-", 1200, Xfx),
            (";", 1100, Xfy),
            ("->", 1050, Xfy),
            (",", 1000, Xfy),
            ("+", 500, Yfx),
            ("-", 500, Yfx),
            ("*", 400, Yfx),
            ("/", 400, Yfx),
            ("//", 400, Yfx),
            ("mod", 400, Yfx),
            ("rem", 400, Yfx),
            ("**", 200, Xfx),
            ("^", 200, Xfy),
        ];
        for op in [
            "=", "\\=", "==", "\\==", "@<", "@>", "@=<", "@>=", "is", "=:=", "=\\=", "<", ">",
            "=<", ">=", "=..",
        ] {
            infix.push((op, 700, Xfx));
        }
        OpTable::new(&infix, &[(":-", 1200, Fx), ("\\+", 900, Fy), ("-", 200, Fy), ("+", 200, Fy)])
    }

    /// Operators for type expressions and typings.
    pub fn types() -> OpTable {
        use Assoc::*;
        OpTable::new(
            &[(",", 1000, Xfy), (":", 800, Xfx), ("or", 760, Xfy), ("and", 750, Xfy)],
            &[("~", 200, Fy)],
        )
    }
}

pub struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ops: &'a OpTable,
    vars: HashMap<String, Var>,
    scope: u32,
    anon: usize,
    clause_start: usize,
}

impl<'a> Parser<'a> {
    pub fn new(src: &str, ops: &'a OpTable) -> Result<Parser<'a>> {
        Ok(Parser { toks: tokenize(src)?, pos: 0, ops, vars: HashMap::new(), scope: 0, anon: 0, clause_start: 0 })
    }

    pub fn at_eof(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Starts a new variable scope for the next clause.
    pub fn begin_clause(&mut self, scope: u32) {
        self.vars.clear();
        self.scope = scope;
        self.clause_start = self.pos;
    }

    /// Line and column where the current clause starts.
    pub fn clause_pos(&self) -> (usize, usize) {
        self.toks.get(self.clause_start).map(|t| (t.line, t.col)).unwrap_or((1, 1))
    }

    /// Variables of the current clause in order of first occurrence, excluding
    /// anonymous ones.
    pub fn named_vars(&self) -> HashMap<String, Var> {
        self.vars.clone()
    }

    /// Reads one clause terminated by `.`.
    pub fn clause(&mut self) -> Result<Term> {
        let (t, _) = self.parse(1200)?;
        match self.next() {
            Some(Token { tok: Tok::End, .. }) => Ok(t),
            Some(tok) => Err(self.error_at(&tok, "expected end of clause")),
            None => Err(self.eof_error("missing '.' at end of clause")),
        }
    }

    /// Reads a single term that must use up all the input.
    pub fn whole(&mut self) -> Result<Term> {
        let (t, _) = self.parse(1200)?;
        if let Some(Token { tok: Tok::End, .. }) = self.peek().cloned() {
            self.pos += 1;
        }
        match self.peek().cloned() {
            None => Ok(t),
            Some(tok) => Err(self.error_at(&tok, "unexpected trailing input")),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn error_at(&self, t: &Token, msg: &str) -> Error {
        Error::Parse { line: t.line, col: t.col, msg: format!("{msg} near {:?}", t.tok) }
    }

    fn eof_error(&self, msg: &str) -> Error {
        let (line, col) = self.toks.last().map(|t| (t.line, t.col)).unwrap_or((1, 1));
        Error::Parse { line, col, msg: msg.to_string() }
    }

    fn infix_name(&self) -> Option<String> {
        match &self.peek()?.tok {
            Tok::Atom { name, .. } => Some(name.clone()),
            Tok::Comma => Some(",".into()),
            _ => None,
        }
    }

    fn starts_term(&self) -> bool {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Atom { name, .. }) => !self.ops.infix.contains_key(name.as_str()),
            Some(Tok::Var(_) | Tok::Int(_) | Tok::Float(_) | Tok::Str(_) | Tok::Open | Tok::OpenList) => {
                true
            }
            _ => false,
        }
    }

    pub fn parse(&mut self, max: u32) -> Result<(Term, u32)> {
        let (mut left, mut left_prec) = self.primary(max)?;
        while let Some(name) = self.infix_name() {
            let Some(&(p, assoc)) = self.ops.infix.get(name.as_str()) else { break };
            let (la, ra) = match assoc {
                Assoc::Xfx => (p - 1, p - 1),
                Assoc::Xfy => (p - 1, p),
                _ => (p, p - 1),
            };
            if p > max || left_prec > la {
                break;
            }
            self.pos += 1;
            let (right, _) = self.parse(ra)?;
            left = Term::app(&name, vec![left, right]);
            left_prec = p;
        }
        Ok((left, left_prec))
    }

    fn primary(&mut self, max: u32) -> Result<(Term, u32)> {
        let Some(tok) = self.next() else {
            return Err(self.eof_error("unexpected end of input"));
        };
        match tok.tok.clone() {
            Tok::Int(i) => Ok((Term::Int(i), 0)),
            Tok::Float(x) => Ok((Term::float(x), 0)),
            Tok::Str(s) => Ok((Term::string(&s), 0)),
            Tok::Var(name) => Ok((Term::Var(self.var(&name)), 0)),
            Tok::Open => {
                let (t, _) = self.parse(1200)?;
                self.expect(Tok::Close, "expected ')'")?;
                Ok((t, 0))
            }
            Tok::OpenList => {
                if matches!(self.peek().map(|t| &t.tok), Some(Tok::CloseList)) {
                    self.pos += 1;
                    return Ok((Term::nil(), 0));
                }
                let mut items = vec![self.parse(999)?.0];
                while matches!(self.peek().map(|t| &t.tok), Some(Tok::Comma)) {
                    self.pos += 1;
                    items.push(self.parse(999)?.0);
                }
                let tail = if matches!(self.peek().map(|t| &t.tok), Some(Tok::Bar)) {
                    self.pos += 1;
                    Some(self.parse(999)?.0)
                } else {
                    None
                };
                self.expect(Tok::CloseList, "expected ']'")?;
                Ok((Term::list(items, tail), 0))
            }
            Tok::Atom { name, functional: true } => {
                self.pos += 1;
                let mut args = vec![self.parse(999)?.0];
                while matches!(self.peek().map(|t| &t.tok), Some(Tok::Comma)) {
                    self.pos += 1;
                    args.push(self.parse(999)?.0);
                }
                self.expect(Tok::Close, "expected ')'")?;
                if name == CONS || name == NIL {
                    return Err(self.error_at(&tok, "reserved functor"));
                }
                Ok((Term::app(&name, args), 0))
            }
            Tok::Atom { name, functional: false } => {
                if name == "-" {
                    match self.peek().map(|t| t.tok.clone()) {
                        Some(Tok::Int(i)) => {
                            self.pos += 1;
                            return Ok((Term::Int(-i), 0));
                        }
                        Some(Tok::Float(x)) => {
                            self.pos += 1;
                            return Ok((Term::float(-x), 0));
                        }
                        _ => {}
                    }
                }
                if let Some(&(p, assoc)) = self.ops.prefix.get(name.as_str()) {
                    if self.starts_term() {
                        let p = p.min(max);
                        let arg_max = if assoc == Assoc::Fy { p } else { p - 1 };
                        let (arg, _) = self.parse(arg_max)?;
                        return Ok((Term::app(&name, vec![arg]), p));
                    }
                }
                Ok((Term::atom(&name), 0))
            }
            _ => Err(self.error_at(&tok, "unexpected token")),
        }
    }

    fn expect(&mut self, want: Tok, msg: &str) -> Result<()> {
        match self.next() {
            Some(t) if t.tok == want => Ok(()),
            Some(t) => Err(self.error_at(&t, msg)),
            None => Err(self.eof_error(msg)),
        }
    }

    fn var(&mut self, name: &str) -> Var {
        if name == "_" {
            self.anon += 1;
            return Var::scoped(&format!("_{}", self.anon), self.scope);
        }
        self.vars.entry(name.to_string()).or_insert_with(|| Var::scoped(name, self.scope)).clone()
    }
}
