//! Control-flow graph over textual program points.

use std::collections::BTreeSet;
use std::fmt;

use crate::engine::program::{Literal, PredKey, Program};
use crate::error::{Error, Result};
use crate::term::Term;

/// How control reaches a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointKind {
    Initial,
    Call,
    Ret,
    Nf,
    Bip,
}

impl PointKind {
    pub fn name(self) -> &'static str {
        match self {
            PointKind::Initial => "initial",
            PointKind::Call => "call",
            PointKind::Ret => "ret",
            PointKind::Nf => "nf",
            PointKind::Bip => "bip",
        }
    }
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point sits before literal `index` of its clause, or at the clause end
/// when `index` equals the body length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Point {
    pub id: usize,
    pub clause: usize,
    pub index: usize,
    pub kind: PointKind,
}

/// Points are numbered from 1 in textual order.
#[derive(Debug, Clone)]
pub struct Cfg {
    points: Vec<Point>,
    first: Vec<usize>,
    edges: BTreeSet<(usize, usize)>,
    incoming: Vec<Vec<usize>>,
    dependents: Vec<Vec<usize>>,
    initial: usize,
}

impl Cfg {
    pub fn build(prog: &Program) -> Result<Cfg> {
        let mut points = Vec::new();
        let mut first = Vec::new();
        for (ci, c) in prog.clauses.iter().enumerate() {
            first.push(points.len() + 1);
            for index in 0..=c.body.len() {
                let kind = match index {
                    0 if ci == prog.query => PointKind::Initial,
                    0 => PointKind::Call,
                    i => match &c.body[i - 1] {
                        Literal::Call(_) => PointKind::Ret,
                        Literal::Neg(_) => PointKind::Nf,
                        Literal::Builtin(..) => PointKind::Bip,
                    },
                };
                points.push(Point { id: points.len() + 1, clause: ci, index, kind });
            }
        }
        let end = |ci: usize| first[ci] + prog.clauses[ci].body.len();
        let mut edges = BTreeSet::new();
        for p in &points {
            let c = &prog.clauses[p.clause];
            let Some(lit) = c.body.get(p.index) else { continue };
            let (callee, negated) = match lit {
                Literal::Call(t) => (Some(t), false),
                Literal::Neg(inner) => match &**inner {
                    Literal::Call(t) => (Some(t), true),
                    _ => (None, true),
                },
                Literal::Builtin(..) => (None, false),
            };
            if let Some(t) = callee {
                let key = PredKey::of(t).expect("call atom");
                let defs = prog.clauses_of(&key);
                if defs.is_empty() {
                    return Err(Error::UndefinedPredicate(key.to_string()));
                }
                for &d in &defs {
                    edges.insert((p.id, first[d]));
                    if !negated {
                        edges.insert((end(d), p.id + 1));
                    }
                }
            }
            if callee.is_none() || negated {
                edges.insert((p.id, p.id + 1));
            }
        }
        let n = points.len();
        let mut incoming = vec![Vec::new(); n + 1];
        let mut dependents: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n + 1];
        for &(from, to) in &edges {
            incoming[to].push(from);
            dependents[from].insert(to);
        }
        // A ret point also reads the state before its call.
        for p in &points {
            if p.kind == PointKind::Ret {
                dependents[p.id - 1].insert(p.id);
            }
        }
        Ok(Cfg {
            initial: first[prog.query],
            points,
            first,
            edges,
            incoming,
            dependents: dependents.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, id: usize) -> &Point {
        &self.points[id - 1]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// Sources of the edges into `id`, ascending.
    pub fn incoming(&self, id: usize) -> &[usize] {
        &self.incoming[id]
    }

    /// Points whose equations read the state at `id`.
    pub fn dependents(&self, id: usize) -> &[usize] {
        &self.dependents[id]
    }

    pub fn points_of_kind(&self, kind: PointKind) -> Vec<usize> {
        self.points.iter().filter(|p| p.kind == kind).map(|p| p.id).collect()
    }

    /// First point of clause `ci`.
    pub fn clause_start(&self, ci: usize) -> usize {
        self.first[ci]
    }

    /// The literal to the right of `id`, if any.
    pub fn literal_at<'p>(&self, prog: &'p Program, id: usize) -> Option<&'p Literal> {
        let p = self.point(id);
        prog.clauses[p.clause].body.get(p.index)
    }

    /// The atom to the right of `id`, if any.
    pub fn atom_at<'p>(&self, prog: &'p Program, id: usize) -> Option<&'p Term> {
        self.literal_at(prog, id).map(Literal::atom)
    }

    /// Head of the clause containing `id`; `None` in the query.
    pub fn head_at<'p>(&self, prog: &'p Program, id: usize) -> Option<&'p Term> {
        prog.clauses[self.point(id).clause].head.as_ref()
    }

    /// The point to the left of `id` in the same clause.
    pub fn predecessor(&self, id: usize) -> Option<usize> {
        (self.point(id).index > 0).then(|| id - 1)
    }
}
