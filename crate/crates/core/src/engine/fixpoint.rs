//! Worklist solver for the data-flow equations with depth-k widening.

use std::collections::VecDeque;

use crate::decide::{CheckStats, Decider};
use crate::domain::{VarTyping, VtSet};
use crate::engine::cfg::{Cfg, PointKind};
use crate::engine::program::{Literal, Program};
use crate::engine::simplify::collapse;
use crate::error::{Error, Result};
use crate::propagate::{aunify, id_abstract};
use crate::types::{RuleSet, Type};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Added to the depth of the first non-empty state to get the widening
    /// depth of a point.
    pub k0: usize,
    pub tabling: bool,
    pub simplified: bool,
}

impl Default for Config {
    fn default() -> Config {
        Config { k0: 1, tabling: true, simplified: false }
    }
}

/// Result of a run: the state at every point plus counters.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub cfg: Cfg,
    pub config: Config,
    /// Indexed by point id; slot 0 is unused.
    pub states: Vec<VtSet>,
    /// Widening depth per point, fixed at its first non-empty update.
    pub widen_depth: Vec<Option<usize>>,
    /// Successive values of each point's state.
    pub chains: Vec<Vec<VtSet>>,
    pub checks: CheckStats,
    pub cache_hits: u64,
    pub cache_misses: u64,
    /// Number of equation evaluations.
    pub iterations: usize,
}

impl Analysis {
    pub fn state(&self, id: usize) -> &VtSet {
        &self.states[id]
    }

    /// State at the end of the query.
    pub fn query_exit(&self) -> usize {
        let start = self.cfg.initial();
        let clause = self.cfg.point(start).clause;
        self.cfg.points().iter().filter(|p| p.clause == clause).map(|p| p.id).max().unwrap_or(start)
    }
}

/// Builds the input state from `Name:Type` pairs over the query variables.
pub fn input_state(prog: &Program, typings: &[(String, Type)], rules: &RuleSet) -> Result<VtSet> {
    let q = prog.query();
    let mut mu = VarTyping::new();
    for (name, ty) in typings {
        rules.validate(ty)?;
        let v = q.names.get(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
        mu.set(v.clone(), Type::and(mu.get(v), ty.clone()));
    }
    Ok(VtSet::singleton(mu))
}

/// Checks the program against the rules and runs the analysis with a fresh
/// decision procedure.
pub fn analyze(prog: &Program, rules: &RuleSet, input: &VtSet, config: Config) -> Result<Analysis> {
    prog.check(rules)?;
    let cfg = Cfg::build(prog)?;
    let dec = Decider::with_tabling(rules, config.tabling);
    Solver::new(prog, &cfg, &dec, config).run(input)
}

/// Runs the analysis sharing an existing decision procedure.
pub fn analyze_with(prog: &Program, cfg: &Cfg, dec: &Decider, input: &VtSet, config: Config) -> Result<Analysis> {
    Solver::new(prog, cfg, dec, config).run(input)
}

struct Solver<'a, 'r> {
    prog: &'a Program,
    cfg: &'a Cfg,
    dec: &'a Decider<'r>,
    config: Config,
    states: Vec<VtSet>,
    widen_depth: Vec<Option<usize>>,
    chains: Vec<Vec<VtSet>>,
    iterations: usize,
}

impl<'a, 'r> Solver<'a, 'r> {
    fn new(prog: &'a Program, cfg: &'a Cfg, dec: &'a Decider<'r>, config: Config) -> Self {
        let n = cfg.len() + 1;
        Solver {
            prog,
            cfg,
            dec,
            config,
            states: vec![VtSet::empty(); n],
            widen_depth: vec![None; n],
            chains: vec![Vec::new(); n],
            iterations: 0,
        }
    }

    fn run(mut self, input: &VtSet) -> Result<Analysis> {
        let before = self.dec.stats();
        let cache_before = self.dec.cache();
        let iota = self.cfg.initial();
        let mut pi = self.dec.remove_redundant(input);
        if self.config.simplified {
            pi = collapse(&pi, self.dec);
        }
        self.states[iota] = pi.clone();
        self.chains[iota].push(pi);

        let mut queue: VecDeque<usize> = VecDeque::new();
        let mut queued = vec![false; self.states.len()];
        for &d in self.cfg.dependents(iota) {
            queue.push_back(d);
            queued[d] = true;
        }
        while let Some(q) = queue.pop_front() {
            queued[q] = false;
            self.iterations += 1;
            let rhs = self.rhs(q)?;
            if self.update(q, rhs)? {
                for &d in self.cfg.dependents(q) {
                    if !queued[d] && d != iota {
                        queued[d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }

        let after = self.dec.stats();
        let cache_after = self.dec.cache();
        Ok(Analysis {
            cfg: self.cfg.clone(),
            config: self.config,
            states: self.states,
            widen_depth: self.widen_depth,
            chains: self.chains,
            checks: CheckStats {
                total_checks: after.total_checks - before.total_checks,
                distinct_checks: after.distinct_checks - before.distinct_checks,
                computations: after.computations - before.computations,
            },
            cache_hits: cache_after.hits - cache_before.hits,
            cache_misses: cache_after.misses - cache_before.misses,
            iterations: self.iterations,
        })
    }

    /// Right-hand side of the equation for `q`.
    pub(crate) fn rhs(&self, q: usize) -> Result<VtSet> {
        let (prog, cfg, dec) = (self.prog, self.cfg, self.dec);
        let point = cfg.point(q);
        let mut out = VtSet::empty();
        match point.kind {
            PointKind::Initial => return Ok(self.states[q].clone()),
            PointKind::Call => {
                let head = cfg.head_at(prog, q).expect("call point in a clause");
                for &p in cfg.incoming(q) {
                    if self.states[p].is_empty() {
                        continue;
                    }
                    let atom = cfg.atom_at(prog, p).expect("call site");
                    out = out.union(&aunify(atom, &self.states[p], head, &id_abstract(), dec)?);
                }
            }
            PointKind::Ret => {
                let before = q - 1;
                let call = cfg.atom_at(prog, before).expect("call site");
                if self.states[before].is_empty() {
                    return Ok(out);
                }
                for &e in cfg.incoming(q) {
                    if self.states[e].is_empty() {
                        continue;
                    }
                    let head = cfg.head_at(prog, e).expect("clause end");
                    out = out.union(&aunify(head, &self.states[e], call, &self.states[before], dec)?);
                }
            }
            PointKind::Nf => out = self.states[q - 1].clone(),
            PointKind::Bip => {
                let Some(Literal::Builtin(b, atom)) = cfg.literal_at(prog, q - 1) else {
                    unreachable!("bip point follows a builtin");
                };
                if !self.states[q - 1].is_empty() {
                    out = b.transfer(atom, &self.states[q - 1], dec)?;
                }
            }
        }
        Ok(dec.remove_redundant(&out.map_types(|t| dec.tidy(t))))
    }

    /// Adds `rhs` to the state at `q`; reports whether the state grew.
    fn update(&mut self, q: usize, rhs: VtSet) -> Result<bool> {
        let dec = self.dec;
        let old = &self.states[q];
        let mut next = old.union(&rhs);
        if self.config.simplified {
            next = collapse(&next, dec);
        }
        next = dec.remove_redundant(&next);
        if next.is_empty() {
            return Ok(false);
        }
        let k = match self.widen_depth[q] {
            Some(k) => k,
            None => {
                let depth = next
                    .iter()
                    .flat_map(|t| t.iter().map(|(_, ty)| ty.atom_depth_max()))
                    .max()
                    .unwrap_or(0);
                // Depth 0 would cut the outermost constructor's arguments.
                let k = (depth + self.config.k0).max(1);
                self.widen_depth[q] = Some(k);
                k
            }
        };
        next = widen(&next, k, dec)?;
        if dec.vtset_leq_unchecked(&next, old) {
            return Ok(false);
        }
        self.chains[q].push(next.clone());
        self.states[q] = next;
        Ok(true)
    }
}

/// Replaces every type `R` by `cn(d_k(cn(R)))` and drops redundant typings.
pub fn widen(s: &VtSet, k: usize, dec: &Decider) -> Result<VtSet> {
    let mut err = None;
    let out = s.map_types(|ty| match ty.canonical().depth_abstract(k) {
        Ok(t) => dec.tidy(&t),
        Err(e) => {
            err = Some(e);
            ty.clone()
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(dec.remove_redundant(&out)),
    }
}

/// Recomputes every equation against the final states; `Some(id)` names the
/// first point whose right-hand side is not covered.
pub fn residual(prog: &Program, analysis: &Analysis, dec: &Decider) -> Result<Option<usize>> {
    let mut solver = Solver::new(prog, &analysis.cfg, dec, analysis.config);
    solver.states = analysis.states.clone();
    for p in analysis.cfg.points() {
        let rhs = solver.rhs(p.id)?;
        let rhs = if analysis.config.simplified { collapse(&rhs, dec) } else { rhs };
        if !dec.vtset_leq_unchecked(&rhs, &analysis.states[p.id]) {
            return Ok(Some(p.id));
        }
    }
    Ok(None)
}
