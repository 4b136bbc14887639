//! Annotated output of an analysis run.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::domain::VtSet;
use crate::engine::fixpoint::Analysis;
use crate::engine::program::Program;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub points: Vec<PointReport>,
    pub stats: StatsReport,
    pub config: ConfigReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointReport {
    pub id: usize,
    /// 1-based clause number in textual order.
    pub clause: usize,
    /// Position within the clause body; equals the body length at the end.
    pub index: usize,
    pub kind: String,
    /// The literal to the right of the point.
    pub before: Option<String>,
    /// One map per typing, variable name to type; `1` bindings are omitted.
    pub typings: Vec<BTreeMap<String, String>>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsReport {
    pub total_checks: u64,
    pub distinct_checks: u64,
    pub repetition: f64,
    pub computations: u64,
    pub cache_hits: u64,
    pub cache_misses: u64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigReport {
    pub k0: usize,
    pub tabling: bool,
    pub simplified: bool,
    pub input: String,
}

/// Typings with canonical types, sorted by their printed form.
fn typing_maps(s: &VtSet) -> Vec<BTreeMap<String, String>> {
    let mut out: Vec<BTreeMap<String, String>> = s
        .iter()
        .map(|t| t.iter().map(|(v, ty)| (v.to_string(), ty.canonical().to_string())).collect())
        .collect();
    out.sort_by_key(render_set_item);
    out.dedup();
    out
}

fn render_set_item(m: &BTreeMap<String, String>) -> String {
    let items: Vec<String> = m.iter().map(|(v, t)| format!("{v}/{t}")).collect();
    format!("[{}]", items.join(", "))
}

fn render_set(typings: &[BTreeMap<String, String>]) -> String {
    let items: Vec<String> = typings.iter().map(render_set_item).collect();
    format!("[{}]", items.join(", "))
}

impl Report {
    pub fn new(prog: &Program, analysis: &Analysis, input: &VtSet) -> Report {
        let points = analysis
            .cfg
            .points()
            .iter()
            .map(|p| {
                let typings = typing_maps(analysis.state(p.id));
                PointReport {
                    id: p.id,
                    clause: p.clause + 1,
                    index: p.index,
                    kind: p.kind.name().to_string(),
                    before: analysis.cfg.literal_at(prog, p.id).map(|l| l.to_string()),
                    text: render_set(&typings),
                    typings,
                }
            })
            .collect();
        let c = analysis.checks;
        Report {
            points,
            stats: StatsReport {
                total_checks: c.total_checks,
                distinct_checks: c.distinct_checks,
                repetition: c.repetition(),
                computations: c.computations,
                cache_hits: analysis.cache_hits,
                cache_misses: analysis.cache_misses,
                iterations: analysis.iterations,
            },
            config: ConfigReport {
                k0: analysis.config.k0,
                tabling: analysis.config.tabling,
                simplified: analysis.config.simplified,
                input: render_set(&typing_maps(input)),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The program with each point's state as a comment line.
    pub fn to_text(&self, prog: &Program, with_stats: bool) -> String {
        let mut out = String::new();
        let mut by_clause: BTreeMap<usize, Vec<&PointReport>> = BTreeMap::new();
        for p in &self.points {
            by_clause.entry(p.clause).or_default().push(p);
        }
        for (ci, pts) in by_clause {
            let c = &prog.clauses[ci - 1];
            if ci > 1 {
                out.push('\n');
            }
            match (&c.head, c.body.is_empty()) {
                (Some(h), true) => writeln!(out, "{h}.").unwrap(),
                (Some(h), false) => writeln!(out, "{h} :-").unwrap(),
                (None, _) => writeln!(out, ":-").unwrap(),
            }
            let n = c.body.len();
            for p in pts {
                writeln!(out, "    % {} {}: {}", p.id, p.kind, p.text).unwrap();
                if p.index < n {
                    let sep = if p.index + 1 < n { "," } else { "." };
                    writeln!(out, "    {}{sep}", c.body[p.index]).unwrap();
                }
            }
        }
        if with_stats {
            let s = &self.stats;
            writeln!(out).unwrap();
            writeln!(out, "% total checks: {}", s.total_checks).unwrap();
            writeln!(out, "% distinct checks: {}", s.distinct_checks).unwrap();
            writeln!(out, "% repetition: {:.2}", s.repetition).unwrap();
            writeln!(out, "% computations: {}", s.computations).unwrap();
            writeln!(out, "% iterations: {}", s.iterations).unwrap();
        }
        out
    }
}
