//! Shared fixtures, generators and oracles for the integration tests.
#![allow(dead_code)]

pub mod goldens;
pub mod props;

use std::path::PathBuf;

use regtype::syntax::{parse_program, parse_rules, parse_type};
use regtype::{Program, RuleSet, Type, Var, VarTyping, VtSet};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn rules(name: &str) -> RuleSet {
    parse_rules(&data(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// nat, even, odd, list and tree.
pub fn peano() -> RuleSet {
    rules("peano.rules")
}

/// `peano()` plus a binary constructor for two-parameter schemes.
pub fn peano_pairs() -> RuleSet {
    parse_rules(&(data("peano.rules") + "pair(B, C) -> pr(B, C).\n")).unwrap()
}

pub fn program(name: &str) -> Program {
    parse_program(&data(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn ty(s: &str) -> Type {
    parse_type(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn v(name: &str) -> Var {
    Var::new(name)
}

/// Typing over unscoped variables from `name: type` pairs.
pub fn typing(pairs: &[(&str, &str)]) -> VarTyping {
    VarTyping::from_pairs(pairs.iter().map(|(n, t)| (v(n), ty(t))))
}

pub fn vtset(items: &[&[(&str, &str)]]) -> VtSet {
    VtSet::from_typings(items.iter().map(|p| typing(p)))
}

/// Converts a check into a labelled result for reporting.
pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}
