//! Goal-dependent type analysis for a Prolog subset.
//!
//! Types are regular expressions over user-supplied type rules, closed under
//! `or` and `and`. The analysis propagates sets of variable typings through
//! the program's control-flow graph until a fixpoint is reached.

pub mod decide;
pub mod domain;
pub mod engine;
pub mod error;
pub mod propagate;
pub mod syntax;
pub mod term;
pub mod types;

pub use decide::{Decider, ExtType, SeqExpr};
pub use domain::{VarTyping, VtSet};
pub use engine::{analyze, Analysis, Config, Program, Report};
pub use error::{Error, Result};
pub use term::{Functor, Subst, Term, Var};
pub use types::{Prim, RuleSet, Scheme, Type, TypeRule};
