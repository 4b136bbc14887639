//! Programs, their control-flow graph and the fixpoint analysis.

pub mod builtins;
pub mod cfg;
pub mod fixpoint;
pub mod program;
pub mod report;
pub mod simplify;

pub use cfg::{Cfg, Point, PointKind};
pub use fixpoint::{analyze, analyze_with, input_state, residual, widen, Analysis, Config};
pub use program::{Clause, Literal, PredKey, Program};
pub use report::Report;
