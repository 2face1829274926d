//! Parametric modular logic programs.

pub mod engine;
pub mod error;
pub mod instantiate;
pub mod instrument;
pub mod intensional;
pub mod modular;
pub mod random;
pub mod syntax;
pub mod text;

pub use engine::{Domain, Engine, Interpretation, Options};
pub use error::{Error, ParseError, Result};
pub use instantiate::{Module, ModularProgram, ParametricModule, Valuation};
pub use intensional::{IntensionalityStatement, Pattern};
pub use syntax::*;
pub use text::{parse_control, parse_program, parse_rules, ClingoProgram, ControlPlan};
