//! Input DSL: lexer, polynomial expressions, check-file AST, and parser.
//!
//! Files are line-oriented with `#` comments. Declarations (`ring`,
//! `derivation`, `poly`, `algebra`, `slice`, `weights`, `symmetry`) bind
//! names; `check` directives reference them. Bare expressions resolve in
//! the most recently declared ring.

pub mod ast;
pub mod expr;
pub mod lexer;
pub mod parser;

pub use ast::{Check, CheckFile};
pub use expr::parse_poly;
pub use lexer::{DslError, Pos};
pub use parser::parse;
