//! Expression language and command surface for the `tangle` tool.

pub mod command;
pub mod expr;

pub use command::{run_command, CliError, Command, CommandConfig, Output};
pub use expr::{parse_expr, Builtin, Expr, GenKind, ParseError};
