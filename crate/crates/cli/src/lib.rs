//! File formats, the expression grammar and the command surface of the
//! `leavitt` tool.

pub mod app;
pub mod deriv_file;
pub mod expr;
pub mod graph_file;

pub use app::{run, Cli};
pub use deriv_file::{parse_derivation_file, DerivFileError};
pub use expr::{parse_expression, ExprError};
pub use graph_file::{parse_graph_file, GraphFileError};
