//! The command-line tool: the DGA description language, the commands, and
//! table output.

mod commands;
mod document;
mod expected;

pub use commands::{machine_lines, pretty_table, run, Cli, CliError, Command, OutputMode};
pub use document::{
    parse_dga, CoordDecl, DgaDocument, DocumentError, Expectation, Factor, FormExpr, FrameDecl,
    ParseError, Term, WeightCoordDecl,
};
pub use expected::{cell_name, diff, parse_expected, DiffOutcome, ExpectedSection, Mismatch};
