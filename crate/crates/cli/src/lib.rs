//! Grammar documents and the `parikh` command-line front end.
//!
//! The binary is a thin wrapper around [`run`], which returns everything a
//! command would print together with its exit code.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | `equiv`: the series differ |
//! | 2 | malformed input or usage |
//! | 3 | grammar not cycle-free |
//! | 4 | grammar expansive |
//! | 5 | wrong semiring |
//! | 6 | `equiv`: semiring or alphabet mismatch |
//! | 7 | internal failure |

pub mod commands;
pub mod document;

pub use commands::{execute, run, Cli, CliError, Command, Exit, Outcome};
pub use document::{parse_as, parse_document, render, AnyGrammar, DocumentError, Weight};
