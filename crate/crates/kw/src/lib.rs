//! System-spec files and the `kw` command-line front end over `kw-core`.

pub mod commands;
pub mod error;
pub mod grid;
pub mod spec_file;

pub use error::CliError;
pub use spec_file::{MeasureSpec, SystemSpec};
