//! Command-line front end for [`cechss`]: argument parsing, the algebra
//! file format, and the text formats of tables, matrices and reports.

pub mod algebra_file;
pub mod config;
pub mod format;
pub mod run;

pub use algebra_file::{AlgebraFile, AlgebraFileError};
pub use config::{parse_config, AlgebraSource, Command, RunConfig};
pub use run::{load_algebra, run, RunError};
