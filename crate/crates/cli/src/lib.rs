//! Command-line front end for the `tba-core` library: model files, property
//! checks, conversions, model search and proof checking.

mod app;
pub mod model_file;

pub use app::{run, EXIT_BUDGET, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
