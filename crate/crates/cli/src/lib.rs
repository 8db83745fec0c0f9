//! Library half of the `kerov` command: output rendering and the
//! verification suites run by `kerov verify`.

pub mod render;
pub mod suites;

pub use suites::{run_suite, Suite, SuiteReport, VerifyConfig};
