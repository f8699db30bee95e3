//! Command-line front end: realize, invariants, enumerate and verify, with
//! JSON and TSV output.

pub mod app;
pub mod document;
pub mod table;

pub use app::{main_with, run_args, Outcome};
pub use document::{CertificateDocument, OpenDocument, VerifyDocument, SCHEMA_VERSION};
