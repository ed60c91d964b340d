//! File formats, DOT export, certificates and the corpus runner around
//! [`princon_core`].

pub mod certificate;
pub mod corpus;
pub mod dot;
pub mod format;
pub mod report;

pub use certificate::{certify, Certificate, Check, Outcome, Subject};
pub use corpus::{run_corpus, CorpusSummary};
pub use dot::{emit_colored_dot, emit_dot};
pub use format::{Document, FormatError};
pub use report::ReportJson;
