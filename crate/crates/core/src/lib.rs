//! Parse, validate and compile labeled problem-solving ontologies.
//!
//! A `.oks` file is parsed by [`frontend`], merged with the fixed
//! [`kernel`], saturated by [`reasoner`], checked by [`validator`] and
//! turned into domain, inference and task models by [`compiler`].

pub mod compiler;
pub mod corpus;
pub mod diagnostic;
pub mod frontend;
pub mod kernel;
pub mod model;
pub mod reasoner;
pub mod traceability;
pub mod validator;

pub use diagnostic::{Code, Diagnostic, Location, Severity, SourceSpan};
pub use model::Ontology;

/// Parses `text` on top of the kernel and validates it. Parse and load
/// failures come back as diagnostics just like validation findings.
pub fn check_source(text: &str, file: &str) -> (Option<Ontology>, Vec<diagnostic::Diagnostic>) {
    match frontend::parse_ontology(text, file) {
        Ok(onto) => {
            let diags = validator::validate(&onto);
            (Some(onto), diags)
        }
        Err(mut diags) => {
            diagnostic::sort_diagnostics(&mut diags);
            (None, diags)
        }
    }
}
