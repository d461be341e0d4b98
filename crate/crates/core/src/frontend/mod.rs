//! Front end for the `.oks` ontology language.
//!
//! ```text
//! concept N specializes P1, P2      concept N = Type and FormalRole
//! role N = data of R                role N = result of R
//! relation N [particularizes P] signature (D[, G]) [temporal]
//! disjoint A B                      label PRIMITIVE N at TIME
//! annotate N rigidity rigid|anti-rigid|semi-rigid
//! annotate N identity carries|none  annotate N dependence dependent|independent
//! instance i : C1, C2               fact R(a1, ..., an[, TIME])
//! ```
//!
//! One statement per line, `#` starts a comment.

mod lexer;
mod parser;
mod render;

pub use lexer::{lex_line, Token, TokenKind};
pub use parser::{parse, Statement};
pub use render::{render, render_declaration, render_kernel};

use crate::diagnostic::{Diagnostic, Location};
use crate::kernel::merge_with_kernel;
use crate::model::Ontology;

/// Parses `text` and loads it on top of the kernel.
pub fn parse_ontology(text: &str, file: &str) -> Result<Ontology, Vec<Diagnostic>> {
    let statements = parse(text, file)?;
    merge_with_kernel(
        statements
            .into_iter()
            .map(|s| (s.declaration, Location::Source(s.span)))
            .collect(),
    )
}
