//! Coded findings shared by the loader, the validator and the compiler.

use std::fmt;

use serde::Serialize;

/// A position inside a source file. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SourceSpan {
    pub file: String,
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl SourceSpan {
    pub fn new(file: impl Into<String>, line: usize, column: usize, length: usize) -> Self {
        Self {
            file: file.into(),
            line,
            column,
            length,
        }
    }

    /// True when both spans sit on the same line and their column ranges intersect.
    pub fn overlaps(&self, other: &SourceSpan) -> bool {
        if self.file != other.file || self.line != other.line {
            return false;
        }
        let a = (self.column, self.column + self.length.max(1));
        let b = (other.column, other.column + other.length.max(1));
        a.0 < b.1 && b.0 < a.1
    }
}

/// Where a declaration (or a finding about it) comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Location {
    Kernel,
    Source(SourceSpan),
}

impl Location {
    pub fn span(&self) -> Option<&SourceSpan> {
        match self {
            Location::Kernel => None,
            Location::Source(span) => Some(span),
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Kernel => f.write_str("<kernel>"),
            Location::Source(s) => write!(f, "{}:{}:{}", s.file, s.line, s.column),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

/// The closed set of finding codes.
///
/// `P*` codes come from the front end and the loader, `C1` from the compiler,
/// everything else from the validator (see [`crate::validator::registry`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Code {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    W1,
    W2,
    S1,
    S2,
    A3,
    A7,
    A8,
    L2b,
    L3,
    L4,
    L5,
    L6,
    A13,
    R13,
    Ad35,
    C1,
}

impl Code {
    pub const ALL: [Code; 25] = [
        Code::P1,
        Code::P2,
        Code::P3,
        Code::P4,
        Code::P5,
        Code::P6,
        Code::P7,
        Code::P8,
        Code::P9,
        Code::W1,
        Code::W2,
        Code::S1,
        Code::S2,
        Code::A3,
        Code::A7,
        Code::A8,
        Code::L2b,
        Code::L3,
        Code::L4,
        Code::L5,
        Code::L6,
        Code::A13,
        Code::R13,
        Code::Ad35,
        Code::C1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Code::P1 => "P1",
            Code::P2 => "P2",
            Code::P3 => "P3",
            Code::P4 => "P4",
            Code::P5 => "P5",
            Code::P6 => "P6",
            Code::P7 => "P7",
            Code::P8 => "P8",
            Code::P9 => "P9",
            Code::W1 => "W1",
            Code::W2 => "W2",
            Code::S1 => "S1",
            Code::S2 => "S2",
            Code::A3 => "A3",
            Code::A7 => "A7",
            Code::A8 => "A8",
            Code::L2b => "L2b",
            Code::L3 => "L3",
            Code::L4 => "L4",
            Code::L5 => "L5",
            Code::L6 => "L6",
            Code::A13 => "A13",
            Code::R13 => "R13",
            Code::Ad35 => "Ad35",
            Code::C1 => "C1",
        }
    }

    pub fn parse(s: &str) -> Option<Code> {
        Code::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub location: Location,
    pub subjects: Vec<String>,
}

type SortKey<'a> = (Option<(&'a str, usize)>, Code, usize, &'a str, &'a [String]);

impl Diagnostic {
    pub fn error(code: Code, location: Location, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            code,
            message: message.into(),
            location,
            subjects: Vec::new(),
        }
    }

    pub fn warning(code: Code, location: Location, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            ..Self::error(code, location, message)
        }
    }

    pub fn with_subjects<I, S>(mut self, subjects: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.subjects = subjects.into_iter().map(Into::into).collect();
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// One-line text form: `file:line:col: severity[CODE] message`.
    pub fn render(&self) -> String {
        format!(
            "{}: {}[{}] {}",
            self.location, self.severity, self.code, self.message
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (file, line, column) = match &self.location {
            Location::Kernel => ("<kernel>".to_string(), 0, 0),
            Location::Source(s) => (s.file.clone(), s.line, s.column),
        };
        serde_json::json!({
            "code": self.code,
            "severity": self.severity,
            "message": self.message,
            "file": file,
            "line": line,
            "column": column,
            "subjects": self.subjects,
        })
    }

    /// File, line, code, then column, message and subjects. Kernel
    /// locations sort first.
    fn sort_key(&self) -> SortKey<'_> {
        let span = self.location.span();
        (
            span.map(|s| (s.file.as_str(), s.line)),
            self.code,
            span.map_or(0, |s| s.column),
            self.message.as_str(),
            &self.subjects,
        )
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Sort by file, line, code (kernel findings first) and drop exact repeats.
pub fn sort_diagnostics(diags: &mut Vec<Diagnostic>) {
    diags.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    diags.dedup();
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_round_trip_through_text() {
        for code in Code::ALL {
            assert_eq!(Code::parse(code.as_str()), Some(code));
        }
        assert_eq!(Code::parse("Z9"), None);
    }

    #[test]
    fn text_format() {
        let d = Diagnostic::error(
            Code::A7,
            Location::Source(SourceSpan::new("m.oks", 3, 1, 5)),
            "bad",
        );
        assert_eq!(d.render(), "m.oks:3:1: error[A7] bad");
        let k = Diagnostic::warning(Code::Ad35, Location::Kernel, "x");
        assert_eq!(k.render(), "<kernel>: warning[Ad35] x");
    }

    #[test]
    fn sorting_puts_kernel_first_then_line_then_code() {
        let at = |line| Location::Source(SourceSpan::new("f", line, 1, 1));
        let mut v = vec![
            Diagnostic::error(Code::L3, at(2), "b"),
            Diagnostic::error(Code::A7, at(2), "a"),
            Diagnostic::error(Code::W1, at(1), "c"),
            Diagnostic::error(Code::S1, Location::Kernel, "k"),
        ];
        sort_diagnostics(&mut v);
        let codes: Vec<_> = v.iter().map(|d| d.code).collect();
        assert_eq!(codes, vec![Code::S1, Code::W1, Code::A7, Code::L3]);
    }

    #[test]
    fn overlap() {
        let a = SourceSpan::new("f", 1, 5, 3);
        assert!(a.overlaps(&SourceSpan::new("f", 1, 7, 1)));
        assert!(!a.overlaps(&SourceSpan::new("f", 1, 8, 2)));
        assert!(!a.overlaps(&SourceSpan::new("f", 2, 5, 3)));
    }
}
