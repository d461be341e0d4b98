//! Statement parser. One statement per line; a malformed line yields one
//! diagnostic and parsing resumes on the next line.

use std::collections::BTreeSet;

use crate::diagnostic::{Code, Diagnostic, Location, SourceSpan};
use crate::model::{
    AxisValue, ConceptDecl, Declaration, Definition, Dependence, Fact, IdentityCriterion,
    InstanceDecl, MetaLabel, Origin, Primitive, RelationDecl, Rigidity, RoleMode, Time,
};

use super::lexer::{lex_line, Token, TokenKind};

/// A parsed declaration with the span of its whole statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub declaration: Declaration,
    pub span: SourceSpan,
}

struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    file: &'a str,
    line: usize,
    line_len: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn span_of(&self, tok: Option<&Token>) -> SourceSpan {
        match tok {
            Some(t) => SourceSpan::new(self.file, self.line, t.column, t.len()),
            None => SourceSpan::new(self.file, self.line, self.line_len + 1, 1),
        }
    }

    fn error(&self, code: Code, tok: Option<&Token>, message: String) -> Diagnostic {
        Diagnostic::error(code, Location::Source(self.span_of(tok)), message)
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        let tok = self.peek();
        let found = tok.map_or("end of line".to_string(), |t| format!("`{}`", t.text));
        self.error(Code::P2, tok, format!("expected {expected}, found {found}"))
    }

    fn punct(&mut self, kind: TokenKind, what: &str) -> PResult<()> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn at_punct(&self, kind: TokenKind) -> bool {
        self.peek().is_some_and(|t| t.kind == kind)
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Word && t.text == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        self.peek().is_some_and(|t| t.kind == TokenKind::Word && t.text == kw)
    }

    fn word(&mut self, what: &str) -> PResult<&'a Token> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Word => {
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn ident(&mut self) -> PResult<String> {
        let tok = self.word("an identifier")?;
        if tok.text.contains('-') {
            return Err(self.error(
                Code::P2,
                Some(tok),
                format!("`{}` is not a valid identifier", tok.text),
            ));
        }
        Ok(tok.text.clone())
    }

    fn time(&mut self) -> PResult<Time> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Number => {
                self.pos += 1;
                parse_time(t).map_err(|m| self.error(Code::P4, Some(t), m))
            }
            _ => Err(self.unexpected("a time point")),
        }
    }

    fn end(&self) -> PResult<()> {
        if self.peek().is_some() {
            Err(self.unexpected("end of statement"))
        } else {
            Ok(())
        }
    }

    fn ident_list(&mut self) -> PResult<Vec<String>> {
        let mut out = vec![self.ident()?];
        while self.at_punct(TokenKind::Comma) {
            self.pos += 1;
            out.push(self.ident()?);
        }
        Ok(out)
    }
}

fn parse_time(tok: &Token) -> Result<Time, String> {
    if !tok.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!(
            "malformed time literal `{}`: expected a non-negative integer",
            tok.text
        ));
    }
    tok.text
        .parse::<Time>()
        .map_err(|_| format!("time literal `{}` is out of range", tok.text))
}

fn statement(c: &mut Cursor<'_>) -> PResult<Declaration> {
    let head = c.word("a statement keyword")?;
    let decl = match head.text.as_str() {
        "concept" => {
            let name = c.ident()?;
            if c.at_keyword("specializes") {
                c.pos += 1;
                let parents = c.ident_list()?;
                Declaration::Concept(ConceptDecl::primitive(&name, Origin::User, parents))
            } else if c.at_punct(TokenKind::Equals) {
                c.pos += 1;
                let type_name = c.ident()?;
                c.keyword("and")?;
                let role = c.ident()?;
                Declaration::Concept(ConceptDecl {
                    name,
                    origin: Origin::User,
                    definition: Definition::Conjunction { type_name, role },
                    parents: BTreeSet::new(),
                })
            } else {
                Declaration::Concept(ConceptDecl::primitive(&name, Origin::User, Vec::<String>::new()))
            }
        }
        "role" => {
            let name = c.ident()?;
            c.punct(TokenKind::Equals, "`=`")?;
            let mode_tok = c.word("`data` or `result`")?;
            let mode = match mode_tok.text.as_str() {
                "data" => RoleMode::Data,
                "result" => RoleMode::Result,
                other => {
                    return Err(c.error(
                        Code::P2,
                        Some(mode_tok),
                        format!("expected `data` or `result`, found `{other}`"),
                    ))
                }
            };
            c.keyword("of")?;
            let reasoning = c.ident()?;
            Declaration::Concept(ConceptDecl::role(&name, mode, &reasoning))
        }
        "relation" => {
            let name = c.ident()?;
            let parent = if c.at_keyword("particularizes") {
                c.pos += 1;
                Some(c.ident()?)
            } else {
                None
            };
            c.keyword("signature")?;
            c.punct(TokenKind::LParen, "`(`")?;
            let domain = c.ident()?;
            let range = if c.at_punct(TokenKind::Comma) {
                c.pos += 1;
                Some(c.ident()?)
            } else {
                None
            };
            c.punct(TokenKind::RParen, "`)`")?;
            let temporal = if c.at_keyword("temporal") {
                c.pos += 1;
                true
            } else {
                false
            };
            let mut r = RelationDecl::new(&name, Origin::User, &domain, range.as_deref(), temporal);
            r.particularizes = parent;
            Declaration::Relation(r)
        }
        "disjoint" => {
            let a = c.ident()?;
            let b = c.ident()?;
            Declaration::Disjoint(a, b)
        }
        "label" => {
            let prim_tok = c.word("a modeling primitive")?;
            let primitive: Primitive = prim_tok.text.parse().map_err(|_| {
                c.error(
                    Code::P3,
                    Some(prim_tok),
                    format!("unknown modeling primitive `{}`", prim_tok.text),
                )
            })?;
            let concept = c.ident()?;
            c.keyword("at")?;
            let time = c.time()?;
            Declaration::Label(MetaLabel {
                primitive,
                concept,
                time,
            })
        }
        "annotate" => {
            let concept = c.ident()?;
            let axis_tok = c.word("`rigidity`, `identity` or `dependence`")?;
            let value_tok = c.word("an annotation value")?;
            let bad_value = |c: &Cursor<'_>| {
                c.error(
                    Code::P2,
                    Some(value_tok),
                    format!("`{}` is not a valid {} value", value_tok.text, axis_tok.text),
                )
            };
            let value = match axis_tok.text.as_str() {
                "rigidity" => match value_tok.text.parse::<Rigidity>() {
                    Ok(v) if v != Rigidity::Unspecified => AxisValue::Rigidity(v),
                    _ => return Err(bad_value(c)),
                },
                "identity" => match value_tok.text.parse::<IdentityCriterion>() {
                    Ok(v) if v != IdentityCriterion::Unspecified => AxisValue::Identity(v),
                    _ => return Err(bad_value(c)),
                },
                "dependence" => match value_tok.text.parse::<Dependence>() {
                    Ok(v) if v != Dependence::Unspecified => AxisValue::Dependence(v),
                    _ => return Err(bad_value(c)),
                },
                other => {
                    return Err(c.error(
                        Code::P2,
                        Some(axis_tok),
                        format!("unknown meta-property axis `{other}`"),
                    ))
                }
            };
            Declaration::Annotate { concept, value }
        }
        "instance" => {
            let name = c.ident()?;
            c.punct(TokenKind::Colon, "`:`")?;
            let concepts = c.ident_list()?;
            Declaration::Instance(InstanceDecl::new(&name, concepts))
        }
        "fact" => {
            let relation = c.ident()?;
            c.punct(TokenKind::LParen, "`(`")?;
            let mut args = Vec::new();
            let mut time = None;
            loop {
                match c.peek() {
                    Some(t) if t.kind == TokenKind::Number => {
                        time = Some(c.time()?);
                        c.punct(TokenKind::RParen, "`)` after the time argument")?;
                        break;
                    }
                    _ => args.push(c.ident()?),
                }
                if c.at_punct(TokenKind::Comma) {
                    c.pos += 1;
                } else {
                    c.punct(TokenKind::RParen, "`,` or `)`")?;
                    break;
                }
            }
            Declaration::Fact(Fact {
                relation,
                args,
                time,
            })
        }
        other => {
            return Err(c.error(
                Code::P2,
                Some(head),
                format!("unknown statement `{other}`"),
            ))
        }
    };
    c.end()?;
    Ok(decl)
}

/// Parses a whole file. Accepts LF and CRLF line endings.
pub fn parse(text: &str, file: &str) -> Result<Vec<Statement>, Vec<Diagnostic>> {
    let mut statements = Vec::new();
    let mut diags = Vec::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let tokens = match lex_line(line, file, line_no) {
            Ok(t) => t,
            Err(d) => {
                diags.push(d);
                continue;
            }
        };
        if tokens.is_empty() {
            continue;
        }
        let mut cursor = Cursor {
            tokens: &tokens,
            pos: 0,
            file,
            line: line_no,
            line_len: line.chars().count(),
        };
        match statement(&mut cursor) {
            Ok(declaration) => {
                let first = &tokens[0];
                let last = tokens.last().expect("nonempty");
                statements.push(Statement {
                    declaration,
                    span: SourceSpan::new(file, line_no, first.column, last.end() - first.column),
                });
            }
            Err(d) => diags.push(d),
        }
    }
    if diags.is_empty() {
        Ok(statements)
    } else {
        Err(diags)
    }
}
