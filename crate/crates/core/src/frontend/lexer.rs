//! Line-oriented tokenizer.

use crate::diagnostic::{Code, Diagnostic, Location, SourceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    /// Identifier or keyword; may contain `-` (for `anti-rigid`).
    Word,
    /// Anything starting with a digit or a sign followed by a digit.
    Number,
    LParen,
    RParen,
    Comma,
    Colon,
    Equals,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// 1-based character column.
    pub column: usize,
}

impl Token {
    pub fn len(&self) -> usize {
        self.text.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn end(&self) -> usize {
        self.column + self.len()
    }
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

/// Tokenizes one line (without its terminator). Comments run from `#` to
/// the end of the line.
pub fn lex_line(line: &str, file: &str, line_no: usize) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = line.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = |kind| Token {
            kind,
            text: c.to_string(),
            column,
        };
        match c {
            ' ' | '\t' | '\r' => i += 1,
            '#' => break,
            '(' => {
                tokens.push(single(TokenKind::LParen));
                i += 1;
            }
            ')' => {
                tokens.push(single(TokenKind::RParen));
                i += 1;
            }
            ',' => {
                tokens.push(single(TokenKind::Comma));
                i += 1;
            }
            ':' => {
                tokens.push(single(TokenKind::Colon));
                i += 1;
            }
            '=' => {
                tokens.push(single(TokenKind::Equals));
                i += 1;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Word,
                    text: chars[start..i].iter().collect(),
                    column,
                });
            }
            c if c.is_ascii_digit()
                || ((c == '-' || c == '+') && chars.get(i + 1).is_some_and(char::is_ascii_digit)) =>
            {
                let start = i;
                i += 1;
                while i < chars.len() && (is_word_char(chars[i]) || chars[i] == '.') {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Number,
                    text: chars[start..i].iter().collect(),
                    column,
                });
            }
            other => {
                let mut end = i + 1;
                while end < chars.len() && !chars[end].is_whitespace() && !"(),:=#".contains(chars[end]) {
                    end += 1;
                }
                return Err(Diagnostic::error(
                    Code::P1,
                    Location::Source(SourceSpan::new(file, line_no, column, end - i)),
                    format!("unexpected character `{}`", other.escape_default()),
                ));
            }
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(line: &str) -> Vec<(TokenKind, String)> {
        lex_line(line, "f", 1)
            .unwrap()
            .into_iter()
            .map(|t| (t.kind, t.text))
            .collect()
    }

    #[test]
    fn words_numbers_and_punctuation() {
        use TokenKind::*;
        assert_eq!(
            kinds("fact PC(a, b, 12) # trailing"),
            vec![
                (Word, "fact".into()),
                (Word, "PC".into()),
                (LParen, "(".into()),
                (Word, "a".into()),
                (Comma, ",".into()),
                (Word, "b".into()),
                (Comma, ",".into()),
                (Number, "12".into()),
                (RParen, ")".into()),
            ]
        );
        assert_eq!(kinds("annotate X rigidity anti-rigid")[3].1, "anti-rigid");
        assert_eq!(kinds("at -1")[1], (Number, "-1".into()));
        assert_eq!(kinds("at 1.5")[1], (Number, "1.5".into()));
    }

    #[test]
    fn columns_are_one_based() {
        let toks = lex_line("  label Task X at 3\r", "f", 1).unwrap();
        assert_eq!(toks[0].column, 3);
        assert_eq!(toks[4].column, 19);
    }

    #[test]
    fn unexpected_character() {
        let d = lex_line("concept A! specializes PT", "f", 4).unwrap_err();
        assert_eq!(d.code, Code::P1);
        assert_eq!(d.location, Location::Source(SourceSpan::new("f", 4, 10, 1)));
        let d = lex_line("concept @bad", "f", 1).unwrap_err();
        assert_eq!(d.location.span().unwrap().length, 4);
    }
}
