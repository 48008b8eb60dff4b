use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Colon,
    Arrow,
    FatArrow,
    Dot,
    Equals,
    LBrace,
    RBrace,
    /// End of a statement: a newline or `;`.
    Sep,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Colon => f.write_str("':'"),
            Tok::Arrow => f.write_str("'->'"),
            Tok::FatArrow => f.write_str("'=>'"),
            Tok::Dot => f.write_str("'.'"),
            Tok::Equals => f.write_str("'='"),
            Tok::LBrace => f.write_str("'{'"),
            Tok::RBrace => f.write_str("'}'"),
            Tok::Sep => f.write_str("end of statement"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error, Serialize)]
#[error("{pos}: {message}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

/// Identifiers may contain dots (`g.f` names a path) and inner dashes
/// (`free-acyclic`); a dot on its own is the composition symbol.
pub fn lex(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos {
                line: ln + 1,
                col: i + 1,
            };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
            let (tok, width) = match c {
                _ if two == "->" => (Tok::Arrow, 2),
                _ if two == "=>" => (Tok::FatArrow, 2),
                ':' => (Tok::Colon, 1),
                '=' => (Tok::Equals, 1),
                '{' => (Tok::LBrace, 1),
                '}' => (Tok::RBrace, 1),
                ';' => (Tok::Sep, 1),
                _ if ident_char(c) => {
                    let mut j = i;
                    while j < chars.len()
                        && (ident_char(chars[j])
                            || (chars[j] == '-'
                                && j > i
                                && chars.get(j + 1).is_some_and(|n| n.is_ascii_alphabetic())))
                    {
                        j += 1;
                    }
                    let word: String = chars[i..j].iter().collect();
                    if word == "." {
                        (Tok::Dot, 1)
                    } else {
                        (Tok::Ident(word), j - i)
                    }
                }
                _ => {
                    return Err(SyntaxError {
                        pos,
                        message: format!("unexpected character {c:?}"),
                    })
                }
            };
            out.push(Token { tok, pos });
            i += width;
        }
        out.push(Token {
            tok: Tok::Sep,
            pos: Pos {
                line: ln + 1,
                col: chars.len() + 1,
            },
        });
    }
    let end = out.last().map_or(Pos { line: 1, col: 1 }, |t| t.pos);
    out.push(Token {
        tok: Tok::Eof,
        pos: end,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dots_and_paths() {
        let toks: Vec<Tok> = lex("comp g . f = g.f # note")
            .unwrap()
            .into_iter()
            .map(|t| t.tok)
            .collect();
        assert_eq!(
            toks,
            [
                Tok::Ident("comp".into()),
                Tok::Ident("g".into()),
                Tok::Dot,
                Tok::Ident("f".into()),
                Tok::Equals,
                Tok::Ident("g.f".into()),
                Tok::Sep,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn bad_character_is_positioned() {
        let err = lex("object X\narrow f : X -> Y!").unwrap_err();
        assert_eq!(err.pos, Pos { line: 2, col: 17 });
    }
}
