// SPDX-License-Identifier: Apache-2.0
use crate::error::FrontendError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Str(String),
    Colon,
    Semi,
    Comma,
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    Backslash,
    Slash,
    Arrow,
    ParOp,
    SeqOp,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Splits source text into tokens. `;;` starts a comment running to end of line.
pub fn lex(src: &str) -> Result<Vec<Token>, FrontendError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        let adv = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            adv(1, &mut i, &mut col);
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        if two == ";;" {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = match (c, two.as_str()) {
            (_, "||") => {
                adv(2, &mut i, &mut col);
                Tok::ParOp
            }
            (_, ">>") => {
                adv(2, &mut i, &mut col);
                Tok::SeqOp
            }
            (_, "->") => {
                adv(2, &mut i, &mut col);
                Tok::Arrow
            }
            (':', _) => {
                adv(1, &mut i, &mut col);
                Tok::Colon
            }
            (';', _) => {
                adv(1, &mut i, &mut col);
                Tok::Semi
            }
            (',', _) => {
                adv(1, &mut i, &mut col);
                Tok::Comma
            }
            ('{', _) => {
                adv(1, &mut i, &mut col);
                Tok::LBrace
            }
            ('}', _) => {
                adv(1, &mut i, &mut col);
                Tok::RBrace
            }
            ('[', _) => {
                adv(1, &mut i, &mut col);
                Tok::LBrack
            }
            (']', _) => {
                adv(1, &mut i, &mut col);
                Tok::RBrack
            }
            ('\\', _) => {
                adv(1, &mut i, &mut col);
                Tok::Backslash
            }
            ('/', _) => {
                adv(1, &mut i, &mut col);
                Tok::Slash
            }
            ('"', _) => {
                let mut s = String::new();
                adv(1, &mut i, &mut col);
                loop {
                    match chars.get(i) {
                        None | Some('\n') => {
                            return Err(FrontendError::Syntax {
                                line: start.0,
                                col: start.1,
                                msg: "unterminated string".into(),
                            })
                        }
                        Some('"') => {
                            adv(1, &mut i, &mut col);
                            break;
                        }
                        Some(ch) => {
                            s.push(*ch);
                            adv(1, &mut i, &mut col);
                        }
                    }
                }
                Tok::Str(s)
            }
            (c, _) if ident_char(c) => {
                let mut s = String::new();
                while i < chars.len() && ident_char(chars[i]) {
                    s.push(chars[i]);
                    adv(1, &mut i, &mut col);
                }
                Tok::Ident(s)
            }
            (c, _) => {
                return Err(FrontendError::Syntax {
                    line: start.0,
                    col: start.1,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push(Token { tok, line: start.0, col: start.1 });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}
