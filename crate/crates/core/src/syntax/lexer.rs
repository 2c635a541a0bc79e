use super::SyntaxError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Dot,
    Colon,
    Arrow,
    Implies,
    And,
    Or,
    Eq,
    Gt,
    Bar,
    Lam,
    TyLam,
    All,
    Some,
    Pi,
    Eof,
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// Characters that are symbols even though Unicode counts them as letters.
fn is_reserved_letter(c: char) -> bool {
    matches!(c, 'λ' | 'Λ' | 'Π')
}

fn is_ident_char(c: char) -> bool {
    (c.is_alphanumeric() || c == '_' || c == '\'') && !is_reserved_letter(c)
}

pub fn lex(text: &str, line: usize, column: usize) -> Result<Vec<Spanned>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = line;
    let mut col = column;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let next = chars.get(i + 1).copied();
        let mut push = |tok: Tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '{' => push(Tok::LBrace, 1, &mut i, &mut col),
            '}' => push(Tok::RBrace, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            ':' => push(Tok::Colon, 1, &mut i, &mut col),
            '>' => push(Tok::Gt, 1, &mut i, &mut col),
            '-' if next == Some('>') => push(Tok::Arrow, 2, &mut i, &mut col),
            '=' if next == Some('>') => push(Tok::Implies, 2, &mut i, &mut col),
            '=' if next == Some('=') => push(Tok::Eq, 2, &mut i, &mut col),
            '=' => push(Tok::Eq, 1, &mut i, &mut col),
            '&' if next == Some('&') => push(Tok::And, 2, &mut i, &mut col),
            '|' if next == Some('|') => push(Tok::Or, 2, &mut i, &mut col),
            '|' => push(Tok::Bar, 1, &mut i, &mut col),
            '→' => push(Tok::Arrow, 1, &mut i, &mut col),
            '⇒' => push(Tok::Implies, 1, &mut i, &mut col),
            '∧' => push(Tok::And, 1, &mut i, &mut col),
            '∨' => push(Tok::Or, 1, &mut i, &mut col),
            'λ' => push(Tok::Lam, 1, &mut i, &mut col),
            'Λ' => push(Tok::TyLam, 1, &mut i, &mut col),
            '∀' => push(Tok::All, 1, &mut i, &mut col),
            '∃' => push(Tok::Some, 1, &mut i, &mut col),
            'Π' => push(Tok::Pi, 1, &mut i, &mut col),
            '¬' => push(Tok::Ident("not".into()), 1, &mut i, &mut col),
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits.parse().map_err(|_| SyntaxError::new(l0, c0, "numeral too large"))?;
                col += i - start;
                out.push(Spanned {
                    tok: Tok::Num(n),
                    line: l0,
                    column: c0,
                });
            }
            c if is_ident_char(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                col += i - start;
                let tok = match word.as_str() {
                    "lam" => Tok::Lam,
                    "Lam" => Tok::TyLam,
                    "all" => Tok::All,
                    "some" => Tok::Some,
                    "Pi" => Tok::Pi,
                    _ => Tok::Ident(word),
                };
                out.push(Spanned {
                    tok,
                    line: l0,
                    column: c0,
                });
            }
            other => {
                return Err(SyntaxError::new(
                    l0,
                    c0,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}
