//! Line-oriented reader for lexicon files.
//!
//! A declaration starts at column 1; indented lines continue the previous
//! declaration. `#` starts a comment outside quotes.

use crate::grammar::Cat;
use crate::kernel::Type;
use crate::syntax::{elaborate_type, parse_surface_at, parse_surface_type_at, Surface, SyntaxError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Usable only through entries that list the coercion.
    Local,
    /// Usable on any constituent whose type matches.
    Global,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DeclKind {
    Sort(String),
    Const {
        name: String,
        ty: Type,
    },
    Coercion {
        name: String,
        rigid: bool,
        scope: Scope,
        term: Surface,
    },
    Entry {
        tokens: Vec<String>,
        cat: Cat,
        term: Surface,
        coercions: Vec<String>,
    },
    Plural {
        noun: Vec<String>,
        form: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decl {
    pub line: usize,
    pub kind: DeclKind,
}

/// A parsed but not yet validated lexicon file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LexiconSource {
    pub decls: Vec<Decl>,
}

/// Parses lexicon text. Only syntax is checked here; types, coercion
/// names and plural targets are checked by [`validate`](super::validate).
pub fn load(text: &str) -> Result<LexiconSource, SyntaxError> {
    let mut decls = Vec::new();
    for (line, body) in logical_lines(text) {
        decls.push(Decl {
            line,
            kind: parse_decl(&body, line)?,
        });
    }
    Ok(LexiconSource { decls })
}

fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Joins continuation lines; yields (first line number, text).
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let continues = line.starts_with(|c: char| c.is_whitespace());
        match out.last_mut() {
            Some((_, body)) if continues => {
                body.push('\n');
                body.push_str(line);
            }
            _ => out.push((i + 1, line.trim_end().to_string())),
        }
    }
    out
}

/// Cursor over one declaration, tracking line and column for errors.
struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.text[..pos];
        let line = self.line + before.matches('\n').count();
        let col = match before.rfind('\n') {
            Some(nl) => before[nl + 1..].chars().count() + 1,
            None => before.chars().count() + 1,
        };
        (line, col)
    }

    fn error(&self, msg: impl Into<String>) -> SyntaxError {
        let (l, c) = self.location(self.pos);
        SyntaxError::new(l, c, msg)
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn word(&mut self) -> Result<&'a str, SyntaxError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !(c.is_alphanumeric() || c == '_' || c == '\'' || c == '-'))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn expect(&mut self, s: &str) -> Result<(), SyntaxError> {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`")))
        }
    }

    fn quoted(&mut self) -> Result<Vec<String>, SyntaxError> {
        self.expect("\"")?;
        let rest = self.rest();
        let Some(end) = rest.find('"') else {
            return Err(self.error("unterminated string"));
        };
        let tokens: Vec<String> = rest[..end].split_whitespace().map(str::to_string).collect();
        if tokens.is_empty() {
            return Err(self.error("empty token sequence"));
        }
        self.pos += end + 1;
        Ok(tokens)
    }

    fn boolean(&mut self, key: &str) -> Result<bool, SyntaxError> {
        self.expect(key)?;
        self.expect("=")?;
        match self.word()? {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(self.error("expected `true` or `false`")),
        }
    }

    fn end(&mut self) -> Result<(), SyntaxError> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error("unexpected text at end of declaration"))
        }
    }

    /// Parses `text` (a slice of the declaration starting at `pos`) as a term.
    fn term_at(&self, pos: usize, text: &str) -> Result<Surface, SyntaxError> {
        let (l, c) = self.location(pos);
        if text.trim().is_empty() {
            return Err(SyntaxError::new(l, c, "expected a term"));
        }
        parse_surface_at(text, l, c)
    }
}

fn parse_decl(text: &str, line: usize) -> Result<DeclKind, SyntaxError> {
    let mut cur = Cursor { text, pos: 0, line };
    let keyword = cur.word()?;
    match keyword {
        "sort" => {
            let name = cur.word()?.to_string();
            cur.end()?;
            Ok(DeclKind::Sort(name))
        }
        "const" => {
            let name = cur.word()?.to_string();
            cur.expect(":")?;
            cur.skip_ws();
            let (l, c) = cur.location(cur.pos);
            let ty = parse_surface_type_at(cur.rest(), l, c)?;
            Ok(DeclKind::Const {
                name,
                ty: elaborate_type(&ty, &[]),
            })
        }
        "coercion" => {
            let name = cur.word()?.to_string();
            let rigid = cur.boolean("rigid")?;
            cur.expect("scope")?;
            cur.expect("=")?;
            let scope = match cur.word()? {
                "local" => Scope::Local,
                "global" => Scope::Global,
                _ => return Err(cur.error("expected `local` or `global`")),
            };
            cur.expect(":")?;
            let term = cur.term_at(cur.pos, cur.rest())?;
            Ok(DeclKind::Coercion {
                name,
                rigid,
                scope,
                term,
            })
        }
        "entry" => {
            let tokens = cur.quoted()?;
            cur.expect(":")?;
            let rest = cur.rest();
            let Some(eq) = rest.find('=') else {
                return Err(cur.error("expected `=` after category"));
            };
            let (l, c) = cur.location(cur.pos);
            let cat = Cat::parse_at(&rest[..eq], l, c)?;
            let term_start = cur.pos + eq + 1;
            let (term_text, coercions) = split_with(&text[term_start..]);
            let coercions = match coercions {
                Some(list) => parse_with_list(list).ok_or_else(|| {
                    let (l, c) = cur.location(term_start + term_text.len());
                    SyntaxError::new(l, c, "malformed `with [..]` list")
                })?,
                None => Vec::new(),
            };
            let term = cur.term_at(term_start, term_text)?;
            Ok(DeclKind::Entry {
                tokens,
                cat,
                term,
                coercions,
            })
        }
        "plural" => {
            let noun = cur.quoted()?;
            cur.expect("=>")?;
            let form = cur.quoted()?;
            cur.end()?;
            Ok(DeclKind::Plural { noun, form })
        }
        other => Err(SyntaxError::new(
            line,
            1,
            format!("unknown declaration `{other}`"),
        )),
    }
}

/// Splits a trailing `with [...]` from an entry's term text.
fn split_with(text: &str) -> (&str, Option<&str>) {
    let trimmed = text.trim_end();
    if !trimmed.ends_with(']') {
        return (text, None);
    }
    let Some(open) = trimmed.rfind('[') else {
        return (text, None);
    };
    let head = trimmed[..open].trim_end();
    match head.strip_suffix("with") {
        Some(term) if term.ends_with(|c: char| c.is_whitespace() || c == ')') => {
            (term, Some(&trimmed[open + 1..trimmed.len() - 1]))
        }
        _ => (text, None),
    }
}

fn parse_with_list(list: &str) -> Option<Vec<String>> {
    if list.trim().is_empty() {
        return Some(Vec::new());
    }
    list.split(',')
        .map(|s| {
            let s = s.trim();
            let ok = !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
            ok.then(|| s.to_string())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_empty() {
        assert!(load("").unwrap().decls.is_empty());
        assert!(load("# only a comment\n\n").unwrap().decls.is_empty());
    }

    #[test]
    fn all_declaration_forms() {
        let src = r#"
sort e_phys
const entourage : e -> g
coercion q      rigid=false scope=local  : Lam a. lam x:a. lam y:a. eq y x
entry "met" : np\s = lam P:(e->t). (card P > 1) && meet P  with [hash]
entry "wrote a paper" : np\s = lam P:(e->t). write_a_paper P  with [c]
plural "student" => "students"
"#;
        let decls = load(src).unwrap().decls;
        assert_eq!(decls.len(), 6);
        assert_eq!(decls[0].kind, DeclKind::Sort("e_phys".into()));
        assert_eq!(decls[0].line, 2);
        match &decls[2].kind {
            DeclKind::Coercion { name, rigid, scope, .. } => {
                assert_eq!(name, "q");
                assert!(!rigid);
                assert_eq!(*scope, Scope::Local);
            }
            other => panic!("{other:?}"),
        }
        match &decls[4].kind {
            DeclKind::Entry { tokens, coercions, cat, .. } => {
                assert_eq!(tokens, &["wrote", "a", "paper"]);
                assert_eq!(coercions, &["c"]);
                assert_eq!(cat.to_string(), "np\\s");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rigid_flag_survives_loading() {
        let src = "coercion f_c rigid=true scope=local : lam x:e. x\n";
        match &load(src).unwrap().decls[0].kind {
            DeclKind::Coercion { rigid, .. } => assert!(*rigid),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn continuation_lines_join() {
        let src = "entry \"x\" : np =\n    lam y:e.\n    y\n";
        let decls = load(src).unwrap().decls;
        assert_eq!(decls.len(), 1);
    }

    #[test]
    fn term_errors_point_into_the_file() {
        let src = "\nentry \"met\" : np\\s = lam P:(e->t). &&\n";
        let err = load(src).unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.column, 36);
    }

    #[test]
    fn unknown_keyword() {
        let err = load("word \"x\"\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
    }

    #[test]
    fn unknown_coercion_is_not_a_load_error() {
        assert!(load("entry \"x\" : np = j with [nope]\n").is_ok());
    }
}
