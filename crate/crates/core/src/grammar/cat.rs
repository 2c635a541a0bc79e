use std::fmt;
use std::str::FromStr;

use crate::syntax::SyntaxError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    N,
    Np,
    S,
}

impl Atom {
    pub fn name(self) -> &'static str {
        match self {
            Atom::N => "n",
            Atom::Np => "np",
            Atom::S => "s",
        }
    }
}

/// An AB category. `Right(a, b)` is `a/b` and looks for `b` on its right;
/// `Left(b, a)` is `b\a` and looks for `b` on its left. Both yield `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cat {
    Atom(Atom),
    Right(Box<Cat>, Box<Cat>),
    Left(Box<Cat>, Box<Cat>),
}

impl Cat {
    pub const N: Cat = Cat::Atom(Atom::N);
    pub const NP: Cat = Cat::Atom(Atom::Np);
    pub const S: Cat = Cat::Atom(Atom::S);

    /// `result/arg`
    pub fn right(result: Cat, arg: Cat) -> Cat {
        Cat::Right(Box::new(result), Box::new(arg))
    }

    /// `arg\result`
    pub fn left(arg: Cat, result: Cat) -> Cat {
        Cat::Left(Box::new(arg), Box::new(result))
    }

    /// Forward application `a/b  b => a`.
    pub fn apply_forward(&self, arg: &Cat) -> Option<&Cat> {
        match self {
            Cat::Right(result, want) if **want == *arg => Some(result),
            _ => None,
        }
    }

    /// Backward application `b  b\a => a`, called on the functor.
    pub fn apply_backward(&self, arg: &Cat) -> Option<&Cat> {
        match self {
            Cat::Left(want, result) if **want == *arg => Some(result),
            _ => None,
        }
    }

    /// Parses a category; `line`/`column` locate the text for errors.
    pub fn parse_at(text: &str, line: usize, column: usize) -> Result<Cat, SyntaxError> {
        let chars: Vec<char> = text.chars().collect();
        let mut p = CatParser {
            chars,
            pos: 0,
            line,
            column,
        };
        let cat = p.cat()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected text after category"));
        }
        Ok(cat)
    }
}

impl fmt::Display for Cat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn part(c: &Cat) -> String {
            match c {
                Cat::Atom(a) => a.name().to_string(),
                _ => format!("({c})"),
            }
        }
        match self {
            Cat::Atom(a) => f.write_str(a.name()),
            Cat::Right(result, arg) => write!(f, "{}/{}", part(result), part(arg)),
            Cat::Left(arg, result) => write!(f, "{}\\{}", part(arg), part(result)),
        }
    }
}

impl FromStr for Cat {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Cat::parse_at(s, 1, 1)
    }
}

struct CatParser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl CatParser {
    fn error(&self, msg: &str) -> SyntaxError {
        SyntaxError::new(self.line, self.column + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    /// Slashes are left-associative.
    fn cat(&mut self) -> Result<Cat, SyntaxError> {
        let mut lhs = self.primary()?;
        loop {
            self.skip_ws();
            match self.chars.get(self.pos) {
                Some('/') => {
                    self.pos += 1;
                    let rhs = self.primary()?;
                    lhs = Cat::right(lhs, rhs);
                }
                Some('\\') => {
                    self.pos += 1;
                    let rhs = self.primary()?;
                    lhs = Cat::left(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn primary(&mut self) -> Result<Cat, SyntaxError> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&'(') {
            self.pos += 1;
            let c = self.cat()?;
            self.skip_ws();
            if self.chars.get(self.pos) != Some(&')') {
                return Err(self.error("expected `)`"));
            }
            self.pos += 1;
            return Ok(c);
        }
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let word: String = self.chars[start..self.pos].iter().collect();
        match word.as_str() {
            "n" => Ok(Cat::N),
            "np" => Ok(Cat::NP),
            "s" => Ok(Cat::S),
            "" => Err(self.error("expected a category")),
            other => {
                self.pos = start;
                Err(self.error(&format!("unknown category atom `{other}`")))
            }
        }
    }
}
