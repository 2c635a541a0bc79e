use super::lexer::{lex, Spanned, Tok};
use super::SyntaxError;

/// Surface type syntax. Names are resolved to sorts or type variables
/// during elaboration.
#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceType {
    Name(String),
    Arrow(Box<SurfaceType>, Box<SurfaceType>),
    Pi(String, Box<SurfaceType>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    All,
    Some,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfixOp {
    Implies,
    Or,
    And,
    Eq,
    Gt,
}

/// Surface term syntax, before name resolution and type-argument inference.
#[derive(Debug, Clone, PartialEq)]
pub enum Surface {
    Name(String),
    Num(u64),
    App(Box<Surface>, Box<Surface>),
    TyApp(Box<Surface>, SurfaceType),
    Lam(String, SurfaceType, Box<Surface>),
    TyLam(String, Box<Surface>),
    Quant(Quantifier, String, SurfaceType, Box<Surface>),
    Infix(InfixOp, Box<Surface>, Box<Surface>),
    Card(Box<Surface>),
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> SyntaxError {
        let s = &self.toks[self.pos];
        SyntaxError::new(s.line, s.column, msg)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {}", describe(self.peek()))))
        }
    }

    fn ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(name)
            }
            other => Err(self.error(format!("expected a name, found {}", describe(&other)))),
        }
    }

    fn ty(&mut self) -> Result<SurfaceType, SyntaxError> {
        if *self.peek() == Tok::Pi {
            self.bump();
            let v = self.ident()?;
            self.expect(Tok::Dot, "`.`")?;
            let body = self.ty()?;
            return Ok(SurfaceType::Pi(v, Box::new(body)));
        }
        let dom = self.ty_atom()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let cod = self.ty()?;
            return Ok(SurfaceType::Arrow(Box::new(dom), Box::new(cod)));
        }
        Ok(dom)
    }

    fn ty_atom(&mut self) -> Result<SurfaceType, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(SurfaceType::Name(name))
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            other => Err(self.error(format!("expected a type, found {}", describe(&other)))),
        }
    }

    fn starts_binder(&self) -> bool {
        matches!(self.peek(), Tok::Lam | Tok::TyLam | Tok::All | Tok::Some)
    }

    fn term(&mut self) -> Result<Surface, SyntaxError> {
        if self.starts_binder() {
            return self.binder();
        }
        self.implication()
    }

    fn binder(&mut self) -> Result<Surface, SyntaxError> {
        let kw = self.bump();
        let var = self.ident()?;
        if kw == Tok::TyLam {
            self.expect(Tok::Dot, "`.`")?;
            let body = self.term()?;
            return Ok(Surface::TyLam(var, Box::new(body)));
        }
        self.expect(Tok::Colon, "`:`")?;
        let ty = self.ty()?;
        self.expect(Tok::Dot, "`.`")?;
        let body = Box::new(self.term()?);
        Ok(match kw {
            Tok::Lam => Surface::Lam(var, ty, body),
            Tok::All => Surface::Quant(Quantifier::All, var, ty, body),
            _ => Surface::Quant(Quantifier::Some, var, ty, body),
        })
    }

    /// An operand that may be a binder extending to the end.
    fn operand(&mut self, next: fn(&mut Self) -> Result<Surface, SyntaxError>) -> Result<Surface, SyntaxError> {
        if self.starts_binder() {
            self.binder()
        } else {
            next(self)
        }
    }

    fn implication(&mut self) -> Result<Surface, SyntaxError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.operand(Self::implication)?;
            return Ok(Surface::Infix(InfixOp::Implies, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Surface, SyntaxError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.operand(Self::conjunction)?;
            lhs = Surface::Infix(InfixOp::Or, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Surface, SyntaxError> {
        let mut lhs = self.comparison()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.operand(Self::comparison)?;
            lhs = Surface::Infix(InfixOp::And, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn comparison(&mut self) -> Result<Surface, SyntaxError> {
        let lhs = self.application()?;
        let op = match self.peek() {
            Tok::Eq => InfixOp::Eq,
            Tok::Gt => InfixOp::Gt,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.operand(Self::application)?;
        Ok(Surface::Infix(op, Box::new(lhs), Box::new(rhs)))
    }

    fn application(&mut self) -> Result<Surface, SyntaxError> {
        let mut f = self.postfix(true)?;
        while matches!(self.peek(), Tok::Ident(_) | Tok::Num(_) | Tok::LParen) {
            let a = self.postfix(false)?;
            f = Surface::App(Box::new(f), Box::new(a));
        }
        Ok(f)
    }

    fn postfix(&mut self, head: bool) -> Result<Surface, SyntaxError> {
        let mut t = self.atom(head)?;
        while *self.peek() == Tok::LBrace {
            self.bump();
            let ty = self.ty()?;
            self.expect(Tok::RBrace, "`}`")?;
            t = Surface::TyApp(Box::new(t), ty);
        }
        Ok(t)
    }

    fn atom(&mut self, head: bool) -> Result<Surface, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Surface::Name(name))
            }
            Tok::Num(n) => {
                self.bump();
                Ok(Surface::Num(n))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Bar if head => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::Bar, "closing `|`")?;
                Ok(Surface::Card(Box::new(t)))
            }
            other => Err(self.error(format!("expected a term, found {}", describe(&other)))),
        }
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", describe(self.peek()))))
        }
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(n) => format!("`{n}`"),
        Tok::Eof => "end of input".to_string(),
        other => format!("{other:?}"),
    }
}

/// Parses a term whose first character sits at (`line`, `column`).
pub fn parse_surface_at(text: &str, line: usize, column: usize) -> Result<Surface, SyntaxError> {
    let mut p = Parser {
        toks: lex(text, line, column)?,
        pos: 0,
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_surface_type_at(
    text: &str,
    line: usize,
    column: usize,
) -> Result<SurfaceType, SyntaxError> {
    let mut p = Parser {
        toks: lex(text, line, column)?,
        pos: 0,
    };
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}
