//! Concrete syntax for types and terms.
//!
//! ```text
//! type  ::= Pi a. type | atom -> type | atom
//! term  ::= lam x:T. term | Lam a. term | all x:T. term | some x:T. term
//!         | term => term | term || term | term && term
//!         | app == app | app > app | |term| | f{T} | f a b ...
//! ```
//!
//! `λ Λ Π ∀ ∃ → ⇒ ∧ ∨ = ¬` are accepted as aliases. Parsing produces a
//! [`Surface`] tree; elaboration resolves names against the typing context
//! and infers the type arguments of `==` and `|P|` from their operands.

mod lexer;
mod parser;

use thiserror::Error;

use crate::kernel::{instantiate_for, type_of, KernelError, Term, Type, TypingContext};
use crate::logic::Signature;

pub use parser::{
    parse_surface_at, parse_surface_type_at, InfixOp, Quantifier, Surface, SurfaceType,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

pub fn parse_surface(text: &str) -> Result<Surface, SyntaxError> {
    parse_surface_at(text, 1, 1)
}

pub fn parse_surface_type(text: &str) -> Result<SurfaceType, SyntaxError> {
    parse_surface_type_at(text, 1, 1)
}

/// Resolves a surface type: names bound by an enclosing `Pi` or `Lam`
/// become type variables, everything else a sort.
pub fn elaborate_type(ty: &SurfaceType, tyvars: &[String]) -> Type {
    let mut scope = tyvars.to_vec();
    resolve_type(ty, &mut scope)
}

fn resolve_type(ty: &SurfaceType, scope: &mut Vec<String>) -> Type {
    match ty {
        SurfaceType::Name(n) if scope.contains(n) => Type::var(n.clone()),
        SurfaceType::Name(n) => Type::base(n.clone()),
        SurfaceType::Arrow(a, b) => Type::arrow(resolve_type(a, scope), resolve_type(b, scope)),
        SurfaceType::Pi(v, body) => {
            scope.push(v.clone());
            let inner = resolve_type(body, scope);
            scope.pop();
            Type::pi(v.clone(), inner)
        }
    }
}

struct Elaborator<'s> {
    ctx: TypingContext<'s>,
    tyvars: Vec<String>,
}

impl Elaborator<'_> {
    fn ty(&self, ty: &SurfaceType) -> Type {
        elaborate_type(ty, &self.tyvars)
    }

    fn under_var(&mut self, x: &str, ty: Type, body: &Surface) -> Result<Term, KernelError> {
        let saved = self.ctx.clone();
        self.ctx = saved.clone().with_var(x, ty);
        let r = self.term(body);
        self.ctx = saved;
        r
    }

    /// `f a` where `f` is polymorphic and not explicitly instantiated gets
    /// its type arguments from the type of `a`.
    fn implicit_app(&self, f: Term, a: Term) -> Term {
        let Ok(fty) = type_of(&self.ctx, &f) else {
            return Term::app(f, a);
        };
        if !matches!(fty, Type::Pi(..)) {
            return Term::app(f, a);
        }
        let Ok(aty) = type_of(&self.ctx, &a) else {
            return Term::app(f, a);
        };
        match instantiate_for(&fty, &aty) {
            Ok(tys) => Term::app(tys.into_iter().fold(f, Term::ty_app), a),
            Err(_) => Term::app(f, a),
        }
    }

    fn term(&mut self, s: &Surface) -> Result<Term, KernelError> {
        Ok(match s {
            Surface::Name(n) if self.ctx.lookup_var(n).is_ok() => Term::var(n.clone()),
            Surface::Name(n) => Term::cnst(n.clone()),
            Surface::Num(n) => Term::nat(*n),
            Surface::App(f, a) => {
                let f = self.term(f)?;
                let a = self.term(a)?;
                self.implicit_app(f, a)
            }
            Surface::TyApp(f, ty) => Term::ty_app(self.term(f)?, self.ty(ty)),
            Surface::Lam(x, ty, body) => {
                let ty = self.ty(ty);
                Term::lam(x.clone(), ty.clone(), self.under_var(x, ty, body)?)
            }
            Surface::TyLam(a, body) => {
                let saved = self.ctx.clone();
                self.ctx = saved.clone().with_type_var(a.clone());
                self.tyvars.push(a.clone());
                let r = self.term(body);
                self.tyvars.pop();
                self.ctx = saved;
                Term::ty_lam(a.clone(), r?)
            }
            Surface::Quant(q, x, ty, body) => {
                let ty = self.ty(ty);
                let inner = self.under_var(x, ty.clone(), body)?;
                let head = match q {
                    Quantifier::All => "forall",
                    Quantifier::Some => "exists",
                };
                Term::app(Term::poly(head, ty.clone()), Term::lam(x.clone(), ty, inner))
            }
            Surface::Infix(op, a, b) => {
                let a = self.term(a)?;
                let b = self.term(b)?;
                match op {
                    InfixOp::Implies => Term::implies(a, b),
                    InfixOp::Or => Term::or(a, b),
                    InfixOp::And => Term::and(a, b),
                    InfixOp::Gt => Term::apps(Term::cnst("gt"), [a, b]),
                    InfixOp::Eq => {
                        let ty = type_of(&self.ctx, &a)?;
                        Term::eq(ty, a, b)
                    }
                }
            }
            Surface::Card(p) => {
                let p = self.term(p)?;
                let ty = type_of(&self.ctx, &p)?;
                match ty.as_arrow() {
                    Some((dom, cod)) if cod.is_prop() => Term::app(Term::poly("card", dom.clone()), p),
                    _ => {
                        let card = self.ctx.signature().lookup("card").unwrap_or_else(Type::nat);
                        return Err(KernelError::ApplicationMismatch {
                            function: card,
                            argument: ty,
                        });
                    }
                }
            }
        })
    }
}

/// Elaborates a surface term in `ctx`. The result is not type checked
/// beyond what inference of `==` and `|P|` requires.
pub fn elaborate(ctx: &TypingContext<'_>, s: &Surface) -> Result<Term, KernelError> {
    Elaborator {
        ctx: ctx.clone(),
        tyvars: ctx.type_vars().to_vec(),
    }
    .term(s)
}

/// Parses and elaborates a closed term.
pub fn parse_term(sig: &Signature, text: &str) -> Result<Term, ParseError> {
    let s = parse_surface(text)?;
    Ok(elaborate(&TypingContext::new(sig), &s)?)
}

/// Parses a closed type.
pub fn parse_type(text: &str) -> Result<Type, SyntaxError> {
    Ok(elaborate_type(&parse_surface_type(text)?, &[]))
}
