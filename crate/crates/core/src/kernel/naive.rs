//! A second, independent type checker over de Bruijn types.
//!
//! It shares no code with [`type_of`](super::type_of) beyond the term
//! representation. Lexicon validation runs both and reports disagreements;
//! property tests do the same on random terms.

use super::term::Term;
use super::types::Type;
use super::KernelError;
use crate::logic::Signature;

#[derive(Debug, Clone, PartialEq)]
enum Db {
    Base(String),
    Var(usize),
    Arrow(Box<Db>, Box<Db>),
    All(Box<Db>),
}

fn to_db(sig: &Signature, ty: &Type, scope: &mut Vec<String>) -> Result<Db, KernelError> {
    Ok(match ty {
        Type::Base(s) => {
            if !sig.has_sort(s.name()) {
                return Err(KernelError::UnknownSort(s.name().to_string()));
            }
            Db::Base(s.name().to_string())
        }
        Type::Var(v) => match scope.iter().rev().position(|n| n == v) {
            Some(i) => Db::Var(i),
            None => return Err(KernelError::UnboundTypeVar(v.clone())),
        },
        Type::Arrow(a, b) => Db::Arrow(
            Box::new(to_db(sig, a, scope)?),
            Box::new(to_db(sig, b, scope)?),
        ),
        Type::Pi(v, body) => {
            scope.push(v.clone());
            let inner = to_db(sig, body, scope);
            scope.pop();
            Db::All(Box::new(inner?))
        }
    })
}

fn from_db(ty: &Db, depth: usize) -> Type {
    match ty {
        Db::Base(s) => Type::base(s.clone()),
        Db::Var(i) => Type::var(format!("τ{}", depth - 1 - i)),
        Db::Arrow(a, b) => Type::arrow(from_db(a, depth), from_db(b, depth)),
        Db::All(body) => Type::pi(format!("τ{depth}"), from_db(body, depth + 1)),
    }
}

fn shift(ty: &Db, by: isize, cutoff: usize) -> Db {
    match ty {
        Db::Base(_) => ty.clone(),
        Db::Var(i) if *i >= cutoff => Db::Var((*i as isize + by) as usize),
        Db::Var(_) => ty.clone(),
        Db::Arrow(a, b) => Db::Arrow(Box::new(shift(a, by, cutoff)), Box::new(shift(b, by, cutoff))),
        Db::All(body) => Db::All(Box::new(shift(body, by, cutoff + 1))),
    }
}

fn subst(ty: &Db, index: usize, value: &Db) -> Db {
    match ty {
        Db::Base(_) => ty.clone(),
        Db::Var(i) if *i == index => shift(value, index as isize, 0),
        Db::Var(_) => ty.clone(),
        Db::Arrow(a, b) => Db::Arrow(
            Box::new(subst(a, index, value)),
            Box::new(subst(b, index, value)),
        ),
        Db::All(body) => Db::All(Box::new(subst(body, index + 1, value))),
    }
}

/// `body[value / 0]` for the body of an `All`.
fn instantiate(body: &Db, value: &Db) -> Db {
    shift(&subst(body, 0, &shift(value, 1, 0)), -1, 0)
}

struct Checker<'s> {
    sig: &'s Signature,
    tyscope: Vec<String>,
    vars: Vec<(String, Db)>,
}

impl Checker<'_> {
    fn check(&mut self, term: &Term) -> Result<Db, KernelError> {
        match term {
            Term::Var(x) => self
                .vars
                .iter()
                .rev()
                .find(|(n, _)| n == x)
                .map(|(_, t)| t.clone())
                .ok_or_else(|| KernelError::UnboundName(x.clone())),
            Term::Const(c) => {
                let ty = self
                    .sig
                    .lookup(c)
                    .ok_or_else(|| KernelError::UnboundName(c.clone()))?;
                to_db(self.sig, &ty, &mut Vec::new())
            }
            Term::App(f, a) => {
                let tf = self.check(f)?;
                let ta = self.check(a)?;
                match &tf {
                    Db::Arrow(dom, cod) if **dom == ta => Ok((**cod).clone()),
                    _ => {
                        let depth = self.tyscope.len();
                        Err(KernelError::ApplicationMismatch {
                            function: from_db(&tf, depth),
                            argument: from_db(&ta, depth),
                        })
                    }
                }
            }
            Term::Lam(x, ty, body) => {
                let dom = to_db(self.sig, ty, &mut self.tyscope)?;
                self.vars.push((x.clone(), dom.clone()));
                let cod = self.check(body);
                self.vars.pop();
                Ok(Db::Arrow(Box::new(dom), Box::new(cod?)))
            }
            Term::TyApp(f, ty) => {
                let arg = to_db(self.sig, ty, &mut self.tyscope)?;
                match self.check(f)? {
                    Db::All(body) => Ok(instantiate(&body, &arg)),
                    other => Err(KernelError::NotAPi(from_db(&other, self.tyscope.len()))),
                }
            }
            Term::TyLam(a, body) => {
                let saved = self.vars.clone();
                for (_, t) in self.vars.iter_mut() {
                    *t = shift(t, 1, 0);
                }
                self.tyscope.push(a.clone());
                let r = self.check(body);
                self.tyscope.pop();
                self.vars = saved;
                Ok(Db::All(Box::new(r?)))
            }
        }
    }
}

/// Type of a closed term, computed by the de Bruijn checker.
pub fn naive_type_of(sig: &Signature, term: &Term) -> Result<Type, KernelError> {
    let mut checker = Checker {
        sig,
        tyscope: Vec::new(),
        vars: Vec::new(),
    };
    checker.check(term).map(|t| from_db(&t, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{type_of, TypingContext};
    use crate::logic::builtin_signature;

    #[test]
    fn agrees_on_polymorphic_identity() {
        let sig = builtin_signature();
        let id = Term::ty_lam("a", Term::lam("x", Type::var("a"), Term::var("x")));
        let naive = naive_type_of(&sig, &id).unwrap();
        let kernel = type_of(&TypingContext::new(&sig), &id).unwrap();
        assert!(naive.alpha_eq(&kernel));
    }

    #[test]
    fn instantiation_under_binders() {
        // (Λa. Λb. λx:a. λy:b. x){e}{Πc. c -> c}
        let sig = builtin_signature();
        let k = Term::ty_lam(
            "a",
            Term::ty_lam(
                "b",
                Term::lam("x", Type::var("a"), Term::lam("y", Type::var("b"), Term::var("x"))),
            ),
        );
        let poly_id = Type::pi("c", Type::arrow(Type::var("c"), Type::var("c")));
        let t = Term::ty_app(Term::ty_app(k, Type::e()), poly_id);
        let naive = naive_type_of(&sig, &t).unwrap();
        let kernel = type_of(&TypingContext::new(&sig), &t).unwrap();
        assert!(naive.alpha_eq(&kernel), "{naive} vs {kernel}");
    }

    #[test]
    fn polyand_instantiates() {
        let sig = builtin_signature();
        let t = Term::ty_app(Term::ty_app(Term::cnst("polyand"), Type::e()), Type::g());
        let naive = naive_type_of(&sig, &t).unwrap();
        let kernel = type_of(&TypingContext::new(&sig), &t).unwrap();
        assert!(naive.alpha_eq(&kernel));
    }
}
