//! Type checking for System F terms over a signature.

use super::term::Term;
use super::types::Type;
use super::KernelError;
use crate::logic::Signature;

/// Term variables with their types, the type variables in scope, and the
/// ambient signature. Later bindings shadow earlier ones.
#[derive(Debug, Clone)]
pub struct TypingContext<'s> {
    sig: &'s Signature,
    vars: Vec<(String, Type)>,
    tyvars: Vec<String>,
}

impl<'s> TypingContext<'s> {
    pub fn new(sig: &'s Signature) -> Self {
        TypingContext {
            sig,
            vars: Vec::new(),
            tyvars: Vec::new(),
        }
    }

    pub fn signature(&self) -> &'s Signature {
        self.sig
    }

    pub fn with_var(mut self, name: impl Into<String>, ty: Type) -> Self {
        self.vars.push((name.into(), ty));
        self
    }

    pub fn with_type_var(mut self, name: impl Into<String>) -> Self {
        self.tyvars.push(name.into());
        self
    }

    pub fn lookup_var(&self, name: &str) -> Result<&Type, KernelError> {
        self.vars
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
            .ok_or_else(|| KernelError::UnboundName(name.to_string()))
    }

    pub fn type_vars(&self) -> &[String] {
        &self.tyvars
    }

    pub fn has_type_var(&self, name: &str) -> bool {
        self.tyvars.iter().any(|v| v == name)
    }

    /// Checks that every sort is declared and every type variable is in scope.
    pub fn check_type(&self, ty: &Type) -> Result<(), KernelError> {
        let mut bound = Vec::new();
        self.check_type_in(ty, &mut bound)
    }

    fn check_type_in(&self, ty: &Type, bound: &mut Vec<String>) -> Result<(), KernelError> {
        match ty {
            Type::Base(s) => {
                if self.sig.has_sort(s.name()) {
                    Ok(())
                } else {
                    Err(KernelError::UnknownSort(s.name().to_string()))
                }
            }
            Type::Var(v) => {
                if bound.contains(v) || self.has_type_var(v) {
                    Ok(())
                } else {
                    Err(KernelError::UnboundTypeVar(v.clone()))
                }
            }
            Type::Arrow(a, b) => {
                self.check_type_in(a, bound)?;
                self.check_type_in(b, bound)
            }
            Type::Pi(v, body) => {
                bound.push(v.clone());
                let r = self.check_type_in(body, bound);
                bound.pop();
                r
            }
        }
    }

    fn infer(&mut self, term: &Term) -> Result<Type, KernelError> {
        match term {
            Term::Var(x) => self.lookup_var(x).cloned(),
            Term::Const(c) => self
                .sig
                .lookup(c)
                .ok_or_else(|| KernelError::UnboundName(c.clone())),
            Term::App(f, a) => {
                let tf = self.infer(f)?;
                let ta = self.infer(a)?;
                match &tf {
                    Type::Arrow(dom, cod) if dom.alpha_eq(&ta) => Ok((**cod).clone()),
                    _ => Err(KernelError::ApplicationMismatch {
                        function: tf,
                        argument: ta,
                    }),
                }
            }
            Term::Lam(x, ty, body) => {
                self.check_type(ty)?;
                self.vars.push((x.clone(), ty.clone()));
                let r = self.infer(body);
                self.vars.pop();
                Ok(Type::arrow(ty.clone(), r?))
            }
            Term::TyApp(f, ty) => {
                self.check_type(ty)?;
                match self.infer(f)? {
                    Type::Pi(v, body) => Ok(body.subst(&v, ty)),
                    other => Err(KernelError::NotAPi(other)),
                }
            }
            Term::TyLam(a, body) => {
                for x in body.free_vars() {
                    if self.lookup_var(&x)?.occurs_free(a) {
                        return Err(KernelError::TyLamEscape {
                            tyvar: a.clone(),
                            var: x,
                        });
                    }
                }
                self.tyvars.push(a.clone());
                let r = self.infer(body);
                self.tyvars.pop();
                Ok(Type::pi(a.clone(), r?))
            }
        }
    }
}

/// The unique type of `term` in `ctx`.
pub fn type_of(ctx: &TypingContext<'_>, term: &Term) -> Result<Type, KernelError> {
    ctx.clone().infer(term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::builtin_signature;

    fn check(term: &Term) -> Result<Type, KernelError> {
        let sig = builtin_signature();
        type_of(&TypingContext::new(&sig), term)
    }

    #[test]
    fn identity_on_entities() {
        let id = Term::lam("x", Type::e(), Term::var("x"));
        assert_eq!(check(&id).unwrap(), Type::arrow(Type::e(), Type::e()));
    }

    #[test]
    fn quine_coercion_type() {
        // Λα. λx:α. λy:α. y = x  :  Πα. α -> α -> t
        let a = || Type::var("α");
        let q = Term::ty_lam(
            "α",
            Term::lam(
                "x",
                a(),
                Term::lam("y", a(), Term::eq(a(), Term::var("y"), Term::var("x"))),
            ),
        );
        let expected = Type::pi("α", Type::arrow(a(), Type::arrow(a(), Type::t())));
        assert!(check(&q).unwrap().alpha_eq(&expected));
    }

    #[test]
    fn unbound_name_fails() {
        assert_eq!(
            check(&Term::cnst("zebra")),
            Err(KernelError::UnboundName("zebra".into()))
        );
        assert_eq!(
            check(&Term::var("x")),
            Err(KernelError::UnboundName("x".into()))
        );
    }

    #[test]
    fn application_mismatch() {
        let t = Term::app(Term::cnst("not"), Term::cnst("0"));
        assert!(matches!(
            check(&t),
            Err(KernelError::ApplicationMismatch { .. })
        ));
    }

    #[test]
    fn type_application_needs_pi() {
        let t = Term::ty_app(Term::cnst("true"), Type::e());
        assert_eq!(check(&t), Err(KernelError::NotAPi(Type::t())));
    }

    #[test]
    fn ty_lam_side_condition() {
        // Λα. λx:α. x is fine
        let ok = Term::ty_lam("α", Term::lam("x", Type::var("α"), Term::var("x")));
        assert!(check(&ok).is_ok());
        // λx:α. Λα. x with α in scope: α is free in the type of x
        let sig = builtin_signature();
        let ctx = TypingContext::new(&sig).with_type_var("α");
        let bad = Term::lam("x", Type::var("α"), Term::ty_lam("α", Term::var("x")));
        assert_eq!(
            type_of(&ctx, &bad),
            Err(KernelError::TyLamEscape {
                tyvar: "α".into(),
                var: "x".into()
            })
        );
    }

    #[test]
    fn unknown_sort_in_annotation() {
        let t = Term::lam("x", Type::base("zz"), Term::var("x"));
        assert_eq!(check(&t), Err(KernelError::UnknownSort("zz".into())));
    }

    #[test]
    fn unbound_type_variable_in_annotation() {
        let t = Term::lam("x", Type::var("β"), Term::var("x"));
        assert_eq!(check(&t), Err(KernelError::UnboundTypeVar("β".into())));
    }
}
