//! Application preceded by universal type instantiation.
//!
//! The leading Π-binders of the functor's type become pattern variables and
//! the remaining domain is matched first-order against the argument's type.

use std::collections::BTreeMap;

use super::term::Term;
use super::types::{alpha_eq_in, Type};
use super::typing::{type_of, TypingContext};
use super::KernelError;

/// Type arguments, one per leading Π of `functor`, that make the functor's
/// domain equal to `argument`.
pub fn instantiate_for(functor: &Type, argument: &Type) -> Result<Vec<Type>, KernelError> {
    let (metas, body) = functor.strip_pis();
    let Some((domain, _)) = body.as_arrow() else {
        return Err(KernelError::ApplicationMismatch {
            function: functor.clone(),
            argument: argument.clone(),
        });
    };
    let no_match = || KernelError::NoInstantiation {
        domain: domain.clone(),
        argument: argument.clone(),
    };
    let mut m = Matcher {
        metas: &metas,
        solution: BTreeMap::new(),
        pairs: Vec::new(),
    };
    if !m.matches(domain, argument) {
        return Err(no_match());
    }
    metas
        .iter()
        .map(|v| m.solution.get(*v).cloned().ok_or_else(no_match))
        .collect()
}

struct Matcher<'m> {
    metas: &'m [&'m str],
    solution: BTreeMap<String, Type>,
    /// Binder correspondences (pattern name, target name) under Π.
    pairs: Vec<(String, String)>,
}

impl Matcher<'_> {
    fn is_meta(&self, v: &str) -> bool {
        self.metas.contains(&v) && !self.pairs.iter().any(|(l, _)| l == v)
    }

    fn mentions_target_binder(&self, ty: &Type) -> bool {
        let fv = ty.free_vars();
        self.pairs.iter().any(|(_, r)| fv.contains(r))
    }

    fn matches(&mut self, pattern: &Type, target: &Type) -> bool {
        match (pattern, target) {
            (Type::Var(v), _) if self.is_meta(v) => {
                if self.mentions_target_binder(target) {
                    return false;
                }
                match self.solution.get(v) {
                    Some(bound) => bound.alpha_eq(target),
                    None => {
                        self.solution.insert(v.clone(), target.clone());
                        true
                    }
                }
            }
            (Type::Var(_), Type::Var(_)) => alpha_eq_in(pattern, target, &mut self.pairs),
            (Type::Base(a), Type::Base(b)) => a == b,
            (Type::Arrow(a1, b1), Type::Arrow(a2, b2)) => {
                self.matches(a1, a2) && self.matches(b1, b2)
            }
            (Type::Pi(x, b1), Type::Pi(y, b2)) => {
                self.pairs.push((x.clone(), y.clone()));
                let r = self.matches(b1, b2);
                self.pairs.pop();
                r
            }
            _ => false,
        }
    }
}

/// `f{T1}…{Tn} a`, with the type arguments found by matching `f`'s domain
/// against the type of `a`.
pub fn instantiate_and_apply(
    ctx: &TypingContext<'_>,
    f: &Term,
    a: &Term,
) -> Result<Term, KernelError> {
    let tf = type_of(ctx, f)?;
    let ta = type_of(ctx, a)?;
    let tys = instantiate_for(&tf, &ta)?;
    let head = tys.into_iter().fold(f.clone(), Term::ty_app);
    let out = Term::app(head, a.clone());
    type_of(ctx, &out)?;
    Ok(out)
}
