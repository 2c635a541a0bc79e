//! β and type-β normalization. η is never performed.

use super::term::Term;
use super::typing::{type_of, TypingContext};
use super::KernelError;
use crate::logic::Signature;

/// Reduction order. Both reach the same normal form on well-typed terms;
/// the second exists so that claim can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Reduce the head to a value first and substitute arguments unreduced.
    #[default]
    HeadFirst,
    /// Normalize arguments before substituting them.
    ArgumentsFirst,
}

/// Normal form of a closed, well-typed term.
pub fn normalize(sig: &Signature, term: &Term) -> Result<Term, KernelError> {
    normalize_in(&TypingContext::new(sig), term, Strategy::default())
}

/// Normal form of a term well-typed in `ctx`; ill-typed input is refused.
pub fn normalize_in(
    ctx: &TypingContext<'_>,
    term: &Term,
    strategy: Strategy,
) -> Result<Term, KernelError> {
    type_of(ctx, term).map_err(|e| KernelError::IllTyped(Box::new(e)))?;
    Ok(normalize_unchecked(term, strategy))
}

/// Normalizes without type checking first. Only terminates on terms that
/// are well-typed (or otherwise strongly normalizing).
pub fn normalize_unchecked(term: &Term, strategy: Strategy) -> Term {
    match term {
        Term::Var(_) | Term::Const(_) => term.clone(),
        Term::App(f, a) => {
            let f = normalize_unchecked(f, strategy);
            let a = match strategy {
                Strategy::HeadFirst => (**a).clone(),
                Strategy::ArgumentsFirst => normalize_unchecked(a, strategy),
            };
            match f {
                Term::Lam(x, _, body) => normalize_unchecked(&body.subst(&x, &a), strategy),
                f => {
                    let a = match strategy {
                        Strategy::HeadFirst => normalize_unchecked(&a, strategy),
                        Strategy::ArgumentsFirst => a,
                    };
                    Term::app(f, a)
                }
            }
        }
        Term::TyApp(f, ty) => match normalize_unchecked(f, strategy) {
            Term::TyLam(a, body) => normalize_unchecked(&body.subst_type(&a, ty), strategy),
            f => Term::ty_app(f, ty.clone()),
        },
        Term::Lam(x, ty, body) => Term::lam(x.clone(), ty.clone(), normalize_unchecked(body, strategy)),
        Term::TyLam(a, body) => Term::ty_lam(a.clone(), normalize_unchecked(body, strategy)),
    }
}
