//! Simplification of composed formulas: cardinalities of enumerated sets,
//! numeral comparison, and the unit laws of conjunction and implication.

use std::collections::BTreeSet;

use crate::kernel::{type_of, Arg, KernelError, Term, TypingContext};
use crate::logic::signature::is_numeral;
use crate::logic::Signature;

/// Cardinality of `λy. (y = c1) ∨ … ∨ (y = cn)` for pairwise distinct
/// constants, assuming distinct names denote distinct individuals.
/// Anything else is unknown (`None`).
pub fn card_of_enumeration(p: &Term) -> Option<u64> {
    let Term::Lam(y, _, body) = p else {
        return None;
    };
    let mut names = Vec::new();
    collect_disjuncts(body, y, &mut names)?;
    let distinct: BTreeSet<&String> = names.iter().collect();
    (distinct.len() == names.len()).then_some(names.len() as u64)
}

fn collect_disjuncts(t: &Term, y: &str, out: &mut Vec<String>) -> Option<()> {
    let (head, args) = t.spine();
    match (head, args.as_slice()) {
        (Term::Const(c), [Arg::Term(a), Arg::Term(b)]) if c == "or" => {
            collect_disjuncts(a, y, out)?;
            collect_disjuncts(b, y, out)
        }
        (Term::Const(c), [Arg::Type(_), Arg::Term(a), Arg::Term(b)]) if c == "eq" => {
            match (a, b) {
                (Term::Var(v), Term::Const(k)) | (Term::Const(k), Term::Var(v)) if v == y => {
                    out.push(k.clone());
                    Some(())
                }
                _ => None,
            }
        }
        _ => None,
    }
}

fn numeral(t: &Term) -> Option<u64> {
    match t {
        Term::Const(c) if is_numeral(c) => c.parse().ok(),
        _ => None,
    }
}

/// One bottom-up pass of the rewrite rules.
fn pass(t: &Term) -> Term {
    let t = match t {
        Term::Var(_) | Term::Const(_) => return t.clone(),
        Term::App(f, a) => Term::app(pass(f), pass(a)),
        Term::Lam(x, ty, b) => Term::lam(x.clone(), ty.clone(), pass(b)),
        Term::TyApp(f, ty) => Term::ty_app(pass(f), ty.clone()),
        Term::TyLam(a, b) => Term::ty_lam(a.clone(), pass(b)),
    };
    rewrite(&t).unwrap_or(t)
}

fn rewrite(t: &Term) -> Option<Term> {
    let (head, args) = t.spine();
    let Term::Const(c) = head else { return None };
    match (c.as_str(), args.as_slice()) {
        ("card", [Arg::Type(_), Arg::Term(p)]) => card_of_enumeration(p).map(Term::nat),
        ("gt", [Arg::Term(a), Arg::Term(b)]) => Some(Term::truth(numeral(a)? > numeral(b)?)),
        ("and", [Arg::Term(a), Arg::Term(b)]) => {
            if a.is_const("true") {
                Some((*b).clone())
            } else if b.is_const("true") {
                Some((*a).clone())
            } else if a.is_const("false") || b.is_const("false") {
                Some(Term::truth(false))
            } else {
                None
            }
        }
        ("implies", [Arg::Term(a), Arg::Term(b)]) if a.is_const("true") => Some((*b).clone()),
        _ => None,
    }
}

/// Rewrites to the fixpoint of the rules, without type checking.
pub fn simplify_unchecked(f: &Term) -> Term {
    let mut cur = f.clone();
    loop {
        let next = pass(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Simplifies a well-typed normal term.
pub fn simplify(sig: &Signature, f: &Term) -> Result<Term, KernelError> {
    type_of(&TypingContext::new(sig), f).map_err(|e| KernelError::IllTyped(Box::new(e)))?;
    Ok(simplify_unchecked(f))
}

/// A reading is blocked when it simplifies to `false`.
pub fn is_blocked(f: &Term) -> bool {
    f.is_const("false")
}
