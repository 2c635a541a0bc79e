//! Types of the second-order lambda calculus: base sorts, type variables,
//! arrows and Π-quantification.

use std::collections::BTreeSet;
use std::fmt;

use super::names::fresh_name;

/// Entities.
pub const ENTITY: &str = "e";
/// Group individuals.
pub const GROUP: &str = "g";
/// Propositions.
pub const PROP: &str = "t";
/// Naturals, the codomain of cardinality.
pub const NAT: &str = "N";

/// Sort names that lexicons may not redeclare.
pub const BUILTIN_SORTS: [&str; 4] = [ENTITY, GROUP, PROP, NAT];

/// A base sort of the many-sorted target logic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sort(String);

impl Sort {
    pub fn new(name: impl Into<String>) -> Self {
        Sort(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_builtin(&self) -> bool {
        BUILTIN_SORTS.contains(&self.0.as_str())
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A System F type.
///
/// Derived equality is syntactic; use [`Type::alpha_eq`] to compare types up
/// to renaming of Π-bound variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    Base(Sort),
    Var(String),
    Arrow(Box<Type>, Box<Type>),
    Pi(String, Box<Type>),
}

impl Type {
    pub fn base(name: impl Into<String>) -> Type {
        Type::Base(Sort::new(name))
    }

    pub fn e() -> Type {
        Type::base(ENTITY)
    }

    pub fn g() -> Type {
        Type::base(GROUP)
    }

    pub fn t() -> Type {
        Type::base(PROP)
    }

    pub fn nat() -> Type {
        Type::base(NAT)
    }

    pub fn var(name: impl Into<String>) -> Type {
        Type::Var(name.into())
    }

    pub fn arrow(from: Type, to: Type) -> Type {
        Type::Arrow(Box::new(from), Box::new(to))
    }

    /// `σ -> t`, the type of predicates over `σ`.
    pub fn pred(over: Type) -> Type {
        Type::arrow(over, Type::t())
    }

    pub fn pi(var: impl Into<String>, body: Type) -> Type {
        Type::Pi(var.into(), Box::new(body))
    }

    pub fn is_base(&self, name: &str) -> bool {
        matches!(self, Type::Base(s) if s.name() == name)
    }

    pub fn is_prop(&self) -> bool {
        self.is_base(PROP)
    }

    pub fn as_arrow(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Arrow(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Splits off the leading Π-binders: `Πα.Πβ.T` gives `([α, β], T)`.
    pub fn strip_pis(&self) -> (Vec<&str>, &Type) {
        let mut vars = Vec::new();
        let mut ty = self;
        while let Type::Pi(v, body) = ty {
            vars.push(v.as_str());
            ty = body;
        }
        (vars, ty)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Type::Base(_) => {}
            Type::Var(v) => {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            Type::Arrow(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Type::Pi(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn occurs_free(&self, var: &str) -> bool {
        match self {
            Type::Base(_) => false,
            Type::Var(v) => v == var,
            Type::Arrow(a, b) => a.occurs_free(var) || b.occurs_free(var),
            Type::Pi(v, body) => v != var && body.occurs_free(var),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every name occurring in the type, bound or free.
    pub(crate) fn all_var_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Type::Base(_) => {}
            Type::Var(v) => {
                out.insert(v.clone());
            }
            Type::Arrow(a, b) => {
                a.all_var_names(out);
                b.all_var_names(out);
            }
            Type::Pi(v, body) => {
                out.insert(v.clone());
                body.all_var_names(out);
            }
        }
    }

    /// Base sort names mentioned anywhere in the type.
    pub(crate) fn sort_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Type::Base(s) => {
                out.insert(s.name().to_string());
            }
            Type::Var(_) => {}
            Type::Arrow(a, b) => {
                a.sort_names(out);
                b.sort_names(out);
            }
            Type::Pi(_, body) => body.sort_names(out),
        }
    }

    /// Capture-avoiding substitution `self[replacement / var]`.
    pub fn subst(&self, var: &str, replacement: &Type) -> Type {
        let fv = replacement.free_vars();
        self.subst_with(var, replacement, &fv)
    }

    fn subst_with(&self, var: &str, replacement: &Type, fv: &BTreeSet<String>) -> Type {
        match self {
            Type::Base(_) => self.clone(),
            Type::Var(v) if v == var => replacement.clone(),
            Type::Var(_) => self.clone(),
            Type::Arrow(a, b) => Type::arrow(
                a.subst_with(var, replacement, fv),
                b.subst_with(var, replacement, fv),
            ),
            Type::Pi(v, _) if v == var => self.clone(),
            Type::Pi(v, body) => {
                if !body.occurs_free(var) {
                    return self.clone();
                }
                if fv.contains(v) {
                    let mut avoid = fv.clone();
                    body.all_var_names(&mut avoid);
                    avoid.insert(var.to_string());
                    let renamed = fresh_name(v, |n| avoid.contains(n));
                    let body = body.subst(v, &Type::Var(renamed.clone()));
                    Type::pi(renamed, body.subst_with(var, replacement, fv))
                } else {
                    Type::pi(v.clone(), body.subst_with(var, replacement, fv))
                }
            }
        }
    }

    /// Equality up to consistent renaming of Π-bound variables.
    pub fn alpha_eq(&self, other: &Type) -> bool {
        alpha_eq_in(self, other, &mut Vec::new())
    }
}

/// α-equivalence under a stack of binder correspondences (left name, right name).
pub(crate) fn alpha_eq_in(a: &Type, b: &Type, env: &mut Vec<(String, String)>) -> bool {
    match (a, b) {
        (Type::Base(x), Type::Base(y)) => x == y,
        (Type::Var(x), Type::Var(y)) => {
            for (l, r) in env.iter().rev() {
                if l == x || r == y {
                    return l == x && r == y;
                }
            }
            x == y
        }
        (Type::Arrow(a1, b1), Type::Arrow(a2, b2)) => {
            alpha_eq_in(a1, a2, env) && alpha_eq_in(b1, b2, env)
        }
        (Type::Pi(x, b1), Type::Pi(y, b2)) => {
            env.push((x.clone(), y.clone()));
            let r = alpha_eq_in(b1, b2, env);
            env.pop();
            r
        }
        _ => false,
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::logic::pretty::type_to_string(self, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subst_replaces_free_occurrences() {
        let ty = Type::pred(Type::var("a"));
        assert_eq!(ty.subst("a", &Type::e()), Type::pred(Type::e()));
    }

    #[test]
    fn subst_renames_capturing_binder() {
        // (Πα. α -> β)[β := α]  ~>  Πα'. α' -> α
        let ty = Type::pi("α", Type::arrow(Type::var("α"), Type::var("β")));
        let out = ty.subst("β", &Type::var("α"));
        assert_eq!(
            out,
            Type::pi("α'", Type::arrow(Type::var("α'"), Type::var("α")))
        );
        assert!(out.occurs_free("α"));
    }

    #[test]
    fn subst_without_occurrence_is_identity() {
        assert_eq!(Type::t().subst("α", &Type::g()), Type::t());
    }

    #[test]
    fn alpha_eq_ignores_bound_names() {
        let a = Type::pi("a", Type::pred(Type::var("a")));
        let b = Type::pi("b", Type::pred(Type::var("b")));
        assert!(a.alpha_eq(&b));
        assert_ne!(a, b);
        let c = Type::pi("b", Type::pred(Type::var("a")));
        assert!(!a.alpha_eq(&c));
    }

    #[test]
    fn strip_pis_collects_prefix() {
        let ty = Type::pi("a", Type::pi("b", Type::arrow(Type::var("a"), Type::var("b"))));
        let (vars, body) = ty.strip_pis();
        assert_eq!(vars, vec!["a", "b"]);
        assert!(body.as_arrow().is_some());
    }
}
