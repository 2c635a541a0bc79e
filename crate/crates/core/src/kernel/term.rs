//! Terms of the second-order lambda calculus and capture-avoiding
//! substitution of terms and types.

use std::collections::BTreeSet;
use std::fmt;

use super::names::fresh_name;
use super::types::Type;

/// A System F term. Signature constants (`forall`, `meet`, numerals, ...)
/// are kept apart from bound variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    App(Box<Term>, Box<Term>),
    Lam(String, Type, Box<Term>),
    TyApp(Box<Term>, Type),
    TyLam(String, Box<Term>),
}

/// One argument in an application spine.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Arg<'a> {
    Term(&'a Term),
    Type(&'a Type),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn cnst(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn nat(n: u64) -> Term {
        Term::Const(n.to_string())
    }

    pub fn truth(value: bool) -> Term {
        Term::cnst(if value { "true" } else { "false" })
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    /// Left-nested application `f a1 a2 ...`.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn lam(var: impl Into<String>, ty: Type, body: Term) -> Term {
        Term::Lam(var.into(), ty, Box::new(body))
    }

    pub fn ty_app(f: Term, ty: Type) -> Term {
        Term::TyApp(Box::new(f), ty)
    }

    pub fn ty_lam(var: impl Into<String>, body: Term) -> Term {
        Term::TyLam(var.into(), Box::new(body))
    }

    /// `c{ty}`, a polymorphic constant instantiated once.
    pub fn poly(name: &str, ty: Type) -> Term {
        Term::ty_app(Term::cnst(name), ty)
    }

    pub fn and(a: Term, b: Term) -> Term {
        Term::apps(Term::cnst("and"), [a, b])
    }

    pub fn or(a: Term, b: Term) -> Term {
        Term::apps(Term::cnst("or"), [a, b])
    }

    pub fn implies(a: Term, b: Term) -> Term {
        Term::apps(Term::cnst("implies"), [a, b])
    }

    pub fn eq(ty: Type, a: Term, b: Term) -> Term {
        Term::apps(Term::poly("eq", ty), [a, b])
    }

    pub fn forall(var: &str, ty: Type, body: Term) -> Term {
        Term::app(Term::poly("forall", ty.clone()), Term::lam(var, ty, body))
    }

    pub fn exists(var: &str, ty: Type, body: Term) -> Term {
        Term::app(Term::poly("exists", ty.clone()), Term::lam(var, ty, body))
    }

    pub fn is_const(&self, name: &str) -> bool {
        matches!(self, Term::Const(c) if c == name)
    }

    /// Decomposes `h a1 {T} a2 ...` into its head and arguments in order.
    pub fn spine(&self) -> (&Term, Vec<Arg<'_>>) {
        let mut args = Vec::new();
        let mut head = self;
        loop {
            match head {
                Term::App(f, a) => {
                    args.push(Arg::Term(a));
                    head = f;
                }
                Term::TyApp(f, ty) => {
                    args.push(Arg::Type(ty));
                    head = f;
                }
                _ => break,
            }
        }
        args.reverse();
        (head, args)
    }

    /// Number of nodes, for sizing generators and diagnostics.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Lam(_, _, b) | Term::TyLam(_, b) | Term::TyApp(b, _) => 1 + b.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_vars(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            Term::Const(_) => {}
            Term::App(f, a) => {
                f.collect_free_vars(bound, out);
                a.collect_free_vars(bound, out);
            }
            Term::Lam(v, _, b) => {
                bound.push(v.clone());
                b.collect_free_vars(bound, out);
                bound.pop();
            }
            Term::TyApp(f, _) => f.collect_free_vars(bound, out),
            Term::TyLam(_, b) => b.collect_free_vars(bound, out),
        }
    }

    pub fn occurs_free(&self, var: &str) -> bool {
        match self {
            Term::Var(v) => v == var,
            Term::Const(_) => false,
            Term::App(f, a) => f.occurs_free(var) || a.occurs_free(var),
            Term::Lam(v, _, b) => v != var && b.occurs_free(var),
            Term::TyApp(f, _) => f.occurs_free(var),
            Term::TyLam(_, b) => b.occurs_free(var),
        }
    }

    /// Type variables free in the annotations of the term.
    pub fn free_type_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_type_vars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_type_vars(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let add = |ty: &Type, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            for v in ty.free_vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Term::Var(_) | Term::Const(_) => {}
            Term::App(f, a) => {
                f.collect_free_type_vars(bound, out);
                a.collect_free_type_vars(bound, out);
            }
            Term::Lam(_, ty, b) => {
                add(ty, bound, out);
                b.collect_free_type_vars(bound, out);
            }
            Term::TyApp(f, ty) => {
                f.collect_free_type_vars(bound, out);
                add(ty, bound, out);
            }
            Term::TyLam(v, b) => {
                bound.push(v.clone());
                b.collect_free_type_vars(bound, out);
                bound.pop();
            }
        }
    }

    /// Constants occurring in the term.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let Term::Const(c) = t {
                out.insert(c.clone());
            }
        });
        out
    }

    /// Pre-order traversal of every subterm.
    pub fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self {
            Term::Var(_) | Term::Const(_) => {}
            Term::App(g, a) => {
                g.visit(f);
                a.visit(f);
            }
            Term::Lam(_, _, b) | Term::TyLam(_, b) | Term::TyApp(b, _) => b.visit(f),
        }
    }

    fn all_binder_names(&self, terms: &mut BTreeSet<String>, types: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                terms.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::App(f, a) => {
                f.all_binder_names(terms, types);
                a.all_binder_names(terms, types);
            }
            Term::Lam(v, ty, b) => {
                terms.insert(v.clone());
                ty.all_var_names(types);
                b.all_binder_names(terms, types);
            }
            Term::TyApp(f, ty) => {
                f.all_binder_names(terms, types);
                ty.all_var_names(types);
            }
            Term::TyLam(v, b) => {
                types.insert(v.clone());
                b.all_binder_names(terms, types);
            }
        }
    }

    /// Capture-avoiding substitution `self[value / var]`.
    pub fn subst(&self, var: &str, value: &Term) -> Term {
        let fv = value.free_vars();
        let ftv = value.free_type_vars();
        self.subst_with(var, value, &fv, &ftv)
    }

    fn subst_with(
        &self,
        var: &str,
        value: &Term,
        fv: &BTreeSet<String>,
        ftv: &BTreeSet<String>,
    ) -> Term {
        match self {
            Term::Var(v) if v == var => value.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, a) => Term::app(
                f.subst_with(var, value, fv, ftv),
                a.subst_with(var, value, fv, ftv),
            ),
            Term::Lam(v, _, _) if v == var => self.clone(),
            Term::Lam(v, ty, body) => {
                if !body.occurs_free(var) {
                    return self.clone();
                }
                if fv.contains(v) {
                    let mut avoid = fv.clone();
                    let mut tys = BTreeSet::new();
                    body.all_binder_names(&mut avoid, &mut tys);
                    avoid.insert(var.to_string());
                    let renamed = fresh_name(v, |n| avoid.contains(n));
                    let body = body.subst(v, &Term::Var(renamed.clone()));
                    Term::lam(renamed, ty.clone(), body.subst_with(var, value, fv, ftv))
                } else {
                    Term::lam(v.clone(), ty.clone(), body.subst_with(var, value, fv, ftv))
                }
            }
            Term::TyApp(f, ty) => Term::ty_app(f.subst_with(var, value, fv, ftv), ty.clone()),
            Term::TyLam(a, body) => {
                if !body.occurs_free(var) {
                    return self.clone();
                }
                if ftv.contains(a) {
                    let mut avoid = ftv.clone();
                    let mut terms = BTreeSet::new();
                    body.all_binder_names(&mut terms, &mut avoid);
                    let renamed = fresh_name(a, |n| avoid.contains(n));
                    let body = body.subst_type(a, &Type::Var(renamed.clone()));
                    Term::ty_lam(renamed, body.subst_with(var, value, fv, ftv))
                } else {
                    Term::ty_lam(a.clone(), body.subst_with(var, value, fv, ftv))
                }
            }
        }
    }

    /// Capture-avoiding substitution of a type for a type variable throughout
    /// the term's annotations.
    pub fn subst_type(&self, var: &str, ty: &Type) -> Term {
        let ftv = ty.free_vars();
        self.subst_type_with(var, ty, &ftv)
    }

    fn subst_type_with(&self, var: &str, ty: &Type, ftv: &BTreeSet<String>) -> Term {
        match self {
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, a) => Term::app(
                f.subst_type_with(var, ty, ftv),
                a.subst_type_with(var, ty, ftv),
            ),
            Term::Lam(v, ann, body) => Term::lam(
                v.clone(),
                ann.subst(var, ty),
                body.subst_type_with(var, ty, ftv),
            ),
            Term::TyApp(f, arg) => {
                Term::ty_app(f.subst_type_with(var, ty, ftv), arg.subst(var, ty))
            }
            Term::TyLam(a, _) if a == var => self.clone(),
            Term::TyLam(a, body) => {
                if ftv.contains(a) {
                    let mut avoid = ftv.clone();
                    let mut terms = BTreeSet::new();
                    body.all_binder_names(&mut terms, &mut avoid);
                    avoid.insert(var.to_string());
                    let renamed = fresh_name(a, |n| avoid.contains(n));
                    let body = body.subst_type(a, &Type::Var(renamed.clone()));
                    Term::ty_lam(renamed, body.subst_type_with(var, ty, ftv))
                } else {
                    Term::ty_lam(a.clone(), body.subst_type_with(var, ty, ftv))
                }
            }
        }
    }

    /// Equality up to consistent renaming of bound term and type variables.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        super::alpha::alpha_eq(self, other)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::logic::pretty::pretty(self))
    }
}
