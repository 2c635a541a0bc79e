//! Canonical printer for types and formulas.
//!
//! Output re-parses to an α-equal term (see [`crate::syntax`]). Infix
//! sugar is used for saturated `and`, `or`, `implies`, `eq`, `gt`, `card`,
//! and for `forall`/`exists` applied to a λ. Everything else prints as
//! juxtaposition with explicit `{T}` type arguments.

use std::collections::BTreeSet;

use crate::kernel::{fresh_name, Arg, Term, Type, BUILTIN_SORTS};

const TOP: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const CMP: u8 = 4;
const APP: u8 = 5;
const ATOM: u8 = 6;

/// Formatting options.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Printer {
    pub unicode: bool,
}

impl Printer {
    pub fn ascii() -> Self {
        Printer { unicode: false }
    }

    pub fn unicode() -> Self {
        Printer { unicode: true }
    }

    pub fn term(&self, term: &Term) -> String {
        let mut consts = term.constants();
        let mut sorts: BTreeSet<String> = BUILTIN_SORTS.iter().map(|s| s.to_string()).collect();
        term.visit(&mut |t| match t {
            Term::Lam(_, ty, _) | Term::TyApp(_, ty) => ty.sort_names(&mut sorts),
            _ => {}
        });
        consts.extend(KEYWORD_NAMES.iter().map(|s| s.to_string()));
        let mut st = State {
            unicode: self.unicode,
            consts,
            sorts,
            vars: Vec::new(),
            tyvars: Vec::new(),
        };
        st.term(term, TOP)
    }

    pub fn ty(&self, ty: &Type) -> String {
        let mut sorts = BTreeSet::new();
        ty.sort_names(&mut sorts);
        let mut st = State {
            unicode: self.unicode,
            consts: BTreeSet::new(),
            sorts,
            vars: Vec::new(),
            tyvars: Vec::new(),
        };
        st.ty(ty, TOP)
    }
}

const KEYWORD_NAMES: [&str; 5] = ["lam", "Lam", "all", "some", "Pi"];

/// ASCII rendering of a term.
pub fn pretty(term: &Term) -> String {
    Printer::ascii().term(term)
}

/// Rendering with λ, ∀, ∧, … .
pub fn pretty_unicode(term: &Term) -> String {
    Printer::unicode().term(term)
}

pub fn type_to_string(ty: &Type, unicode: bool) -> String {
    Printer { unicode }.ty(ty)
}

struct State {
    unicode: bool,
    consts: BTreeSet<String>,
    sorts: BTreeSet<String>,
    /// (original name, printed name), innermost last.
    vars: Vec<(String, String)>,
    tyvars: Vec<(String, String)>,
}

fn wrap(s: String, yes: bool) -> String {
    if yes {
        format!("({s})")
    } else {
        s
    }
}

fn is_eq(t: &Term) -> bool {
    let (head, args) = t.spine();
    head.is_const("eq") && matches!(args.as_slice(), [Arg::Type(_), Arg::Term(_), Arg::Term(_)])
}

impl State {
    fn sym<'a>(&self, ascii: &'a str, uni: &'a str) -> &'a str {
        if self.unicode {
            uni
        } else {
            ascii
        }
    }

    fn bind_var(&mut self, orig: &str) -> String {
        let clashes = |n: &str, st: &State| {
            st.consts.contains(n) || st.vars.iter().any(|(o, p)| p == n && o != orig)
        };
        let printed = if clashes(orig, self) {
            fresh_name(orig, |n| clashes(n, self))
        } else {
            orig.to_string()
        };
        self.vars.push((orig.to_string(), printed.clone()));
        printed
    }

    fn bind_tyvar(&mut self, orig: &str) -> String {
        let clashes = |n: &str, st: &State| {
            st.sorts.contains(n) || st.tyvars.iter().any(|(o, p)| p == n && o != orig)
        };
        let printed = if clashes(orig, self) {
            fresh_name(orig, |n| clashes(n, self))
        } else {
            orig.to_string()
        };
        self.tyvars.push((orig.to_string(), printed.clone()));
        printed
    }

    fn var_name(&self, orig: &str) -> String {
        self.vars
            .iter()
            .rev()
            .find(|(o, _)| o == orig)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| orig.to_string())
    }

    fn ty(&mut self, ty: &Type, prec: u8) -> String {
        match ty {
            Type::Base(s) => s.name().to_string(),
            Type::Var(v) => self
                .tyvars
                .iter()
                .rev()
                .find(|(o, _)| o == v)
                .map(|(_, p)| p.clone())
                .unwrap_or_else(|| v.clone()),
            Type::Arrow(a, b) => {
                let s = format!(
                    "{} {} {}",
                    self.ty(a, 1),
                    self.sym("->", "→"),
                    self.ty(b, TOP)
                );
                wrap(s, prec >= 1)
            }
            Type::Pi(v, body) => {
                let name = self.bind_tyvar(v);
                let inner = self.ty(body, TOP);
                self.tyvars.pop();
                let s = if self.unicode {
                    format!("Π{name}. {inner}")
                } else {
                    format!("Pi {name}. {inner}")
                };
                wrap(s, prec >= 1)
            }
        }
    }

    fn annotation(&mut self, ty: &Type) -> String {
        match ty {
            Type::Base(_) | Type::Var(_) => self.ty(ty, TOP),
            _ => format!("({})", self.ty(ty, TOP)),
        }
    }

    fn binder(&mut self, kw: (&str, &str), var: &str, ty: &Type, body: &Term, prec: u8) -> String {
        let ann = self.annotation(ty);
        let name = self.bind_var(var);
        let inner = self.term(body, TOP);
        self.vars.pop();
        let s = if self.unicode {
            format!("{}{name}:{ann}. {inner}", kw.1)
        } else {
            format!("{} {name}:{ann}. {inner}", kw.0)
        };
        wrap(s, prec > TOP)
    }

    /// Operand of a logical connective; equations get parentheses for legibility.
    fn operand(&mut self, t: &Term, prec: u8) -> String {
        if is_eq(t) {
            format!("({})", self.term(t, TOP))
        } else {
            self.term(t, prec)
        }
    }

    fn term(&mut self, t: &Term, prec: u8) -> String {
        if let Some(s) = self.sugar(t, prec) {
            return s;
        }
        match t {
            Term::Var(v) => self.var_name(v),
            Term::Const(c) => c.clone(),
            Term::Lam(x, ty, body) => self.binder(("lam", "λ"), x, ty, body, prec),
            Term::TyLam(a, body) => {
                let name = self.bind_tyvar(a);
                let inner = self.term(body, TOP);
                self.tyvars.pop();
                let s = if self.unicode {
                    format!("Λ{name}. {inner}")
                } else {
                    format!("Lam {name}. {inner}")
                };
                wrap(s, prec > TOP)
            }
            Term::App(..) | Term::TyApp(..) => {
                let (head, args) = t.spine();
                let mut out = self.term(head, ATOM);
                let mut first = true;
                for arg in args {
                    match arg {
                        Arg::Type(ty) => {
                            out.push('{');
                            out.push_str(&self.ty(ty, TOP));
                            out.push('}');
                        }
                        Arg::Term(a) => {
                            let atomic = matches!(a, Term::Var(_) | Term::Const(_));
                            let s = self.term(a, ATOM);
                            if atomic {
                                out.push(' ');
                                out.push_str(&s);
                            } else if first {
                                out.push_str(&s);
                            } else {
                                out.push(' ');
                                out.push_str(&s);
                            }
                            first = false;
                        }
                    }
                }
                wrap(out, prec > APP)
            }
        }
    }

    fn sugar(&mut self, t: &Term, prec: u8) -> Option<String> {
        let (head, args) = t.spine();
        let Term::Const(c) = head else { return None };
        let s = match (c.as_str(), args.as_slice()) {
            ("and", [Arg::Term(a), Arg::Term(b)]) => {
                let s = format!(
                    "{} {} {}",
                    self.operand(a, AND),
                    self.sym("&&", "∧"),
                    self.operand(b, AND + 1)
                );
                wrap(s, prec > AND)
            }
            ("or", [Arg::Term(a), Arg::Term(b)]) => {
                let s = format!(
                    "{} {} {}",
                    self.operand(a, OR),
                    self.sym("||", "∨"),
                    self.operand(b, OR + 1)
                );
                wrap(s, prec > OR)
            }
            ("implies", [Arg::Term(a), Arg::Term(b)]) => {
                let s = format!(
                    "{} {} {}",
                    self.operand(a, IMP + 1),
                    self.sym("=>", "⇒"),
                    self.operand(b, IMP)
                );
                wrap(s, prec > IMP)
            }
            ("eq", [Arg::Type(_), Arg::Term(a), Arg::Term(b)]) => {
                let s = format!(
                    "{} {} {}",
                    self.term(a, APP),
                    self.sym("==", "="),
                    self.term(b, APP)
                );
                wrap(s, prec > CMP)
            }
            ("gt", [Arg::Term(a), Arg::Term(b)]) => {
                let s = format!("{} > {}", self.term(a, APP), self.term(b, APP));
                wrap(s, prec > CMP)
            }
            ("card", [Arg::Type(_), Arg::Term(p)]) => {
                let inner = self.term(p, TOP);
                let s = if inner.starts_with('|') || inner.ends_with('|') {
                    format!("| {inner} |")
                } else {
                    format!("|{inner}|")
                };
                // a card never appears bare as a juxtaposed argument
                wrap(s, prec >= ATOM)
            }
            ("forall", [Arg::Type(ty), Arg::Term(Term::Lam(x, ann, body))]) if ty.alpha_eq(ann) => {
                self.binder(("all", "∀"), x, ann, body, prec)
            }
            ("exists", [Arg::Type(ty), Arg::Term(Term::Lam(x, ann, body))]) if ty.alpha_eq(ann) => {
                self.binder(("some", "∃"), x, ann, body, prec)
            }
            _ => return None,
        };
        Some(s)
    }
}
