use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::{EvalError, FiniteModel, Value};
use crate::kernel::{type_of, Term, Type, TypingContext};
use crate::logic::{is_numeral, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Prim {
    And,
    Or,
    Implies,
    Not,
    Eq,
    Forall,
    Exists,
    Iota,
    Card,
    Gt,
    Member,
    MemberOf,
    Subset,
    PolyAnd,
}

impl Prim {
    fn lookup(name: &str) -> Option<Prim> {
        Some(match name {
            "and" => Prim::And,
            "or" => Prim::Or,
            "implies" => Prim::Implies,
            "not" => Prim::Not,
            "eq" => Prim::Eq,
            "forall" => Prim::Forall,
            "exists" => Prim::Exists,
            "iota" => Prim::Iota,
            "card" => Prim::Card,
            "gt" => Prim::Gt,
            "member" => Prim::Member,
            "member_of" => Prim::MemberOf,
            "subset" => Prim::Subset,
            "polyand" => Prim::PolyAnd,
            _ => return None,
        })
    }

    /// Type and term arguments taken before the primitive computes.
    fn arity(self) -> usize {
        match self {
            Prim::Not => 1,
            Prim::And | Prim::Or | Prim::Implies | Prim::Gt | Prim::Member | Prim::MemberOf => 2,
            Prim::Forall | Prim::Exists | Prim::Iota | Prim::Card => 2,
            Prim::Eq | Prim::Subset => 3,
            // α β P Q ξ x f g
            Prim::PolyAnd => 8,
        }
    }
}

/// Persistent environment of term variables.
enum Env<'t> {
    Empty,
    Bind(&'t str, V<'t>, Rc<Env<'t>>),
}

fn lookup<'t>(env: &Rc<Env<'t>>, name: &str) -> Option<V<'t>> {
    let mut cur = env;
    loop {
        match &**cur {
            Env::Empty => return None,
            Env::Bind(n, v, rest) => {
                if *n == name {
                    return Some(v.clone());
                }
                cur = rest;
            }
        }
    }
}

type TyEnv = Rc<Vec<(String, Type)>>;

#[derive(Clone)]
enum PArg<'t> {
    Ty(Type),
    Tm(V<'t>),
}

#[derive(Clone)]
enum V<'t> {
    Data(Value, Type),
    Closure {
        var: &'t str,
        body: &'t Term,
        env: Rc<Env<'t>>,
        tyenv: TyEnv,
    },
    TyClosure {
        var: &'t str,
        body: &'t Term,
        env: Rc<Env<'t>>,
        tyenv: TyEnv,
    },
    Prim(Prim, Vec<PArg<'t>>),
}

struct Evaluator<'m> {
    model: &'m FiniteModel,
    sig: &'m Signature,
    elements: RefCell<HashMap<Type, Rc<Vec<Value>>>>,
}

fn resolve(ty: &Type, tyenv: &TyEnv) -> Type {
    let mut out = ty.clone();
    for (v, t) in tyenv.iter().rev() {
        out = out.subst(v, t);
    }
    out
}

impl<'m> Evaluator<'m> {
    fn elements(&self, ty: &Type) -> Result<Rc<Vec<Value>>, EvalError> {
        if let Some(v) = self.elements.borrow().get(ty) {
            return Ok(v.clone());
        }
        let v = Rc::new(self.model.elements(ty)?);
        self.elements.borrow_mut().insert(ty.clone(), v.clone());
        Ok(v)
    }

    fn eval<'t>(&self, t: &'t Term, env: &Rc<Env<'t>>, tyenv: &TyEnv) -> Result<V<'t>, EvalError> {
        match t {
            Term::Var(x) => lookup(env, x).ok_or_else(|| EvalError::Unsupported(format!("free variable {x}"))),
            Term::Const(c) => self.constant(c),
            Term::App(f, a) => {
                let f = self.eval(f, env, tyenv)?;
                let a = self.eval(a, env, tyenv)?;
                self.apply(f, a)
            }
            Term::Lam(x, _, body) => Ok(V::Closure {
                var: x,
                body,
                env: env.clone(),
                tyenv: tyenv.clone(),
            }),
            Term::TyApp(f, ty) => {
                let f = self.eval(f, env, tyenv)?;
                self.ty_apply(f, resolve(ty, tyenv))
            }
            Term::TyLam(a, body) => Ok(V::TyClosure {
                var: a,
                body,
                env: env.clone(),
                tyenv: tyenv.clone(),
            }),
        }
    }

    fn constant<'t>(&self, c: &str) -> Result<V<'t>, EvalError> {
        if let Some(p) = Prim::lookup(c) {
            return Ok(V::Prim(p, Vec::new()));
        }
        match c {
            "true" => return Ok(V::Data(Value::truth(true), Type::t())),
            "false" => return Ok(V::Data(Value::truth(false), Type::t())),
            _ => {}
        }
        if is_numeral(c) {
            let n: u64 = c.parse().map_err(|_| EvalError::SortOverflow(u64::MAX))?;
            if n > self.model.nat_bound() {
                return Err(EvalError::SortOverflow(n));
            }
            return Ok(V::Data(Value::Atom(n as usize), Type::nat()));
        }
        let value = self
            .model
            .interpretation(c)
            .ok_or_else(|| EvalError::UninterpretedConstant(c.to_string()))?;
        let ty = self
            .sig
            .lookup(c)
            .ok_or_else(|| EvalError::Unsupported(format!("constant {c} is not in the signature")))?;
        Ok(V::Data(value.clone(), ty))
    }

    fn apply<'t>(&self, f: V<'t>, a: V<'t>) -> Result<V<'t>, EvalError> {
        match f {
            V::Closure { var, body, env, tyenv } => {
                let env = Rc::new(Env::Bind(var, a, env));
                self.eval(body, &env, &tyenv)
            }
            V::Data(Value::Fun(table), Type::Arrow(dom, cod)) => {
                let arg = self.force(a, &dom)?;
                let index = self.model.index_of(&arg, &dom)?;
                let row = table
                    .get(index)
                    .ok_or_else(|| EvalError::Unsupported("argument outside the domain".into()))?;
                Ok(V::Data(row.clone(), (*cod).clone()))
            }
            V::Prim(p, mut args) => {
                args.push(PArg::Tm(a));
                self.saturate(p, args)
            }
            V::Data(..) | V::TyClosure { .. } => {
                Err(EvalError::Unsupported("application of a non-function".into()))
            }
        }
    }

    fn ty_apply<'t>(&self, f: V<'t>, ty: Type) -> Result<V<'t>, EvalError> {
        match f {
            V::TyClosure { var, body, env, tyenv } => {
                let mut inner = (*tyenv).clone();
                inner.push((var.to_string(), ty));
                self.eval(body, &env, &Rc::new(inner))
            }
            V::Prim(p, mut args) => {
                args.push(PArg::Ty(ty));
                self.saturate(p, args)
            }
            _ => Err(EvalError::Unsupported("type application of a monomorphic value".into())),
        }
    }

    fn force(&self, v: V<'_>, ty: &Type) -> Result<Value, EvalError> {
        match (v, ty) {
            (V::Data(x, _), _) => Ok(x),
            (f, Type::Arrow(dom, cod)) => {
                let dom_elems = self.elements(dom)?;
                let mut out = Vec::with_capacity(dom_elems.len());
                for x in dom_elems.iter() {
                    let r = self.apply(f.clone(), V::Data(x.clone(), (**dom).clone()))?;
                    out.push(self.force(r, cod)?);
                }
                Ok(Value::Fun(out.into()))
            }
            _ => Err(EvalError::Unsupported(format!("cannot tabulate a value of type {ty}"))),
        }
    }

    fn truth(&self, v: V<'_>) -> Result<bool, EvalError> {
        match v {
            V::Data(x, _) => x.as_bool().ok_or_else(|| EvalError::Unsupported("expected a truth value".into())),
            _ => Err(EvalError::Unsupported("expected a truth value".into())),
        }
    }

    fn atom(&self, v: V<'_>) -> Result<usize, EvalError> {
        match v {
            V::Data(Value::Atom(i), _) => Ok(i),
            _ => Err(EvalError::Unsupported("expected an atom".into())),
        }
    }

    fn holds<'t>(&self, p: &V<'t>, x: &Value, ty: &Type) -> Result<bool, EvalError> {
        let r = self.apply(p.clone(), V::Data(x.clone(), ty.clone()))?;
        self.truth(r)
    }

    fn saturate<'t>(&self, p: Prim, args: Vec<PArg<'t>>) -> Result<V<'t>, EvalError> {
        if args.len() < p.arity() {
            return Ok(V::Prim(p, args));
        }
        let mut tys = Vec::new();
        let mut tms = Vec::new();
        for a in args {
            match a {
                PArg::Ty(t) => tys.push(t),
                PArg::Tm(v) => tms.push(v),
            }
        }
        let bad = || EvalError::Unsupported(format!("malformed application of {p:?}"));
        let mut tms = tms.into_iter();
        let mut next = || tms.next().ok_or_else(bad);
        let ty = |i: usize| tys.get(i).cloned().ok_or_else(bad);
        let b = |x: bool| Ok(V::Data(Value::truth(x), Type::t()));
        match p {
            Prim::Not => b(!self.truth(next()?)?),
            Prim::And => {
                let (x, y) = (self.truth(next()?)?, self.truth(next()?)?);
                b(x && y)
            }
            Prim::Or => {
                let (x, y) = (self.truth(next()?)?, self.truth(next()?)?);
                b(x || y)
            }
            Prim::Implies => {
                let (x, y) = (self.truth(next()?)?, self.truth(next()?)?);
                b(!x || y)
            }
            Prim::Gt => {
                let (x, y) = (self.atom(next()?)?, self.atom(next()?)?);
                b(x > y)
            }
            Prim::Member => {
                let (g, x) = (self.atom(next()?)?, self.atom(next()?)?);
                b(self.model.members(g).contains(&x))
            }
            Prim::MemberOf => {
                let (x, g) = (self.atom(next()?)?, self.atom(next()?)?);
                b(self.model.members(g).contains(&x))
            }
            Prim::Eq => {
                let t = ty(0)?;
                let x = self.force(next()?, &t)?;
                let y = self.force(next()?, &t)?;
                b(x == y)
            }
            Prim::Forall | Prim::Exists => {
                let t = ty(0)?;
                let pred = next()?;
                let want = p == Prim::Forall;
                for x in self.elements(&t)?.iter() {
                    if self.holds(&pred, x, &t)? != want {
                        return b(!want);
                    }
                }
                b(want)
            }
            Prim::Iota => {
                let t = ty(0)?;
                let pred = next()?;
                for x in self.elements(&t)?.iter() {
                    if self.holds(&pred, x, &t)? {
                        return Ok(V::Data(x.clone(), t));
                    }
                }
                Err(EvalError::EmptyIota)
            }
            Prim::Card => {
                let t = ty(0)?;
                let pred = next()?;
                let mut n = 0u64;
                for x in self.elements(&t)?.iter() {
                    if self.holds(&pred, x, &t)? {
                        n += 1;
                    }
                }
                if n > self.model.nat_bound() {
                    return Err(EvalError::SortOverflow(n));
                }
                Ok(V::Data(Value::Atom(n as usize), Type::nat()))
            }
            Prim::Subset => {
                let t = ty(0)?;
                let (sub, sup) = (next()?, next()?);
                for x in self.elements(&t)?.iter() {
                    if self.holds(&sub, x, &t)? && !self.holds(&sup, x, &t)? {
                        return b(false);
                    }
                }
                b(true)
            }
            Prim::PolyAnd => {
                // polyand{α}{β} P Q {ξ} x f g = P (f x) ∧ Q (g x)
                let (pp, qq, x, f, g) = (next()?, next()?, next()?, next()?, next()?);
                let fx = self.apply(f, x.clone())?;
                let gx = self.apply(g, x)?;
                let left = self.apply(pp, fx)?;
                let right = self.apply(qq, gx)?;
                b(self.truth(left)? && self.truth(right)?)
            }
        }
    }
}

fn check_closed_interpretations(m: &FiniteModel, term: &Term) -> Result<(), EvalError> {
    for c in term.constants() {
        let builtin = Prim::lookup(&c).is_some() || c == "true" || c == "false" || is_numeral(&c);
        if !builtin && m.interpretation(&c).is_none() {
            return Err(EvalError::UninterpretedConstant(c));
        }
    }
    Ok(())
}

/// Truth value of a closed formula.
pub fn eval(m: &FiniteModel, sig: &Signature, f: &Term) -> Result<bool, EvalError> {
    let ty = type_of(&TypingContext::new(sig), f)?;
    if !ty.is_prop() {
        return Err(EvalError::Unsupported(format!("formula has type {ty}, not t")));
    }
    check_closed_interpretations(m, f)?;
    let ev = Evaluator {
        model: m,
        sig,
        elements: RefCell::new(HashMap::new()),
    };
    let v = ev.eval(f, &Rc::new(Env::Empty), &Rc::new(Vec::new()))?;
    ev.truth(v)
}

/// Value of a closed term of any monomorphic type.
pub fn eval_value(m: &FiniteModel, sig: &Signature, term: &Term) -> Result<Value, EvalError> {
    let ty = type_of(&TypingContext::new(sig), term)?;
    check_closed_interpretations(m, term)?;
    let ev = Evaluator {
        model: m,
        sig,
        elements: RefCell::new(HashMap::new()),
    };
    let v = ev.eval(term, &Rc::new(Env::Empty), &Rc::new(Vec::new()))?;
    ev.force(v, &ty)
}
