//! Seeded generator of random well-typed closed terms, shared by the
//! integration tests.
#![allow(dead_code)]

use plurals::kernel::{Term, Type};
use plurals::logic::{builtin_signature, Signature};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The builtin signature plus a small test vocabulary.
pub fn signature() -> Signature {
    let mut s = builtin_signature();
    let e = Type::e;
    for c in ["j", "d", "m"] {
        s.declare_const(c, e()).unwrap();
    }
    s.declare_const("k", Type::g()).unwrap();
    s.declare_const("p", Type::pred(e())).unwrap();
    s.declare_const("q", Type::pred(e())).unwrap();
    s.declare_const("r", Type::arrow(e(), Type::pred(e()))).unwrap();
    s.declare_const("f", Type::arrow(e(), e())).unwrap();
    s.declare_const("h", Type::pred(Type::pred(e()))).unwrap();
    s
}

/// Constants of the test vocabulary (the non-builtin ones).
pub const VOCAB: [&str; 9] = ["j", "d", "m", "k", "p", "q", "r", "f", "h"];

struct Gen {
    rng: ChaCha8Rng,
    vars: Vec<(String, Type)>,
    tyvars: Vec<String>,
}

const NAMES: [&str; 4] = ["x", "y", "z", "w"];
const TYVARS: [&str; 3] = ["a", "b", "c"];

impl Gen {
    fn visible(&self, ty: &Type) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for (i, (n, t)) in self.vars.iter().enumerate() {
            let shadowed = self.vars[i + 1..].iter().any(|(m, _)| m == n);
            if !shadowed && t.alpha_eq(ty) && !out.contains(n) {
                out.push(n.clone());
            }
        }
        out
    }

    fn small_type(&mut self, depth: usize) -> Type {
        let mut pool = vec![Type::e(), Type::t(), Type::pred(Type::e()), Type::g()];
        pool.extend(self.tyvars.iter().map(Type::var));
        let base = pool.choose(&mut self.rng).unwrap().clone();
        if depth > 0 && self.rng.gen_bool(0.2) {
            let cod = self.small_type(depth - 1);
            Type::arrow(base, cod)
        } else {
            base
        }
    }

    fn bind<T>(&mut self, name: &str, ty: Type, f: impl FnOnce(&mut Self) -> T) -> T {
        self.vars.push((name.to_string(), ty));
        let out = f(self);
        self.vars.pop();
        out
    }

    fn leaf(&mut self, ty: &Type) -> Term {
        let vars = self.visible(ty);
        if !vars.is_empty() && self.rng.gen_bool(0.7) {
            return Term::var(vars.choose(&mut self.rng).unwrap());
        }
        match ty {
            Type::Base(s) => match s.name() {
                "e" => Term::cnst(*["j", "d", "m"].choose(&mut self.rng).unwrap()),
                "g" => Term::cnst("k"),
                "t" => Term::truth(self.rng.gen_bool(0.5)),
                _ => Term::nat(self.rng.gen_range(0..4)),
            },
            Type::Arrow(a, b) => {
                let x = *NAMES.choose(&mut self.rng).unwrap();
                let body = self.bind(x, (**a).clone(), |g| g.leaf(b));
                Term::lam(x, (**a).clone(), body)
            }
            Type::Var(_) => Term::var(vars.first().expect("a variable of every type variable in scope")),
            Type::Pi(..) => unreachable!("no polymorphic targets"),
        }
    }

    fn term(&mut self, ty: &Type, depth: usize) -> Term {
        if depth == 0 {
            return self.leaf(ty);
        }
        let d = depth - 1;
        let mut pick = self.rng.gen_range(0..10);
        if pick > 4 && !ty.is_prop() && self.rng.gen_bool(0.6) {
            pick = self.rng.gen_range(0..5);
        }
        match pick {
            // Abstraction at an arrow type.
            0 | 1 if ty.as_arrow().is_some() => {
                let (a, b) = ty.as_arrow().unwrap();
                let (a, b) = (a.clone(), b.clone());
                let x = *NAMES.choose(&mut self.rng).unwrap();
                let body = self.bind(x, a.clone(), |g| g.term(&b, d));
                Term::lam(x, a, body)
            }
            // A β-redex.
            2 => {
                let a = self.small_type(1);
                let x = *NAMES.choose(&mut self.rng).unwrap();
                let body = self.bind(x, a.clone(), |g| g.term(ty, d));
                let arg = self.term(&a, d);
                Term::app(Term::lam(x, a, body), arg)
            }
            // A type redex: (Lam a. lam z:a. M) {A} N.
            3 => {
                let Some(a) = TYVARS.iter().find(|v| !self.tyvars.iter().any(|t| t == *v)).copied() else {
                    return self.leaf(ty);
                };
                // Never shadowed: NAMES holds the only other binder names.
                let z = format!("v{a}");
                let z = z.as_str();
                self.tyvars.push(a.to_string());
                let body = self.bind(z, Type::var(a), |g| g.term(ty, d));
                self.tyvars.pop();
                let inst = self.small_type(1);
                let arg = self.term(&inst, d);
                let poly = Term::ty_lam(a, Term::lam(z, Type::var(a), body));
                Term::app(Term::ty_app(poly, inst), arg)
            }
            // Application of a function built at a random argument type.
            4 => {
                let a = self.small_type(1);
                let f = self.term(&Type::arrow(a.clone(), ty.clone()), d);
                let arg = self.term(&a, d);
                Term::app(f, arg)
            }
            5..=8 if ty.is_prop() => self.formula(d),
            5 if ty.is_base("e") => {
                let arg = self.term(&Type::e(), d);
                Term::app(Term::cnst("f"), arg)
            }
            6 if ty.is_base("N") => {
                let a = self.small_type(0);
                let p = self.term(&Type::pred(a.clone()), d);
                Term::app(Term::ty_app(Term::cnst("card"), a), p)
            }
            _ => self.leaf(ty),
        }
    }

    fn formula(&mut self, d: usize) -> Term {
        let t = Type::t();
        match self.rng.gen_range(0..9) {
            0 => Term::and(self.term(&t, d), self.term(&t, d)),
            1 => Term::or(self.term(&t, d), self.term(&t, d)),
            2 => Term::implies(self.term(&t, d), self.term(&t, d)),
            3 => Term::app(Term::cnst("not"), self.term(&t, d)),
            4 | 5 => {
                let a = self.small_type(0);
                let x = *NAMES.choose(&mut self.rng).unwrap();
                let body = self.bind(x, a.clone(), |g| g.term(&t, d));
                if self.rng.gen_bool(0.5) {
                    Term::forall(x, a, body)
                } else {
                    Term::exists(x, a, body)
                }
            }
            6 => {
                let a = self.small_type(0);
                Term::eq(a.clone(), self.term(&a, d), self.term(&a, d))
            }
            7 => {
                let e = Type::e();
                let pred = *["p", "q", "h"].choose(&mut self.rng).unwrap();
                if pred == "h" {
                    Term::app(Term::cnst(pred), self.term(&Type::pred(e), d))
                } else {
                    Term::app(Term::cnst(pred), self.term(&e, d))
                }
            }
            _ => {
                let e = Type::e();
                Term::apps(Term::cnst("r"), [self.term(&e, d), self.term(&e, d)])
            }
        }
    }
}

/// A closed term of type `ty` (which must be closed and Π-free).
pub fn random_term_of(seed: u64, ty: &Type, depth: usize) -> Term {
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        vars: Vec::new(),
        tyvars: Vec::new(),
    };
    g.term(ty, depth)
}

/// A closed term of a random small type, with that type.
pub fn random_term(seed: u64, depth: usize) -> (Term, Type) {
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed ^ 0x5eed),
        vars: Vec::new(),
        tyvars: Vec::new(),
    };
    let ty = g.small_type(2);
    (random_term_of(seed, &ty, depth), ty)
}

pub fn random_formula(seed: u64, depth: usize) -> Term {
    random_term_of(seed, &Type::t(), depth)
}

pub fn terms(depth: usize) -> impl Strategy<Value = (Term, Type)> {
    any::<u64>().prop_map(move |seed| random_term(seed, depth))
}

pub fn formulas(depth: usize) -> impl Strategy<Value = Term> {
    any::<u64>().prop_map(move |seed| random_formula(seed, depth))
}

/// Sentences with known behaviour, by shipped lexicon.
pub const GOLDEN: [(&str, &str); 16] = [
    ("english", "Jimi and Dusty met"),
    ("english", "Jimi met"),
    ("english", "Jimi and Dusty lifted a piano"),
    ("english", "Jimi and Dusty wrote a paper"),
    ("english", "Jimi and Dusty were walking"),
    ("english", "Jimi and Dusty sneezed"),
    ("english", "the student met"),
    ("english", "the students met"),
    ("english", "the committee met"),
    ("english", "the committees met"),
    ("english", "each student sneezed"),
    ("english", "the members of the committee protested"),
    ("english", "Jimi and Dusty and Mary met"),
    ("french", "le comité s'est réuni"),
    ("french", "les comités se sont réunis"),
    ("japanese", "JIMI tachi ha saikai shita"),
];
