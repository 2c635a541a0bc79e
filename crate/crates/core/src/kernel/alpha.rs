//! α-equivalence of terms.

use super::term::Term;
use super::types::alpha_eq_in;

pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    Pairing::default().terms(a, b)
}

#[derive(Default)]
struct Pairing {
    vars: Vec<(String, String)>,
    tyvars: Vec<(String, String)>,
}

impl Pairing {
    fn terms(&mut self, a: &Term, b: &Term) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => {
                for (l, r) in self.vars.iter().rev() {
                    if l == x || r == y {
                        return l == x && r == y;
                    }
                }
                x == y
            }
            (Term::Const(x), Term::Const(y)) => x == y,
            (Term::App(f1, a1), Term::App(f2, a2)) => self.terms(f1, f2) && self.terms(a1, a2),
            (Term::Lam(x, t1, b1), Term::Lam(y, t2, b2)) => {
                if !alpha_eq_in(t1, t2, &mut self.tyvars) {
                    return false;
                }
                self.vars.push((x.clone(), y.clone()));
                let r = self.terms(b1, b2);
                self.vars.pop();
                r
            }
            (Term::TyApp(f1, t1), Term::TyApp(f2, t2)) => {
                alpha_eq_in(t1, t2, &mut self.tyvars) && self.terms(f1, f2)
            }
            (Term::TyLam(x, b1), Term::TyLam(y, b2)) => {
                self.tyvars.push((x.clone(), y.clone()));
                let r = self.terms(b1, b2);
                self.tyvars.pop();
                r
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Type;

    fn run(v: &str, ty: Type) -> Term {
        Term::lam(v, ty, Term::app(Term::cnst("run"), Term::var(v)))
    }

    #[test]
    fn renamed_binders_are_equal() {
        assert!(alpha_eq(&run("x", Type::e()), &run("y", Type::e())));
    }

    #[test]
    fn annotation_types_matter() {
        assert!(!alpha_eq(&run("x", Type::e()), &run("x", Type::g())));
    }

    #[test]
    fn free_and_bound_do_not_mix() {
        // λx. y  vs  λy. y
        let a = Term::lam("x", Type::e(), Term::var("y"));
        let b = Term::lam("y", Type::e(), Term::var("y"));
        assert!(!alpha_eq(&a, &b));
    }

    #[test]
    fn type_binders_are_renamed_consistently() {
        let a = Term::ty_lam("a", Term::lam("x", Type::var("a"), Term::var("x")));
        let b = Term::ty_lam("b", Term::lam("z", Type::var("b"), Term::var("z")));
        assert!(alpha_eq(&a, &b));
    }
}
