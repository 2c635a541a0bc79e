// Building, typing, normalizing and printing System F terms.

use std::error::Error;

use plurals::kernel::{normalize, type_of, Term, Type, TypingContext};
use plurals::logic::{builtin_signature, pretty, pretty_unicode};
use plurals::syntax::parse_term;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut sig = builtin_signature();
    sig.declare_const("j", Type::e())?;
    sig.declare_const("d", Type::e())?;
    sig.declare_const("meet", Type::pred(Type::pred(Type::e())))?;

    // The coordination "and" of the English lexicon, applied by hand.
    let and = parse_term(&sig, "Lam a. lam P:(a -> t). lam Q:(a -> t). lam y:a. Q y || P y")?;
    let q = parse_term(&sig, "Lam a. lam x:a. lam y:a. y == x")?;
    let ctx = TypingContext::new(&sig);
    println!("and : {}", type_of(&ctx, &and)?);
    println!("q   : {}", type_of(&ctx, &q)?);

    let e = Type::e();
    let lift = |name: &str| Term::app(Term::ty_app(q.clone(), e.clone()), Term::cnst(name));
    let subject = Term::apps(Term::ty_app(and, e.clone()), [lift("d"), lift("j")]);
    let sentence = Term::app(Term::cnst("meet"), subject);
    println!("redex : {}", pretty(&sentence));

    let nf = normalize(&sig, &sentence)?;
    println!("normal: {}", pretty(&nf));
    println!("        {}", pretty_unicode(&nf));
    println!("type  : {}", type_of(&ctx, &nf)?);

    // Polymorphic constants are instantiated implicitly by the parser.
    let card = parse_term(&sig, "|lam y:e. (y == j) || (y == d)| > 1")?;
    println!("{} : {}", pretty(&card), type_of(&ctx, &card)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
