mod common;

use plurals::grammar::{parse, tokenize};
use plurals::kernel::{normalize_unchecked, Strategy, Term, Type};
use plurals::lexicon::Lexicon;
use plurals::logic::{builtin_names, simplify_unchecked, Signature};
use plurals::model::{enumerate_models, eval, Bounds, FiniteModel, DEFAULT_MODEL_CAP};
use plurals::readings::compose;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_model(sig: &Signature, seed: u64) -> FiniteModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = rng.gen_range(1..=3);
    let g = rng.gen_range(1..=2);
    let mut m = FiniteModel::with_sizes(e, g);
    for grp in 0..g {
        let mask: u32 = rng.gen_range(0..(1 << e));
        m.set_members(grp, (0..e).filter(|i| mask & (1 << i) != 0));
    }
    for c in common::VOCAB {
        let values = m.elements(&sig.lookup(c).unwrap()).unwrap();
        let v = values[rng.gen_range(0..values.len())].clone();
        m.interpret(c, v);
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn eval_respects_normalization(f in common::formulas(5), seed in any::<u64>()) {
        let sig = common::signature();
        let m = random_model(&sig, seed);
        let nf = normalize_unchecked(&f, Strategy::HeadFirst);
        prop_assert_eq!(eval(&m, &sig, &f), eval(&m, &sig, &nf));
    }

    #[test]
    fn quantifier_duality(pseed in any::<u64>(), mseed in any::<u64>(), which in 0usize..3) {
        let sig = common::signature();
        let m = random_model(&sig, mseed);
        let a = [Type::e(), Type::g(), Type::pred(Type::e())][which].clone();
        let p = common::random_term_of(pseed, &Type::pred(a.clone()), 4);
        let all = Term::app(Term::ty_app(Term::cnst("forall"), a.clone()), p.clone());
        let not = |t: Term| Term::app(Term::cnst("not"), t);
        let body = not(Term::app(p, Term::var("u")));
        let dual = not(Term::exists("u", a, body));
        prop_assert_eq!(eval(&m, &sig, &all), eval(&m, &sig, &dual));
    }
}

fn vocabulary(f: &Term) -> Vec<String> {
    let builtins = builtin_names();
    f.constants().into_iter().filter(|c| !builtins.contains(&c.as_str()) && !c.chars().all(|d| d.is_ascii_digit())).collect()
}

/// Every model over the formula's vocabulary within the bounds in which
/// the named entities are pairwise distinct.
fn unique_name_models(sig: &Signature, f: &Term, bounds: Bounds) -> Vec<FiniteModel> {
    let vocab = vocabulary(f);
    let vocab: Vec<&str> = vocab.iter().map(String::as_str).collect();
    let names: Vec<&str> = vocab.iter().copied().filter(|c| sig.lookup(c) == Some(Type::e())).collect();
    let mut out = Vec::new();
    for e in 1..=bounds.e {
        for g in 0..=bounds.g {
            for m in enumerate_models(sig, Bounds { e, g }, &vocab, DEFAULT_MODEL_CAP).unwrap() {
                let atoms: Vec<_> = names.iter().map(|n| m.interpretation(n).cloned()).collect();
                let distinct = atoms.iter().enumerate().all(|(i, a)| !atoms[..i].contains(a));
                if distinct {
                    out.push(m);
                }
            }
        }
    }
    out
}

#[test]
fn eval_respects_simplify_on_golden_candidates() {
    let mut checked = 0;
    for (lexicon, sentence) in common::GOLDEN {
        let lex = Lexicon::shipped(lexicon).unwrap();
        let sig = lex.signature();
        let tokens = tokenize(sentence, &lex).unwrap();
        let Ok(trees) = parse(&tokens, &lex) else { continue };
        for tree in trees {
            for c in compose(&tree, &lex, 1).into_iter().filter(|c| c.ty.is_prop()) {
                let s = simplify_unchecked(&c.term);
                for m in unique_name_models(sig, &c.term, Bounds { e: 3, g: 1 }) {
                    assert_eq!(eval(&m, sig, &c.term), eval(&m, sig, &s), "{sentence}\n{m}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000, "only {checked} model checks");
}

#[test]
fn simplify_is_idempotent_on_golden_candidates() {
    for (lexicon, sentence) in common::GOLDEN {
        let lex = Lexicon::shipped(lexicon).unwrap();
        let tokens = tokenize(sentence, &lex).unwrap();
        let Ok(trees) = parse(&tokens, &lex) else { continue };
        for tree in trees {
            for c in compose(&tree, &lex, 2) {
                let once = simplify_unchecked(&c.term);
                assert!(simplify_unchecked(&once).alpha_eq(&once), "{sentence}");
            }
        }
    }
}

#[test]
fn meeting_reading_in_a_hand_built_model() {
    let lex = Lexicon::english();
    let text = "dom e = a b c\ninterp j = a\ninterp d = b\ninterp meet = {a b}\n";
    let m = plurals::model::parse_model(text, lex.signature()).unwrap();
    let r = plurals::readings::enumerate("Jimi and Dusty met", &lex, Default::default()).unwrap();
    assert!(eval(&m, lex.signature(), &r[0].formula).unwrap());
}

#[test]
fn member_and_member_of_agree() {
    let lex = Lexicon::japanese();
    let sig = lex.signature();
    let law = plurals::syntax::parse_term(sig, "all y:g. member y == (lam x:e. member_of x y)").unwrap();
    let mut seen = 0;
    for e in 1..=3 {
        for g in 0..=2 {
            for m in enumerate_models(sig, Bounds { e, g }, &[], DEFAULT_MODEL_CAP).unwrap() {
                assert!(eval(&m, sig, &law).unwrap());
                seen += 1;
            }
        }
    }
    // one model per membership relation: sum over e, g of (2^e)^g
    assert_eq!(seen, 7 + 21 + 73);
}
