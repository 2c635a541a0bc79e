// Checking readings in finite models: a hand-written model, entailment
// by enumeration, a countermodel, and the shipped oracle suites.

use std::error::Error;

use plurals::lexicon::Lexicon;
use plurals::model::{eval, find_countermodel, oracle, parse_model, render_model, Bounds};
use plurals::readings::{enumerate, Options};
use plurals::syntax::parse_term;

const MODEL: &str = "
dom e = jimi dusty mary
interp j = jimi
interp d = dusty
interp m = mary
# one piano lifted by each of them alone
interp piano = {jimi} {dusty}
";

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let lex = Lexicon::english();
    let sig = lex.signature();
    let model = parse_model(MODEL, sig)?;
    let readings = enumerate("Jimi and Dusty lifted a piano", &lex, Options::default())?;
    for r in &readings {
        println!("{:<5} in the model: {}", eval(&model, sig, &r.formula)?, r.formula);
    }

    // The covering reading does not entail the collective one.
    let distinct = parse_term(sig, "not (j == d)")?;
    let cov = plurals::kernel::Term::and(distinct, readings[1].formula.clone());
    if let Some(m) = find_countermodel(sig, Bounds { e: 2, g: 0 }, &["j", "d", "piano"], &cov, &readings[0].formula)? {
        print!("\ncountermodel:\n{}", render_model(&m, sig));
    }

    for suite in oracle::SUITES {
        let report = oracle::run(suite, Bounds::default()).expect("known suite");
        println!("\n{report}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
