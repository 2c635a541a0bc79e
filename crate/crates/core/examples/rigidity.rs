// Facet coercions on a town name. A rigid coercion excludes any other
// coercion on the same word, so "Liverpool" never denotes the people of
// its club, while "Anfield" may be the people of a place.

use std::error::Error;

use plurals::lexicon::Lexicon;
use plurals::readings::{enumerate, trace_to_string, Options};

const TOWN: &str = r#"
const l : e
const people : e -> e
const place : e -> e
const club : e -> e
const voted : e -> t

coercion f_p rigid=false scope=local : lam x:e. people x
coercion f_i rigid=false scope=local : lam x:e. place x
coercion f_c rigid=true  scope=local : lam x:e. club x

entry "Liverpool" : np = l with [f_p, f_c]
entry "Anfield"   : np = l with [f_p, f_i]
entry "voted"     : np\s = lam x:e. voted x
"#;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let lex = Lexicon::parse(TOWN)?;
    for sentence in ["Liverpool voted", "Anfield voted"] {
        println!("{sentence} (two coercions per word allowed)");
        for r in enumerate(sentence, &lex, Options { budget: 2 })? {
            println!("    {:<28} {}", r.formula.to_string(), trace_to_string(&r.trace));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
