// Writing a lexicon from scratch, validating it, and reading its
// diagnostics when it is wrong.

use std::error::Error;

use plurals::lexicon::{load, validate, Lexicon};
use plurals::readings::{enumerate, Options};

const GOOD: &str = r#"
const a : e
const b : e
const gather : (e -> t) -> t

coercion q rigid=false scope=local : Lam x. lam u:x. lam v:x. v == u

entry "Ann"      : np = a with [q]
entry "Bea"      : np = b with [q]
entry "with"     : (np\np)/np = Lam x. lam P:(x -> t). lam Q:(x -> t). lam y:x. Q y || P y
entry "gathered" : np\s = lam P:(e -> t). |P| > 1 && gather P
"#;

const BAD: &str = r#"
const a : e
entry "Ann"      : np = a with [lift]
entry "gathered" : np\s = lam P:(e -> t). gather P
"#;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let lex = Lexicon::parse(GOOD)?;
    for r in enumerate("Ann with Bea gathered", &lex, Options::default())? {
        println!("{}", r.formula);
    }
    for d in validate(&load(BAD)?) {
        println!("{d}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
