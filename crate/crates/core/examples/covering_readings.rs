// Collective, covering and distributive readings, and how the coercion
// budget widens the search.

use std::error::Error;

use plurals::lexicon::Lexicon;
use plurals::readings::{enumerate, trace_to_string, Options};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let lex = Lexicon::english();
    for sentence in [
        "Jimi and Dusty lifted a piano",
        "Jimi and Dusty wrote a paper",
        "Jimi and Dusty were walking",
        "Jimi and Dusty and Mary sneezed",
    ] {
        println!("{sentence}");
        for r in enumerate(sentence, &lex, Options::default())? {
            let labels: Vec<&str> = r.labels.iter().map(|l| l.name()).collect();
            println!("    {:<13} {}", labels.join(","), r.formula);
            println!("    {:<13} {} in {}", "", trace_to_string(&r.trace), r.derivation);
        }
    }

    let sentence = "Jimi and Dusty met";
    for budget in 0..=2 {
        let n = enumerate(sentence, &lex, Options { budget })?.len();
        println!("budget {budget}: {n} reading(s) of \"{sentence}\"");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
