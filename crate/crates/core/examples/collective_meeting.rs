// "Jimi and Dusty met" and the singular/plural contrasts around it.

use std::error::Error;

use plurals::lexicon::Lexicon;
use plurals::readings::{enumerate, trace_to_string, Options};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let lex = Lexicon::english();
    for sentence in [
        "Jimi and Dusty met",
        "Jimi met",
        "the student met",
        "the students met",
        "the committee met",
        "each student met",
        "each student sneezed",
    ] {
        let readings = enumerate(sentence, &lex, Options::default())?;
        println!("{sentence}");
        if readings.is_empty() {
            println!("    no well-typed reading");
        }
        for r in &readings {
            let labels: Vec<&str> = r.labels.iter().map(|l| l.name()).collect();
            let status = if r.blocked { "blocked" } else { "ok" };
            println!("    [{}] {status}: {}", labels.join(","), r.formula);
            if !r.trace.is_empty() {
                println!("        via {}", trace_to_string(&r.trace));
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
