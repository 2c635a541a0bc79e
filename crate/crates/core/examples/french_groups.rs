// Group nouns in French: "le comité s'est réuni" and the two readings of
// "les comités se sont réunis", with and without union group lifting.

use std::error::Error;

use plurals::lexicon::Lexicon;
use plurals::readings::{enumerate, trace_to_string, Options};

fn show(lex: &Lexicon, sentence: &str) -> Result<(), Box<dyn Error>> {
    println!("{sentence}");
    for (i, r) in enumerate(sentence, lex, Options::default())?.iter().enumerate() {
        let labels: Vec<&str> = r.labels.iter().map(|l| l.name()).collect();
        println!("  R{} [{}] via {}", i + 1, labels.join(","), trace_to_string(&r.trace));
        println!("     {}", r.formula);
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let fr = Lexicon::french();
    show(&fr, "le comité s'est réuni")?;
    show(&fr, "les comités se sont réunis")?;

    println!("\nwith union group lifting:");
    show(&fr.with_union_groups(), "les comités se sont réunis")?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
