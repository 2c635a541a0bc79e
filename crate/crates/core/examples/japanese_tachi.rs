// The Japanese plural marker "tachi" turns an individual into a group,
// whose members then meet collectively.

use std::error::Error;

use plurals::lexicon::Lexicon;
use plurals::logic::pretty_unicode;
use plurals::readings::{enumerate, Options};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ja = Lexicon::japanese();
    for entry in ja.entries() {
        println!("{:<14} {:<8} {}", entry.form(), entry.cat.to_string(), entry.term);
    }
    let readings = enumerate("JIMI tachi ha saikai shita", &ja, Options::default())?;
    for r in &readings {
        println!("\n{}\n{}", r.derivation, pretty_unicode(&r.formula));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
