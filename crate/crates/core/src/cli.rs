//! Command-line front end. Everything runs through [`run`], which takes
//! the arguments and two writers and returns the exit code, so the binary
//! is a one-liner and tests need no subprocess.
//!
//! Exit codes: 0 success; 1 check failed; 2 every reading blocked (or
//! none at all); 3 no parse; 4 unknown token; 5 bad input (arguments,
//! files, formula syntax, unknown suite).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::grammar::GrammarError;
use crate::kernel::Term;
use crate::lexicon::{load, shipped_source, validate, Lexicon, LexiconError};
use crate::logic::{builtin_names, pretty, pretty_unicode, Signature};
use crate::model::{eval, find_countermodel, oracle, parse_model, render_model, Bounds};
use crate::readings::{enumerate, trace_to_string, Options, Reading, ReadingsError};
use crate::syntax::parse_term;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_BLOCKED: i32 = 2;
pub const EXIT_NO_PARSE: i32 = 3;
pub const EXIT_UNKNOWN_TOKEN: i32 = 4;
pub const EXIT_INPUT: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Records,
    Plain,
}

#[derive(Debug, Parser)]
#[command(name = "plurals", version, about = "Readings of plural sentences as higher-order formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Lexicon file, or the name of a shipped lexicon (english, french, japanese).
    #[arg(long, global = true, default_value = "english")]
    lexicon: String,
    /// Word-local coercions allowed per token occurrence.
    #[arg(long, global = true, default_value_t = 1)]
    budget: usize,
    /// Read group lifting as union (some ... &&) instead of (all ... =>).
    #[arg(long, global = true)]
    union_groups: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Records)]
    format: Format,
    /// Model file for `eval`.
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    /// Domain sizes for model enumeration.
    #[arg(long, global = true, default_value = "e=3,g=2")]
    bounds: Bounds,
    /// Print formulas with λ, ∀, ∧ and friends.
    #[arg(long, global = true)]
    unicode: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every reading of a sentence.
    Analyze { sentence: String },
    /// Load and validate the lexicon.
    CheckLexicon,
    /// Evaluate a closed formula in a model, or check it in every model within the bounds.
    Eval { formula: String },
    /// Run an oracle suite (covering, member-oplus, simplify).
    Oracle { suite: String },
}

/// Settings shared by the subcommands.
#[derive(Debug, Clone)]
pub struct Config {
    pub lexicon: String,
    pub budget: usize,
    pub union_groups: bool,
    pub format: Format,
    pub model: Option<PathBuf>,
    pub bounds: Bounds,
    pub unicode: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            lexicon: "english".into(),
            budget: 1,
            union_groups: false,
            format: Format::Records,
            model: None,
            bounds: Bounds::default(),
            unicode: false,
        }
    }
}

impl Config {
    fn show(&self, t: &Term) -> String {
        if self.unicode {
            pretty_unicode(t)
        } else {
            pretty(t)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let _ = write!(err, "{e}");
            return EXIT_INPUT;
        }
    };
    let config = Config {
        lexicon: cli.lexicon,
        budget: cli.budget,
        union_groups: cli.union_groups,
        format: cli.format,
        model: cli.model,
        bounds: cli.bounds,
        unicode: cli.unicode,
    };
    match cli.command {
        Command::Analyze { sentence } => cmd_analyze(&config, &sentence, out, err),
        Command::CheckLexicon => cmd_check_lexicon(&config, out, err),
        Command::Eval { formula } => cmd_eval(&config, &formula, out, err),
        Command::Oracle { suite } => cmd_oracle(&config, &suite, out, err),
    }
}

fn lexicon_text(name: &str) -> Result<String, String> {
    match fs::read_to_string(name) {
        Ok(text) => Ok(text),
        Err(e) => shipped_source(name)
            .map(str::to_string)
            .ok_or_else(|| format!("cannot read lexicon {name}: {e}")),
    }
}

/// The configured lexicon, or the exit code and message for why not.
pub fn load_lexicon(config: &Config) -> Result<Lexicon, (i32, String)> {
    let text = lexicon_text(&config.lexicon).map_err(|m| (EXIT_INPUT, m))?;
    let lex = Lexicon::parse(&text).map_err(|e| match e {
        LexiconError::Syntax(s) => (EXIT_INPUT, format!("{}: {s}", config.lexicon)),
        LexiconError::Invalid(_) => (EXIT_INPUT, format!("{}: {e} (run check-lexicon)", config.lexicon)),
    })?;
    Ok(if config.union_groups { lex.with_union_groups() } else { lex })
}

fn record(config: &Config, i: usize, r: &Reading) -> String {
    let labels: Vec<&str> = r.labels.iter().map(|l| l.name()).collect();
    let status = if r.blocked { "blocked" } else { "ok" };
    let formula = config.show(&r.formula);
    match config.format {
        Format::Records => format!("R{}\t{}\t{status}\t{formula}", i + 1, labels.join(",")),
        Format::Plain => {
            let trace = if r.trace.is_empty() { "-".to_string() } else { trace_to_string(&r.trace) };
            format!(
                "R{} ({}{}) {formula}\n    coercions: {trace}\n    derivation: {}",
                i + 1,
                labels.join(", "),
                if r.blocked { ", blocked" } else { "" },
                r.derivation
            )
        }
    }
}

pub fn cmd_analyze(config: &Config, sentence: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let lex = match load_lexicon(config) {
        Ok(l) => l,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return code;
        }
    };
    let readings = match enumerate(sentence, &lex, Options { budget: config.budget }) {
        Ok(r) => r,
        Err(ReadingsError::Grammar(e)) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                GrammarError::UnknownToken { .. } => EXIT_UNKNOWN_TOKEN,
                GrammarError::NoParse => EXIT_NO_PARSE,
            };
        }
    };
    if readings.is_empty() {
        let _ = writeln!(err, "NoReading: no well-typed reading of \"{sentence}\"");
        return EXIT_BLOCKED;
    }
    for (i, r) in readings.iter().enumerate() {
        let _ = writeln!(out, "{}", record(config, i, r));
    }
    if readings.iter().all(|r| r.blocked) {
        let _ = writeln!(err, "every reading is blocked");
        EXIT_BLOCKED
    } else {
        EXIT_OK
    }
}

pub fn cmd_check_lexicon(config: &Config, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match lexicon_text(&config.lexicon) {
        Ok(t) => t,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_INPUT;
        }
    };
    let src = match load(&text) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "{}: syntax error at {e}", config.lexicon);
            return EXIT_INPUT;
        }
    };
    let diags = validate(&src);
    if diags.is_empty() {
        let _ = writeln!(out, "{}: ok ({} declarations)", config.lexicon, src.decls.len());
        return EXIT_OK;
    }
    for d in &diags {
        let _ = writeln!(out, "{}: {d}", config.lexicon);
    }
    EXIT_FAILED
}

fn vocabulary(sig: &Signature, f: &Term) -> Vec<String> {
    let builtins = builtin_names();
    f.constants()
        .into_iter()
        .filter(|c| !builtins.contains(&c.as_str()) && sig.lookup(c).is_some())
        .collect()
}

pub fn cmd_eval(config: &Config, formula: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let lex = match load_lexicon(config) {
        Ok(l) => l,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return code;
        }
    };
    let sig = lex.signature();
    let f = match parse_term(sig, formula) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let result = match &config.model {
        Some(path) => {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
                    return EXIT_INPUT;
                }
            };
            let m = match parse_model(&text, sig) {
                Ok(m) => m,
                Err(e) => {
                    let _ = writeln!(err, "error: {}: {e}", path.display());
                    return EXIT_INPUT;
                }
            };
            eval(&m, sig, &f)
        }
        None => {
            let vocab = vocabulary(sig, &f);
            let vocab: Vec<&str> = vocab.iter().map(String::as_str).collect();
            find_countermodel(sig, config.bounds, &vocab, &Term::truth(true), &f).map(|counter| match counter {
                None => true,
                Some(m) => {
                    let _ = write!(err, "countermodel:\n{}", render_model(&m, sig));
                    false
                }
            })
        }
    };
    match result {
        Ok(b) => {
            let _ = writeln!(out, "{b}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILED
        }
    }
}

pub fn cmd_oracle(config: &Config, suite: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(report) = oracle::run(suite, config.bounds) else {
        let _ = writeln!(err, "error: unknown suite `{suite}` (known: {})", oracle::SUITES.join(", "));
        return EXIT_INPUT;
    };
    let _ = writeln!(out, "{report}");
    for c in report.checks.iter().filter(|c| !c.passed()) {
        if let Some(w) = &c.witness {
            let _ = writeln!(err, "{}:\n{w}", c.name);
        }
    }
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("plurals").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn analyze_records() {
        let (code, out, _) = run_args(&["analyze", "--lexicon", "english.lex", "Jimi and Dusty met"]);
        assert_eq!(code, 0);
        assert_eq!(out, "R1\tcollective\tok\tmeet(lam y:e. (y == j) || (y == d))\n");
    }

    #[test]
    fn analyze_unicode() {
        let (_, out, _) = run_args(&["analyze", "--unicode", "Jimi and Dusty met"]);
        assert_eq!(out, "R1\tcollective\tok\tmeet(λy:e. (y = j) ∨ (y = d))\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["analyze", "Jimi met"]).0, EXIT_BLOCKED);
        assert_eq!(run_args(&["analyze", "met Jimi"]).0, EXIT_NO_PARSE);
        let (code, out, _) = run_args(&["analyze", "Jimi danced"]);
        assert_eq!((code, out.as_str()), (EXIT_UNKNOWN_TOKEN, ""));
        assert_eq!(run_args(&["oracle", "nope"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["eval", "all x:e. x =="]).0, EXIT_INPUT);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_INPUT);
    }

    #[test]
    fn no_reading_is_reported() {
        let (code, out, err) = run_args(&["analyze", "each student met"]);
        assert_eq!(code, EXIT_BLOCKED);
        assert!(out.is_empty());
        assert!(err.contains("NoReading"));
    }

    #[test]
    fn eval_validity() {
        let (code, out, _) = run_args(&["eval", "--bounds", "e=2,g=1", "all x:e. x == x"]);
        assert_eq!((code, out.as_str()), (0, "true\n"));
        let (code, out, err) = run_args(&["eval", "--bounds", "e=2,g=0", "sneeze j"]);
        assert_eq!((code, out.as_str()), (0, "false\n"));
        assert!(err.contains("countermodel"));
    }

    #[test]
    fn shipped_lexicons_check() {
        for name in ["english", "french", "japanese"] {
            assert_eq!(run_args(&["check-lexicon", "--lexicon", name]).0, 0);
        }
        assert_eq!(run_args(&["check-lexicon", "--lexicon", "/no/such/file.lex"]).0, EXIT_INPUT);
    }

    #[test]
    fn french_committees() {
        let (code, out, _) = run_args(&["analyze", "--lexicon", "french", "les comités se sont réunis"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2);
    }
}
