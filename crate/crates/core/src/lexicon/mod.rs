//! Lexicons: entries pairing token sequences with a category and a term,
//! named coercions, and derived plural nouns.
//!
//! Loading is staged. [`load`] only parses; [`validate`] type checks and
//! resolves names, returning diagnostics as data; [`Lexicon::build`]
//! succeeds exactly when there are no diagnostics.

mod source;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use log::debug;
use thiserror::Error;

use crate::grammar::Cat;
use crate::kernel::{naive::naive_type_of, normalize, type_of, KernelError, Term, Type, TypingContext};
use crate::logic::{Signature, SignatureError};
use crate::syntax::{elaborate, parse_term, SyntaxError};

pub use source::{load, Decl, DeclKind, LexiconSource, Scope};

#[derive(Debug, Clone, PartialEq)]
pub struct Coercion {
    pub name: String,
    pub term: Term,
    pub ty: Type,
    pub rigid: bool,
    pub scope: Scope,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexEntry {
    pub tokens: Vec<String>,
    pub cat: Cat,
    pub term: Term,
    pub ty: Type,
    pub coercions: Vec<String>,
}

impl LexEntry {
    pub fn form(&self) -> String {
        self.tokens.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagnosticKind {
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("type checkers disagree: {kernel} vs {naive}")]
    CheckersDisagree { kernel: String, naive: String },
    #[error("coercion type {0} is not functional")]
    NotFunctional(Type),
    #[error("unknown coercion `{0}`")]
    UnknownCoercion(String),
    #[error("coercion `{0}` is declared twice")]
    DuplicateCoercion(String),
    #[error(transparent)]
    Plural(#[from] PluralError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub line: usize,
    pub subject: String,
    pub kind: DiagnosticKind,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}: {}", self.line, self.subject, self.kind)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PluralError {
    #[error("`{0}` is not a noun")]
    NotANoun(String),
    #[error("`{noun}` has type {ty}, not a predicate over a sort")]
    NotPredicative { noun: String, ty: Type },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LexiconError {
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error("{} problem(s), first: {}", .0.len(), .0[0])]
    Invalid(Vec<Diagnostic>),
}

/// The plural suffix `-s`, used when a lexicon does not define its own.
pub const PLURAL_SUFFIX: &str = "Lam a. lam P:(a -> t). lam Q:(a -> t). |Q| > 1 && (all x:a. Q x => P x)";

const ENGLISH: &str = include_str!("../../lexicons/english.lex");
const FRENCH: &str = include_str!("../../lexicons/french.lex");
const JAPANESE: &str = include_str!("../../lexicons/japanese.lex");

/// Source text of a shipped lexicon by name (`english`, `french`,
/// `japanese`, with or without `.lex`).
pub fn shipped_source(name: &str) -> Option<&'static str> {
    match name.strip_suffix(".lex").unwrap_or(name) {
        "english" => Some(ENGLISH),
        "french" => Some(FRENCH),
        "japanese" => Some(JAPANESE),
        _ => None,
    }
}

#[derive(Debug, Clone)]
pub struct Lexicon {
    sig: Signature,
    entries: Vec<LexEntry>,
    coercions: BTreeMap<String, Coercion>,
    index: HashMap<Vec<String>, Vec<usize>>,
}

/// Runs every check and reports all problems.
pub fn validate(src: &LexiconSource) -> Vec<Diagnostic> {
    match elaborate_source(src) {
        Ok(_) => Vec::new(),
        Err(diags) => diags,
    }
}

fn check_term(sig: &Signature, term: &Term) -> Result<Type, DiagnosticKind> {
    let ty = type_of(&TypingContext::new(sig), term)?;
    let naive = naive_type_of(sig, term)?;
    if !ty.alpha_eq(&naive) {
        return Err(DiagnosticKind::CheckersDisagree {
            kernel: ty.to_string(),
            naive: naive.to_string(),
        });
    }
    Ok(ty)
}

fn elaborate_source(src: &LexiconSource) -> Result<Lexicon, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut sig = Signature::builtin();
    let mut report = |line: usize, subject: &str, kind: DiagnosticKind| {
        diags.push(Diagnostic {
            line,
            subject: subject.to_string(),
            kind,
        })
    };

    for d in &src.decls {
        if let DeclKind::Sort(name) = &d.kind {
            if let Err(e) = sig.declare_sort(name) {
                report(d.line, name, e.into());
            }
        }
    }
    for d in &src.decls {
        if let DeclKind::Const { name, ty } = &d.kind {
            if let Err(e) = sig.declare_const(name, ty.clone()) {
                report(d.line, name, e.into());
            }
        }
    }

    let mut coercions = BTreeMap::new();
    for d in &src.decls {
        let DeclKind::Coercion { name, rigid, scope, term } = &d.kind else {
            continue;
        };
        if coercions.contains_key(name) {
            report(d.line, name, DiagnosticKind::DuplicateCoercion(name.clone()));
            continue;
        }
        let checked = elaborate(&TypingContext::new(&sig), term)
            .map_err(DiagnosticKind::from)
            .and_then(|t| check_term(&sig, &t).map(|ty| (t, ty)));
        match checked {
            Ok((t, ty)) if ty.strip_pis().1.as_arrow().is_some() => {
                coercions.insert(
                    name.clone(),
                    Coercion {
                        name: name.clone(),
                        term: t,
                        ty,
                        rigid: *rigid,
                        scope: *scope,
                    },
                );
            }
            Ok((_, ty)) => report(d.line, name, DiagnosticKind::NotFunctional(ty)),
            Err(e) => report(d.line, name, e),
        }
    }

    let mut entries = Vec::new();
    for d in &src.decls {
        let DeclKind::Entry { tokens, cat, term, coercions: listed } = &d.kind else {
            continue;
        };
        let subject = format!("\"{}\"", tokens.join(" "));
        for c in listed {
            // Names that failed to check were already reported.
            if !coercions.contains_key(c) && !declares_coercion(src, c) {
                report(d.line, &subject, DiagnosticKind::UnknownCoercion(c.clone()));
            }
        }
        let checked = elaborate(&TypingContext::new(&sig), term)
            .map_err(DiagnosticKind::from)
            .and_then(|t| check_term(&sig, &t).map(|ty| (t, ty)));
        match checked {
            Ok((t, ty)) => entries.push(LexEntry {
                tokens: tokens.clone(),
                cat: cat.clone(),
                term: t,
                ty,
                coercions: listed.clone(),
            }),
            Err(e) => report(d.line, &subject, e),
        }
    }

    let mut lex = Lexicon {
        sig,
        entries,
        coercions,
        index: HashMap::new(),
    };
    lex.reindex();

    let overrides: Vec<(usize, &Vec<String>, &Vec<String>)> = src
        .decls
        .iter()
        .filter_map(|d| match &d.kind {
            DeclKind::Plural { noun, form } => Some((d.line, noun, form)),
            _ => None,
        })
        .collect();
    let mut derived = Vec::new();
    for (line, noun, form) in &overrides {
        let subject = format!("\"{}\"", noun.join(" "));
        let nouns: Vec<&LexEntry> = lex.lookup(noun).into_iter().filter(|e| e.cat == Cat::N).collect();
        if nouns.is_empty() {
            report(*line, &subject, PluralError::NotANoun(noun.join(" ")).into());
        }
        for e in nouns {
            match lex.derive_plural(e) {
                Ok(mut p) => {
                    p.tokens = (*form).clone();
                    derived.push(p);
                }
                Err(err) => report(*line, &subject, err.into()),
            }
        }
    }
    for e in &lex.entries {
        if e.cat != Cat::N || overrides.iter().any(|(_, n, _)| **n == e.tokens) {
            continue;
        }
        if let Ok(p) = lex.derive_plural(e) {
            if lex.lookup(&p.tokens).iter().all(|x| x.cat != Cat::N) {
                derived.push(p);
            }
        }
    }
    lex.entries.extend(derived);
    lex.reindex();

    if diags.is_empty() {
        Ok(lex)
    } else {
        Err(diags)
    }
}

fn declares_coercion(src: &LexiconSource, name: &str) -> bool {
    src.decls
        .iter()
        .any(|d| matches!(&d.kind, DeclKind::Coercion { name: n, .. } if n == name))
}

impl Lexicon {
    /// Validates a loaded source into a lexicon.
    pub fn build(src: &LexiconSource) -> Result<Lexicon, LexiconError> {
        elaborate_source(src).map_err(LexiconError::Invalid)
    }

    /// Loads and validates lexicon text.
    pub fn parse(text: &str) -> Result<Lexicon, LexiconError> {
        Lexicon::build(&load(text)?)
    }

    /// A shipped lexicon by name; see [`shipped_source`].
    pub fn shipped(name: &str) -> Option<Lexicon> {
        let text = shipped_source(name)?;
        Some(Lexicon::parse(text).unwrap_or_else(|e| panic!("shipped lexicon {name} is invalid: {e}")))
    }

    pub fn english() -> Lexicon {
        Lexicon::shipped("english").expect("english lexicon")
    }

    pub fn french() -> Lexicon {
        Lexicon::shipped("french").expect("french lexicon")
    }

    pub fn japanese() -> Lexicon {
        Lexicon::shipped("japanese").expect("japanese lexicon")
    }

    fn reindex(&mut self) {
        self.index.clear();
        for (i, e) in self.entries.iter().enumerate() {
            self.index.entry(e.tokens.clone()).or_default().push(i);
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn entries(&self) -> &[LexEntry] {
        &self.entries
    }

    pub fn coercions(&self) -> impl Iterator<Item = &Coercion> {
        self.coercions.values()
    }

    pub fn coercion(&self, name: &str) -> Option<&Coercion> {
        self.coercions.get(name)
    }

    pub fn global_coercions(&self) -> impl Iterator<Item = &Coercion> {
        self.coercions.values().filter(|c| c.scope == Scope::Global)
    }

    /// All entries whose token sequence equals `tokens`.
    pub fn lookup<S: AsRef<str>>(&self, tokens: &[S]) -> Vec<&LexEntry> {
        let key: Vec<String> = tokens.iter().map(|t| t.as_ref().to_string()).collect();
        self.index
            .get(&key)
            .map(|ix| ix.iter().map(|&i| &self.entries[i]).collect())
            .unwrap_or_default()
    }

    /// Index of an entry in [`entries`](Self::entries).
    pub fn entry_index(&self, entry: &LexEntry) -> Option<usize> {
        self.index
            .get(&entry.tokens)?
            .iter()
            .copied()
            .find(|&i| self.entries[i] == *entry)
    }

    /// Token sequences of all entries.
    pub fn forms(&self) -> impl Iterator<Item = &Vec<String>> {
        self.index.keys()
    }

    /// Length of the longest multi-token entry.
    pub fn max_form_len(&self) -> usize {
        self.index.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Replaces the term of coercion `name`, re-checking it.
    pub fn replace_coercion(&mut self, name: &str, term: &str) -> Result<(), LexiconError> {
        let t = parse_term(&self.sig, term).map_err(|e| {
            LexiconError::Invalid(vec![Diagnostic {
                line: 0,
                subject: name.to_string(),
                kind: match e {
                    crate::syntax::ParseError::Kernel(k) => k.into(),
                    crate::syntax::ParseError::Syntax(s) => {
                        KernelError::UnboundName(s.to_string()).into()
                    }
                },
            }])
        })?;
        let ty = check_term(&self.sig, &t).map_err(|kind| {
            LexiconError::Invalid(vec![Diagnostic {
                line: 0,
                subject: name.to_string(),
                kind,
            }])
        })?;
        if let Some(c) = self.coercions.get_mut(name) {
            c.term = t;
            c.ty = ty;
        }
        Ok(())
    }

    /// Switches `grpflat` from the universal to the existential (union)
    /// reading of a set of groups.
    pub fn with_union_groups(mut self) -> Lexicon {
        if self.coercions.contains_key("grpflat") {
            self.replace_coercion(
                "grpflat",
                "lam G:(g -> t). lam x:e. some y:g. G y && member_of x y",
            )
            .expect("union variant of grpflat type checks");
        }
        self
    }

    fn plural_suffix(&self) -> Term {
        let own = self
            .lookup(&["-s"])
            .into_iter()
            .find(|e| matches!(e.ty, Type::Pi(..)))
            .map(|e| e.term.clone());
        own.unwrap_or_else(|| parse_term(&self.sig, PLURAL_SUFFIX).expect("plural suffix parses"))
    }

    /// The plural of a noun entry: `-s{σ}` applied to a predicate over σ.
    pub fn derive_plural(&self, entry: &LexEntry) -> Result<LexEntry, PluralError> {
        if entry.cat != Cat::N {
            return Err(PluralError::NotANoun(entry.form()));
        }
        let sort = match entry.ty.as_arrow() {
            Some((dom @ Type::Base(_), cod)) if cod.is_prop() => dom.clone(),
            _ => {
                return Err(PluralError::NotPredicative {
                    noun: entry.form(),
                    ty: entry.ty.clone(),
                })
            }
        };
        let applied = Term::app(Term::ty_app(self.plural_suffix(), sort), entry.term.clone());
        let term = normalize(&self.sig, &applied).map_err(|_| PluralError::NotPredicative {
            noun: entry.form(),
            ty: entry.ty.clone(),
        })?;
        let ty = type_of(&TypingContext::new(&self.sig), &term).expect("normal form type checks");
        let mut tokens = entry.tokens.clone();
        if let Some(last) = tokens.last_mut() {
            last.push('s');
        }
        debug!("derived plural {} : {}", tokens.join(" "), ty);
        Ok(LexEntry {
            tokens,
            cat: Cat::N,
            term,
            ty,
            coercions: entry.coercions.clone(),
        })
    }
}
