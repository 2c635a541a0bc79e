//! Composition of meanings over derivations, with lexical coercions.
//!
//! Each leaf contributes its bare term and the term under each coercion
//! its entry lists. At an application node the functor is applied to the
//! argument directly; only when that fails are the argument's pending
//! coercions (listed by a word below it but not applicable at the word
//! itself) and the global coercions tried on the argument, one layer each.
//! Root candidates of type `t` become readings after the rigidity filter,
//! normalization, simplification and deduplication up to α-equivalence.

use std::collections::BTreeSet;
use std::fmt;

use log::debug;
use thiserror::Error;

use crate::grammar::{parse, tokenize, GrammarError, Tree};
use crate::kernel::{instantiate_and_apply, normalize, type_of, Term, Type, TypingContext};
use crate::lexicon::{Coercion, LexEntry, Lexicon, Scope};
use crate::logic::{is_blocked, pretty, simplify_unchecked};

/// One use of a coercion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    /// Token positions the coercion applied to, half-open. Word-local
    /// coercions always cover a single token.
    pub site: (usize, usize),
    pub coercion: String,
    pub rigid: bool,
    pub global: bool,
}

impl Step {
    pub fn new(site: (usize, usize), c: &Coercion) -> Step {
        Step {
            site,
            coercion: c.name.clone(),
            rigid: c.rigid,
            global: c.scope == Scope::Global,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.site.1 == self.site.0 + 1 {
            write!(f, "{}@{}", self.coercion, self.site.0 + 1)
        } else {
            write!(f, "{}@{}-{}", self.coercion, self.site.0 + 1, self.site.1)
        }
    }
}

pub type Trace = Vec<Step>;

pub fn trace_to_string(trace: &[Step]) -> String {
    trace.iter().map(Step::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    /// Normal form.
    pub term: Term,
    pub ty: Type,
    pub trace: Trace,
    /// Word-local coercions, by token, that did not apply at their word.
    pub pending: Vec<(usize, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Collective,
    Distributive,
    Covering,
    GroupLift,
}

impl Label {
    pub fn name(self) -> &'static str {
        match self {
            Label::Collective => "collective",
            Label::Distributive => "distributive",
            Label::Covering => "covering",
            Label::GroupLift => "group-lift",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reading {
    /// Normalized and simplified, of type `t`.
    pub formula: Term,
    pub trace: Trace,
    pub labels: BTreeSet<Label>,
    pub blocked: bool,
    /// Bracketed derivation the reading came from.
    pub derivation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReadingsError {
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Maximum number of word-local coercions per token occurrence.
    pub budget: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { budget: 1 }
    }
}

/// False iff some occurrence carries two or more distinct coercions of
/// which at least one is rigid.
pub fn rigidity_check(trace: &[Step]) -> bool {
    let sites: BTreeSet<(usize, usize)> = trace.iter().map(|s| s.site).collect();
    sites.into_iter().all(|site| {
        let here: Vec<&Step> = trace.iter().filter(|s| s.site == site).collect();
        let distinct: BTreeSet<&str> = here.iter().map(|s| s.coercion.as_str()).collect();
        distinct.len() < 2 || here.iter().all(|s| !s.rigid)
    })
}

/// Labels from the coercions used: `star` distributive, `c` covering,
/// `hash` or no predicate coercion collective, plus group-lift for any
/// global coercion.
pub fn label(trace: &[Step]) -> BTreeSet<Label> {
    let mut out = BTreeSet::new();
    for s in trace {
        match s.coercion.as_str() {
            "star" | "*" => {
                out.insert(Label::Distributive);
            }
            "c" => {
                out.insert(Label::Covering);
            }
            "hash" | "#" => {
                out.insert(Label::Collective);
            }
            _ => {}
        }
        if s.global {
            out.insert(Label::GroupLift);
        }
    }
    if !out.iter().any(|l| matches!(l, Label::Distributive | Label::Covering | Label::Collective)) {
        out.insert(Label::Collective);
    }
    out
}

struct Composer<'l> {
    lex: &'l Lexicon,
    budget: usize,
}

impl Composer<'_> {
    fn ctx(&self) -> TypingContext<'_> {
        TypingContext::new(self.lex.signature())
    }

    /// `f a` with type instantiation, normalized.
    fn apply(&self, f: &Term, a: &Term) -> Option<(Term, Type)> {
        let ctx = self.ctx();
        let applied = instantiate_and_apply(&ctx, f, a).ok()?;
        let nf = normalize(self.lex.signature(), &applied).ok()?;
        let ty = type_of(&ctx, &nf).ok()?;
        Some((nf, ty))
    }

    fn leaf(&self, entry: &LexEntry, token: usize) -> Vec<Candidate> {
        let coercions: Vec<&Coercion> = entry
            .coercions
            .iter()
            .filter_map(|n| self.lex.coercion(n))
            .collect();
        let mut out = Vec::new();
        let mut frontier = vec![Candidate {
            term: entry.term.clone(),
            ty: entry.ty.clone(),
            trace: Vec::new(),
            pending: Vec::new(),
        }];
        for depth in 0..=self.budget {
            let mut next = Vec::new();
            for mut cand in frontier {
                for c in &coercions {
                    if cand.trace.iter().any(|s| s.coercion == c.name) {
                        continue;
                    }
                    match self.apply(&c.term, &cand.term) {
                        Some((term, ty)) if depth < self.budget => {
                            let mut trace = cand.trace.clone();
                            trace.push(Step::new((token, token + 1), c));
                            next.push(Candidate {
                                term,
                                ty,
                                trace,
                                pending: Vec::new(),
                            });
                        }
                        Some(_) => {}
                        None => {
                            debug!("coercion {} does not apply to {}", c.name, cand.term);
                            if depth < self.budget {
                                cand.pending.push((token, c.name.clone()));
                            }
                        }
                    }
                }
                out.push(cand);
            }
            frontier = next;
        }
        out
    }

    fn uses_at(trace: &[Step], token: usize) -> usize {
        trace.iter().filter(|s| s.site == (token, token + 1)).count()
    }

    fn combine(&self, f: &Candidate, a: &Candidate, arg_span: (usize, usize)) -> Vec<Candidate> {
        let build = |term: Term, ty: Type, extra: Option<Step>| {
            let mut trace = f.trace.clone();
            trace.extend(a.trace.iter().cloned());
            trace.extend(extra);
            let pending = f
                .pending
                .iter()
                .chain(&a.pending)
                .filter(|(tok, name)| {
                    let used = trace.iter().any(|s| s.site == (*tok, tok + 1) && s.coercion == *name);
                    !used && Self::uses_at(&trace, *tok) < self.budget
                })
                .cloned()
                .collect();
            Candidate {
                term,
                ty,
                trace,
                pending,
            }
        };
        if let Some((term, ty)) = self.apply(&f.term, &a.term) {
            return vec![build(term, ty, None)];
        }
        let mut out = Vec::new();
        for (tok, name) in &a.pending {
            let Some(c) = self.lex.coercion(name) else { continue };
            let Some((coerced, _)) = self.apply(&c.term, &a.term) else { continue };
            if let Some((term, ty)) = self.apply(&f.term, &coerced) {
                out.push(build(term, ty, Some(Step::new((*tok, tok + 1), c))));
            }
        }
        for g in self.lex.global_coercions() {
            let Some((coerced, _)) = self.apply(&g.term, &a.term) else { continue };
            if let Some((term, ty)) = self.apply(&f.term, &coerced) {
                out.push(build(term, ty, Some(Step::new(arg_span, g))));
            }
        }
        out
    }

    fn compose(&self, tree: &Tree) -> Vec<Candidate> {
        match tree {
            Tree::Leaf { token, entry, .. } => self.leaf(&self.lex.entries()[*entry], *token),
            Tree::Forward { functor, arg, .. } | Tree::Backward { functor, arg, .. } => {
                let fs = self.compose(functor);
                let args = self.compose(arg);
                let span = arg.span();
                let mut out = Vec::new();
                for f in &fs {
                    for a in &args {
                        out.extend(self.combine(f, a, span));
                    }
                }
                out
            }
        }
    }
}

/// Candidates for one lexical entry at token position `token`: the bare
/// term and the term under up to `budget` of its listed coercions.
pub fn leaf_candidates(lex: &Lexicon, entry: &LexEntry, token: usize, budget: usize) -> Vec<Candidate> {
    Composer { lex, budget }.leaf(entry, token)
}

/// All candidate meanings of a derivation.
pub fn compose(tree: &Tree, lex: &Lexicon, budget: usize) -> Vec<Candidate> {
    Composer { lex, budget }.compose(tree)
}

/// Turns root candidates into readings: rigidity filter, simplification,
/// blocking, deduplication and ordering.
pub fn readings_from(candidates: Vec<(Candidate, String)>) -> Vec<Reading> {
    let mut raw: Vec<(Candidate, String)> = candidates
        .into_iter()
        .filter(|(c, _)| c.ty.is_prop() && rigidity_check(&c.trace))
        .collect();
    raw.sort_by_cached_key(|(c, _)| (c.trace.len(), trace_to_string(&c.trace)));
    let mut out: Vec<Reading> = Vec::new();
    for (cand, derivation) in raw {
        let formula = simplify_unchecked(&cand.term);
        if out.iter().any(|r| r.formula.alpha_eq(&formula)) {
            continue;
        }
        out.push(Reading {
            blocked: is_blocked(&formula),
            labels: label(&cand.trace),
            formula,
            trace: cand.trace,
            derivation,
        });
    }
    out.sort_by_cached_key(|r| (r.blocked, r.trace.len(), pretty(&r.formula)));
    out
}

/// All readings of a sentence.
pub fn enumerate(sentence: &str, lex: &Lexicon, opts: Options) -> Result<Vec<Reading>, ReadingsError> {
    let tokens = tokenize(sentence, lex)?;
    let trees = parse(&tokens, lex)?;
    let mut candidates = Vec::new();
    for tree in &trees {
        let derivation = tree.to_string();
        for c in compose(tree, lex, opts.budget) {
            candidates.push((c, derivation.clone()));
        }
    }
    debug!("{} root candidates over {} derivations", candidates.len(), trees.len());
    Ok(readings_from(candidates))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(token: usize, name: &str, rigid: bool) -> Step {
        Step {
            site: (token, token + 1),
            coercion: name.into(),
            rigid,
            global: false,
        }
    }

    #[test]
    fn rigid_plus_other_is_rejected() {
        assert!(!rigidity_check(&[step(3, "f_c", true), step(3, "f_p", false)]));
    }

    #[test]
    fn two_flexible_coercions_pass() {
        assert!(rigidity_check(&[step(3, "f_i", false), step(3, "f_p", false)]));
        assert!(rigidity_check(&[]));
    }

    #[test]
    fn rigid_alone_or_elsewhere_passes() {
        assert!(rigidity_check(&[step(3, "f_c", true)]));
        assert!(rigidity_check(&[step(3, "f_c", true), step(4, "f_p", false)]));
    }

    #[test]
    fn labels() {
        assert_eq!(label(&[step(0, "c", false)]), [Label::Covering].into());
        assert_eq!(label(&[]), [Label::Collective].into());
        let lift = Step {
            site: (0, 2),
            coercion: "grpflat".into(),
            rigid: false,
            global: true,
        };
        assert_eq!(label(&[lift]), [Label::Collective, Label::GroupLift].into());
    }

    #[test]
    fn john_q() {
        let lex = Lexicon::english();
        let entry = lex.lookup(&["Jimi"])[0];
        let cands = leaf_candidates(&lex, entry, 0, 1);
        let shown: Vec<String> = cands.iter().map(|c| format!("{} : {}", pretty(&c.term), c.ty)).collect();
        assert_eq!(shown, ["j : e", "lam y:e. y == j : e -> t"]);
    }

    #[test]
    fn met_hash() {
        let lex = Lexicon::english();
        let entry = lex.lookup(&["met"])[0];
        let cands = leaf_candidates(&lex, entry, 0, 1);
        assert_eq!(cands.len(), 2);
        assert_eq!(cands[1].ty.to_string(), "((e -> t) -> t) -> t");
    }

    #[test]
    fn zero_budget_is_bare() {
        let lex = Lexicon::english();
        let entry = lex.lookup(&["sneezed"])[0];
        assert_eq!(leaf_candidates(&lex, entry, 0, 0).len(), 1);
    }
}
