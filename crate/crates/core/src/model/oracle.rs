//! Named oracle suites. Each runs a fixed battery of model-theoretic
//! checks and reports every one of them.

use std::fmt;

use super::{
    enumerate_models, eval, find_countermodel, render_model, Bounds, EvalError, FiniteModel, Value, DEFAULT_MODEL_CAP,
};
use crate::kernel::Term;
use crate::lexicon::Lexicon;
use crate::logic::{builtin_signature, pretty, simplify_unchecked, Signature};
use crate::readings::{enumerate, Label, Options};
use crate::syntax::parse_term;

pub const SUITES: [&str; 3] = ["covering", "member-oplus", "simplify"];

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub expected: bool,
    pub actual: Result<bool, String>,
    /// A witness model, when one was found.
    pub witness: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.actual == Ok(self.expected)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAILED" };
            match &c.actual {
                Ok(v) => writeln!(f, "{status}\t{}\texpected {}, got {v}", c.name, c.expected)?,
                Err(e) => writeln!(f, "{status}\t{}\terror: {e}", c.name)?,
            }
        }
        write!(f, "{}: {}", self.suite, if self.passed() { "passed" } else { "failed" })
    }
}

/// Runs a suite by name; `None` for an unknown name.
pub fn run(suite: &str, bounds: Bounds) -> Option<SuiteReport> {
    let checks = match suite {
        "covering" => covering(bounds),
        "member-oplus" => member_oplus(bounds),
        "simplify" => simplify_suite(bounds),
        _ => return None,
    };
    Some(SuiteReport {
        suite: suite.to_string(),
        checks,
    })
}

fn distinct(names: &[&str]) -> String {
    let mut parts = Vec::new();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            parts.push(format!("not ({a} == {b})"));
        }
    }
    if parts.is_empty() {
        "true".into()
    } else {
        parts.join(" && ")
    }
}

fn enumeration(names: &[&str], var: &str) -> String {
    names.iter().map(|n| format!("({var} == {n})")).collect::<Vec<_>>().join(" || ")
}

/// Collective, distributive and covering forms of `piano` over a subject
/// enumerating `names`.
pub fn piano_forms(names: &[&str]) -> [String; 3] {
    let set = format!("(lam y:e. {})", enumeration(names, "y"));
    [
        format!("piano {set}"),
        format!("all x:e. {} => piano (lam y:e. y == x)", enumeration(names, "x")),
        format!(
            "all x:e. {} => (some Q:(e -> t). Q x && subset{{e}} Q {set} && piano Q)",
            enumeration(names, "x")
        ),
    ]
}

/// Whether `premise && phi` entails `psi`, with the countermodel if not.
fn entailment(
    sig: &Signature,
    bounds: Bounds,
    vocab: &[&str],
    premise: &Term,
    phi: &Term,
    psi: &Term,
) -> (Result<bool, String>, Option<String>) {
    let lhs = Term::and(premise.clone(), phi.clone());
    match find_countermodel(sig, bounds, vocab, &lhs, psi) {
        Ok(None) => (Ok(true), None),
        Ok(Some(m)) => (Ok(false), Some(render_model(&m, sig))),
        Err(e) => (Err(e.to_string()), None),
    }
}

fn parse(sig: &Signature, text: &str) -> Result<Term, String> {
    parse_term(sig, text).map_err(|e| format!("{text}: {e}"))
}

fn covering(bounds: Bounds) -> Vec<Check> {
    let lex = Lexicon::english();
    let sig = lex.signature();
    let bounds = Bounds { e: bounds.e, g: 0 };
    let mut checks = Vec::new();
    let fail = |name: &str, e: String| Check {
        name: name.into(),
        expected: true,
        actual: Err(e),
        witness: None,
    };

    // The two readings the grammar derives for the sentence itself.
    let derived = enumerate("Jimi and Dusty lifted a piano", &lex, Options::default()).map_err(|e| e.to_string());
    let pick = |label: Label| -> Result<Term, String> {
        let readings = derived.clone()?;
        readings
            .into_iter()
            .find(|r| r.labels.contains(&label) && !r.blocked)
            .map(|r| r.formula)
            .ok_or_else(|| format!("no {label} reading derived"))
    };
    let names = ["j", "d"];
    let [_, dist, _] = piano_forms(&names);
    let forms = (pick(Label::Collective), parse(sig, &dist), pick(Label::Covering));
    let premise = parse(sig, &distinct(&names));
    match (forms, premise) {
        ((Ok(coll), Ok(dist), Ok(cov)), Ok(premise)) => {
            checks.extend(subsumption(sig, bounds, &["j", "d", "piano"], &premise, &coll, &dist, &cov, "Jimi and Dusty"));
        }
        ((a, b, c), p) => {
            for e in [a.err(), b.err(), c.err(), p.err()].into_iter().flatten() {
                checks.push(fail("piano forms", e));
            }
        }
    }

    // A three-member subject, built directly.
    let names = ["j", "d", "m"];
    let [coll, dist, cov] = piano_forms(&names);
    let parsed: Result<Vec<Term>, String> =
        [coll, dist, cov, distinct(&names)].iter().map(|t| parse(sig, t)).collect();
    match parsed {
        Ok(ts) => checks.extend(subsumption(
            sig,
            bounds,
            &["j", "d", "m", "piano"],
            &ts[3],
            &ts[0],
            &ts[1],
            &ts[2],
            "Jimi, Dusty and Mary",
        )),
        Err(e) => checks.push(fail("three-member forms", e)),
    }
    checks
}

#[allow(clippy::too_many_arguments)]
fn subsumption(
    sig: &Signature,
    bounds: Bounds,
    vocab: &[&str],
    premise: &Term,
    coll: &Term,
    dist: &Term,
    cov: &Term,
    subject: &str,
) -> Vec<Check> {
    let cases = [
        ("collective entails covering", coll, cov, true),
        ("distributive entails covering", dist, cov, true),
        ("covering does not entail collective", cov, coll, false),
    ];
    cases
        .into_iter()
        .map(|(what, phi, psi, expected)| {
            let (actual, witness) = entailment(sig, bounds, vocab, premise, phi, psi);
            Check {
                name: format!("{subject}: {what} ({bounds})"),
                expected,
                actual,
                witness,
            }
        })
        .collect()
}

const MEMBER_OPLUS: &str = "all a:g. all b:g. member (oplus a b) == (lam x:e. member a x || member b x)";

fn member_oplus(bounds: Bounds) -> Vec<Check> {
    let sig = builtin_signature();
    let formula = parse_term(&sig, MEMBER_OPLUS).expect("the member/oplus law parses");
    let mut checks = Vec::new();
    let mut both = |name: String, m: &FiniteModel, expected: bool| {
        checks.push(Check {
            name: format!("{name}: member of oplus is the union"),
            expected,
            actual: m.check_member_oplus().map_err(|e| e.to_string()),
            witness: None,
        });
        checks.push(Check {
            name: format!("{name}: {}", pretty(&formula)),
            expected,
            actual: eval(m, &sig, &formula).map_err(|e| e.to_string()),
            witness: None,
        });
    };
    for atoms in 1..=bounds.e.clamp(1, 3) {
        for copies in 1..=bounds.g.clamp(1, 2) {
            let m = FiniteModel::link_model(atoms, copies);
            both(format!("link model, {atoms} atoms, {copies} copies"), &m, true);
        }
    }
    both("violation".into(), &violation(), false);
    checks
}

/// Two groups with disjoint members, and `oplus` returning its first
/// argument.
pub fn violation() -> FiniteModel {
    let mut m = FiniteModel::new(["a", "b"], ["G1", "G2"]);
    m.set_members(0, [0]);
    m.set_members(1, [1]);
    let first = |g: usize| Value::Fun(vec![Value::Atom(g), Value::Atom(g)].into());
    m.interpret("oplus", Value::Fun(vec![first(0), first(1)].into()));
    m
}

/// Pre-simplification forms the composer produces, with their vocabulary.
const UNSIMPLIFIED: [(&str, &[&str]); 4] = [
    ("|lam y:e. (y == j) || (y == d)| > 1 && meet (lam y:e. (y == j) || (y == d))", &["j", "d", "meet"]),
    ("|lam y:e. y == j| > 1 && meet (lam y:e. y == j)", &["j", "meet"]),
    ("all x:e. (x == j) || (x == d) => true && walk x", &["j", "d", "walk"]),
    ("|lam y:e. (y == j) || (y == d) || (y == m)| > 2", &["j", "d", "m"]),
];

fn simplify_suite(bounds: Bounds) -> Vec<Check> {
    let lex = Lexicon::english();
    let sig = lex.signature();
    let bounds = Bounds { e: bounds.e, g: 0 };
    let mut checks = Vec::new();
    for (text, vocab) in UNSIMPLIFIED {
        let names: Vec<&str> = vocab.iter().copied().filter(|c| c.len() == 1).collect();
        let (actual, witness) = match (parse(sig, text), parse(sig, &distinct(&names))) {
            (Ok(f), Ok(premise)) => {
                let s = simplify_unchecked(&f);
                let iff = Term::and(Term::implies(f.clone(), s.clone()), Term::implies(s, f));
                entailment(sig, bounds, vocab, &premise, &Term::truth(true), &iff)
            }
            (Err(e), _) | (_, Err(e)) => (Err(e), None),
        };
        checks.push(Check {
            name: format!("unique names: {text} agrees with its simplification"),
            expected: true,
            actual,
            witness,
        });
    }
    // Without unique names the cardinality step is unsound.
    let collapsed = collapsed_names(sig);
    checks.push(Check {
        name: "j = d: |lam y:e. (y == j) || (y == d)| > 1 is false".into(),
        expected: false,
        actual: collapsed,
        witness: None,
    });
    checks
}

fn collapsed_names(sig: &Signature) -> Result<bool, String> {
    let f = parse(sig, "|lam y:e. (y == j) || (y == d)| > 1")?;
    let mut m = FiniteModel::with_sizes(2, 0);
    m.interpret("j", Value::Atom(0));
    m.interpret("d", Value::Atom(0));
    eval(&m, sig, &f).map_err(|e| e.to_string())
}

/// Number of models the covering suite inspects at the given bound.
pub fn covering_model_count(bounds: Bounds) -> Result<usize, EvalError> {
    let lex = Lexicon::english();
    let mut n = 0;
    for e in 1..=bounds.e {
        n += enumerate_models(lex.signature(), Bounds { e, g: 0 }, &["j", "d", "piano"], DEFAULT_MODEL_CAP)?.count();
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covering_suite_passes() {
        let r = run("covering", Bounds { e: 3, g: 0 }).unwrap();
        assert!(r.passed(), "{r}");
        let counter = r.checks.iter().find(|c| !c.expected).unwrap();
        assert!(counter.witness.is_some());
    }

    #[test]
    fn member_oplus_suite_passes() {
        let r = run("member-oplus", Bounds::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 2 * 6 + 2);
    }

    #[test]
    fn simplify_suite_passes() {
        let r = run("simplify", Bounds::default()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn unknown_suite() {
        assert!(run("nope", Bounds::default()).is_none());
    }

    #[test]
    fn model_count() {
        // e=1: 1*1*4, e=2: 2*2*16, e=3: 3*3*256
        assert_eq!(covering_model_count(Bounds { e: 3, g: 0 }).unwrap(), 4 + 64 + 2304);
    }
}
