//! Acceptance gate: one line per criterion, non-zero exit if any fails.

mod common;

use std::process::Command;
use std::time::Instant;

use plurals::kernel::{naive::naive_type_of, normalize_unchecked, type_of, Strategy, Term, TypingContext};
use plurals::lexicon::Lexicon;
use plurals::logic::{pretty, simplify_unchecked};
use plurals::model::{find_countermodel, oracle, Bounds, FiniteModel};
use plurals::readings::{enumerate, rigidity_check, Label, Options, Reading, Step};
use plurals::syntax::parse_term;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn readings(lex: &Lexicon, s: &str) -> Result<Vec<Reading>, String> {
    enumerate(s, lex, Options::default()).map_err(|e| format!("{s}: {e}"))
}

fn unblocked(lex: &Lexicon, s: &str) -> usize {
    readings(lex, s).map_or(0, |rs| rs.iter().filter(|r| !r.blocked).count())
}

fn form(lex: &Lexicon, text: &str) -> Result<Term, String> {
    parse_term(lex.signature(), text).map_err(|e| format!("{text}: {e}"))
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_plurals")).args(args).output().expect("binary runs");
    (
        o.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&o.stdout).into_owned(),
        String::from_utf8_lossy(&o.stderr).into_owned(),
    )
}

fn golden_meet() -> Outcome {
    let lex = Lexicon::english();
    let rs = readings(&lex, "Jimi and Dusty met")?;
    let ok: Vec<&Reading> = rs.iter().filter(|r| !r.blocked).collect();
    ensure(ok.len() == 1, || format!("{} unblocked readings", ok.len()))?;
    let want = form(&lex, "meet(lam y:e. (y == j) || (y == d))")?;
    ensure(ok[0].formula.alpha_eq(&want), || pretty(&ok[0].formula))?;
    let (code, out, _) = cli(&["analyze", "Jimi and Dusty met"]);
    ensure(code == 0 && out == "R1\tcollective\tok\tmeet(lam y:e. (y == j) || (y == d))\n", || {
        format!("cli exit {code}: {out}")
    })
}

fn golden_piano() -> Outcome {
    let lex = Lexicon::english();
    let rs = readings(&lex, "Jimi and Dusty lifted a piano")?;
    ensure(rs.len() == 2, || format!("{} readings", rs.len()))?;
    let r1 = form(&lex, "piano(lam y:e. (y == j) || (y == d))")?;
    let r2 = form(
        &lex,
        "all x:e. ((x == j) || (x == d)) => (some Q:(e -> t). Q x && subset Q (lam y:e. (y == j) || (y == d)) && piano Q)",
    )?;
    ensure(rs[0].formula.alpha_eq(&r1), || format!("R1 = {}", pretty(&rs[0].formula)))?;
    ensure(rs[1].formula.alpha_eq(&r2), || format!("R2 = {}", pretty(&rs[1].formula)))?;
    ensure(rs[0].labels.contains(&Label::Collective) && rs[1].labels.contains(&Label::Covering), || {
        "labels".into()
    })
}

fn golden_walking() -> Outcome {
    let lex = Lexicon::english();
    let rs = readings(&lex, "Jimi and Dusty were walking")?;
    ensure(rs.len() == 1, || format!("{} readings", rs.len()))?;
    let want = form(&lex, "all x:e. ((x == j) || (x == d)) => walk x")?;
    ensure(rs[0].formula.alpha_eq(&want), || pretty(&rs[0].formula))?;
    ensure(rs[0].labels.contains(&Label::Distributive), || "label".into())
}

fn blocking_battery() -> Outcome {
    let en = Lexicon::english();
    let fr = Lexicon::french();
    let (code, _, _) = cli(&["analyze", "Jimi met"]);
    ensure(unblocked(&en, "Jimi met") == 0 && code == 2, || format!("Jimi met: exit {code}"))?;
    let cases: [(&Lexicon, &str, usize); 8] = [
        (&en, "the student met", 0),
        (&en, "the students met", 1),
        (&en, "the committee met", 1),
        (&fr, "le comité s'est réuni", 1),
        (&fr, "les comités se sont réunis", 2),
        (&en, "each student sneezed", 1),
        (&en, "the members of the students protested", 0),
        (&en, "Jimi and Dusty met", 1),
    ];
    for (lex, s, n) in cases {
        let got = unblocked(lex, s);
        ensure(got == n, || format!("{s}: {got} unblocked, want {n}"))?;
    }
    let members = unblocked(&en, "the members of the committee protested");
    ensure(members >= 1, || "the members of the committee protested: none".into())?;
    let each = readings(&en, "each student met")?;
    let (code, out, err) = cli(&["analyze", "each student met"]);
    ensure(each.is_empty() && code == 2 && out.is_empty() && err.contains("NoReading"), || {
        format!("each student met: {} readings, exit {code}, stderr {err:?}", each.len())
    })
}

fn golden_tachi() -> Outcome {
    let lex = Lexicon::japanese();
    let rs = readings(&lex, "JIMI tachi ha saikai shita")?;
    ensure(rs.len() == 1, || format!("{} readings", rs.len()))?;
    let want = form(&lex, "|member (entourage j)| > 1 && saikai (member (entourage j))")?;
    ensure(rs[0].formula.alpha_eq(&want), || pretty(&rs[0].formula))
}

fn oracle_subsumption() -> Outcome {
    let lex = Lexicon::english();
    let sig = lex.signature();
    let rs = readings(&lex, "Jimi and Dusty lifted a piano")?;
    let pick = |l: Label| {
        rs.iter()
            .find(|r| r.labels.contains(&l))
            .map(|r| r.formula.clone())
            .ok_or(format!("no {l} reading"))
    };
    let coll = pick(Label::Collective)?;
    let cov = pick(Label::Covering)?;
    let dist = form(&lex, "all x:e. ((x == j) || (x == d)) => piano (lam y:e. y == x)")?;
    let two = form(&lex, "not (j == d)")?;
    let vocab = ["j", "d", "piano"];
    let bounds = Bounds { e: 3, g: 0 };
    let entails = |phi: &Term, psi: &Term| -> Result<bool, String> {
        let lhs = Term::and(two.clone(), phi.clone());
        find_countermodel(sig, bounds, &vocab, &lhs, psi)
            .map(|m| m.is_none())
            .map_err(|e| e.to_string())
    };
    ensure(entails(&coll, &cov)?, || "collective does not entail covering".into())?;
    ensure(entails(&dist, &cov)?, || "distributive does not entail covering".into())?;
    ensure(!entails(&cov, &coll)?, || "covering entails collective".into())?;
    let (code, out, _) = cli(&["oracle", "covering", "--bounds", "e=3"]);
    ensure(code == 0, || format!("oracle covering exit {code}\n{out}"))
}

fn member_oplus() -> Outcome {
    let (code, out, _) = cli(&["oracle", "member-oplus"]);
    ensure(code == 0, || format!("oracle member-oplus exit {code}\n{out}"))?;
    for atoms in 1..=3 {
        for copies in 1..=2 {
            let m = FiniteModel::link_model(atoms, copies);
            ensure(m.check_member_oplus() == Ok(true), || format!("link model {atoms}/{copies}"))?;
        }
    }
    let bad = oracle::violation();
    ensure(bad.check_member_oplus() == Ok(false), || "violation passes".into())
}

fn kernel_properties() -> Outcome {
    let sig = common::signature();
    let ctx = TypingContext::new(&sig);
    for seed in 0..500u64 {
        let (t, ty) = common::random_term(seed, 6);
        let got = type_of(&ctx, &t).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(got.alpha_eq(&ty), || format!("seed {seed}: generator produced {got}, not {ty}"))?;
        let a = normalize_unchecked(&t, Strategy::HeadFirst);
        let b = normalize_unchecked(&t, Strategy::ArgumentsFirst);
        ensure(a.alpha_eq(&b), || format!("seed {seed}: normal forms differ"))?;
        let after = type_of(&ctx, &a).map_err(|e| format!("seed {seed}: reduct ill-typed: {e}"))?;
        ensure(after.alpha_eq(&ty), || format!("seed {seed}: subject reduction"))?;
        let naive = naive_type_of(&sig, &a).map_err(|e| e.to_string())?;
        ensure(naive.alpha_eq(&ty), || format!("seed {seed}: checkers disagree"))?;
    }
    for seed in 1000..1200u64 {
        let (t, _) = common::random_term(seed, 6);
        let text = pretty(&t);
        let back = parse_term(&sig, &text).map_err(|e| format!("{text}: {e}"))?;
        ensure(back.alpha_eq(&t), || format!("round trip: {text}"))?;
    }
    for (lex, s) in common::GOLDEN {
        let lex = Lexicon::shipped(lex).expect("shipped");
        for r in enumerate(s, &lex, Options { budget: 2 }).unwrap_or_default() {
            let once = simplify_unchecked(&r.formula);
            ensure(simplify_unchecked(&once).alpha_eq(&once), || format!("{s}: simplify not idempotent"))?;
        }
    }
    Ok(())
}

fn rigidity() -> Outcome {
    let step = |name: &str, rigid: bool| Step {
        site: (2, 3),
        coercion: name.into(),
        rigid,
        global: false,
    };
    ensure(!rigidity_check(&[step("f_c", true), step("f_p", false)]), || "rigid + flexible accepted".into())?;
    ensure(!rigidity_check(&[step("f_p", false), step("f_c", true)]), || "flexible + rigid accepted".into())?;
    ensure(rigidity_check(&[step("f_i", false), step("f_p", false)]), || "two flexible rejected".into())?;
    ensure(rigidity_check(&[step("f_c", true)]), || "rigid alone rejected".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Jimi and Dusty met", golden_meet),
        ("Jimi and Dusty lifted a piano", golden_piano),
        ("Jimi and Dusty were walking", golden_walking),
        ("Blocking battery", blocking_battery),
        ("JIMI tachi ha saikai shita", golden_tachi),
        ("Covering subsumes collective and distributive", oracle_subsumption),
        ("member of oplus is union", member_oplus),
        ("Kernel properties", kernel_properties),
        ("Rigid coercions do not stack", rigidity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("[PASS] {}. {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {}. {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
