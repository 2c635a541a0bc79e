//! Text format for hand-written models:
//!
//! ```text
//! dom e = a b c
//! dom g = G1 G2
//! mem G1 = a b
//! nat 8
//! interp j = a
//! interp sneeze = a c
//! interp meet = {a b} {a b c}
//! interp f = a->G1 b->G2 c->G1
//! interp likes = (a b) (b c)
//! ```
//!
//! A predicate lists its extension; a predicate of predicates lists the
//! extensions it holds of; a function to a sort lists every argument's
//! image; a relation lists tuples.

use std::collections::BTreeMap;

use super::{EvalError, FiniteModel, Value};
use crate::kernel::{Type, ENTITY, GROUP, NAT, PROP};
use crate::logic::Signature;

fn err(line: usize, message: impl Into<String>) -> EvalError {
    EvalError::ModelFile {
        line,
        message: message.into(),
    }
}

struct Line<'a> {
    no: usize,
    keyword: &'a str,
    name: &'a str,
    rest: &'a str,
}

fn split_lines(text: &str) -> Result<Vec<Line<'_>>, EvalError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, after) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let (name, rest) = match after.split_once('=') {
            Some((n, r)) => (n.trim(), r.trim()),
            None => (after.trim(), ""),
        };
        out.push(Line {
            no,
            keyword,
            name,
            rest,
        });
    }
    Ok(out)
}

/// Parses a model; constant types come from `sig`.
pub fn parse_model(text: &str, sig: &Signature) -> Result<FiniteModel, EvalError> {
    let lines = split_lines(text)?;
    let mut domains: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut nat_bound = None;
    for l in &lines {
        match l.keyword {
            "dom" => {
                let elems: Vec<String> = l.rest.split_whitespace().map(str::to_string).collect();
                if domains.insert(l.name.to_string(), elems).is_some() {
                    return Err(err(l.no, format!("domain of {} given twice", l.name)));
                }
            }
            "nat" => {
                nat_bound = Some(l.name.parse::<u64>().map_err(|_| err(l.no, "expected a number"))?);
            }
            "mem" | "interp" => {}
            other => return Err(err(l.no, format!("unknown keyword `{other}`"))),
        }
    }
    let entities = domains.remove(ENTITY).unwrap_or_default();
    let groups = domains.remove(GROUP).unwrap_or_default();
    let mut m = FiniteModel::new(entities, groups);
    for (sort, elems) in domains {
        m.add_sort(&sort, elems);
    }
    if let Some(b) = nat_bound {
        m.set_nat_bound(b);
    }
    for l in lines.iter().filter(|l| l.keyword == "mem") {
        let g = m
            .element(GROUP, l.name)
            .ok_or_else(|| err(l.no, format!("`{}` is not a group", l.name)))?;
        let mut members = Vec::new();
        for x in l.rest.split_whitespace() {
            members.push(
                m.element(ENTITY, x)
                    .ok_or_else(|| err(l.no, format!("`{x}` is not an entity")))?,
            );
        }
        m.set_members(g, members);
    }
    for l in lines.iter().filter(|l| l.keyword == "interp") {
        let ty = sig
            .lookup(l.name)
            .ok_or_else(|| err(l.no, format!("`{}` is not a declared constant", l.name)))?;
        let v = interpretation(&m, &ty, l.rest).map_err(|msg| err(l.no, msg))?;
        m.interpret(l.name, v);
    }
    Ok(m)
}

fn atom(m: &FiniteModel, sort: &str, name: &str) -> Result<usize, String> {
    match sort {
        PROP => match name {
            "false" => Ok(0),
            "true" => Ok(1),
            _ => Err(format!("`{name}` is not a truth value")),
        },
        NAT => name
            .parse::<usize>()
            .ok()
            .filter(|n| *n as u64 <= m.nat_bound())
            .ok_or_else(|| format!("`{name}` is not a number within the bound")),
        _ => m
            .element(sort, name)
            .ok_or_else(|| format!("`{name}` is not in the domain of {sort}")),
    }
}

fn base_name(ty: &Type) -> Option<&str> {
    match ty {
        Type::Base(s) => Some(s.name()),
        _ => None,
    }
}

/// Argument sorts of `σ1 -> … -> σn -> t` with every σi a base sort.
fn relation_sorts(ty: &Type) -> Option<Vec<&str>> {
    let mut sorts = Vec::new();
    let mut cur = ty;
    while let Type::Arrow(a, b) = cur {
        sorts.push(base_name(a)?);
        cur = b;
    }
    (cur.is_prop() && !sorts.is_empty()).then_some(sorts)
}

/// Items of a list, where `{…}` and `(…)` groups are single items.
fn items(text: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut close = None;
    for c in text.chars() {
        match (close, c) {
            (None, '{') => close = Some('}'),
            (None, '(') => close = Some(')'),
            (Some(end), c) if c == end => {
                out.push(cur.trim().to_string());
                cur.clear();
                close = None;
            }
            (None, c) if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            (_, c) => cur.push(c),
        }
    }
    if close.is_some() {
        return Err("unclosed group".into());
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn interpretation(m: &FiniteModel, ty: &Type, text: &str) -> Result<Value, String> {
    if let Some(sort) = base_name(ty) {
        return atom(m, sort, text.trim()).map(Value::Atom);
    }
    let Type::Arrow(dom, cod) = ty else {
        return Err(format!("cannot interpret a constant of type {ty}"));
    };
    // Predicate of predicates: a list of extensions.
    if cod.is_prop() {
        if let Some(sort) = relation_sorts(dom).filter(|s| s.len() == 1).map(|s| s[0]) {
            let size = m.sort_size(sort);
            let mut chosen = Vec::new();
            for item in items(text)? {
                let mut ext = Vec::new();
                for x in item.split_whitespace() {
                    ext.push(atom(m, sort, x)?);
                }
                chosen.push(Value::set(size, &ext));
            }
            let all = m.elements(dom).map_err(|e| e.to_string())?;
            return Ok(Value::Fun(all.iter().map(|v| Value::truth(chosen.contains(v))).collect()));
        }
    }
    if let Some(sorts) = relation_sorts(ty) {
        let mut tuples = Vec::new();
        for item in items(text)? {
            let parts: Vec<&str> = item.split_whitespace().collect();
            if parts.len() != sorts.len() {
                return Err(format!("`{item}` should have {} components", sorts.len()));
            }
            let mut tuple = Vec::new();
            for (x, s) in parts.iter().zip(&sorts) {
                tuple.push(atom(m, s, x)?);
            }
            tuples.push(tuple);
        }
        return Ok(relation(m, &sorts, &mut Vec::new(), &tuples));
    }
    if let (Some(from), Some(to)) = (base_name(dom), base_name(cod)) {
        let size = m.sort_size(from);
        let mut table: Vec<Option<usize>> = vec![None; size];
        for item in text.split_whitespace() {
            let (x, y) = item
                .split_once("->")
                .ok_or_else(|| format!("expected arg->value, found `{item}`"))?;
            table[atom(m, from, x)?] = Some(atom(m, to, y)?);
        }
        let missing = table.iter().position(Option::is_none);
        if let Some(i) = missing {
            return Err(format!("no value given for `{}`", m.domain(from).get(i).map_or("?", |s| s)));
        }
        return Ok(Value::Fun(table.into_iter().map(|v| Value::Atom(v.unwrap())).collect()));
    }
    Err(format!("cannot interpret a constant of type {ty}"))
}

fn relation(m: &FiniteModel, sorts: &[&str], prefix: &mut Vec<usize>, tuples: &[Vec<usize>]) -> Value {
    if prefix.len() == sorts.len() {
        return Value::truth(tuples.contains(prefix));
    }
    let size = m.sort_size(sorts[prefix.len()]);
    let mut rows = Vec::with_capacity(size);
    for i in 0..size {
        prefix.push(i);
        rows.push(relation(m, sorts, prefix, tuples));
        prefix.pop();
    }
    Value::Fun(rows.into())
}

/// A model in the file format, with interpretations typed by `sig`.
/// Constants of types the format cannot express stay as comments.
pub fn render_model(m: &FiniteModel, sig: &Signature) -> String {
    let mut out = m.structure();
    if m.nat_bound() != FiniteModel::DEFAULT_NAT_BOUND {
        out.push_str(&format!("nat {}\n", m.nat_bound()));
    }
    for (name, value) in m.interpreted() {
        let text = sig.lookup(name).and_then(|ty| render_value(m, &ty, value));
        match text {
            Some(t) if t.is_empty() => out.push_str(&format!("interp {name} =\n")),
            Some(t) => out.push_str(&format!("interp {name} = {t}\n")),
            None => out.push_str(&format!("# {name} has no textual form\n")),
        }
    }
    out
}

fn atom_name(m: &FiniteModel, sort: &str, i: usize) -> Option<String> {
    match sort {
        PROP => Some((i == 1).to_string()),
        NAT => Some(i.to_string()),
        _ => m.domain(sort).get(i).cloned(),
    }
}

fn render_value(m: &FiniteModel, ty: &Type, v: &Value) -> Option<String> {
    if let Some(sort) = base_name(ty) {
        return atom_name(m, sort, v.as_atom()?);
    }
    let (dom, cod) = ty.as_arrow()?;
    let Value::Fun(table) = v else { return None };
    if cod.is_prop() {
        if let Some(sort) = relation_sorts(dom).filter(|s| s.len() == 1).map(|s| s[0]) {
            let all = m.elements(dom).ok()?;
            let mut sets = Vec::new();
            for (ext, holds) in all.iter().zip(table.iter()) {
                if holds.as_bool()? {
                    let Value::Fun(bits) = ext else { return None };
                    let mut names = Vec::new();
                    for (i, b) in bits.iter().enumerate() {
                        if b.as_bool()? {
                            names.push(atom_name(m, sort, i)?);
                        }
                    }
                    sets.push(format!("{{{}}}", names.join(" ")));
                }
            }
            return Some(sets.join(" "));
        }
    }
    if let Some(sorts) = relation_sorts(ty) {
        let mut tuples = Vec::new();
        collect_tuples(m, &sorts, v, &mut Vec::new(), &mut tuples)?;
        return Some(if sorts.len() == 1 {
            tuples.into_iter().flatten().collect::<Vec<_>>().join(" ")
        } else {
            tuples.iter().map(|t| format!("({})", t.join(" "))).collect::<Vec<_>>().join(" ")
        });
    }
    let (from, to) = (base_name(dom)?, base_name(cod)?);
    let mut pairs = Vec::new();
    for (i, y) in table.iter().enumerate() {
        pairs.push(format!("{}->{}", atom_name(m, from, i)?, atom_name(m, to, y.as_atom()?)?));
    }
    Some(pairs.join(" "))
}

fn collect_tuples(
    m: &FiniteModel,
    sorts: &[&str],
    v: &Value,
    prefix: &mut Vec<String>,
    out: &mut Vec<Vec<String>>,
) -> Option<()> {
    if prefix.len() == sorts.len() {
        if v.as_bool()? {
            out.push(prefix.clone());
        }
        return Some(());
    }
    let Value::Fun(rows) = v else { return None };
    for (i, row) in rows.iter().enumerate() {
        prefix.push(atom_name(m, sorts[prefix.len()], i)?);
        collect_tuples(m, sorts, row, prefix, out)?;
        prefix.pop();
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::Lexicon;
    use crate::model::eval;
    use crate::syntax::parse_term;

    const MEETING: &str = "
dom e = a b c
interp j = a
interp d = b
interp m = c
interp meet = {a b}
";

    #[test]
    fn hand_model_makes_the_meeting_true() {
        let lex = Lexicon::english();
        let m = parse_model(MEETING, lex.signature()).unwrap();
        let f = parse_term(lex.signature(), "meet(lam y:e. (y == j) || (y == d))").unwrap();
        assert!(eval(&m, lex.signature(), &f).unwrap());
        let g = parse_term(lex.signature(), "meet(lam y:e. (y == j) || (y == m))").unwrap();
        assert!(!eval(&m, lex.signature(), &g).unwrap());
    }

    #[test]
    fn functions_and_members() {
        let lex = Lexicon::japanese();
        let text = "dom e = a b\ndom g = G1 G2\nmem G1 = a b\ninterp j = a\ninterp entourage = a->G1 b->G2\n";
        let m = parse_model(text, lex.signature()).unwrap();
        let f = parse_term(lex.signature(), "|member (entourage j)| > 1").unwrap();
        assert!(eval(&m, lex.signature(), &f).unwrap());
    }

    #[test]
    fn partial_function_is_rejected() {
        let lex = Lexicon::japanese();
        let text = "dom e = a b\ndom g = G1\ninterp entourage = a->G1\n";
        assert!(matches!(parse_model(text, lex.signature()), Err(EvalError::ModelFile { line: 3, .. })));
    }

    #[test]
    fn enumerated_models_round_trip() {
        let mut sig = crate::logic::builtin_signature();
        sig.declare_const("j", Type::e()).unwrap();
        sig.declare_const("meet", Type::pred(Type::pred(Type::e()))).unwrap();
        sig.declare_const("like", Type::arrow(Type::e(), Type::pred(Type::e()))).unwrap();
        sig.declare_const("boss", Type::arrow(Type::e(), Type::g())).unwrap();
        let vocab = ["j", "meet", "like", "boss"];
        let models = crate::model::enumerate_models(&sig, crate::model::Bounds { e: 2, g: 1 }, &vocab, 1 << 20).unwrap();
        for m in models.step_by(97) {
            let text = render_model(&m, &sig);
            assert_eq!(parse_model(&text, &sig).unwrap(), m, "{text}");
        }
    }

    #[test]
    fn unknown_element() {
        let lex = Lexicon::english();
        assert!(parse_model("dom e = a\ninterp j = z\n", lex.signature()).is_err());
    }
}
