//! Finite many-sorted models and a brute-force evaluator.
//!
//! Higher types denote full function spaces over the finite base domains.
//! Groups have members through an explicit membership relation, so two
//! groups may share the same members.

mod enumerate;
mod eval;
mod file;
pub mod oracle;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::kernel::{KernelError, Type, ENTITY, GROUP, NAT, PROP};

pub use enumerate::{entails, enumerate_models, find_countermodel, Bounds, ModelIter, DEFAULT_MODEL_CAP};
pub use eval::{eval, eval_value};
pub use file::{parse_model, render_model};

/// Domain size beyond which a type's elements are not enumerated.
pub const ELEMENT_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("constant `{0}` has no interpretation")]
    UninterpretedConstant(String),
    #[error("number {0} exceeds the bound on N")]
    SortOverflow(u64),
    #[error("iota over an empty extension")]
    EmptyIota,
    #[error("the domain of {0} is too large to enumerate")]
    DomainTooLarge(Type),
    #[error("more than {cap} models for this vocabulary")]
    VocabularyTooRich { cap: usize },
    #[error("cannot evaluate: {0}")]
    Unsupported(String),
    #[error(transparent)]
    IllTyped(#[from] KernelError),
    #[error("model file line {line}: {message}")]
    ModelFile { line: usize, message: String },
}

/// A semantic value. Elements of base sorts (including `t`, where 0 is
/// false, and `N`) are indices; functions are total tables indexed by the
/// position of the argument in the enumeration of their domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Atom(usize),
    Fun(Arc<[Value]>),
}

impl Value {
    pub fn truth(b: bool) -> Value {
        Value::Atom(b as usize)
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Atom(0) => Some(false),
            Value::Atom(1) => Some(true),
            _ => None,
        }
    }

    pub fn as_atom(&self) -> Option<usize> {
        match self {
            Value::Atom(i) => Some(*i),
            Value::Fun(_) => None,
        }
    }

    /// Characteristic function of `members` over a domain of `size` atoms.
    pub fn set(size: usize, members: &[usize]) -> Value {
        Value::Fun((0..size).map(|i| Value::truth(members.contains(&i))).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteModel {
    /// Element names per sort other than `t` and `N`.
    domains: BTreeMap<String, Vec<String>>,
    /// Members of each group, as indices into the `e` domain.
    members: Vec<BTreeSet<usize>>,
    interp: BTreeMap<String, Value>,
    nat_bound: u64,
}

impl FiniteModel {
    pub const DEFAULT_NAT_BOUND: u64 = 8;

    /// A model with the given entities and groups; groups start empty.
    pub fn new<S: Into<String>>(entities: impl IntoIterator<Item = S>, groups: impl IntoIterator<Item = S>) -> Self {
        let e: Vec<String> = entities.into_iter().map(Into::into).collect();
        let g: Vec<String> = groups.into_iter().map(Into::into).collect();
        let members = vec![BTreeSet::new(); g.len()];
        let mut domains = BTreeMap::new();
        domains.insert(ENTITY.to_string(), e);
        domains.insert(GROUP.to_string(), g);
        FiniteModel {
            domains,
            members,
            interp: BTreeMap::new(),
            nat_bound: Self::DEFAULT_NAT_BOUND,
        }
    }

    /// Entities `a0 a1 …` and groups `G0 G1 …`.
    pub fn with_sizes(e: usize, g: usize) -> Self {
        FiniteModel::new((0..e).map(|i| format!("a{i}")), (0..g).map(|i| format!("G{i}")))
    }

    pub fn add_sort(&mut self, sort: &str, elements: Vec<String>) {
        self.domains.insert(sort.to_string(), elements);
    }

    pub fn nat_bound(&self) -> u64 {
        self.nat_bound
    }

    pub fn set_nat_bound(&mut self, bound: u64) {
        self.nat_bound = bound;
    }

    pub fn domain(&self, sort: &str) -> &[String] {
        self.domains.get(sort).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn element(&self, sort: &str, name: &str) -> Option<usize> {
        self.domain(sort).iter().position(|n| n == name)
    }

    pub fn members(&self, group: usize) -> &BTreeSet<usize> {
        &self.members[group]
    }

    pub fn set_members(&mut self, group: usize, members: impl IntoIterator<Item = usize>) {
        self.members[group] = members.into_iter().collect();
    }

    pub fn interpret(&mut self, name: impl Into<String>, value: Value) {
        self.interp.insert(name.into(), value);
    }

    pub fn interpretation(&self, name: &str) -> Option<&Value> {
        self.interp.get(name)
    }

    pub fn interpreted(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.interp.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Number of elements of a base sort.
    pub fn sort_size(&self, sort: &str) -> usize {
        match sort {
            PROP => 2,
            NAT => self.nat_bound as usize + 1,
            _ => self.domain(sort).len(),
        }
    }

    /// Number of elements of a closed type, if it fits in a `usize`.
    pub fn type_size(&self, ty: &Type) -> Option<usize> {
        match ty {
            Type::Base(s) => Some(self.sort_size(s.name())),
            Type::Arrow(a, b) => {
                let a = self.type_size(a)?;
                let b = self.type_size(b)?;
                b.checked_pow(u32::try_from(a).ok()?)
            }
            Type::Var(_) | Type::Pi(..) => None,
        }
    }

    /// All elements of a closed type, in enumeration order.
    pub fn elements(&self, ty: &Type) -> Result<Vec<Value>, EvalError> {
        match self.type_size(ty) {
            Some(n) if n <= ELEMENT_CAP => {}
            _ => return Err(EvalError::DomainTooLarge(ty.clone())),
        }
        Ok(match ty {
            Type::Base(s) => (0..self.sort_size(s.name())).map(Value::Atom).collect(),
            Type::Arrow(a, b) => {
                let n = self.type_size(a).expect("checked above");
                let cod = self.elements(b)?;
                if cod.is_empty() && n > 0 {
                    return Ok(Vec::new());
                }
                let mut out = Vec::new();
                let mut digits = vec![0usize; n];
                loop {
                    out.push(Value::Fun(digits.iter().map(|&d| cod[d].clone()).collect()));
                    let mut i = 0;
                    loop {
                        if i == n {
                            return Ok(out);
                        }
                        digits[i] += 1;
                        if digits[i] < cod.len() {
                            break;
                        }
                        digits[i] = 0;
                        i += 1;
                    }
                }
            }
            _ => unreachable!("type_size is None for open types"),
        })
    }

    /// Position of a value in [`elements`](Self::elements) of its type.
    pub fn index_of(&self, value: &Value, ty: &Type) -> Result<usize, EvalError> {
        match (value, ty) {
            (Value::Atom(i), Type::Base(_)) => Ok(*i),
            (Value::Fun(table), Type::Arrow(_, cod)) => {
                let radix = self
                    .type_size(cod)
                    .ok_or_else(|| EvalError::DomainTooLarge(ty.clone()))?;
                let mut index = 0usize;
                for v in table.iter().rev() {
                    index = index
                        .checked_mul(radix)
                        .and_then(|x| x.checked_add(self.index_of(v, cod).ok()?))
                        .ok_or_else(|| EvalError::DomainTooLarge(ty.clone()))?;
                }
                Ok(index)
            }
            _ => Err(EvalError::Unsupported(format!("value does not have type {ty}"))),
        }
    }

    /// Whether `oplus` maps every pair of groups to a group whose members
    /// are the union of theirs.
    pub fn check_member_oplus(&self) -> Result<bool, EvalError> {
        let Some(Value::Fun(rows)) = self.interp.get("oplus") else {
            return Err(EvalError::UninterpretedConstant("oplus".into()));
        };
        for (g1, row) in rows.iter().enumerate() {
            let Value::Fun(cols) = row else {
                return Err(EvalError::Unsupported("oplus is not binary".into()));
            };
            for (g2, v) in cols.iter().enumerate() {
                let joined = v
                    .as_atom()
                    .ok_or_else(|| EvalError::Unsupported("oplus is not group-valued".into()))?;
                let union: BTreeSet<usize> = self.members[g1].union(&self.members[g2]).copied().collect();
                if self.members[joined] != union {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// A model in the style of Link's lattice: one group per non-empty set
    /// of the `atoms` entities (`copies` groups each, sharing members), and
    /// `oplus` sending two groups to the first group with the union of
    /// their members.
    pub fn link_model(atoms: usize, copies: usize) -> FiniteModel {
        let subsets: Vec<Vec<usize>> = (1u32..(1 << atoms))
            .map(|mask| (0..atoms).filter(|i| mask & (1 << i) != 0).collect())
            .collect();
        let mut groups = Vec::new();
        let mut images = Vec::new();
        for set in &subsets {
            for copy in 0..copies {
                let name: String = set.iter().map(|i| format!("a{i}")).collect::<Vec<_>>().join("");
                groups.push(if copy == 0 { format!("G_{name}") } else { format!("G_{name}_{copy}") });
                images.push(set.clone());
            }
        }
        let mut m = FiniteModel::new((0..atoms).map(|i| format!("a{i}")), groups);
        for (g, image) in images.iter().enumerate() {
            m.set_members(g, image.iter().copied());
        }
        let n = images.len();
        let rows: Vec<Value> = (0..n)
            .map(|g1| {
                let cols: Vec<Value> = (0..n)
                    .map(|g2| {
                        let union: BTreeSet<usize> = m.members[g1].union(&m.members[g2]).copied().collect();
                        let target = (0..n).find(|&g| m.members[g] == union).expect("every union is a group");
                        Value::Atom(target)
                    })
                    .collect();
                Value::Fun(cols.into())
            })
            .collect();
        m.interpret("oplus", Value::Fun(rows.into()));
        m
    }
}

impl FiniteModel {
    /// The `dom` and `mem` lines of the model file format.
    pub fn structure(&self) -> String {
        let mut out = String::new();
        let line = |out: &mut String, head: String, items: &mut dyn Iterator<Item = &str>| {
            out.push_str(&head);
            for item in items {
                out.push(' ');
                out.push_str(item);
            }
            out.push('\n');
        };
        for (sort, elems) in &self.domains {
            line(&mut out, format!("dom {sort} ="), &mut elems.iter().map(String::as_str));
        }
        let groups = self.domain(GROUP);
        let entities = self.domain(ENTITY);
        for (g, mem) in self.members.iter().enumerate() {
            line(&mut out, format!("mem {} =", groups[g]), &mut mem.iter().map(|&i| entities[i].as_str()));
        }
        out
    }
}

impl fmt::Display for FiniteModel {
    /// Domains and members in the model file format; interpretations as
    /// raw tables in comments. See [`render_model`] for typed output.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.structure())?;
        for (name, value) in &self.interp {
            writeln!(f, "# {name} = {}", render(value))?;
        }
        Ok(())
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::Atom(i) => i.to_string(),
        Value::Fun(t) => format!("[{}]", t.iter().map(render).collect::<Vec<_>>().join(" ")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_functions_into_an_empty_sort() {
        let m = FiniteModel::with_sizes(2, 0);
        assert!(m.elements(&Type::arrow(Type::e(), Type::g())).unwrap().is_empty());
        assert_eq!(m.elements(&Type::arrow(Type::g(), Type::g())).unwrap().len(), 1);
    }

    #[test]
    fn function_space_sizes() {
        let m = FiniteModel::with_sizes(3, 2);
        assert_eq!(m.type_size(&Type::pred(Type::e())), Some(8));
        assert_eq!(m.type_size(&Type::arrow(Type::pred(Type::e()), Type::t())), Some(256));
        assert_eq!(m.elements(&Type::pred(Type::e())).unwrap().len(), 8);
    }

    #[test]
    fn index_of_inverts_elements() {
        let m = FiniteModel::with_sizes(2, 1);
        let ty = Type::arrow(Type::pred(Type::e()), Type::t());
        for (i, v) in m.elements(&ty).unwrap().iter().enumerate() {
            assert_eq!(m.index_of(v, &ty).unwrap(), i);
        }
    }

    #[test]
    fn link_models_satisfy_member_oplus() {
        for atoms in 1..=3 {
            for copies in 1..=2 {
                assert!(FiniteModel::link_model(atoms, copies).check_member_oplus().unwrap());
            }
        }
    }

    #[test]
    fn violation_is_detected() {
        let mut m = FiniteModel::with_sizes(2, 2);
        m.set_members(0, [0]);
        m.set_members(1, [1]);
        // oplus(x, y) = x
        let rows = (0..2).map(|g1| Value::Fun(vec![Value::Atom(g1); 2].into())).collect::<Vec<_>>();
        m.interpret("oplus", Value::Fun(rows.into()));
        assert!(!m.check_member_oplus().unwrap());
    }
}
