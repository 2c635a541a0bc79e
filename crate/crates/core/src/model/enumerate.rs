use std::fmt;
use std::str::FromStr;

use super::{eval, EvalError, FiniteModel, Value};
use crate::kernel::{Term, Type};
use crate::logic::Signature;

/// Default ceiling on the number of models one enumeration may produce.
pub const DEFAULT_MODEL_CAP: usize = 1 << 20;

/// Sizes of the entity and group domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub e: usize,
    pub g: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { e: 3, g: 2 }
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e={},g={}", self.e, self.g)
    }
}

impl FromStr for Bounds {
    type Err = String;

    /// `e=3,g=2`; a missing sort keeps its default.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut b = Bounds::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| format!("expected sort=size, found `{part}`"))?;
            let n: usize = v.trim().parse().map_err(|_| format!("bad size `{v}`"))?;
            match k.trim() {
                "e" => b.e = n,
                "g" => b.g = n,
                other => return Err(format!("unknown sort `{other}`")),
            }
        }
        Ok(b)
    }
}

/// Lazily enumerates every model over fixed domain sizes: every
/// membership relation and every interpretation of the vocabulary.
pub struct ModelIter {
    base: FiniteModel,
    /// Choices per dimension: first one per group (member sets), then one
    /// per vocabulary constant.
    groups: usize,
    entities: usize,
    vocab: Vec<(String, Vec<Value>)>,
    digits: Vec<usize>,
    radices: Vec<usize>,
    done: bool,
}

impl Iterator for ModelIter {
    type Item = FiniteModel;

    fn next(&mut self) -> Option<FiniteModel> {
        if self.done {
            return None;
        }
        let mut m = self.base.clone();
        for g in 0..self.groups {
            let mask = self.digits[g];
            m.set_members(g, (0..self.entities).filter(|i| mask & (1 << i) != 0));
        }
        for (k, (name, values)) in self.vocab.iter().enumerate() {
            m.interpret(name.clone(), values[self.digits[self.groups + k]].clone());
        }
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(m)
    }
}

/// All models with exactly `bounds.e` entities and `bounds.g` groups,
/// interpreting the constants in `vocab` (whose types come from `sig`).
pub fn enumerate_models(
    sig: &Signature,
    bounds: Bounds,
    vocab: &[&str],
    cap: usize,
) -> Result<ModelIter, EvalError> {
    let base = FiniteModel::with_sizes(bounds.e, bounds.g);
    let mut radices = Vec::new();
    if bounds.g > 0 && bounds.e >= usize::BITS as usize {
        return Err(EvalError::VocabularyTooRich { cap });
    }
    for _ in 0..bounds.g {
        radices.push(1usize << bounds.e);
    }
    let mut values = Vec::new();
    for name in vocab {
        let ty: Type = sig
            .lookup(name)
            .ok_or_else(|| EvalError::UninterpretedConstant(name.to_string()))?;
        let elems = base.elements(&ty).map_err(|_| EvalError::VocabularyTooRich { cap })?;
        radices.push(elems.len());
        values.push((name.to_string(), elems));
    }
    let mut total = 1usize;
    for r in &radices {
        total = total.checked_mul(*r).filter(|t| *t <= cap).ok_or(EvalError::VocabularyTooRich { cap })?;
    }
    Ok(ModelIter {
        base,
        groups: bounds.g,
        entities: bounds.e,
        vocab: values,
        digits: vec![0; radices.len()],
        done: total == 0,
        radices,
    })
}

/// A model within the bounds (1..=e entities, 0..=g groups) where `phi`
/// holds and `psi` does not.
pub fn find_countermodel(
    sig: &Signature,
    bounds: Bounds,
    vocab: &[&str],
    phi: &Term,
    psi: &Term,
) -> Result<Option<FiniteModel>, EvalError> {
    for e in 1..=bounds.e {
        for g in 0..=bounds.g {
            for m in enumerate_models(sig, Bounds { e, g }, vocab, DEFAULT_MODEL_CAP)? {
                if eval(&m, sig, phi)? && !eval(&m, sig, psi)? {
                    return Ok(Some(m));
                }
            }
        }
    }
    Ok(None)
}

/// Whether `phi` entails `psi` in every model within the bounds.
pub fn entails(sig: &Signature, bounds: Bounds, vocab: &[&str], phi: &Term, psi: &Term) -> Result<bool, EvalError> {
    Ok(find_countermodel(sig, bounds, vocab, phi, psi)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::builtin_signature;
    use crate::syntax::parse_term;

    fn sig() -> Signature {
        let mut s = builtin_signature();
        s.declare_const("p", Type::pred(Type::e())).unwrap();
        s.declare_const("j", Type::e()).unwrap();
        s
    }

    fn count(e: usize, g: usize, vocab: &[&str]) -> usize {
        enumerate_models(&sig(), Bounds { e, g }, vocab, DEFAULT_MODEL_CAP).unwrap().count()
    }

    #[test]
    fn model_counts() {
        assert_eq!(count(1, 0, &["p"]), 2);
        assert_eq!(count(2, 0, &["p"]), 4);
        assert_eq!(count(2, 1, &[]), 4);
        assert_eq!(count(3, 0, &["p", "j"]), 24);
    }

    #[test]
    fn cap_is_enforced() {
        let r = enumerate_models(&sig(), Bounds { e: 3, g: 2 }, &["p"], 100);
        assert!(matches!(r, Err(EvalError::VocabularyTooRich { cap: 100 })));
    }

    #[test]
    fn bounds_syntax() {
        assert_eq!("e=3,g=1".parse::<Bounds>().unwrap(), Bounds { e: 3, g: 1 });
        assert_eq!("e=2".parse::<Bounds>().unwrap(), Bounds { e: 2, g: 2 });
        assert!("x=2".parse::<Bounds>().is_err());
    }

    #[test]
    fn simple_entailment() {
        let s = sig();
        let all = parse_term(&s, "all x:e. p x").unwrap();
        let pj = parse_term(&s, "p j").unwrap();
        let b = Bounds { e: 3, g: 0 };
        assert!(entails(&s, b, &["p", "j"], &all, &pj).unwrap());
        assert!(!entails(&s, b, &["p", "j"], &pj, &all).unwrap());
    }
}
