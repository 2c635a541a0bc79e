//! The many-sorted higher-order signature: builtin logical constants plus
//! whatever sorts and constants a lexicon declares.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::kernel::{Type, BUILTIN_SORTS};

/// Words the surface syntax reserves; they can name neither sorts nor constants.
pub const KEYWORDS: [&str; 6] = ["lam", "Lam", "all", "some", "Pi", "with"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SignatureError {
    #[error("`{0}` is reserved")]
    Reserved(String),
    #[error("`{0}` is already declared")]
    Duplicate(String),
    #[error("type of `{name}` is not closed: free type variable `{var}`")]
    OpenType { name: String, var: String },
    #[error("type of `{name}` mentions undeclared sort `{sort}`")]
    UnknownSort { name: String, sort: String },
}

/// Map from constant names to closed (possibly Π-prefixed) types, plus the
/// set of declared sorts.
#[derive(Debug, Clone, PartialEq)]
pub struct Signature {
    sorts: BTreeSet<String>,
    consts: BTreeMap<String, Type>,
}

fn builtin_table() -> Vec<(&'static str, Type)> {
    let e = Type::e;
    let g = Type::g;
    let t = Type::t;
    let nat = Type::nat;
    let a = || Type::var("α");
    let b = || Type::var("β");
    let xi = || Type::var("ξ");
    let pred = Type::pred;
    let arr = Type::arrow;
    let binop = || arr(t(), arr(t(), t()));
    vec![
        ("true", t()),
        ("false", t()),
        ("and", binop()),
        ("or", binop()),
        ("implies", binop()),
        ("not", arr(t(), t())),
        ("eq", Type::pi("α", arr(a(), arr(a(), t())))),
        ("forall", Type::pi("α", arr(pred(a()), t()))),
        ("exists", Type::pi("α", arr(pred(a()), t()))),
        ("iota", Type::pi("α", arr(pred(a()), a()))),
        ("card", Type::pi("α", arr(pred(a()), nat()))),
        ("gt", arr(nat(), arr(nat(), t()))),
        ("member", arr(g(), pred(e()))),
        ("member_of", arr(e(), arr(g(), t()))),
        ("oplus", arr(g(), arr(g(), g()))),
        (
            "subset",
            Type::pi("α", arr(pred(a()), arr(pred(a()), t()))),
        ),
        (
            "polyand",
            Type::pi(
                "α",
                Type::pi(
                    "β",
                    arr(
                        pred(a()),
                        arr(
                            pred(b()),
                            Type::pi(
                                "ξ",
                                arr(xi(), arr(arr(xi(), a()), arr(arr(xi(), b()), t()))),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    ]
}

/// Names of the builtin constants, numerals aside.
pub fn builtin_names() -> Vec<&'static str> {
    builtin_table().into_iter().map(|(n, _)| n).collect()
}

pub fn is_numeral(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_digit())
}

/// The fixed builtin signature.
pub fn builtin_signature() -> Signature {
    Signature {
        sorts: BUILTIN_SORTS.iter().map(|s| s.to_string()).collect(),
        consts: builtin_table()
            .into_iter()
            .map(|(n, ty)| (n.to_string(), ty))
            .collect(),
    }
}

impl Default for Signature {
    fn default() -> Self {
        builtin_signature()
    }
}

impl Signature {
    pub fn builtin() -> Signature {
        builtin_signature()
    }

    /// Type of a constant; numerals are the literals of `N`.
    pub fn lookup(&self, name: &str) -> Option<Type> {
        if is_numeral(name) {
            return Some(Type::nat());
        }
        self.consts.get(name).cloned()
    }

    pub fn has_sort(&self, name: &str) -> bool {
        self.sorts.contains(name)
    }

    pub fn sorts(&self) -> impl Iterator<Item = &str> {
        self.sorts.iter().map(String::as_str)
    }

    pub fn constants(&self) -> impl Iterator<Item = (&str, &Type)> {
        self.consts.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn is_builtin_const(name: &str) -> bool {
        is_numeral(name) || builtin_names().contains(&name)
    }

    fn check_fresh(&self, name: &str) -> Result<(), SignatureError> {
        if BUILTIN_SORTS.contains(&name)
            || KEYWORDS.contains(&name)
            || Signature::is_builtin_const(name)
        {
            return Err(SignatureError::Reserved(name.to_string()));
        }
        if self.sorts.contains(name) || self.consts.contains_key(name) {
            return Err(SignatureError::Duplicate(name.to_string()));
        }
        Ok(())
    }

    pub fn declare_sort(&mut self, name: &str) -> Result<(), SignatureError> {
        self.check_fresh(name)?;
        self.sorts.insert(name.to_string());
        Ok(())
    }

    pub fn declare_const(&mut self, name: &str, ty: Type) -> Result<(), SignatureError> {
        self.check_fresh(name)?;
        if let Some(var) = ty.free_vars().into_iter().next() {
            return Err(SignatureError::OpenType {
                name: name.to_string(),
                var,
            });
        }
        let mut sorts = BTreeSet::new();
        ty.sort_names(&mut sorts);
        if let Some(sort) = sorts.into_iter().find(|s| !self.sorts.contains(s)) {
            return Err(SignatureError::UnknownSort {
                name: name.to_string(),
                sort,
            });
        }
        self.consts.insert(name.to_string(), ty);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantifiers_have_a_single_polymorphic_type() {
        let sig = builtin_signature();
        let expected = Type::pi("a", Type::arrow(Type::pred(Type::var("a")), Type::t()));
        assert!(sig.lookup("forall").unwrap().alpha_eq(&expected));
        assert!(sig.lookup("exists").unwrap().alpha_eq(&expected));
    }

    #[test]
    fn iota_selects_from_a_predicate() {
        let expected = Type::pi("a", Type::arrow(Type::pred(Type::var("a")), Type::var("a")));
        assert!(builtin_signature().lookup("iota").unwrap().alpha_eq(&expected));
    }

    #[test]
    fn unknown_constant_is_absent() {
        assert_eq!(builtin_signature().lookup("frobnicate"), None);
    }

    #[test]
    fn numerals_are_naturals() {
        assert_eq!(builtin_signature().lookup("12"), Some(Type::nat()));
    }

    #[test]
    fn builtin_types_are_closed() {
        for (name, ty) in builtin_signature().constants() {
            assert!(ty.is_closed(), "{name}");
        }
    }

    #[test]
    fn builtin_names_are_reserved() {
        let mut sig = builtin_signature();
        assert_eq!(
            sig.declare_sort("g"),
            Err(SignatureError::Reserved("g".into()))
        );
        assert_eq!(
            sig.declare_const("forall", Type::t()),
            Err(SignatureError::Reserved("forall".into()))
        );
        sig.declare_sort("e_phys").unwrap();
        assert_eq!(
            sig.declare_sort("e_phys"),
            Err(SignatureError::Duplicate("e_phys".into()))
        );
        assert!(matches!(
            sig.declare_const("k", Type::base("zz")),
            Err(SignatureError::UnknownSort { .. })
        ));
    }
}
