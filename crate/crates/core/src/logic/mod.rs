//! The many-sorted higher-order target logic: builtin signature,
//! simplification of composed formulas, and the canonical printer.

pub mod pretty;
mod signature;
mod simplify;

pub use pretty::{pretty, pretty_unicode, Printer};
pub use signature::{
    builtin_names, builtin_signature, is_numeral, Signature, SignatureError, KEYWORDS,
};
pub use simplify::{card_of_enumeration, is_blocked, simplify, simplify_unchecked};

use crate::kernel::Term;

/// A formula is a closed normal term of type `t`; no separate representation.
pub type Formula = Term;
