//! The System F kernel: type and term representation, type checking,
//! substitution, normalization, α-equivalence and Π-instantiation.

mod alpha;
pub mod naive;
mod names;
mod reduce;
mod term;
mod typing;
mod types;
mod unify;

use thiserror::Error;

pub use names::fresh_name;
pub use reduce::{normalize, normalize_in, normalize_unchecked, Strategy};
pub use term::{Arg, Term};
pub use typing::{type_of, TypingContext};
pub use types::{Sort, Type, BUILTIN_SORTS, ENTITY, GROUP, NAT, PROP};
pub use unify::{instantiate_and_apply, instantiate_for};

/// Failures of the kernel operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("unbound name `{0}`")]
    UnboundName(String),
    #[error("unbound type variable `{0}`")]
    UnboundTypeVar(String),
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("cannot apply a function of type {function} to an argument of type {argument}")]
    ApplicationMismatch { function: Type, argument: Type },
    #[error("type abstraction over `{tyvar}` escapes through free variable `{var}`")]
    TyLamEscape { tyvar: String, var: String },
    #[error("type application to a term of non-Π type {0}")]
    NotAPi(Type),
    #[error("no instantiation makes {domain} match the argument type {argument}")]
    NoInstantiation { domain: Type, argument: Type },
    #[error("ill-typed term: {0}")]
    IllTyped(Box<KernelError>),
}
