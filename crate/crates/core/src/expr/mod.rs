//! Canonical-form symbolic expressions over jet space.

mod canon;
mod eval;
mod index;
mod node;
mod parse;
mod render;
mod space;

pub use canon::{int, rat, ArbFnAtom, Atom, Expr, Factor, Func, JetAtom, Monomial, Rational, Term};
pub use eval::{evaluate, evaluate_numeric, evaluate_terms, EvalError, Scalar};
pub use index::{DepId, MultiIndex, VarId, VarSet};
pub use node::{canonicalize, DivisionByZero, Node};
pub use parse::{parse_node, ParseError, ParseErrorKind};
pub use space::{DeclarationError, FunctionDecl, Space};
