//! Exact normal ordering over the word algebra generated by `a`, `a†`, `K`.
//!
//! Expressions are parsed from a small text grammar, desugared (brackets
//! become `XY − YX`) and rewritten to the canonical basis
//! `(a†)^p a^q K^s` with coefficients in `ℚ[ℤ_{2λ}][γ_1, …, γ_{λ-1}]`.
//! Identities are decided first by group-ring equality of normal forms and
//! then, failing that, by numeric evaluation of the cyclotomic coefficients.

mod eval;
mod expr;
mod normal;
mod parser;
mod prove;

pub use eval::evaluate_on_state;
pub use expr::{Atom, OperatorExpr, ScalarLit};
pub use normal::{normal_order, Letter, NormalForm, NormalFormJson, Rewriter, WordKey};
pub use parser::{parse, ParseError};
pub use prove::{prove_identity, prove_normal_forms, ProofStatus, FIELD_TOL};
