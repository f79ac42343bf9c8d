//! Deciding operator identities.

use std::fmt;

use super::expr::OperatorExpr;
use super::normal::{NormalForm, Rewriter, WordKey};
use crate::error::Result;

/// Cyclotomic coefficients whose numeric value stays below this are taken
/// to vanish in the field.
pub const FIELD_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum ProofStatus {
    /// Normal forms are identical in the group ring.
    ExactGroupRing,
    /// Normal forms differ in the group ring but agree once the roots of
    /// unity are evaluated.
    FieldNumeric { max_residual: f64 },
    /// First word whose coefficient difference is nonzero in the field.
    Fail {
        witness: WordKey,
        difference: String,
        residual: f64,
    },
}

impl ProofStatus {
    pub fn holds(&self) -> bool {
        !matches!(self, ProofStatus::Fail { .. })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ProofStatus::ExactGroupRing)
    }
}

impl fmt::Display for ProofStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofStatus::ExactGroupRing => write!(f, "ExactGroupRing"),
            ProofStatus::FieldNumeric { max_residual } => {
                write!(f, "FieldNumeric({max_residual:.3e})")
            }
            ProofStatus::Fail {
                witness,
                difference,
                residual,
            } => write!(
                f,
                "Fail(witness ({}, {}, {}) = {witness}, lhs - rhs = {difference}, |.| = {residual:.3e})",
                witness.p, witness.q, witness.s
            ),
        }
    }
}

/// Compare two normal forms: group ring first, then the field.
pub fn prove_normal_forms(lhs: &NormalForm, rhs: &NormalForm) -> ProofStatus {
    if lhs == rhs {
        return ProofStatus::ExactGroupRing;
    }
    let diff = lhs.sub(rhs);
    let mut max_residual = 0.0f64;
    for (key, c) in diff.terms() {
        let r = c.max_field_abs();
        if r > FIELD_TOL {
            return ProofStatus::Fail {
                witness: *key,
                difference: c.to_string(),
                residual: r,
            };
        }
        max_residual = max_residual.max(r);
    }
    ProofStatus::FieldNumeric { max_residual }
}

/// Decide `lhs = rhs` in the algebra with cyclic order `lambda`.
pub fn prove_identity(
    lhs: &OperatorExpr,
    rhs: &OperatorExpr,
    lambda: usize,
) -> Result<ProofStatus> {
    let mut rw = Rewriter::new(lambda);
    let l = rw.normal_order_expr(lhs)?;
    let r = rw.normal_order_expr(rhs)?;
    Ok(prove_normal_forms(&l, &r))
}
