//! Operator realizations built on the oscillator backends and the checks
//! that compare their brackets against candidate closed forms.
//!
//! * [`ffz`]: sine-algebra generators `T_m = ζ^{m₁m₂}(a†)^{m₁}K^{m₂}`,
//! * [`utsl2`]: the `U_t(sl(2))` quadruple built from a pair of `T`s,
//! * [`virasoro`]: `e_m = (a†)^{m+1}a` and its brackets,
//! * [`calogero`]: the `λ = 2` specializations.

pub mod calogero;
pub mod ffz;
pub mod utsl2;
pub mod virasoro;

pub use calogero::{verify_commutator_adjoint_pair, verify_l2_bracket, verify_l2_correction};
pub use ffz::{
    classical_limit_deviation, ffz_generator, verify_ffz_commutator, verify_ffz_product, FfzIndex,
};
pub use utsl2::{utsl2_generators, verify_utsl2, UtSl2Realization};
pub use virasoro::{
    verify_em_k, verify_virasoro, verify_witt_limit, virasoro_generator, VirasoroGenerator,
};

use crate::bilateral::{interior_residual, joint_margin, WordOperator};
use crate::error::Result;
use crate::report::Margin;

/// Interior residual together with the margin it was measured on.
pub(crate) fn residual_with_margin(x: &WordOperator, y: &WordOperator) -> Result<(f64, Margin)> {
    let res = interior_residual(x, y)?;
    Ok((res, joint_margin([x, y]).into()))
}
