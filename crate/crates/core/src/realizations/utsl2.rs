//! `U_t(sl(2))` from two sine-algebra generators.
//!
//! For a pair `(m, n)` with `m×n ≢ 0 (mod λ)`:
//!
//! ```text
//! t  = ζ^{-(m×n)}
//! X⁺ = (T_m + T_n)/(t − t⁻¹)      X⁻ = (T_{-m} + T_{-n})/(t − t⁻¹)
//! H  = T_{m−n}                    H⁻¹ = T_{n−m}
//! ```
//!
//! The bracket `[X⁺, X⁻]` is compared against both signs of
//! `(H − H⁻¹)/(t − t⁻¹)`.

use num_complex::Complex64;

use super::ffz::{ffz_generator, FfzIndex};
use super::residual_with_margin;
use crate::bilateral::{OscillatorBackend, WordOperator};
use crate::error::{Error, Result};
use crate::params::AlgebraParams;
use crate::report::{Candidate, Entry};
use crate::scalar::zeta;

/// Tolerance for checks that hold up to a single rounding of unit-modulus
/// products.
pub const EXACT_TOL: f64 = 1e-15;

#[derive(Clone, Debug)]
pub struct UtSl2Realization {
    pub xp: WordOperator,
    pub xm: WordOperator,
    pub h: WordOperator,
    pub hinv: WordOperator,
    pub t: Complex64,
    pub m: FfzIndex,
    pub n: FfzIndex,
    params: AlgebraParams,
    identity: WordOperator,
}

impl UtSl2Realization {
    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    /// `t − t⁻¹`.
    pub fn denominator(&self) -> Complex64 {
        self.t - self.t.inv()
    }
}

pub fn is_degenerate(lambda: usize, m: FfzIndex, n: FfzIndex) -> bool {
    m.wedge(n).rem_euclid(lambda as i64) == 0
}

pub fn utsl2_generators<B: OscillatorBackend + ?Sized>(
    rep: &B,
    m: FfzIndex,
    n: FfzIndex,
) -> Result<UtSl2Realization> {
    let lambda = rep.params().lambda();
    let wedge = m.wedge(n);
    if is_degenerate(lambda, m, n) {
        return Err(Error::DegenerateDeformation { wedge, lambda });
    }
    let t = zeta(-wedge, lambda);
    let inv_den = (t - t.inv()).inv();
    let xp = (&ffz_generator(rep, m)? + &ffz_generator(rep, n)?).scale(inv_den);
    let xm = (&ffz_generator(rep, -m)? + &ffz_generator(rep, -n)?).scale(inv_den);
    Ok(UtSl2Realization {
        xp,
        xm,
        h: ffz_generator(rep, m - n)?,
        hinv: ffz_generator(rep, n - m)?,
        t,
        m,
        n,
        params: rep.params().clone(),
        identity: rep.identity(),
    })
}

/// `h_inverse` (both orders, against [`EXACT_TOL`]), `conj_plus`,
/// `conj_minus` and `bracket`. The bracket candidates are `plus` (the
/// printed sign) and `minus`.
pub fn verify_utsl2(real: &UtSl2Realization, tol: f64) -> Result<Vec<Entry>> {
    let idx = vec![real.m.m1, real.m.m2, real.n.m1, real.n.m2];
    let entry = |id: &str, cands: Vec<Candidate>, tol: f64, margin| {
        Entry::new("utsl2", id, &real.params, idx.clone(), cands, tol, margin)
            .with_note(format!("t = {:.15}{:+.15}i", real.t.re, real.t.im))
    };
    let mut out = Vec::new();

    let (r1, m1) = residual_with_margin(&(&real.h * &real.hinv), &real.identity)?;
    let (r2, m2) = residual_with_margin(&(&real.hinv * &real.h), &real.identity)?;
    out.push(entry(
        "utsl2_h_inverse",
        vec![Candidate::paper("paper", r1.max(r2))],
        EXACT_TOL,
        m1.max(m2),
    ));

    let t2 = real.t * real.t;
    let (r, m) = residual_with_margin(&(&(&real.h * &real.xp) * &real.hinv), &real.xp.scale(t2))?;
    out.push(entry(
        "utsl2_conj_plus",
        vec![Candidate::paper("paper", r)],
        tol,
        m,
    ));
    let (r, m) = residual_with_margin(
        &(&(&real.h * &real.xm) * &real.hinv),
        &real.xm.scale(t2.inv()),
    )?;
    out.push(entry(
        "utsl2_conj_minus",
        vec![Candidate::paper("paper", r)],
        tol,
        m,
    ));

    let bracket = real.xp.commutator(&real.xm);
    let rhs = (&real.h - &real.hinv).scale(real.denominator().inv());
    let (plus, m) = residual_with_margin(&bracket, &rhs)?;
    let (minus, _) = residual_with_margin(&bracket, &rhs.scale(Complex64::new(-1.0, 0.0)))?;
    out.push(entry(
        "utsl2_bracket",
        vec![
            Candidate::paper("plus", plus),
            Candidate::derived("minus", minus),
        ],
        tol,
        m,
    ));
    Ok(out)
}
