//! `λ = 2` specializations: `K` is the reflection, `f_1^{(m)} = ½(1 − (−1)^m)`.

use num_complex::Complex64;

use super::residual_with_margin;
use super::virasoro::virasoro_generator;
use crate::bilateral::OscillatorBackend;
use crate::error::{Error, Result};
use crate::report::{Candidate, Entry};

fn sign(m: i64) -> f64 {
    if m.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn require_lambda_two<B: OscillatorBackend + ?Sized>(rep: &B) -> Result<Complex64> {
    if rep.params().lambda() != 2 {
        return Err(Error::InvalidParams(format!(
            "reflection identities need lambda = 2, got {}",
            rep.params().lambda()
        )));
    }
    Ok(rep.params().gamma_r(1))
}

/// `[a, (a†)^m]` against `(m + ½(1−(−1)^m)γK)(a†)^{m−1}` with the bracket
/// on the left (printed) and on the right (derived), for `m = 1..=m_max`.
pub fn verify_commutator_adjoint_pair<B: OscillatorBackend + ?Sized>(
    rep: &B,
    m_max: u32,
    tol: f64,
) -> Result<Vec<Entry>> {
    let gamma = require_lambda_two(rep)?;
    (1..=m_max as i64)
        .map(|m| {
            let adm = rep.creation_power(m)?;
            let lhs = rep.annihilation().commutator(&adm);
            let ad_prev = rep.creation_power(m - 1)?;
            let factor = &rep.identity().scale(Complex64::new(m as f64, 0.0))
                + &rep.cyclic().scale(gamma * 0.5 * (1.0 - sign(m)));
            let (rl, margin) = residual_with_margin(&lhs, &(&factor * &ad_prev))?;
            let (rr, _) = residual_with_margin(&lhs, &(&ad_prev * &factor))?;
            Ok(Entry::new(
                "calogero-l2",
                "adjoint_power_commutator",
                rep.params(),
                vec![m],
                vec![
                    Candidate::paper("k_left", rl),
                    Candidate::derived("k_right", rr),
                ],
                tol,
                margin,
            ))
        })
        .collect()
}

/// Correction term of `[e_m, e_n]` beyond `(n−m)e_{m+n}`, against the
/// printed `½((−1)^n − (−1)^m)γ K e_{m+n}` and the derived
/// `−½((−1)^n − (−1)^m)γ e_{m+n} K`.
///
/// The two agree because `K e_{m+n} = (−1)^{m+n} e_{m+n} K` and the
/// coefficient vanishes unless `m + n` is odd.
pub fn verify_l2_correction<B: OscillatorBackend + ?Sized>(
    rep: &B,
    m: i64,
    n: i64,
    tol: f64,
) -> Result<Entry> {
    let gamma = require_lambda_two(rep)?;
    let e = |k| virasoro_generator(rep, k).map(|g| g.operator);
    let emn = e(m + n)?;
    let bracket = e(m)?.commutator(&e(n)?);
    let correction = &bracket - &emn.scale(Complex64::new((n - m) as f64, 0.0));
    let c = gamma * 0.5 * (sign(n) - sign(m));
    let k = rep.cyclic();
    let (rp, margin) = residual_with_margin(&correction, &(k * &emn).scale(c))?;
    let (rd, _) = residual_with_margin(&correction, &(&emn * k).scale(-c))?;
    Ok(Entry::new(
        "calogero-l2",
        "virasoro_reflection_correction",
        rep.params(),
        vec![m, n],
        vec![
            Candidate::paper("k_left", rp),
            Candidate::derived("k_right", rd),
        ],
        tol,
        margin,
    ))
}

/// Full `λ = 2` bracket with leading coefficient `m−n` (printed) and
/// `n−m` (derived), correction in the printed `K`-left form.
pub fn verify_l2_bracket<B: OscillatorBackend + ?Sized>(
    rep: &B,
    m: i64,
    n: i64,
    tol: f64,
) -> Result<Entry> {
    let gamma = require_lambda_two(rep)?;
    let e = |k| virasoro_generator(rep, k).map(|g| g.operator);
    let emn = e(m + n)?;
    let bracket = e(m)?.commutator(&e(n)?);
    let corr = (rep.cyclic() * &emn).scale(gamma * 0.5 * (sign(n) - sign(m)));
    let lead = Complex64::new((m - n) as f64, 0.0);
    let (rp, margin) = residual_with_margin(&bracket, &(&emn.scale(lead) + &corr))?;
    let (rd, _) = residual_with_margin(&bracket, &(&emn.scale(-lead) + &corr))?;
    Ok(Entry::new(
        "calogero-l2",
        "virasoro_reflection_bracket",
        rep.params(),
        vec![m, n],
        vec![Candidate::paper("m-n", rp), Candidate::derived("n-m", rd)],
        tol,
        margin,
    ))
}
