//! Sine-algebra generators `T_m = ζ^{m₁m₂}(a†)^{m₁}K^{m₂}`, `ζ = e^{iπ/λ}`.
//!
//! On `|n⟩` they act as `T_m|n⟩ = ζ^{m₁m₂ + 2nm₂}|n+m₁⟩`, which gives
//! `T_m T_n = ζ^{-(m×n)} T_{m+n}` and
//! `[T_m, T_n] = -2i sin(π(m×n)/λ) T_{m+n}` with `m×n = m₁n₂ − m₂n₁`.
//! Negative `m₁` need the bilateral backend.

use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::residual_with_margin;
use crate::bilateral::{OscillatorBackend, WordOperator};
use crate::error::Result;
use crate::report::{Candidate, Entry};
use crate::scalar::zeta;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FfzIndex {
    pub m1: i64,
    pub m2: i64,
}

impl FfzIndex {
    pub const fn new(m1: i64, m2: i64) -> Self {
        Self { m1, m2 }
    }

    /// Symplectic pairing `m₁n₂ − m₂n₁`.
    pub fn wedge(self, other: Self) -> i64 {
        self.m1 * other.m2 - self.m2 * other.m1
    }

    /// All indices with `|m₁|, |m₂| ≤ bound`, row-major.
    pub fn grid(bound: i64) -> Vec<Self> {
        (-bound..=bound)
            .flat_map(|m1| (-bound..=bound).map(move |m2| Self::new(m1, m2)))
            .collect()
    }
}

impl Add for FfzIndex {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.m1 + o.m1, self.m2 + o.m2)
    }
}

impl Sub for FfzIndex {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.m1 - o.m1, self.m2 - o.m2)
    }
}

impl Neg for FfzIndex {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.m1, -self.m2)
    }
}

impl std::fmt::Display for FfzIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.m1, self.m2)
    }
}

pub fn ffz_generator<B: OscillatorBackend + ?Sized>(rep: &B, m: FfzIndex) -> Result<WordOperator> {
    let lambda = rep.params().lambda();
    Ok(rep
        .monomial(m.m1, 0, m.m2)?
        .scale(zeta(m.m1 * m.m2, lambda)))
}

fn indices(m: FfzIndex, n: FfzIndex) -> Vec<i64> {
    vec![m.m1, m.m2, n.m1, n.m2]
}

/// `T_m T_n` against `ζ^{-(m×n)} T_{m+n}`.
pub fn verify_ffz_product<B: OscillatorBackend + ?Sized>(
    rep: &B,
    m: FfzIndex,
    n: FfzIndex,
    tol: f64,
) -> Result<Entry> {
    let lambda = rep.params().lambda();
    let lhs = &ffz_generator(rep, m)? * &ffz_generator(rep, n)?;
    let rhs = ffz_generator(rep, m + n)?.scale(zeta(-m.wedge(n), lambda));
    let (res, margin) = residual_with_margin(&lhs, &rhs)?;
    Ok(Entry::new(
        "ffz",
        "ffz_product",
        rep.params(),
        indices(m, n),
        vec![Candidate::paper("paper", res)],
        tol,
        margin,
    ))
}

/// `-2i sin(π(m×n)/λ)`.
pub fn sine_structure_constant(lambda: usize, m: FfzIndex, n: FfzIndex) -> Complex64 {
    let x = std::f64::consts::PI * m.wedge(n) as f64 / lambda as f64;
    Complex64::new(0.0, -2.0 * x.sin())
}

/// `[T_m, T_n]` against `-2i sin(π(m×n)/λ) T_{m+n}`.
pub fn verify_ffz_commutator<B: OscillatorBackend + ?Sized>(
    rep: &B,
    m: FfzIndex,
    n: FfzIndex,
    tol: f64,
) -> Result<Entry> {
    let lambda = rep.params().lambda();
    let lhs = ffz_generator(rep, m)?.commutator(&ffz_generator(rep, n)?);
    let rhs = ffz_generator(rep, m + n)?.scale(sine_structure_constant(lambda, m, n));
    let (res, margin) = residual_with_margin(&lhs, &rhs)?;
    Ok(Entry::new(
        "ffz",
        "ffz_commutator",
        rep.params(),
        indices(m, n),
        vec![Candidate::paper("paper", res)],
        tol,
        margin,
    ))
}

/// Generators for a whole index grid, built once.
pub struct FfzTable {
    pub bound: i64,
    ops: Vec<WordOperator>,
}

impl FfzTable {
    /// All `T_m` with `|m_i| ≤ 2·bound` so that sums of grid indices are
    /// available.
    pub fn build<B: OscillatorBackend + ?Sized>(rep: &B, bound: i64) -> Result<Self> {
        let ops = FfzIndex::grid(2 * bound)
            .into_iter()
            .map(|m| ffz_generator(rep, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { bound, ops })
    }

    pub fn get(&self, m: FfzIndex) -> &WordOperator {
        let b = 2 * self.bound;
        assert!(
            m.m1.abs() <= b && m.m2.abs() <= b,
            "index {m} outside table"
        );
        let side = (2 * b + 1) as usize;
        &self.ops[(m.m1 + b) as usize * side + (m.m2 + b) as usize]
    }
}

/// Product-law and commutator residuals of one index pair from a table.
pub fn pair_residuals(
    table: &FfzTable,
    lambda: usize,
    m: FfzIndex,
    n: FfzIndex,
) -> Result<(f64, f64)> {
    let (tm, tn, tmn) = (table.get(m), table.get(n), table.get(m + n));
    let product =
        crate::bilateral::interior_residual(&(tm * tn), &tmn.scale(zeta(-m.wedge(n), lambda)))?;
    let commutator = crate::bilateral::interior_residual(
        &tm.commutator(tn),
        &tmn.scale(sine_structure_constant(lambda, m, n)),
    )?;
    Ok((product, commutator))
}

/// `‖[T_m,T_n] + 2i(π/λ)(m×n)T_{m+n}‖ / ‖T_{m+n}‖` on the interior, i.e.
/// the distance of the sine bracket from its linearization.
pub fn classical_limit_deviation<B: OscillatorBackend + ?Sized>(
    rep: &B,
    m: FfzIndex,
    n: FfzIndex,
) -> Result<f64> {
    let lambda = rep.params().lambda() as f64;
    let x = std::f64::consts::PI / lambda * m.wedge(n) as f64;
    let tmn = ffz_generator(rep, m + n)?;
    let bracket = ffz_generator(rep, m)?.commutator(&ffz_generator(rep, n)?);
    let linear = tmn.scale(Complex64::new(0.0, -2.0 * x));
    let dev = crate::bilateral::interior_residual(&bracket, &linear)?;
    let norm = tmn
        .valid_states()
        .into_iter()
        .map(|s| tmn.column_norm(s))
        .fold(0.0, f64::max);
    Ok(dev / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilateral::{interior_residual, BilateralRep};
    use crate::params::AlgebraParams;

    fn rep(lambda: usize) -> BilateralRep {
        BilateralRep::with_default_window(&AlgebraParams::undeformed(lambda).unwrap())
    }

    #[test]
    fn wedge_is_antisymmetric_and_bilinear() {
        let (a, b, c) = (
            FfzIndex::new(1, 2),
            FfzIndex::new(-3, 1),
            FfzIndex::new(2, 2),
        );
        assert_eq!(a.wedge(b), -b.wedge(a));
        assert_eq!(a.wedge(a), 0);
        assert_eq!((a + b).wedge(c), a.wedge(c) + b.wedge(c));
    }

    #[test]
    fn zero_index_is_identity() {
        let r = rep(3);
        let t = ffz_generator(&r, FfzIndex::new(0, 0)).unwrap();
        assert_eq!(interior_residual(&t, &r.identity()).unwrap(), 0.0);
    }

    #[test]
    fn direct_action_examples() {
        let r = rep(3);
        let t = ffz_generator(&r, FfzIndex::new(1, 1)).unwrap();
        let got = t.apply(0);
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].0, 1);
        assert!((got[0].1 - Complex64::from_polar(1.0, std::f64::consts::PI / 3.0)).norm() < 1e-15);

        let r = rep(2);
        let t = ffz_generator(&r, FfzIndex::new(-1, 1)).unwrap();
        for n in -20..20i64 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(t.apply(n), vec![(n - 1, Complex64::new(0.0, -sign))]);
        }
    }

    #[test]
    fn product_law_on_examples() {
        let r = rep(4);
        let e = verify_ffz_product(&r, FfzIndex::new(1, 2), FfzIndex::new(2, 1), 1e-12).unwrap();
        assert!(e.passed());
        let m = FfzIndex::new(3, -1);
        let e = verify_ffz_product(&r, m, FfzIndex::new(0, 0), 0.0).unwrap();
        assert!(e.passed(), "n = 0 must be exact");
    }

    #[test]
    fn sign_flipped_phase_is_detected() {
        let r = rep(2);
        let (m, n) = (FfzIndex::new(1, 0), FfzIndex::new(0, 1));
        let lhs = &ffz_generator(&r, m).unwrap() * &ffz_generator(&r, n).unwrap();
        let wrong = ffz_generator(&r, m + n).unwrap().scale(zeta(m.wedge(n), 2));
        let res = interior_residual(&lhs, &wrong).unwrap();
        assert!(res >= 2.0 - 1e-12, "{res}");
    }

    #[test]
    fn commutator_vanishes_when_wedge_is_multiple_of_lambda() {
        let r = rep(3);
        let (m, n) = (FfzIndex::new(3, 0), FfzIndex::new(0, 1));
        let c = ffz_generator(&r, m)
            .unwrap()
            .commutator(&ffz_generator(&r, n).unwrap());
        let zero = WordOperator::zero(r.window());
        assert!(interior_residual(&c, &zero).unwrap() < 1e-15);
        assert!(verify_ffz_commutator(&r, FfzIndex::new(1, 0), n, 1e-12)
            .unwrap()
            .passed());
    }

    #[test]
    fn table_matches_direct_construction() {
        let r = rep(5);
        let table = FfzTable::build(&r, 2).unwrap();
        for m in FfzIndex::grid(4) {
            let direct = ffz_generator(&r, m).unwrap();
            assert_eq!(interior_residual(table.get(m), &direct).unwrap(), 0.0);
        }
        let (p, c) = pair_residuals(&table, 5, FfzIndex::new(2, -1), FfzIndex::new(1, 2)).unwrap();
        assert!(p < 1e-12 && c < 1e-12);
    }

    #[test]
    fn deviation_from_linear_bracket_is_cubic() {
        for lambda in [20usize, 40] {
            let r = rep(lambda);
            let dev =
                classical_limit_deviation(&r, FfzIndex::new(1, 0), FfzIndex::new(0, 1)).unwrap();
            let x = std::f64::consts::PI / lambda as f64;
            // exact value 2(x − sin x)
            assert!((dev - 2.0 * (x - x.sin())).abs() < 1e-13, "{dev}");
        }
    }
}
