//! Deformation parameters `γ_r`, their Fourier partners `α_μ`, and the
//! structure function shared by every representation.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::unit_root;
use crate::CONSTRAINT_TOL;

/// `λ` together with `γ_1 … γ_{λ-1}` and the derived real `α_0 … α_{λ-1}`.
///
/// Construction validates `γ_r* = γ_{λ-r}`; after that the value is
/// immutable.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraParams {
    lambda: usize,
    gamma: Vec<Complex64>,
    alpha: Vec<f64>,
    // partial sums S_μ = Σ_{ν<μ} α_ν, μ = 0..=λ-1
    alpha_prefix: Vec<f64>,
}

impl AlgebraParams {
    /// `gamma[r-1]` holds `γ_r`.
    pub fn new(lambda: usize, gamma: Vec<Complex64>) -> Result<Self> {
        if lambda < 2 {
            return Err(Error::InvalidLambda(lambda));
        }
        if gamma.len() != lambda - 1 {
            return Err(Error::InvalidParams(format!(
                "expected {} gamma entries for lambda = {lambda}, got {}",
                lambda - 1,
                gamma.len()
            )));
        }
        if let Some(g) = gamma
            .iter()
            .find(|g| !g.re.is_finite() || !g.im.is_finite())
        {
            return Err(Error::InvalidParams(format!("non-finite gamma entry {g}")));
        }
        for r in 1..lambda {
            let lhs = gamma[r - 1].conj();
            let rhs = gamma[lambda - r - 1];
            if (lhs - rhs).norm() > CONSTRAINT_TOL {
                return Err(Error::InvalidParams(format!(
                    "conjugation constraint violated: conj(gamma_{r}) = {lhs} but gamma_{} = {rhs}",
                    lambda - r
                )));
            }
        }
        let alpha = alpha_from_gamma(lambda, &gamma)?;
        let mut alpha_prefix = Vec::with_capacity(lambda);
        let mut acc = 0.0;
        for a in &alpha {
            alpha_prefix.push(acc);
            acc += a;
        }
        Ok(Self {
            lambda,
            gamma,
            alpha,
            alpha_prefix,
        })
    }

    /// The undeformed algebra, `γ ≡ 0`.
    pub fn undeformed(lambda: usize) -> Result<Self> {
        Self::new(
            lambda,
            vec![Complex64::new(0.0, 0.0); lambda.saturating_sub(1)],
        )
    }

    /// `λ = 2` with `γ_1 = r` (the Calogero–Vasiliev oscillator).
    pub fn calogero(r: f64) -> Self {
        Self::new(2, vec![Complex64::new(r, 0.0)]).expect("real gamma_1 is admissible")
    }

    /// Seeded admissible draw: independent components in `[-scale, scale]`
    /// for `r < λ-r`, partners set by conjugation, `γ_{λ/2}` real.
    pub fn random_admissible<R: Rng + ?Sized>(lambda: usize, rng: &mut R, scale: f64) -> Self {
        let mut gamma = vec![Complex64::new(0.0, 0.0); lambda - 1];
        for r in 1..lambda {
            let partner = lambda - r;
            if r < partner {
                let g = Complex64::new(
                    rng.random_range(-scale..=scale),
                    rng.random_range(-scale..=scale),
                );
                gamma[r - 1] = g;
                gamma[partner - 1] = g.conj();
            } else if r == partner {
                gamma[r - 1] = Complex64::new(rng.random_range(-scale..=scale), 0.0);
            }
        }
        Self::new(lambda, gamma).expect("constructed to satisfy the conjugation constraint")
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// `γ_1 … γ_{λ-1}`.
    pub fn gamma(&self) -> &[Complex64] {
        &self.gamma
    }

    /// `γ_r` for `1 ≤ r ≤ λ-1`.
    pub fn gamma_r(&self, r: usize) -> Complex64 {
        self.gamma[r - 1]
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// `α_{n mod λ}` for any integer `n`.
    pub fn alpha_at(&self, n: i64) -> f64 {
        self.alpha[n.rem_euclid(self.lambda as i64) as usize]
    }

    pub fn is_undeformed(&self) -> bool {
        self.gamma.iter().all(|g| g.norm() == 0.0)
    }

    /// Eigenvalue of `a†a` on `|n⟩`, for every integer `n`.
    ///
    /// `F(0) = 0` and `F(n+1) - F(n) = 1 + α_{n mod λ}`. Full periods of `α`
    /// sum to zero, so `F(kλ + μ) = kλ + μ + Σ_{ν<μ} α_ν`; negative `n` is
    /// the same recursion run backward.
    pub fn structure_function(&self, n: i64) -> f64 {
        let mu = n.rem_euclid(self.lambda as i64) as usize;
        n as f64 + self.alpha_prefix[mu]
    }

    /// Shifts `j_μ` in `H₀ = N + ½ + Σ_μ j_μ P_μ`: `j_μ = Σ_{ν<μ} α_ν + ½α_μ`.
    pub fn j_coefficients(&self) -> Vec<f64> {
        self.alpha
            .iter()
            .zip(&self.alpha_prefix)
            .map(|(a, s)| s + 0.5 * a)
            .collect()
    }

    /// The shifts written with `γ` in place of `α` (`j_0 = ½α_0`,
    /// `j_μ = Σ_{ν=1}^{μ-1} γ_ν + ½γ_μ`, `γ_0 := 0`). Kept for comparison
    /// only; the real spectrum follows [`Self::j_coefficients`].
    pub fn j_coefficients_gamma_literal(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.lambda);
        out.push(Complex64::new(0.5 * self.alpha[0], 0.0));
        let mut acc = Complex64::new(0.0, 0.0);
        for mu in 1..self.lambda {
            out.push(acc + 0.5 * self.gamma[mu - 1]);
            acc += self.gamma[mu - 1];
        }
        out
    }

    /// True iff `F(n) > 0` for `1 ≤ n ≤ dim - 1`, i.e. square-root
    /// normalization of a `dim`-state Fock window is available.
    pub fn is_unitary_on(&self, dim: usize) -> bool {
        (1..dim as i64).all(|n| self.structure_function(n) > 0.0)
    }
}

/// `α_μ = Σ_{r=1}^{λ-1} e^{2πiμr/λ} γ_r` for `μ = 0..λ-1`.
///
/// Fails if the result is not real (the conjugation constraint is
/// violated) or does not sum to zero, both to [`CONSTRAINT_TOL`].
pub fn alpha_from_gamma(lambda: usize, gamma: &[Complex64]) -> Result<Vec<f64>> {
    if lambda < 2 {
        return Err(Error::InvalidLambda(lambda));
    }
    if gamma.len() != lambda - 1 {
        return Err(Error::InvalidParams(format!(
            "expected {} gamma entries, got {}",
            lambda - 1,
            gamma.len()
        )));
    }
    let mut alpha = Vec::with_capacity(lambda);
    for mu in 0..lambda {
        let value: Complex64 = (1..lambda)
            .map(|r| unit_root((mu * r) as i64, lambda) * gamma[r - 1])
            .sum();
        if value.im.abs() > CONSTRAINT_TOL {
            return Err(Error::InvalidParams(format!(
                "alpha_{mu} = {value} is not real; gamma violates the conjugation constraint"
            )));
        }
        alpha.push(value.re);
    }
    let total: f64 = alpha.iter().sum();
    if total.abs() > CONSTRAINT_TOL {
        return Err(Error::InvalidParams(format!(
            "alpha sums to {total}, not 0"
        )));
    }
    Ok(alpha)
}

/// Inverse transform: `γ_r = (1/λ) Σ_μ e^{-2πiμr/λ} α_μ`.
///
/// The output satisfies `γ_r* = γ_{λ-r}` exactly (partners are written as
/// conjugates of each other).
pub fn gamma_from_alpha(lambda: usize, alpha: &[f64]) -> Result<Vec<Complex64>> {
    if lambda < 2 {
        return Err(Error::InvalidLambda(lambda));
    }
    if alpha.len() != lambda {
        return Err(Error::InvalidParams(format!(
            "expected {lambda} alpha entries, got {}",
            alpha.len()
        )));
    }
    let total: f64 = alpha.iter().sum();
    let scale: f64 = alpha.iter().map(|a| a.abs()).sum::<f64>().max(1.0);
    if total.abs() > CONSTRAINT_TOL * scale {
        return Err(Error::InvalidParams(format!(
            "alpha must sum to zero, got {total}"
        )));
    }
    let mut gamma = vec![Complex64::new(0.0, 0.0); lambda - 1];
    for r in 1..lambda {
        let partner = lambda - r;
        if r > partner {
            continue;
        }
        let g: Complex64 = alpha
            .iter()
            .enumerate()
            .map(|(mu, &a)| unit_root(-((mu * r) as i64), lambda) * a)
            .sum::<Complex64>()
            / lambda as f64;
        if r == partner {
            gamma[r - 1] = Complex64::new(g.re, 0.0);
        } else {
            gamma[r - 1] = g;
            gamma[partner - 1] = g.conj();
        }
    }
    Ok(gamma)
}
