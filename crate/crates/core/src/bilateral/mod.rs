//! Windowed bilateral module: basis `|n⟩`, `n ∈ [n_min, n_max] ⊂ ℤ`.
//!
//! `a†|n⟩ = |n+1⟩`, `a|n⟩ = F(n)|n-1⟩`, `K|n⟩ = e^{2πin/λ}|n⟩`, with `F`
//! continued to negative `n` by the backward recursion. `a†` is invertible
//! here, which gives negative powers `(a†)^{-p}` a concrete meaning. This is
//! an algebraic module, not an inner-product space: `a` is not the adjoint
//! of `a†`.

mod band;

pub use band::{interior_residual, joint_margin, LowerEdge, Window, WordOperator};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::AlgebraParams;
use crate::scalar::unit_root;

/// Default window for the verification suites.
pub const DEFAULT_WINDOW: (i64, i64) = (-32, 32);

/// Minimal headroom demanded on each side of zero.
pub const MIN_HALF_WIDTH: i64 = 8;

/// Operators shared by every matrix backend, as band operators.
pub trait OscillatorBackend: Sync {
    fn params(&self) -> &AlgebraParams;
    fn window(&self) -> Window;
    fn annihilation(&self) -> &WordOperator;
    fn creation(&self) -> &WordOperator;
    fn cyclic(&self) -> &WordOperator;
    fn number(&self) -> &WordOperator;
    fn backend_name(&self) -> &'static str;

    /// `(a†)^p`; backends without an inverse reject `p < 0`.
    fn creation_power(&self, p: i64) -> Result<WordOperator>;

    fn identity(&self) -> WordOperator {
        WordOperator::identity(self.window())
    }

    /// `K^s` for any integer `s` (reduced mod λ).
    fn cyclic_power(&self, s: i64) -> WordOperator {
        let lambda = self.params().lambda() as i64;
        self.cyclic().pow(s.rem_euclid(lambda) as u32)
    }

    /// `(a†)^p a^q K^s`, built by composing elementary operators.
    fn monomial(&self, p: i64, q: u32, s: i64) -> Result<WordOperator> {
        let word =
            &(&self.creation_power(p)? * &self.annihilation().pow(q)) * &self.cyclic_power(s);
        if word.valid_states().is_empty() {
            return Err(Error::InsufficientWindow(format!(
                "(a†)^{p} a^{q} K^{s} has no valid column in [{}, {}]",
                self.window().n_min,
                self.window().n_max
            )));
        }
        Ok(word)
    }
}

#[derive(Clone, Debug)]
pub struct BilateralRep {
    params: AlgebraParams,
    window: Window,
    a: WordOperator,
    a_dag: WordOperator,
    a_dag_inv: WordOperator,
    k: WordOperator,
    number: WordOperator,
}

/// Build the bilateral module on `[n_min, n_max]`; needs `n_min ≤ -8` and
/// `n_max ≥ 8`.
pub fn build_bilateral(params: &AlgebraParams, n_min: i64, n_max: i64) -> Result<BilateralRep> {
    if n_min > -MIN_HALF_WIDTH || n_max < MIN_HALF_WIDTH {
        return Err(Error::WindowTooSmall {
            n_min,
            n_max,
            reason: format!("need n_min <= -{MIN_HALF_WIDTH} and n_max >= {MIN_HALF_WIDTH}"),
        });
    }
    let window = Window::bilateral(n_min, n_max);
    let lambda = params.lambda();
    let one = Complex64::new(1.0, 0.0);
    Ok(BilateralRep {
        a: WordOperator::shift(window, -1, |n| {
            Complex64::new(params.structure_function(n), 0.0)
        }),
        a_dag: WordOperator::shift(window, 1, |_| one),
        a_dag_inv: WordOperator::shift(window, -1, |_| one),
        k: WordOperator::diagonal(window, |n| unit_root(n, lambda)),
        number: WordOperator::diagonal(window, |n| Complex64::new(n as f64, 0.0)),
        params: params.clone(),
        window,
    })
}

impl BilateralRep {
    pub fn build(params: &AlgebraParams, n_min: i64, n_max: i64) -> Result<Self> {
        build_bilateral(params, n_min, n_max)
    }

    pub fn with_default_window(params: &AlgebraParams) -> Self {
        build_bilateral(params, DEFAULT_WINDOW.0, DEFAULT_WINDOW.1)
            .expect("default window is large enough")
    }

    pub fn a(&self) -> &WordOperator {
        &self.a
    }

    pub fn a_dag(&self) -> &WordOperator {
        &self.a_dag
    }

    pub fn a_dag_inv(&self) -> &WordOperator {
        &self.a_dag_inv
    }

    pub fn k(&self) -> &WordOperator {
        &self.k
    }

    /// `I + Σ_r γ_r K^r`.
    pub fn deformed_identity(&self) -> WordOperator {
        let mut out = self.identity();
        for r in 1..self.params.lambda() {
            out = &out + &(&self.cyclic_power(r as i64) * self.params.gamma_r(r));
        }
        out
    }
}

impl OscillatorBackend for BilateralRep {
    fn params(&self) -> &AlgebraParams {
        &self.params
    }

    fn window(&self) -> Window {
        self.window
    }

    fn annihilation(&self) -> &WordOperator {
        &self.a
    }

    fn creation(&self) -> &WordOperator {
        &self.a_dag
    }

    fn cyclic(&self) -> &WordOperator {
        &self.k
    }

    fn number(&self) -> &WordOperator {
        &self.number
    }

    fn backend_name(&self) -> &'static str {
        "bilateral"
    }

    fn creation_power(&self, p: i64) -> Result<WordOperator> {
        Ok(if p >= 0 {
            self.a_dag.pow(p as u32)
        } else {
            self.a_dag_inv.pow((-p) as u32)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn window_too_small() {
        let p = AlgebraParams::undeformed(2).unwrap();
        assert!(matches!(
            build_bilateral(&p, -4, 4),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn undeformed_annihilator_on_negative_states() {
        let p = AlgebraParams::undeformed(2).unwrap();
        let rep = build_bilateral(&p, -8, 8).unwrap();
        assert_eq!(rep.a().apply(-2), vec![(-3, c(-2.0, 0.0))]);
    }

    #[test]
    fn calogero_backward_recursion() {
        let r = 0.3;
        let rep = BilateralRep::with_default_window(&AlgebraParams::calogero(r));
        // F(-1) = -(1 + α_1) = -(1 - r)
        assert_eq!(rep.a().coeff(-1, -1), c(-(1.0 - r), 0.0));
    }

    #[test]
    fn defining_commutator_exact_for_dyadic_gamma() {
        // λ = 2 and λ = 4 with real γ use exactly representable phases
        for params in [
            AlgebraParams::calogero(0.5),
            AlgebraParams::new(4, vec![c(0.25, 0.0), c(-0.5, 0.0), c(0.25, 0.0)]).unwrap(),
        ] {
            let rep = BilateralRep::with_default_window(&params);
            let lhs = rep.a().commutator(rep.a_dag());
            assert_eq!(
                interior_residual(&lhs, &rep.deformed_identity()).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn defining_relations_on_negative_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for lambda in 2..=5 {
            let params = AlgebraParams::random_admissible(lambda, &mut rng, 0.3);
            let rep = BilateralRep::with_default_window(&params);
            let lhs = rep.a().commutator(rep.a_dag());
            assert!(interior_residual(&lhs, &rep.deformed_identity()).unwrap() < 1e-14);

            let twist = unit_root(-1, lambda);
            let adk = rep.a_dag() * rep.k();
            let kad = &(rep.k() * rep.a_dag()) * twist;
            assert!(interior_residual(&adk, &kad).unwrap() < 1e-15);

            let na = rep.number().commutator(rep.a_dag());
            assert_eq!(interior_residual(&na, rep.a_dag()).unwrap(), 0.0);
            let klam = rep.cyclic_power(lambda as i64);
            assert!(interior_residual(&klam, &rep.identity()).unwrap() < 1e-15);
            // a^dag inverse is two-sided on the interior
            let id = rep.identity();
            assert_eq!(
                interior_residual(&(rep.a_dag() * rep.a_dag_inv()), &id).unwrap(),
                0.0
            );
            assert_eq!(
                interior_residual(&(rep.a_dag_inv() * rep.a_dag()), &id).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn monomial_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let params = AlgebraParams::random_admissible(3, &mut rng, 0.3);
        let rep = BilateralRep::with_default_window(&params);
        let id = rep.monomial(0, 0, 0).unwrap();
        assert_eq!(interior_residual(&id, &rep.identity()).unwrap(), 0.0);

        let num = rep.monomial(1, 1, 0).unwrap();
        for n in -20..20 {
            assert_eq!(
                num.apply(n),
                vec![(n, c(params.structure_function(n), 0.0))]
                    .into_iter()
                    .filter(|(_, x)| *x != c(0.0, 0.0))
                    .collect::<Vec<_>>()
            );
        }

        let w = rep.monomial(-2, 0, 1).unwrap();
        assert_eq!(w.net_shift(), Some(-2));
        for n in -20..20 {
            assert_eq!(w.apply(n), vec![(n - 2, unit_root(n, 3))]);
        }
    }

    #[test]
    fn monomial_matches_direct_action_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let params = AlgebraParams::random_admissible(4, &mut rng, 0.3);
        let rep = BilateralRep::with_default_window(&params);
        for (p, q, s) in [(3, 2, 1), (-3, 1, 3), (0, 3, -1), (-1, 0, 2)] {
            let w = rep.monomial(p, q, s).unwrap();
            assert_eq!(w.net_shift(), Some(p - q as i64));
            for n in w.valid_states() {
                let mut coeff = unit_root(s * n, 4);
                for k in 0..q as i64 {
                    coeff *= params.structure_function(n - k);
                }
                let got = w.coeff(p - q as i64, n);
                assert!((got - coeff).norm() < 1e-12, "({p},{q},{s}) at {n}");
            }
        }
    }

    #[test]
    fn monomial_too_wide_for_window() {
        let rep = build_bilateral(&AlgebraParams::undeformed(2).unwrap(), -8, 8).unwrap();
        assert!(matches!(
            rep.monomial(17, 0, 0),
            Err(Error::InsufficientWindow(_))
        ));
    }

    #[test]
    fn window_growth_does_not_change_interior_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let params = AlgebraParams::random_admissible(3, &mut rng, 0.3);
        let small = build_bilateral(&params, -10, 10).unwrap();
        let large = build_bilateral(&params, -30, 30).unwrap();
        for (p, q, s) in [(2, 3, 1), (-2, 2, 2), (1, 0, 1)] {
            let ws = small.monomial(p, q, s).unwrap();
            let wl = large.monomial(p, q, s).unwrap();
            for n in ws.valid_states() {
                assert_eq!(ws.apply(n), wl.apply(n));
            }
        }
    }

    #[test]
    fn dropping_the_deformation_is_detected() {
        let params = AlgebraParams::new(3, vec![c(0.2, 0.1), c(0.2, -0.1)]).unwrap();
        let rep = BilateralRep::with_default_window(&params);
        let lhs = rep.a() * rep.a_dag();
        let rhs = rep.a_dag() * rep.a();
        let expected = params
            .alpha()
            .iter()
            .map(|a| (1.0 + a).abs())
            .fold(0.0, f64::max);
        let res = interior_residual(&lhs, &rhs).unwrap();
        assert!((res - expected).abs() < 1e-12);
    }
}
