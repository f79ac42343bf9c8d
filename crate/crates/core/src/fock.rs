//! Truncated Fock-space matrices for `a`, `a†`, `N`, `K`, `P_μ`, the
//! oscillator Hamiltonian and its spectrum.
//!
//! Identities are asserted only on columns whose images stay inside the
//! `D`-state window: the margin of a check is the largest upward shift of any
//! operator word appearing in it.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::bilateral::{OscillatorBackend, Window, WordOperator};
use crate::error::{Error, Result};
use crate::params::AlgebraParams;
use crate::report::{Candidate, Entry, Margin};
use crate::scalar::unit_root;

type Mat = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// `a†|n⟩ = √F(n+1)|n+1⟩`, `a = (a†)^†`; needs `F(n) > 0`.
    SquareRoot,
    /// `a†|n⟩ = |n+1⟩`, `a|n⟩ = F(n)|n-1⟩`; always available.
    Module,
}

#[derive(Clone, Debug)]
pub struct TruncatedFockRep {
    params: AlgebraParams,
    dim: usize,
    normalization: Normalization,
    a: Mat,
    a_dag: Mat,
    number: Mat,
    k: Mat,
    projectors: Vec<Mat>,
    // band views for the shared backend interface
    a_band: WordOperator,
    a_dag_band: WordOperator,
    k_band: WordOperator,
    number_band: WordOperator,
}

/// Build with the normalization picked by the positivity of `F`.
pub fn build_fock_rep(params: &AlgebraParams, dim: usize) -> Result<TruncatedFockRep> {
    let norm = if params.is_unitary_on(dim) {
        Normalization::SquareRoot
    } else {
        Normalization::Module
    };
    build_fock_rep_with(params, dim, norm)
}

/// Build with an explicit normalization; square root is refused when some
/// `F(n) ≤ 0` inside the window.
pub fn build_fock_rep_with(
    params: &AlgebraParams,
    dim: usize,
    normalization: Normalization,
) -> Result<TruncatedFockRep> {
    let lambda = params.lambda();
    if dim < 2 * lambda {
        return Err(Error::DimTooSmall {
            dim,
            lambda,
            min: 2 * lambda,
        });
    }
    if normalization == Normalization::SquareRoot && !params.is_unitary_on(dim) {
        return Err(Error::InvalidParams(
            "square-root normalization needs F(n) > 0 on the whole window".into(),
        ));
    }
    let f = |n: usize| params.structure_function(n as i64);
    let mut a = Mat::from_element(dim, dim, ZERO);
    let mut a_dag = Mat::from_element(dim, dim, ZERO);
    for n in 0..dim - 1 {
        let (up, down) = match normalization {
            Normalization::SquareRoot => {
                let s = f(n + 1).sqrt();
                (s, s)
            }
            Normalization::Module => (1.0, f(n + 1)),
        };
        a_dag[(n + 1, n)] = Complex64::new(up, 0.0);
        a[(n, n + 1)] = Complex64::new(down, 0.0);
    }
    let number = Mat::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new(i as f64, 0.0)
        } else {
            ZERO
        }
    });
    let k = Mat::from_fn(dim, dim, |i, j| {
        if i == j {
            unit_root(i as i64, lambda)
        } else {
            ZERO
        }
    });
    let projectors = (0..lambda)
        .map(|mu| {
            Mat::from_fn(dim, dim, |i, j| {
                if i == j && i % lambda == mu {
                    ONE
                } else {
                    ZERO
                }
            })
        })
        .collect();
    let window = Window::unilateral(dim);
    Ok(TruncatedFockRep {
        a_band: WordOperator::from_dense(window, &a, (-1, 0)),
        a_dag_band: WordOperator::from_dense(window, &a_dag, (0, 1)),
        k_band: WordOperator::from_dense(window, &k, (0, 0)),
        number_band: WordOperator::from_dense(window, &number, (0, 0)),
        params: params.clone(),
        dim,
        normalization,
        a,
        a_dag,
        number,
        k,
        projectors,
    })
}

impl TruncatedFockRep {
    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn is_unitary(&self) -> bool {
        self.normalization == Normalization::SquareRoot
    }

    pub fn a(&self) -> &Mat {
        &self.a
    }

    pub fn a_dag(&self) -> &Mat {
        &self.a_dag
    }

    pub fn n(&self) -> &Mat {
        &self.number
    }

    pub fn k(&self) -> &Mat {
        &self.k
    }

    pub fn projector(&self, mu: usize) -> &Mat {
        &self.projectors[mu % self.params.lambda()]
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(self.dim, self.dim)
    }

    /// Copy with `K|n⟩ = e^{2πi(factor·n + offset)/λ}|n⟩`. Fault injection
    /// for negative-control tests.
    pub fn with_k_phase(&self, factor: i64, offset: i64) -> Self {
        let lambda = self.params.lambda();
        let mut out = self.clone();
        out.k = Mat::from_fn(self.dim, self.dim, |i, j| {
            if i == j {
                unit_root(factor * i as i64 + offset, lambda)
            } else {
                ZERO
            }
        });
        out.k_band = WordOperator::from_dense(Window::unilateral(self.dim), &out.k, (0, 0));
        out
    }

    /// `H₀ = ½(a†a + a a†)`.
    pub fn hamiltonian(&self) -> Mat {
        (&self.a_dag * &self.a + &self.a * &self.a_dag) * Complex64::new(0.5, 0.0)
    }

    /// `N + ½ + Σ_μ j_μ P_μ` with the α-form shifts.
    pub fn hamiltonian_from_projectors(&self) -> Mat {
        let mut h = &self.number + self.identity() * Complex64::new(0.5, 0.0);
        for (mu, j) in self.params.j_coefficients().into_iter().enumerate() {
            h += &self.projectors[mu] * Complex64::new(j, 0.0);
        }
        h
    }

    /// `Σ_r γ_r K^r`.
    pub fn gamma_deformation(&self) -> Mat {
        let mut out = Mat::from_element(self.dim, self.dim, ZERO);
        let mut kp = self.identity();
        for r in 1..self.params.lambda() {
            kp = &kp * &self.k;
            out += &kp * self.params.gamma_r(r);
        }
        out
    }

    /// `Σ_μ α_μ P_μ`.
    pub fn alpha_deformation(&self) -> Mat {
        let mut out = Mat::from_element(self.dim, self.dim, ZERO);
        for (mu, &a) in self.params.alpha().iter().enumerate() {
            out += &self.projectors[mu] * Complex64::new(a, 0.0);
        }
        out
    }

    /// `P_μ = (1/λ) Σ_r e^{-2πiμr/λ} K^r`.
    pub fn projector_from_k(&self, mu: usize) -> Mat {
        let lambda = self.params.lambda();
        let mut out = Mat::from_element(self.dim, self.dim, ZERO);
        let mut kp = self.identity();
        for r in 0..lambda {
            out += &kp * unit_root(-((mu * r) as i64), lambda);
            kp = &kp * &self.k;
        }
        out / Complex64::new(lambda as f64, 0.0)
    }

    /// Diagonalized `H₀`, one eigenvalue per basis state (eigenvectors are
    /// matched to states by their dominant component).
    pub fn diagonalized_spectrum(&self) -> Vec<f64> {
        let eig = SymmetricEigen::new(self.hamiltonian());
        let mut by_state = vec![f64::NAN; self.dim];
        for (col, &value) in eig.eigenvalues.iter().enumerate() {
            let v = eig.eigenvectors.column(col);
            let (state, _) = v
                .iter()
                .enumerate()
                .map(|(i, c)| (i, c.norm()))
                .fold((0, -1.0), |best, x| if x.1 > best.1 { x } else { best });
            by_state[state] = value;
        }
        by_state
    }
}

impl OscillatorBackend for TruncatedFockRep {
    fn params(&self) -> &AlgebraParams {
        &self.params
    }

    fn window(&self) -> Window {
        Window::unilateral(self.dim)
    }

    fn annihilation(&self) -> &WordOperator {
        &self.a_band
    }

    fn creation(&self) -> &WordOperator {
        &self.a_dag_band
    }

    fn cyclic(&self) -> &WordOperator {
        &self.k_band
    }

    fn number(&self) -> &WordOperator {
        &self.number_band
    }

    fn backend_name(&self) -> &'static str {
        "fock"
    }

    fn creation_power(&self, p: i64) -> Result<WordOperator> {
        if p < 0 {
            return Err(Error::UnsupportedBackend(format!(
                "(a†)^{p}: negative powers need the bilateral backend"
            )));
        }
        Ok(self.a_dag_band.pow(p as u32))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumLevel {
    pub n: u64,
    pub k: u64,
    pub mu: u64,
    pub energy: f64,
}

/// `E_{kλ+μ} = kλ + μ + j_μ + ½` for `n = 0..=n_max`.
pub fn spectrum_closed_form(params: &AlgebraParams, n_max: u64) -> Vec<SpectrumLevel> {
    let lambda = params.lambda() as u64;
    let j = params.j_coefficients();
    (0..=n_max)
        .map(|n| {
            let (k, mu) = (n / lambda, n % lambda);
            SpectrumLevel {
                n,
                k,
                mu,
                energy: n as f64 + j[mu as usize] + 0.5,
            }
        })
        .collect()
}

/// Same formula with the `γ`-literal shifts; complex in general.
pub fn spectrum_gamma_literal(params: &AlgebraParams, n_max: u64) -> Vec<Complex64> {
    let lambda = params.lambda() as u64;
    let j = params.j_coefficients_gamma_literal();
    (0..=n_max)
        .map(|n| j[(n % lambda) as usize] + n as f64 + 0.5)
        .collect()
}

/// Largest column norm of `x − y` over columns `0..dim-margin`.
pub fn dense_residual(x: &Mat, y: &Mat, margin: usize) -> f64 {
    let diff = x - y;
    (0..diff.ncols().saturating_sub(margin))
        .map(|j| diff.column(j).norm())
        .fold(0.0, f64::max)
}

fn commutator(x: &Mat, y: &Mat) -> Mat {
    x * y - y * x
}

/// Check the deformed-oscillator relations on interior states.
pub fn verify_gdoa(rep: &TruncatedFockRep, tol: f64) -> Vec<Entry> {
    let lambda = rep.params.lambda();
    let id = rep.identity();
    let twist = unit_root(-1, lambda);
    let mut checks: Vec<(&str, f64, usize)> = Vec::new();

    checks.push((
        "number_creation",
        dense_residual(&commutator(rep.n(), rep.a_dag()), rep.a_dag(), 1),
        1,
    ));
    checks.push((
        "number_cyclic",
        dense_residual(
            &commutator(rep.n(), rep.k()),
            &Mat::zeros(rep.dim, rep.dim),
            0,
        ),
        0,
    ));
    let mut k_pow = id.clone();
    for _ in 0..lambda {
        k_pow = &k_pow * rep.k();
    }
    checks.push(("cyclic_order", dense_residual(&k_pow, &id, 0), 0));

    let comm = commutator(rep.a(), rep.a_dag());
    checks.push((
        "commutator_gamma_form",
        dense_residual(&comm, &(&id + rep.gamma_deformation()), 1),
        1,
    ));
    checks.push((
        "commutator_alpha_form",
        dense_residual(&comm, &(&id + rep.alpha_deformation()), 1),
        1,
    ));
    checks.push((
        "gamma_alpha_agreement",
        dense_residual(&rep.gamma_deformation(), &rep.alpha_deformation(), 0),
        0,
    ));
    checks.push((
        "creation_cyclic_twist",
        dense_residual(
            &(rep.a_dag() * rep.k()),
            &((rep.k() * rep.a_dag()) * twist),
            1,
        ),
        1,
    ));
    let shift_res = (0..lambda)
        .map(|mu| {
            dense_residual(
                &(rep.a_dag() * rep.projector(mu)),
                &(rep.projector(mu + 1) * rep.a_dag()),
                1,
            )
        })
        .fold(0.0, f64::max);
    checks.push(("creation_projector_shift", shift_res, 1));

    let mut orth = 0.0f64;
    for mu in 0..lambda {
        for nu in 0..lambda {
            let expected = if mu == nu {
                rep.projector(nu).clone()
            } else {
                Mat::zeros(rep.dim, rep.dim)
            };
            orth = orth.max(dense_residual(
                &(rep.projector(mu) * rep.projector(nu)),
                &expected,
                0,
            ));
        }
    }
    checks.push(("projector_orthogonality", orth, 0));
    let total = (0..lambda).fold(Mat::zeros(rep.dim, rep.dim), |acc, mu| {
        acc + rep.projector(mu)
    });
    checks.push(("projector_completeness", dense_residual(&total, &id, 0), 0));
    let from_k = (0..lambda)
        .map(|mu| dense_residual(&rep.projector_from_k(mu), rep.projector(mu), 0))
        .fold(0.0, f64::max);
    checks.push(("projector_from_cyclic", from_k, 0));

    checks
        .into_iter()
        .map(|(id, residual, margin)| {
            Entry::new(
                "gdoa",
                id,
                &rep.params,
                vec![rep.dim as i64],
                vec![Candidate::paper("paper", residual)],
                tol,
                Margin::new(0, margin),
            )
            .with_note(format!("normalization={:?}", rep.normalization))
        })
        .collect()
}
