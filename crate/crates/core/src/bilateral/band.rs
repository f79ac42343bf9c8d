//! Shift-banded operators on a finite window of basis states.
//!
//! Every monomial `(a†)^p a^q K^s` maps `|n⟩` to a multiple of `|n+p-q⟩`, so
//! operators are stored as a few bands `shift -> coefficient per column`.
//! Alongside the values each operator carries its *reach*: the lowest and
//! highest offset any intermediate state visits while the operator acts.
//! A column is trustworthy only if that whole excursion stays inside the
//! window; identities are compared on those columns only.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Whether falling off the bottom of the window is a truncation artifact or
/// a genuine boundary (the Fock vacuum, where `a|0⟩ = 0` exactly).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LowerEdge {
    Physical,
    Truncated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub n_min: i64,
    pub n_max: i64,
    pub lower: LowerEdge,
}

impl Window {
    pub fn bilateral(n_min: i64, n_max: i64) -> Self {
        assert!(n_min <= n_max, "empty window");
        Self {
            n_min,
            n_max,
            lower: LowerEdge::Truncated,
        }
    }

    /// States `0..dim` with the vacuum as a physical lower edge.
    pub fn unilateral(dim: usize) -> Self {
        assert!(dim > 0, "empty window");
        Self {
            n_min: 0,
            n_max: dim as i64 - 1,
            lower: LowerEdge::Physical,
        }
    }

    pub fn len(&self) -> usize {
        (self.n_max - self.n_min + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn state(&self, j: usize) -> i64 {
        self.n_min + j as i64
    }

    pub fn index(&self, n: i64) -> Option<usize> {
        (self.n_min..=self.n_max)
            .contains(&n)
            .then(|| (n - self.n_min) as usize)
    }

    pub fn states(&self) -> impl Iterator<Item = i64> {
        self.n_min..=self.n_max
    }
}

/// Operator on a [`Window`] as shift bands plus reach bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct WordOperator {
    window: Window,
    // bands[s][j] = <n_j + s| X |n_j>
    bands: BTreeMap<i64, Vec<Complex64>>,
    reach: (i64, i64),
}

impl WordOperator {
    pub fn zero(window: Window) -> Self {
        Self {
            window,
            bands: BTreeMap::new(),
            reach: (0, 0),
        }
    }

    pub fn identity(window: Window) -> Self {
        Self::diagonal(window, |_| ONE)
    }

    pub fn diagonal(window: Window, f: impl Fn(i64) -> Complex64) -> Self {
        Self::shift(window, 0, f)
    }

    /// `|n⟩ ↦ f(n)|n + s⟩`; coefficients whose target leaves the window are
    /// dropped and the reach records the excursion.
    pub fn shift(window: Window, s: i64, f: impl Fn(i64) -> Complex64) -> Self {
        let band = window
            .states()
            .map(|n| {
                if window.index(n + s).is_some() {
                    f(n)
                } else {
                    ZERO
                }
            })
            .collect();
        let mut bands = BTreeMap::new();
        bands.insert(s, band);
        Self {
            window,
            bands,
            reach: (s.min(0), s.max(0)),
        }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// `(lowest, highest)` intermediate offset relative to the input state.
    pub fn reach(&self) -> (i64, i64) {
        self.reach
    }

    /// Number of states excluded at the `(bottom, top)` of the window.
    pub fn margin(&self) -> (usize, usize) {
        let lo = match self.window.lower {
            LowerEdge::Physical => 0,
            LowerEdge::Truncated => (-self.reach.0) as usize,
        };
        (lo, self.reach.1 as usize)
    }

    /// The single shift of a monomial-type operator.
    pub fn net_shift(&self) -> Option<i64> {
        if self.bands.len() == 1 {
            self.bands.keys().next().copied()
        } else {
            None
        }
    }

    pub fn shifts(&self) -> impl Iterator<Item = i64> + '_ {
        self.bands.keys().copied()
    }

    /// True when every intermediate state of `|n⟩` stays in the window.
    pub fn is_valid_at(&self, n: i64) -> bool {
        let lower_ok =
            self.window.lower == LowerEdge::Physical || n + self.reach.0 >= self.window.n_min;
        lower_ok && n + self.reach.1 <= self.window.n_max && self.window.index(n).is_some()
    }

    pub fn valid_states(&self) -> Vec<i64> {
        self.window
            .states()
            .filter(|&n| self.is_valid_at(n))
            .collect()
    }

    /// `⟨n + s| X |n⟩`.
    pub fn coeff(&self, s: i64, n: i64) -> Complex64 {
        match (self.bands.get(&s), self.window.index(n)) {
            (Some(b), Some(j)) => b[j],
            _ => ZERO,
        }
    }

    /// Image of `|n⟩` as `(state, coefficient)` pairs, zeros dropped.
    pub fn apply(&self, n: i64) -> Vec<(i64, Complex64)> {
        self.bands
            .keys()
            .map(|&s| (n + s, self.coeff(s, n)))
            .filter(|(_, c)| *c != ZERO)
            .collect()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            window: self.window,
            bands: self
                .bands
                .iter()
                .map(|(&s, b)| (s, b.iter().map(|x| x * c).collect()))
                .collect(),
            reach: self.reach,
        }
    }

    /// `self · rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.window, rhs.window, "operators on different windows");
        let len = self.window.len() as i64;
        let mut bands: BTreeMap<i64, Vec<Complex64>> = BTreeMap::new();
        let mut reach = rhs.reach;
        for (&sy, ycol) in &rhs.bands {
            reach.0 = reach.0.min(sy + self.reach.0);
            reach.1 = reach.1.max(sy + self.reach.1);
            for (&sx, xcol) in &self.bands {
                let out = bands
                    .entry(sx + sy)
                    .or_insert_with(|| vec![ZERO; len as usize]);
                for (j, y) in ycol.iter().enumerate() {
                    let jj = j as i64 + sy;
                    if *y != ZERO && (0..len).contains(&jj) {
                        out[j] += xcol[jj as usize] * y;
                    }
                }
            }
        }
        Self {
            window: self.window,
            bands,
            reach,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.window);
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    fn combine(&self, rhs: &Self, sign: f64) -> Self {
        assert_eq!(self.window, rhs.window, "operators on different windows");
        let mut bands = self.bands.clone();
        for (&s, b) in &rhs.bands {
            let out = bands
                .entry(s)
                .or_insert_with(|| vec![ZERO; self.window.len()]);
            for (o, x) in out.iter_mut().zip(b) {
                *o += x * sign;
            }
        }
        Self {
            window: self.window,
            bands,
            reach: (self.reach.0.min(rhs.reach.0), self.reach.1.max(rhs.reach.1)),
        }
    }

    /// `[self, rhs] = self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.compose(rhs) - &rhs.compose(self)
    }

    /// Column 2-norm of `|n⟩`'s image.
    pub fn column_norm(&self, n: i64) -> f64 {
        self.bands
            .keys()
            .map(|&s| self.coeff(s, n).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Dense matrix over the window basis (row = output state).
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let len = self.window.len();
        let mut m = DMatrix::from_element(len, len, ZERO);
        for (&s, b) in &self.bands {
            for (j, c) in b.iter().enumerate() {
                let i = j as i64 + s;
                if (0..len as i64).contains(&i) {
                    m[(i as usize, j)] = *c;
                }
            }
        }
        m
    }

    /// Band view of a dense matrix; `reach` must be supplied by the caller.
    pub fn from_dense(window: Window, m: &DMatrix<Complex64>, reach: (i64, i64)) -> Self {
        let len = window.len();
        assert_eq!(
            (m.nrows(), m.ncols()),
            (len, len),
            "matrix does not match window"
        );
        let mut bands: BTreeMap<i64, Vec<Complex64>> = BTreeMap::new();
        for j in 0..len {
            for i in 0..len {
                let c = m[(i, j)];
                if c != ZERO {
                    bands
                        .entry(i as i64 - j as i64)
                        .or_insert_with(|| vec![ZERO; len])[j] = c;
                }
            }
        }
        Self {
            window,
            bands,
            reach,
        }
    }
}

impl Mul for &WordOperator {
    type Output = WordOperator;
    fn mul(self, rhs: &WordOperator) -> WordOperator {
        self.compose(rhs)
    }
}

impl Add for &WordOperator {
    type Output = WordOperator;
    fn add(self, rhs: &WordOperator) -> WordOperator {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &WordOperator {
    type Output = WordOperator;
    fn sub(self, rhs: &WordOperator) -> WordOperator {
        self.combine(rhs, -1.0)
    }
}

impl Mul<Complex64> for &WordOperator {
    type Output = WordOperator;
    fn mul(self, c: Complex64) -> WordOperator {
        self.scale(c)
    }
}

/// Largest column norm of `x − y` over states where both are valid.
pub fn interior_residual(x: &WordOperator, y: &WordOperator) -> Result<f64> {
    let diff = x - y;
    let states: Vec<i64> = x
        .window
        .states()
        .filter(|&n| x.is_valid_at(n) && y.is_valid_at(n))
        .collect();
    if states.is_empty() {
        return Err(Error::EmptyInterior);
    }
    Ok(states
        .into_iter()
        .map(|n| diff.column_norm(n))
        .fold(0.0, f64::max))
}

/// Combined `(bottom, top)` margin of several operators.
pub fn joint_margin<'a>(ops: impl IntoIterator<Item = &'a WordOperator>) -> (usize, usize) {
    ops.into_iter()
        .map(WordOperator::margin)
        .fold((0, 0), |(a, b), (c, d)| (a.max(c), b.max(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn shift_composition_tracks_reach() {
        let w = Window::bilateral(-5, 5);
        let up = WordOperator::shift(w, 1, |_| ONE);
        let down = WordOperator::shift(w, -1, |n| c(n as f64));
        // down·up: go up first, then down
        let du = &down * &up;
        assert_eq!(du.reach(), (0, 1));
        assert_eq!(du.net_shift(), Some(0));
        assert_eq!(du.coeff(0, 2), c(3.0));
        // up·down: go down first
        let ud = &up * &down;
        assert_eq!(ud.reach(), (-1, 0));
        assert!(!ud.is_valid_at(-5));
        assert!(ud.is_valid_at(5));
        assert!(!du.is_valid_at(5));
    }

    #[test]
    fn residual_ignores_edge_columns() {
        let w = Window::bilateral(-4, 4);
        let up = WordOperator::shift(w, 1, |_| ONE);
        let down = WordOperator::shift(w, -1, |_| ONE);
        let prod = &up * &down;
        let id = WordOperator::identity(w);
        // the bottom column is corrupted by truncation but excluded
        assert_eq!(prod.coeff(0, -4), ZERO);
        assert_eq!(interior_residual(&prod, &id).unwrap(), 0.0);
        assert_eq!(prod.margin(), (1, 0));
    }

    #[test]
    fn residual_on_empty_interior_is_an_error() {
        let w = Window::bilateral(-1, 1);
        let far = WordOperator::shift(w, 3, |_| ONE);
        assert!(matches!(
            interior_residual(&far, &far),
            Err(Error::EmptyInterior)
        ));
    }

    #[test]
    fn physical_lower_edge_keeps_vacuum_column() {
        let w = Window::unilateral(6);
        let a = WordOperator::shift(w, -1, |n| c(n as f64));
        assert!(a.is_valid_at(0));
        assert_eq!(a.margin(), (0, 0));
    }

    #[test]
    fn dense_round_trip() {
        let w = Window::bilateral(-3, 3);
        let x = &WordOperator::shift(w, 2, |n| c(n as f64))
            + &WordOperator::diagonal(w, |n| Complex64::new(0.0, n as f64));
        let back = WordOperator::from_dense(w, &x.to_dense(), x.reach());
        assert_eq!(interior_residual(&x, &back).unwrap(), 0.0);
        let y = &x * &x;
        let dense = x.to_dense() * x.to_dense();
        let yb = WordOperator::from_dense(w, &dense, y.reach());
        assert!(interior_residual(&y, &yb).unwrap() < 1e-12);
    }
}
