//! Exact scalars: the group ring `ℚ[ℤ_{2λ}]` and polynomials in formal `γ_r`.
//!
//! Every phase that shows up in the C_λ relations is a power of
//! `ζ = e^{iπ/λ}`; `e^{2πi r/λ}` is `ζ^{2r}` and the sine-algebra prefactor
//! `e^{iπ m₁m₂/λ}` is `ζ^{m₁m₂}`. Working in the group ring (rather than the
//! cyclotomic field) keeps arithmetic trivially exact. Group-ring equality
//! implies equality of complex values, but not conversely: `1 + ζ² + … +
//! ζ^{2(λ-1)}` is a nonzero group-ring element that evaluates to zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `e^{2πik/n}`, exact at quarter turns and conjugate-symmetric in `k`.
pub fn unit_root(k: i64, n: usize) -> Complex64 {
    let n_i = n as i64;
    let kk = k.rem_euclid(n_i);
    if (4 * kk) % n_i == 0 {
        return match 4 * kk / n_i {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    if 2 * kk > n_i {
        return unit_root(n_i - kk, n).conj();
    }
    let theta = 2.0 * std::f64::consts::PI * kk as f64 / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// `ζ^k = e^{iπk/λ}`.
pub fn zeta(k: i64, lambda: usize) -> Complex64 {
    unit_root(k, 2 * lambda)
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Element `Σ_k c_k ζ^k` of `ℚ[ℤ_{2λ}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicScalar {
    coeffs: Vec<BigRational>,
}

impl CyclotomicScalar {
    pub fn zero(lambda: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); 2 * lambda],
        }
    }

    pub fn one(lambda: usize) -> Self {
        Self::from_rational(lambda, BigRational::one())
    }

    pub fn from_rational(lambda: usize, r: BigRational) -> Self {
        let mut out = Self::zero(lambda);
        out.coeffs[0] = r;
        out
    }

    pub fn from_integer(lambda: usize, n: i64) -> Self {
        Self::from_rational(lambda, BigRational::from_integer(BigInt::from(n)))
    }

    /// `ζ^k`, exponent reduced mod `2λ`.
    pub fn zeta_pow(lambda: usize, k: i64) -> Self {
        let mut out = Self::zero(lambda);
        let idx = k.rem_euclid(2 * lambda as i64) as usize;
        out.coeffs[idx] = BigRational::one();
        out
    }

    /// Build from `(exponent, rational)` pairs; exponents reduce mod `2λ`.
    pub fn from_terms<I>(lambda: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut out = Self::zero(lambda);
        let order = 2 * lambda as i64;
        for (k, c) in terms {
            let idx = k.rem_euclid(order) as usize;
            out.coeffs[idx] += c;
        }
        out
    }

    pub fn lambda(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiply by `ζ^k` (a cyclic shift of the coefficient vector).
    pub fn shift(&self, k: i64) -> Self {
        let order = self.order() as i64;
        let mut out = Self::zero(self.lambda());
        for (i, c) in self.nonzero_terms() {
            let j = (i as i64 + k).rem_euclid(order) as usize;
            out.coeffs[j] = c.clone();
        }
        out
    }

    /// Numeric value at `ζ = e^{iπ/λ}`.
    pub fn eval(&self) -> Complex64 {
        let lambda = self.lambda();
        self.nonzero_terms()
            .map(|(k, c)| zeta(k as i64, lambda) * rational_to_f64(c))
            .sum()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(
            self.order(),
            other.order(),
            "group-ring elements over different cyclic groups"
        );
    }
}

impl Add for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn add(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        self.check_compatible(rhs);
        CyclotomicScalar {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        self.check_compatible(rhs);
        CyclotomicScalar {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        CyclotomicScalar {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn mul(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        self.check_compatible(rhs);
        let order = self.order();
        let mut out = CyclotomicScalar::zero(self.lambda());
        for (i, a) in self.nonzero_terms() {
            for (j, b) in rhs.nonzero_terms() {
                out.coeffs[(i + j) % order] += a * b;
            }
        }
        out
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_zeta_power(k: usize) -> String {
    if k == 1 {
        "w".to_string()
    } else {
        format!("w^{k}")
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.nonzero_terms() {
            let negative = c.is_negative();
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => fmt_rational(&mag),
                (_, true) => fmt_zeta_power(k),
                (_, false) => format!("{}*{}", fmt_rational(&mag), fmt_zeta_power(k)),
            };
            parts.push((negative, body));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (neg, body)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial in commuting formal symbols `γ_1 … γ_{λ-1}` with group-ring
/// coefficients. The conjugation constraint `γ_r* = γ_{λ-r}` is not imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPolynomial {
    lambda: usize,
    terms: BTreeMap<Vec<u32>, CyclotomicScalar>,
}

impl GammaPolynomial {
    pub fn zero(lambda: usize) -> Self {
        Self {
            lambda,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(lambda: usize) -> Self {
        Self::constant(CyclotomicScalar::one(lambda))
    }

    pub fn constant(c: CyclotomicScalar) -> Self {
        let lambda = c.lambda();
        let mut out = Self::zero(lambda);
        out.insert(vec![0; lambda - 1], c);
        out
    }

    /// The formal symbol `γ_r`, `1 ≤ r ≤ λ-1`.
    pub fn symbol(lambda: usize, r: usize) -> Self {
        assert!(
            (1..lambda).contains(&r),
            "gamma index {r} outside 1..{lambda}"
        );
        let mut exps = vec![0; lambda - 1];
        exps[r - 1] = 1;
        let mut out = Self::zero(lambda);
        out.insert(exps, CyclotomicScalar::one(lambda));
        out
    }

    fn insert(&mut self, exps: Vec<u32>, c: CyclotomicScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    /// `(exponent vector, coefficient)` pairs, exponent vectors in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CyclotomicScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &CyclotomicScalar) -> Self {
        let mut out = Self::zero(self.lambda);
        for (e, x) in &self.terms {
            out.insert(e.clone(), x * c);
        }
        out
    }

    /// Evaluate at numeric `γ` (`gamma[r-1]` is `γ_r`).
    pub fn eval(&self, gamma: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: Complex64 = e.iter().zip(gamma).map(|(&k, g)| g.powu(k)).product();
                c.eval() * mono
            })
            .sum()
    }

    /// Largest `|eval(coefficient)|` over the γ-monomials: zero iff the
    /// polynomial vanishes in the cyclotomic field, identically in `γ`.
    pub fn max_field_abs(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.eval().norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &GammaPolynomial {
    type Output = GammaPolynomial;
    fn add(self, rhs: &GammaPolynomial) -> GammaPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GammaPolynomial {
    type Output = GammaPolynomial;
    fn sub(self, rhs: &GammaPolynomial) -> GammaPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), -c);
        }
        out
    }
}

impl Neg for &GammaPolynomial {
    type Output = GammaPolynomial;
    fn neg(self) -> GammaPolynomial {
        GammaPolynomial {
            lambda: self.lambda,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GammaPolynomial {
    type Output = GammaPolynomial;
    // exponent vectors add when monomials multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &GammaPolynomial) -> GammaPolynomial {
        let mut out = GammaPolynomial::zero(self.lambda);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }
}

fn fmt_monomial(exps: &[u32]) -> String {
    exps.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("g{}", i + 1)
            } else {
                format!("g{}^{}", i + 1, k)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for GammaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mono = fmt_monomial(e);
            let scalar = c.to_string();
            let single = c.nonzero_terms().count() == 1;
            let (neg, body) = if mono.is_empty() {
                match scalar.strip_prefix('-') {
                    Some(rest) if single => (true, rest.to_string()),
                    _ => (false, scalar),
                }
            } else if c.is_one() {
                (false, mono)
            } else if (-c).is_one() {
                (true, mono)
            } else if single {
                match scalar.strip_prefix('-') {
                    Some(rest) => (true, format!("{rest}*{mono}")),
                    None => (false, format!("{scalar}*{mono}")),
                }
            } else {
                (false, format!("({scalar})*{mono}"))
            };
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// `f_r^{(m)} = Σ_{s=0}^{m-1} ζ^{2rs}` for `m ≥ 0`, extended to negative `m`
/// as `-Σ_{s=m}^{-1} ζ^{2rs}` (the geometric-sum continuation).
pub fn phase_sum(lambda: usize, r: i64, m: i64) -> CyclotomicScalar {
    let one = BigRational::one();
    if m >= 0 {
        CyclotomicScalar::from_terms(lambda, (0..m).map(|s| (2 * r * s, one.clone())))
    } else {
        CyclotomicScalar::from_terms(lambda, (m..0).map(|s| (2 * r * s, -one.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn unit_root_is_exact_on_quarter_turns() {
        assert_eq!(unit_root(1, 4), Complex64::new(0.0, 1.0));
        assert_eq!(unit_root(3, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(unit_root(-1, 4), Complex64::new(0.0, -1.0));
        assert_eq!(unit_root(5, 3), unit_root(1, 3).conj());
    }

    #[test]
    fn exponents_reduce_mod_two_lambda() {
        let x = CyclotomicScalar::zeta_pow(3, 8);
        assert_eq!(x, CyclotomicScalar::zeta_pow(3, 2));
        assert_eq!(
            CyclotomicScalar::zeta_pow(3, -1),
            CyclotomicScalar::zeta_pow(3, 5)
        );
        let y = &x * &CyclotomicScalar::zeta_pow(3, 4);
        assert!(y.is_one());
    }

    #[test]
    fn full_root_sum_vanishes_only_in_the_field() {
        let lambda = 4;
        let f = phase_sum(lambda, 1, lambda as i64);
        assert!(!f.is_zero());
        assert!(f.eval().norm() < 1e-15);
    }

    #[test]
    fn negative_phase_sum_continues_geometric_series() {
        // f^{(j)} (ω^r - 1) = ω^{rj} - 1 for every integer j.
        let lambda = 5;
        for r in 1..lambda as i64 {
            for j in -6..7 {
                let lhs = phase_sum(lambda, r, j).eval() * (zeta(2 * r, lambda) - 1.0);
                let rhs = zeta(2 * r * j, lambda) - 1.0;
                assert!((lhs - rhs).norm() < 1e-13, "r={r} j={j}");
            }
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let lambda = rng.random_range(2..=6);
            let mut draw = || {
                CyclotomicScalar::from_terms(
                    lambda,
                    (0..3).map(|_| {
                        (
                            rng.random_range(0..(2 * lambda as i64)),
                            rat(rng.random_range(-9..=9), rng.random_range(1..=5)),
                        )
                    }),
                )
            };
            let x = draw();
            let y = draw();
            let prod = (&x * &y).eval();
            assert!((prod - x.eval() * y.eval()).norm() < 1e-14 * (1.0 + prod.norm()) * 100.0);
            let sum = (&x + &y).eval();
            assert!((sum - (x.eval() + y.eval())).norm() < 1e-13);
        }
    }

    #[test]
    fn display_forms() {
        let x = CyclotomicScalar::from_terms(3, [(0, rat(1, 1)), (2, rat(1, 1)), (4, rat(1, 1))]);
        assert_eq!(x.to_string(), "1 + w^2 + w^4");
        let y = CyclotomicScalar::from_terms(3, [(1, rat(-1, 2))]);
        assert_eq!(y.to_string(), "-1/2*w");
        assert_eq!(CyclotomicScalar::zero(2).to_string(), "0");

        let g = &GammaPolynomial::symbol(3, 1) * &GammaPolynomial::constant(x);
        assert_eq!(g.to_string(), "(1 + w^2 + w^4)*g1");
        let h = &GammaPolynomial::symbol(3, 2) - &GammaPolynomial::one(3);
        assert_eq!(h.to_string(), "-1 + g2");
    }

    #[test]
    fn gamma_polynomial_zero_is_canonical() {
        let g = GammaPolynomial::symbol(4, 2);
        let d = &g - &g;
        assert!(d.is_zero());
        assert_eq!(d, GammaPolynomial::zero(4));
    }

    #[test]
    fn gamma_polynomial_evaluation_commutes_with_ring_ops() {
        let lambda = 3;
        let g1 = GammaPolynomial::symbol(lambda, 1);
        let g2 = GammaPolynomial::symbol(lambda, 2);
        let w = GammaPolynomial::constant(CyclotomicScalar::zeta_pow(lambda, 1));
        let p = &(&g1 * &w) + &g2;
        let q = &(&g1 * &g2) - &w;
        let gamma = [Complex64::new(0.3, -0.2), Complex64::new(0.3, 0.2)];
        let lhs = (&p * &q).eval(&gamma);
        let rhs = p.eval(&gamma) * q.eval(&gamma);
        assert!((lhs - rhs).norm() < 1e-14);
    }
}
