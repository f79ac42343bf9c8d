//! Normal ordering by letter-level rewriting.
//!
//! Rules, applied at the leftmost descent of a word (innermost-leftmost):
//!
//! ```text
//! a·a†  →  a†·a + I + Σ_r γ_r K^r
//! K·a†  →  ζ²  a†·K
//! K·a   →  ζ⁻² a·K
//! K^λ   →  I
//! ```
//!
//! Termination: order words by (number of `a`/`a†` letters, number of
//! `a`-before-`a†` pairs, number of non-`K` letters to the right of each
//! `K`). The first rule either keeps the letters and removes one inversion
//! or deletes an `a`/`a†` pair; the `K` rules keep the first two measures
//! and move a `K` strictly right. Every rewrite decreases the measure
//! lexicographically, and the normal forms `a†^p a^q K^s` are exactly the
//! words without descents.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::expr::{Atom, OperatorExpr, ScalarLit};
use crate::error::{Error, Result};
use crate::scalar::{CyclotomicScalar, GammaPolynomial};

/// Letters ordered as they appear in normal form: `a† < a < K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Ad,
    A,
    K,
}

/// Normal-ordered word `(a†)^p a^q K^s`, `0 ≤ s < λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WordKey {
    pub p: u32,
    pub q: u32,
    pub s: u32,
}

impl WordKey {
    pub fn new(p: u32, q: u32, s: u32) -> Self {
        Self { p, q, s }
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut w = Vec::with_capacity((self.p + self.q + self.s) as usize);
        w.extend(std::iter::repeat_n(Letter::Ad, self.p as usize));
        w.extend(std::iter::repeat_n(Letter::A, self.q as usize));
        w.extend(std::iter::repeat_n(Letter::K, self.s as usize));
        w
    }

    /// Net shift `p − q` on basis states.
    pub fn degree(&self) -> i64 {
        self.p as i64 - self.q as i64
    }
}

impl std::fmt::Display for WordKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("ad", self.p), ("a", self.q), ("K", self.s)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "I")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Canonical sum of normal-ordered words; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    lambda: usize,
    terms: BTreeMap<WordKey, GammaPolynomial>,
}

impl NormalForm {
    pub fn zero(lambda: usize) -> Self {
        Self {
            lambda,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(lambda: usize) -> Self {
        Self::scalar(GammaPolynomial::one(lambda))
    }

    pub fn scalar(c: GammaPolynomial) -> Self {
        let mut out = Self::zero(c.lambda());
        out.insert(WordKey::new(0, 0, 0), c);
        out
    }

    /// A single word with coefficient 1 (`s` reduced mod λ).
    pub fn word(lambda: usize, p: u32, q: u32, s: u32) -> Self {
        let mut out = Self::zero(lambda);
        out.insert(
            WordKey::new(p, q, s % lambda as u32),
            GammaPolynomial::one(lambda),
        );
        out
    }

    fn insert(&mut self, key: WordKey, c: GammaPolynomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WordKey, &GammaPolynomial)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &WordKey) -> Option<&GammaPolynomial> {
        self.terms.get(key)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            lambda: self.lambda,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GammaPolynomial) -> Self {
        let mut out = Self::zero(self.lambda);
        for (k, x) in &self.terms {
            out.insert(*k, x * c);
        }
        out
    }

    /// One line per word: `coefficient · word`.
    pub fn lines(&self) -> Vec<String> {
        if self.terms.is_empty() {
            return vec!["0".to_string()];
        }
        self.terms
            .iter()
            .map(|(k, c)| format!("{c} · {k}"))
            .collect()
    }

    pub fn to_json(&self) -> NormalFormJson {
        NormalFormJson {
            lambda: self.lambda,
            words: self
                .terms
                .iter()
                .map(|(k, c)| WordJson {
                    p: k.p,
                    q: k.q,
                    s: k.s,
                    terms: c
                        .terms()
                        .map(|(exps, scalar)| TermJson {
                            gamma: exps.clone(),
                            zeta: scalar
                                .nonzero_terms()
                                .map(|(k, r)| ZetaJson {
                                    k: k as u32,
                                    c: if r.is_integer() {
                                        r.numer().to_string()
                                    } else {
                                        format!("{}/{}", r.numer(), r.denom())
                                    },
                                })
                                .collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl std::fmt::Display for NormalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.lines().join("\n"))
    }
}

/// JSON shape of a normal form: a list of words with coefficient terms
/// `Σ (Σ_k c_k ζ^k) γ^gamma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormJson {
    pub lambda: usize,
    pub words: Vec<WordJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    pub p: u32,
    pub q: u32,
    pub s: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    /// exponents of `γ_1 … γ_{λ-1}`
    pub gamma: Vec<u32>,
    pub zeta: Vec<ZetaJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaJson {
    pub k: u32,
    /// rational coefficient as `n` or `n/d`
    pub c: String,
}

/// Rewrite engine for one `λ`, memoizing normal forms of whole words.
#[derive(Debug)]
pub struct Rewriter {
    lambda: usize,
    memo: HashMap<Vec<Letter>, NormalForm>,
    rewrites: u64,
}

impl Rewriter {
    pub fn new(lambda: usize) -> Self {
        assert!(lambda >= 2, "lambda must be at least 2");
        Self {
            lambda,
            memo: HashMap::new(),
            rewrites: 0,
        }
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Number of rule applications performed so far (memo hits excluded).
    pub fn rewrites(&self) -> u64 {
        self.rewrites
    }

    fn zeta(&self, k: i64) -> GammaPolynomial {
        GammaPolynomial::constant(CyclotomicScalar::zeta_pow(self.lambda, k))
    }

    /// Drop any run of λ consecutive `K`s.
    fn reduce_cyclic_runs(&self, word: &[Letter]) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(word.len());
        let mut run = 0;
        for &l in word {
            out.push(l);
            if l == Letter::K {
                run += 1;
                if run == self.lambda {
                    out.truncate(out.len() - self.lambda);
                    // a run may continue across the removed block
                    run = out.iter().rev().take_while(|&&x| x == Letter::K).count() % self.lambda;
                }
            } else {
                run = 0;
            }
        }
        out
    }

    pub fn normal_order_word(&mut self, word: &[Letter]) -> NormalForm {
        let word = self.reduce_cyclic_runs(word);
        if let Some(nf) = self.memo.get(&word) {
            return nf.clone();
        }
        let descent = word.windows(2).position(|w| w[0] > w[1]);
        let nf = match descent {
            None => {
                let count = |x: Letter| word.iter().filter(|&&l| l == x).count() as u32;
                NormalForm::word(
                    self.lambda,
                    count(Letter::Ad),
                    count(Letter::A),
                    count(Letter::K),
                )
            }
            Some(i) => {
                self.rewrites += 1;
                let (prefix, rest) = word.split_at(i);
                let suffix = &rest[2..];
                let splice = |mid: &[Letter]| -> Vec<Letter> {
                    let mut w = Vec::with_capacity(prefix.len() + mid.len() + suffix.len());
                    w.extend_from_slice(prefix);
                    w.extend_from_slice(mid);
                    w.extend_from_slice(suffix);
                    w
                };
                match (rest[0], rest[1]) {
                    (Letter::A, Letter::Ad) => {
                        let mut acc = self.normal_order_word(&splice(&[Letter::Ad, Letter::A]));
                        acc = acc.add(&self.normal_order_word(&splice(&[])));
                        for r in 1..self.lambda {
                            let ks = vec![Letter::K; r];
                            let term = self.normal_order_word(&splice(&ks));
                            acc = acc.add(&term.scale(&GammaPolynomial::symbol(self.lambda, r)));
                        }
                        acc
                    }
                    (Letter::K, Letter::Ad) => self
                        .normal_order_word(&splice(&[Letter::Ad, Letter::K]))
                        .scale(&self.zeta(2)),
                    (Letter::K, Letter::A) => self
                        .normal_order_word(&splice(&[Letter::A, Letter::K]))
                        .scale(&self.zeta(-2)),
                    _ => unreachable!("only a·a†, K·a†, K·a are descents"),
                }
            }
        };
        self.memo.insert(word, nf.clone());
        nf
    }

    /// Normal form of the product `x · y`.
    pub fn multiply(&mut self, x: &NormalForm, y: &NormalForm) -> NormalForm {
        let mut out = NormalForm::zero(self.lambda);
        for (k1, c1) in x.terms() {
            for (k2, c2) in y.terms() {
                let mut word = k1.letters();
                word.extend(k2.letters());
                let coeff = c1 * c2;
                out = out.add(&self.normal_order_word(&word).scale(&coeff));
            }
        }
        out
    }

    pub fn power(&mut self, x: &NormalForm, n: u32) -> NormalForm {
        let mut out = NormalForm::identity(self.lambda);
        for _ in 0..n {
            out = self.multiply(&out, x);
        }
        out
    }

    fn scalar_nf(&self, lit: &ScalarLit) -> Result<NormalForm> {
        let lambda = self.lambda;
        Ok(NormalForm::scalar(match lit {
            ScalarLit::Rational(r) => {
                GammaPolynomial::constant(CyclotomicScalar::from_rational(lambda, r.clone()))
            }
            ScalarLit::Zeta => self.zeta(1),
            ScalarLit::Gamma(r) => {
                if !(1..lambda).contains(r) {
                    return Err(Error::Symbolic(format!(
                        "g{r} outside 1..{} for lambda = {lambda}",
                        lambda - 1
                    )));
                }
                GammaPolynomial::symbol(lambda, *r)
            }
        }))
    }

    fn inverse_power(&mut self, base: &OperatorExpr, n: i64) -> Result<NormalForm> {
        let lambda = self.lambda as i64;
        let m = n.unsigned_abs();
        match base {
            OperatorExpr::Atom(Atom::I) => Ok(NormalForm::identity(self.lambda)),
            OperatorExpr::Atom(Atom::K) => Ok(NormalForm::word(
                self.lambda,
                0,
                0,
                n.rem_euclid(lambda) as u32,
            )),
            OperatorExpr::Scalar(ScalarLit::Zeta) => Ok(NormalForm::scalar(self.zeta(n))),
            OperatorExpr::Scalar(ScalarLit::Rational(r))
                if *r != BigRational::from_integer(BigInt::from(0)) =>
            {
                let inv = BigRational::one() / r;
                let mut acc = BigRational::one();
                for _ in 0..m {
                    acc *= &inv;
                }
                Ok(NormalForm::scalar(GammaPolynomial::constant(
                    CyclotomicScalar::from_rational(self.lambda, acc),
                )))
            }
            _ => Err(Error::Symbolic(format!(
                "negative power of non-invertible factor {base}"
            ))),
        }
    }

    pub fn normal_order_expr(&mut self, expr: &OperatorExpr) -> Result<NormalForm> {
        use OperatorExpr::*;
        Ok(match expr {
            Atom(super::Atom::A) => NormalForm::word(self.lambda, 0, 1, 0),
            Atom(super::Atom::Ad) => NormalForm::word(self.lambda, 1, 0, 0),
            Atom(super::Atom::K) => NormalForm::word(self.lambda, 0, 0, 1),
            Atom(super::Atom::I) => NormalForm::identity(self.lambda),
            Scalar(lit) => self.scalar_nf(lit)?,
            Add(x, y) => self.normal_order_expr(x)?.add(&self.normal_order_expr(y)?),
            Sub(x, y) => self.normal_order_expr(x)?.sub(&self.normal_order_expr(y)?),
            Neg(x) => self.normal_order_expr(x)?.neg(),
            Mul(x, y) => {
                let nx = self.normal_order_expr(x)?;
                let ny = self.normal_order_expr(y)?;
                self.multiply(&nx, &ny)
            }
            Pow(x, n) if *n >= 0 => {
                let nx = self.normal_order_expr(x)?;
                self.power(&nx, *n as u32)
            }
            Pow(x, n) => self.inverse_power(x, *n)?,
        })
    }
}

/// Normal form of `expr` in the algebra with cyclic order `lambda`.
pub fn normal_order(expr: &OperatorExpr, lambda: usize) -> Result<NormalForm> {
    Rewriter::new(lambda).normal_order_expr(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::phase_sum;
    use crate::symbolic::parse;

    fn nf(src: &str, lambda: usize) -> NormalForm {
        normal_order(&parse(src, lambda).unwrap(), lambda).unwrap()
    }

    #[test]
    fn defining_commutator() {
        for lambda in 2..=5 {
            let n = nf("[a, ad]", lambda);
            assert_eq!(n.len(), lambda);
            assert!(n.coeff(&WordKey::new(0, 0, 0)).unwrap().is_one());
            for r in 1..lambda {
                assert_eq!(
                    n.coeff(&WordKey::new(0, 0, r as u32)).unwrap(),
                    &GammaPolynomial::symbol(lambda, r)
                );
            }
        }
    }

    #[test]
    fn adjoint_power_commutator_lambda_four() {
        let lambda = 4;
        let n = nf("[a, ad^3]", lambda);
        assert_eq!(
            n.coeff(&WordKey::new(2, 0, 0)).unwrap(),
            &GammaPolynomial::constant(CyclotomicScalar::from_integer(lambda, 3))
        );
        for r in 1..lambda {
            let expected = &GammaPolynomial::symbol(lambda, r)
                * &GammaPolynomial::constant(phase_sum(lambda, r as i64, 3));
            assert_eq!(n.coeff(&WordKey::new(2, 0, r as u32)).unwrap(), &expected);
        }
        assert_eq!(n.len(), lambda);
    }

    #[test]
    fn cyclic_order() {
        for lambda in 2..=6 {
            let n = nf(&format!("K^{lambda}"), lambda);
            assert_eq!(n, NormalForm::identity(lambda));
        }
        assert_eq!(nf("K^-1", 3), nf("K^2", 3));
        assert_eq!(nf("K K K a K K", 3), nf("w^-6 a K^2", 3));
    }

    #[test]
    fn single_twist() {
        let n = nf("K * ad", 3);
        assert_eq!(n.lines(), vec!["w^2 · ad K".to_string()]);
        assert_eq!(nf("[a, ad]", 2).lines(), vec!["1 · I", "g1 · K"]);
    }

    #[test]
    fn degree_is_preserved() {
        let n = nf("a^3 ad^2 K a ad^4", 3);
        for (k, _) in n.terms() {
            assert_eq!(k.degree(), 6 - 4);
        }
    }

    #[test]
    fn cyclic_run_reduction_handles_nested_runs() {
        let rw = Rewriter::new(2);
        use Letter::*;
        assert_eq!(rw.reduce_cyclic_runs(&[K, K, K]), vec![K]);
        assert_eq!(rw.reduce_cyclic_runs(&[A, K, K, Ad, K]), vec![A, Ad, K]);
    }

    #[test]
    fn json_shape() {
        let j = nf("[a, ad]", 2).to_json();
        assert_eq!(j.words.len(), 2);
        assert_eq!(j.words[1].s, 1);
        assert_eq!(j.words[1].terms[0].gamma, vec![1]);
        assert_eq!(
            j.words[1].terms[0].zeta,
            vec![ZetaJson {
                k: 0,
                c: "1".into()
            }]
        );
    }
}
