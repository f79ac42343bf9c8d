use std::fmt;

use num_rational::BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    /// annihilation `a`
    A,
    /// creation `a†`, written `ad`
    Ad,
    K,
    I,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScalarLit {
    Rational(BigRational),
    /// `w = ζ = e^{iπ/λ}`
    Zeta,
    /// formal `γ_r`
    Gamma(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub enum OperatorExpr {
    Atom(Atom),
    Scalar(ScalarLit),
    Add(Box<OperatorExpr>, Box<OperatorExpr>),
    Sub(Box<OperatorExpr>, Box<OperatorExpr>),
    Mul(Box<OperatorExpr>, Box<OperatorExpr>),
    Neg(Box<OperatorExpr>),
    Pow(Box<OperatorExpr>, i64),
}

// constructors taking two operands, not operator-trait methods
#[allow(clippy::should_implement_trait)]
impl OperatorExpr {
    pub fn a() -> Self {
        Self::Atom(Atom::A)
    }

    pub fn ad() -> Self {
        Self::Atom(Atom::Ad)
    }

    pub fn k() -> Self {
        Self::Atom(Atom::K)
    }

    pub fn mul(x: Self, y: Self) -> Self {
        Self::Mul(Box::new(x), Box::new(y))
    }

    pub fn add(x: Self, y: Self) -> Self {
        Self::Add(Box::new(x), Box::new(y))
    }

    pub fn sub(x: Self, y: Self) -> Self {
        Self::Sub(Box::new(x), Box::new(y))
    }

    pub fn pow(x: Self, n: i64) -> Self {
        Self::Pow(Box::new(x), n)
    }

    /// `[x, y] = xy − yx`.
    pub fn commutator(x: Self, y: Self) -> Self {
        Self::sub(Self::mul(x.clone(), y.clone()), Self::mul(y, x))
    }

    /// True if negative powers in this subtree apply only to invertible
    /// atoms (`K`, `I`, `w`, nonzero rationals).
    pub fn negative_powers_ok(&self) -> bool {
        use OperatorExpr::*;
        match self {
            Atom(_) | Scalar(_) => true,
            Add(x, y) | Sub(x, y) | Mul(x, y) => x.negative_powers_ok() && y.negative_powers_ok(),
            Neg(x) => x.negative_powers_ok(),
            Pow(x, n) => {
                if *n >= 0 {
                    x.negative_powers_ok()
                } else {
                    x.is_invertible_atom()
                }
            }
        }
    }

    pub(crate) fn is_invertible_atom(&self) -> bool {
        match self {
            OperatorExpr::Atom(Atom::K) | OperatorExpr::Atom(Atom::I) => true,
            OperatorExpr::Scalar(ScalarLit::Zeta) => true,
            OperatorExpr::Scalar(ScalarLit::Rational(r)) => {
                *r != BigRational::from_integer(0.into())
            }
            _ => false,
        }
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use OperatorExpr::*;
        match self {
            Atom(crate::symbolic::Atom::A) => write!(f, "a"),
            Atom(crate::symbolic::Atom::Ad) => write!(f, "ad"),
            Atom(crate::symbolic::Atom::K) => write!(f, "K"),
            Atom(crate::symbolic::Atom::I) => write!(f, "I"),
            Scalar(ScalarLit::Rational(r)) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "({}/{})", r.numer(), r.denom())
                }
            }
            Scalar(ScalarLit::Zeta) => write!(f, "w"),
            Scalar(ScalarLit::Gamma(r)) => write!(f, "g{r}"),
            Add(x, y) => write!(f, "({x} + {y})"),
            Sub(x, y) => write!(f, "({x} - {y})"),
            Mul(x, y) => write!(f, "{x}*{y}"),
            Neg(x) => write!(f, "(-{x})"),
            Pow(x, n) => write!(f, "({x})^({n})"),
        }
    }
}
