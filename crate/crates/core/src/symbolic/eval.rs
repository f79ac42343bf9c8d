//! Action of normal forms on basis states.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::normal::NormalForm;
use crate::params::AlgebraParams;
use crate::scalar::unit_root;

/// Apply `nf` to `|n⟩` with `a|k⟩ = F(k)|k-1⟩`, `a†|k⟩ = |k+1⟩`,
/// `K|k⟩ = e^{2πik/λ}|k⟩`. Returns `(state, amplitude)` sorted by state,
/// without exact zeros.
///
/// Valid for any integer `n`; on the Fock space take `n ≥ 0` (the factor
/// `F(0) = 0` then kills words that would leave it).
pub fn evaluate_on_state(nf: &NormalForm, n: i64, params: &AlgebraParams) -> Vec<(i64, Complex64)> {
    assert_eq!(nf.lambda(), params.lambda(), "lambda mismatch");
    let lambda = params.lambda();
    let mut out: BTreeMap<i64, Complex64> = BTreeMap::new();
    for (key, coeff) in nf.terms() {
        let mut amp = coeff.eval(params.gamma()) * unit_root(key.s as i64 * n, lambda);
        for k in 0..key.q as i64 {
            amp *= params.structure_function(n - k);
        }
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        *out.entry(n + key.degree()).or_default() += amp;
    }
    out.into_iter()
        .filter(|(_, v)| *v != Complex64::new(0.0, 0.0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{normal_order, parse};

    #[test]
    fn identity_on_state() {
        let p = AlgebraParams::calogero(0.4);
        let nf = NormalForm::identity(2);
        assert_eq!(
            evaluate_on_state(&nf, 5, &p),
            vec![(5, Complex64::new(1.0, 0.0))]
        );
    }

    #[test]
    fn a_ad_gives_next_structure_value() {
        let p = AlgebraParams::new(3, vec![Complex64::new(0.2, 0.1), Complex64::new(0.2, -0.1)])
            .unwrap();
        let nf = normal_order(&parse("a*ad", 3).unwrap(), 3).unwrap();
        for n in 0..12 {
            let got = evaluate_on_state(&nf, n, &p);
            assert_eq!(got.len(), 1);
            assert_eq!(got[0].0, n);
            assert!((got[0].1 - p.structure_function(n + 1)).norm() < 1e-13);
        }
    }

    #[test]
    fn annihilator_kills_vacuum() {
        let p = AlgebraParams::calogero(0.3);
        let nf = normal_order(&parse("ad^2 a K", 2).unwrap(), 2).unwrap();
        assert!(evaluate_on_state(&nf, 0, &p).is_empty());
    }
}
