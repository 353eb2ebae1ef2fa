//! Minimal cyclic codes: the ideal generated by a primitive idempotent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::{BasePoly, CyclicElement, IdempotentRecord};

/// Default cap on the number of codewords enumerated by
/// [`min_distance_exhaustive`].
pub const DEFAULT_CODEWORD_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCodeSummary {
    pub label: String,
    pub n: u64,
    pub dimension: u64,
    /// Coefficients of the monic generator, constant term first.
    pub generator: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_distance: Option<u64>,
}

impl CyclicCodeSummary {
    /// `[n,k,d]`, or `[n,k]` without a distance.
    pub fn parameters(&self) -> String {
        match self.min_distance {
            Some(d) => format!("[{},{},{}]", self.n, self.dimension, d),
            None => format!("[{},{}]", self.n, self.dimension),
        }
    }
}

/// `gcd(e, x^n - 1)`: the monic generator of the ideal `(e)`.
pub fn generator_polynomial(e: &CyclicElement) -> Result<BasePoly> {
    if e.is_zero() {
        return Err(Error::precondition(
            "generator_polynomial",
            "the zero element generates the zero code",
        ));
    }
    Ok(e.lift().gcd(&Poly::x_pow_minus_one(*e.field(), e.n())))
}

/// Minimum Hamming weight of the nonzero multiples `m g`, `deg m < n - deg g`.
/// Refuses when `q^(n - deg g)` exceeds `budget`.
pub fn min_distance_exhaustive(g: &BasePoly, n: usize, budget: u64) -> Result<u64> {
    let field = *g.field();
    let q = field.modulus();
    let deg = g.degree().filter(|&d| d < n).ok_or_else(|| {
        Error::precondition(
            "min_distance_exhaustive",
            "generator must be nonzero of degree below n",
        )
    })?;
    let dim = n - deg;
    let total = u32::try_from(dim)
        .ok()
        .and_then(|d| q.checked_pow(d))
        .filter(|&c| c <= budget)
        .ok_or_else(|| Error::BudgetExceeded {
            required: num_bigint::BigUint::from(q).pow(dim as u32).to_string(),
            budget,
        })?;

    // q-ary counter over messages; bumping digit i adds x^i g to the codeword,
    // including on wrap-around since q (x^i g) = 0
    let gc = g.coeffs();
    let mut word = vec![0u64; n];
    let mut digits = vec![0u64; dim];
    let mut weight = 0u64;
    let mut best = n as u64;
    for _ in 1..total {
        let mut i = 0;
        loop {
            for (j, &c) in gc.iter().enumerate() {
                let slot = &mut word[i + j];
                let before = *slot != 0;
                *slot = field.add(slot, &c);
                weight = weight + u64::from(*slot != 0) - u64::from(before);
            }
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        best = best.min(weight);
    }
    Ok(best)
}

/// Generator, dimension and (when `budget` is given) minimum distance of the
/// code generated by `record`.
pub fn code_summary(record: &IdempotentRecord, budget: Option<u64>) -> Result<CyclicCodeSummary> {
    let e = &record.value;
    let g = generator_polynomial(e)?;
    let n = e.n();
    let deg = g.degree().expect("generator is nonzero");
    let min_distance = budget
        .map(|b| min_distance_exhaustive(&g, n, b))
        .transpose()?;
    Ok(CyclicCodeSummary {
        label: record.label.clone(),
        n: n as u64,
        dimension: (n - deg) as u64,
        generator: g.coeffs().to_vec(),
        min_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PrimeField;

    fn el(q: u64, c: &[u64]) -> CyclicElement {
        CyclicElement::from_coeffs(PrimeField::new(q).unwrap(), c.to_vec()).unwrap()
    }

    #[test]
    fn hamming_dual_generator() {
        let g = generator_polynomial(&el(2, &[1, 1, 1, 0, 1, 0, 0])).unwrap();
        assert_eq!(g.coeffs(), &[1, 1, 1, 0, 1]);
        assert_eq!(
            min_distance_exhaustive(&g, 7, DEFAULT_CODEWORD_BUDGET).unwrap(),
            4
        );
    }

    #[test]
    fn repetition_codes() {
        let g = generator_polynomial(&el(2, &[1; 7])).unwrap();
        assert_eq!(g.coeffs(), &[1; 7]);
        assert_eq!(min_distance_exhaustive(&g, 7, 2).unwrap(), 7);
        let g = generator_polynomial(&el(7, &[5, 5, 5])).unwrap();
        assert_eq!(min_distance_exhaustive(&g, 3, 100).unwrap(), 3);
    }

    #[test]
    fn counter_matches_direct_enumeration() {
        // g = x - 1 over F_3, n = 4: every message, multiplied out by hand
        let f3 = PrimeField::new(3).unwrap();
        let g = Poly::new(f3, vec![2, 1]);
        let mut best = u64::MAX;
        for code in 1..27u64 {
            let m = Poly::new(f3, vec![code % 3, code / 3 % 3, code / 9]);
            let w = (&m * &g).coeffs().iter().filter(|&&c| c != 0).count() as u64;
            best = best.min(w);
        }
        assert_eq!(min_distance_exhaustive(&g, 4, 27).unwrap(), best);
    }

    #[test]
    fn budget_is_enforced() {
        let f2 = PrimeField::new(2).unwrap();
        let g = Poly::new(f2, vec![1, 1]);
        assert!(matches!(
            min_distance_exhaustive(&g, 30, 1 << 20),
            Err(Error::BudgetExceeded { ref required, .. }) if required == "536870912"
        ));
        assert!(generator_polynomial(&el(2, &[0; 7])).is_err());
    }
}
