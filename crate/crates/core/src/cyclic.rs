//! The quotient ring `F[x]/(x^n - 1)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::poly::Poly;

/// An element of `F[x]/(x^n - 1)` stored as exactly `n` coefficients.
#[derive(Clone, PartialEq)]
pub struct CyclicRingElement<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for CyclicRingElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclic{:?}", self.coeffs)
    }
}

impl<F: Field> CyclicRingElement<F> {
    /// Wraps exactly `n` coefficients; `n` must be at least 1.
    pub fn from_coeffs(field: F, coeffs: Vec<F::Elem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(CyclicRingElement { field, coeffs })
    }

    pub fn zero(field: F, n: usize) -> Self {
        let z = field.zero();
        CyclicRingElement {
            coeffs: vec![z; n],
            field,
        }
    }

    pub fn one(field: F, n: usize) -> Self {
        let mut e = Self::zero(field, n);
        e.coeffs[0] = e.field.one();
        e
    }

    /// Reduces a polynomial modulo `x^n - 1` by wrapping exponents.
    pub fn reduce(poly: &Poly<F>, n: usize) -> Self {
        let field = poly.field().clone();
        let mut e = Self::zero(field, n);
        for (i, c) in poly.coeffs().iter().enumerate() {
            let slot = &mut e.coeffs[i % n];
            *slot = e.field.add(slot, c);
        }
        e
    }

    /// The representative of degree below `n`.
    pub fn lift(&self) -> Poly<F> {
        Poly::new(self.field.clone(), self.coeffs.clone())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.field.clone(), self.n())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        Ok(CyclicRingElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f.add(a, b))
                .collect(),
            field: f.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        Ok(CyclicRingElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
            field: f.clone(),
        })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        CyclicRingElement {
            coeffs: self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
            field: self.field.clone(),
        }
    }

    /// Cyclic convolution: the coefficient of `x^j` is the sum of `a_u b_v`
    /// over `u + v = j (mod n)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let n = self.n();
        let mut out = vec![f.zero(); n];
        for (u, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (v, b) in other.coeffs.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let j = if u + v >= n { u + v - n } else { u + v };
                out[j] = f.add(&out[j], &f.mul(a, b));
            }
        }
        Ok(CyclicRingElement {
            coeffs: out,
            field: f.clone(),
        })
    }

    /// Applies a field map coefficient by coefficient.
    pub fn map_coeffs<G: Field>(
        &self,
        target: &G,
        f: impl Fn(&F::Elem) -> G::Elem,
    ) -> CyclicRingElement<G> {
        CyclicRingElement {
            field: target.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map_coeffs<G: Field>(
        &self,
        target: &G,
        f: impl Fn(&F::Elem) -> Result<G::Elem>,
    ) -> Result<CyclicRingElement<G>> {
        Ok(CyclicRingElement {
            field: target.clone(),
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

impl CyclicRingElement<PrimeField> {
    /// Coefficients as plain integers in `[0, q)`.
    pub fn to_u64_vec(&self) -> Vec<u64> {
        self.coeffs.clone()
    }
}

impl fmt::Display for CyclicRingElement<PrimeField> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lift())
    }
}
