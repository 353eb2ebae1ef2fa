use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::Field;
use crate::error::{Error, Result};
use crate::ntheory;

/// The prime field `F_q`. Elements are residues in `[0, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !ntheory::is_prime(q) {
            return Err(Error::NotPrime {
                name: "q",
                value: q,
            });
        }
        Ok(PrimeField { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Reduces a signed integer into `[0, q)`.
    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.q as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.q
    }

    fn degree(&self) -> usize {
        1
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.q
    }

    fn from_u64(&self, v: u64) -> u64 {
        v % self.q
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.q as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.q - (b - a)
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.q - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ntheory::mul_mod(*a, *b, self.q)
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^(q-2)
        Ok(ntheory::pow_mod(*a, self.q - 2, self.q))
    }

    fn element_at(&self, index: &BigUint) -> u64 {
        (index % self.q).to_u64().unwrap_or(0)
    }
}
