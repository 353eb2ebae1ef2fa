//! Finite-field arithmetic.
//!
//! Fields are runtime objects (the modulus is only known once an instance is
//! parsed), so elements are plain values and every operation goes through the
//! field handle. [`Field`] is the scalar abstraction the polynomial and cyclic
//! ring code is generic over; [`PrimeField`] and [`ExtensionField`] are the two
//! implementations.

mod extension;
mod prime;

pub use extension::{
    find_irreducible, find_irreducible_nth, is_irreducible, ExtElement, ExtensionField,
};
pub use prime::PrimeField;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ntheory;

/// A finite field `F_{q^t}` with `q` prime.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    /// The prime `q`.
    fn characteristic(&self) -> u64;

    /// Degree `t` over the prime field.
    fn degree(&self) -> usize;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;

    /// Image of the integer `v` under `Z -> F`.
    #[allow(clippy::wrong_self_convention)]
    fn from_u64(&self, v: u64) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// The element whose coefficients (constant first) are the base-`q`
    /// digits of `index`. Index order lists the prime-field constants first,
    /// in integer order, then polynomials in lexicographic order.
    fn element_at(&self, index: &BigUint) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Number of elements, `q^t`.
    fn order(&self) -> BigUint {
        ntheory::big_pow(self.characteristic(), self.degree() as u64)
    }

    /// Square-and-multiply with an arbitrary-precision exponent.
    fn pow(&self, a: &Self::Elem, exp: &BigUint) -> Self::Elem {
        let bits = exp.bits();
        let mut acc = self.one();
        for i in (0..bits).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &Self::Elem, exp: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Default bound on `|F^*| = q^t - 1`, which must be factored to certify a
/// primitive element.
pub const DEFAULT_GROUP_ORDER_BITS: u64 = 96;

fn group_order_checked<F: Field>(field: &F, max_bits: u64) -> Result<BigUint> {
    let order = field.order() - 1u32;
    if order.bits() > max_bits {
        return Err(Error::LimitExceeded {
            what: "q^t - 1",
            value: order.to_string(),
            limit: format!("2^{max_bits}"),
        });
    }
    Ok(order)
}

/// First element (in [`Field::element_at`] order) of multiplicative order
/// `q^t - 1`.
pub fn primitive_element<F: Field>(field: &F) -> Result<F::Elem> {
    primitive_element_nth(field, 0)
}

/// The `rank`-th generator of `F^*` in enumeration order (0-based).
pub fn primitive_element_nth<F: Field>(field: &F, rank: usize) -> Result<F::Elem> {
    let order = group_order_checked(field, DEFAULT_GROUP_ORDER_BITS)?;
    let cofactors: Vec<BigUint> = ntheory::prime_divisors(&order)?
        .into_iter()
        .map(|r| &order / r)
        .collect();
    let total = field.order();
    let mut found = 0;
    let mut index = BigUint::from(1u32);
    while index < total {
        let g = field.element_at(&index);
        if cofactors.iter().all(|c| !field.is_one(&field.pow(&g, c))) {
            if found == rank {
                return Ok(g);
            }
            found += 1;
        }
        index += 1u32;
    }
    Err(Error::precondition(
        "primitive_element",
        format!("field has fewer than {} generators", rank + 1),
    ))
}

/// `g^((q^t - 1) / order)` for the first primitive element `g`.
pub fn root_of_unity<F: Field>(field: &F, order: u64) -> Result<F::Elem> {
    let g = primitive_element(field)?;
    root_of_unity_from(field, &g, order)
}

/// Primitive `order`-th root of unity derived from the generator `g`.
pub fn root_of_unity_from<F: Field>(field: &F, generator: &F::Elem, order: u64) -> Result<F::Elem> {
    let group = field.order() - 1u32;
    let (quo, rem) = num_integer::Integer::div_rem(&group, &BigUint::from(order));
    if order == 0 || !rem.is_zero() {
        return Err(Error::precondition(
            "root_of_unity",
            format!("{order} does not divide the group order {group}"),
        ));
    }
    Ok(field.pow(generator, &quo))
}

/// A primitive `p^k`-th root of unity, found without factoring the group
/// order: the first `a^((q^t - 1)/p^k)` (over nonzero `a` in enumeration
/// order) whose `p^(k-1)`-th power is not one. Works for splitting fields
/// whose group order is far too large to factor.
pub fn prime_power_root_of_unity<F: Field>(field: &F, p: u64, k: u32) -> Result<F::Elem> {
    if k == 0 {
        return Ok(field.one());
    }
    let group = field.order() - 1u32;
    let order = ntheory::big_pow(p, k as u64);
    let (quo, rem) = num_integer::Integer::div_rem(&group, &order);
    if !rem.is_zero() {
        return Err(Error::precondition(
            "prime_power_root_of_unity",
            format!("{p}^{k} does not divide the group order"),
        ));
    }
    let sub = ntheory::big_pow(p, k as u64 - 1);
    let total = field.order();
    let mut index = BigUint::from(1u32);
    while index < total {
        let z = field.pow(&field.element_at(&index), &quo);
        if !field.is_one(&field.pow(&z, &sub)) {
            return Ok(z);
        }
        index += 1u32;
    }
    Err(Error::InvariantViolation(format!(
        "no primitive {p}^{k}-th root of unity found"
    )))
}

pub(crate) fn digits(index: &BigUint, q: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    if let Some(mut v) = index.to_u128() {
        for _ in 0..len {
            out.push((v % q as u128) as u64);
            v /= q as u128;
        }
        return out;
    }
    let base = BigUint::from(q);
    let mut v = index.clone();
    for _ in 0..len {
        let (quo, rem) = num_integer::Integer::div_rem(&v, &base);
        out.push(rem.to_u64().unwrap_or(0));
        v = quo;
    }
    out
}
