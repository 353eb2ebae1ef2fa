//! Integer helpers: primality, orders, valuations, totients.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Least `s >= 1` with `q^s = 1 (mod d)`. `ord(q, 1) = 1`.
pub fn multiplicative_order(q: u64, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::precondition(
            "multiplicative_order",
            "modulus is zero",
        ));
    }
    if gcd(q, d) != 1 {
        return Err(Error::precondition(
            "multiplicative_order",
            format!("gcd({q}, {d}) != 1"),
        ));
    }
    if d == 1 {
        return Ok(1);
    }
    let base = q % d;
    let mut acc = base;
    let mut s = 1;
    while acc != 1 {
        acc = mul_mod(acc, base, d);
        s += 1;
    }
    Ok(s)
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            while n.is_multiple_of(f) {
                n /= f;
            }
            result -= result / f;
        }
        f += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Largest `m` with `p^m | value`; `value` must be nonzero.
pub fn valuation(value: &BigUint, p: u64) -> u32 {
    debug_assert!(!value.is_zero());
    let p = BigUint::from(p);
    let mut v = value.clone();
    let mut m = 0;
    loop {
        let (quo, rem) = v.div_rem(&p);
        if !rem.is_zero() {
            return m;
        }
        v = quo;
        m += 1;
    }
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    let value = n.to_u128().ok_or_else(|| Error::LimitExceeded {
        what: "group order",
        value: n.to_string(),
        limit: "2^128".into(),
    })?;
    if value <= 1 {
        return Ok(Vec::new());
    }
    Ok(num_prime::nt_funcs::factorize128(value)
        .into_keys()
        .map(BigUint::from)
        .collect())
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn big_pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow::pow(BigUint::from(base), exp as usize)
}
