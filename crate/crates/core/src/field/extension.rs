use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use super::{digits, Field, PrimeField};
use crate::error::{Error, Result};
use crate::ntheory;
use crate::poly::Poly;

/// An element of `F_q[y]/(Q(y))`: `t` residues, constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtElement(Vec<u64>);

impl ExtElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    /// The value in `F_q` if every non-constant coefficient is zero.
    pub fn as_base(&self) -> Option<u64> {
        if self.0[1..].iter().all(|&c| c == 0) {
            Some(self.0[0])
        } else {
            None
        }
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

struct Inner {
    base: PrimeField,
    /// Monic, `t + 1` coefficients.
    modulus: Vec<u64>,
    /// `(j, -Q_j mod q)` for the nonzero lower coefficients of `Q`.
    reduction: Vec<(usize, u64)>,
    /// Whether products may be accumulated in `u64` before reducing mod `q`.
    lazy: bool,
    narrow: bool,
}

/// `F_{q^t} = F_q[y]/(Q(y))` for a monic irreducible `Q` of degree `t`.
///
/// Cloning is cheap; clones share the modulus.
#[derive(Clone)]
pub struct ExtensionField {
    inner: Arc<Inner>,
}

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl fmt::Debug for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}^{} mod {:?}",
            self.inner.base.modulus(),
            self.t(),
            self.inner.modulus
        )
    }
}

impl ExtensionField {
    /// Builds the field from a monic irreducible modulus, verifying both.
    pub fn new(modulus: &Poly<PrimeField>) -> Result<Self> {
        let degree = modulus.degree().filter(|&d| d >= 1).ok_or_else(|| {
            Error::precondition("ExtensionField::new", "modulus must have degree >= 1")
        })?;
        if !modulus.is_monic() {
            return Err(Error::precondition(
                "ExtensionField::new",
                "modulus must be monic",
            ));
        }
        if !is_irreducible(modulus) {
            return Err(Error::precondition(
                "ExtensionField::new",
                format!("modulus of degree {degree} is reducible"),
            ));
        }
        Ok(Self::unchecked(*modulus.field(), modulus.coeffs().to_vec()))
    }

    /// `F_{q^t}` built on the smallest monic irreducible of degree `t`.
    pub fn smallest(q: u64, t: usize) -> Result<Self> {
        Self::with_modulus_rank(q, t, 0)
    }

    /// `F_{q^t}` built on the `rank`-th smallest monic irreducible (0-based).
    pub fn with_modulus_rank(q: u64, t: usize, rank: usize) -> Result<Self> {
        let base = PrimeField::new(q)?;
        let modulus = find_irreducible_nth(&base, t, rank)?;
        Ok(Self::unchecked(base, modulus.coeffs().to_vec()))
    }

    fn unchecked(base: PrimeField, modulus: Vec<u64>) -> Self {
        let q = base.modulus();
        let t = modulus.len() - 1;
        let reduction = modulus[..t]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, q - c))
            .collect();
        let bound = 2 * (t as u128 + 1) * (q as u128) * (q as u128);
        ExtensionField {
            inner: Arc::new(Inner {
                base,
                modulus,
                reduction,
                lazy: bound < u64::MAX as u128,
                narrow: bound < u32::MAX as u128,
            }),
        }
    }

    pub fn base(&self) -> &PrimeField {
        &self.inner.base
    }

    pub fn t(&self) -> usize {
        self.inner.modulus.len() - 1
    }

    pub fn modulus(&self) -> Poly<PrimeField> {
        Poly::new(self.inner.base, self.inner.modulus.clone())
    }

    /// Element from coefficients in `y` (constant first); longer inputs are
    /// reduced modulo `Q`.
    pub fn element(&self, coeffs: &[u64]) -> ExtElement {
        let q = self.inner.base.modulus();
        let t = self.t();
        let mut v: Vec<u64> = coeffs.iter().map(|c| c % q).collect();
        if v.len() < t {
            v.resize(t, 0);
            return ExtElement(v);
        }
        self.reduce_slow(&mut v);
        ExtElement(v)
    }

    /// `F_q -> F_{q^t}`.
    pub fn embed(&self, c: u64) -> ExtElement {
        let mut v = vec![0; self.t()];
        v[0] = c % self.inner.base.modulus();
        ExtElement(v)
    }

    /// The class of `y`.
    pub fn generator(&self) -> ExtElement {
        self.element(&[0, 1])
    }

    /// The Frobenius automorphism `a -> a^q`.
    pub fn frobenius(&self, a: &ExtElement) -> ExtElement {
        self.pow_u64(a, self.inner.base.modulus())
    }

    /// `a + a^q + ... + a^(q^(t-1))`, which lies in `F_q`.
    pub fn trace(&self, a: &ExtElement) -> Result<u64> {
        let mut sum = a.clone();
        let mut conj = a.clone();
        for _ in 1..self.t() {
            conj = self.frobenius(&conj);
            sum = self.add(&sum, &conj);
        }
        sum.as_base().ok_or_else(|| {
            Error::InvariantViolation(format!("trace {sum:?} is not in the prime field"))
        })
    }

    // Reduces an arbitrary-length coefficient vector (entries < q) mod Q.
    fn reduce_slow(&self, v: &mut Vec<u64>) {
        let base = &self.inner.base;
        let t = self.t();
        for i in (t..v.len()).rev() {
            let c = v[i];
            if c == 0 {
                continue;
            }
            for &(j, neg) in &self.inner.reduction {
                let idx = i - t + j;
                v[idx] = base.add(&v[idx], &base.mul(&c, &neg));
            }
        }
        v.truncate(t);
    }

    fn mul_lazy(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let q = self.inner.base.modulus();
        let t = a.len();
        let mut acc = vec![0u64; 2 * t - 1];
        // lazy implies q < 2^32; narrow operands so the inner loop is a
        // widening 32x32 -> 64 multiply
        let b32: Vec<u32> = b.iter().map(|&x| x as u32).collect();
        if self.inner.narrow {
            let a32: Vec<u32> = a.iter().map(|&x| x as u32).collect();
            let mut acc32 = vec![0u32; 2 * t - 1];
            schoolbook_u32(&mut acc32, &a32, &b32);
            for (x, y) in acc.iter_mut().zip(&acc32) {
                *x = *y as u64;
            }
        } else {
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                let ai = ai as u32 as u64;
                for (slot, &bj) in acc[i..i + t].iter_mut().zip(&b32) {
                    *slot = slot.wrapping_add(ai.wrapping_mul(bj as u64));
                }
            }
        }
        for i in (t..2 * t - 1).rev() {
            let c = acc[i] % q;
            if c == 0 {
                continue;
            }
            for &(j, neg) in &self.inner.reduction {
                acc[i - t + j] = acc[i - t + j].wrapping_add(c.wrapping_mul(neg));
            }
        }
        acc.truncate(t);
        for x in acc.iter_mut() {
            *x %= q;
        }
        acc
    }

    fn mul_wide(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let base = &self.inner.base;
        let t = a.len();
        let mut acc = vec![0u64; 2 * t - 1];
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                acc[i + j] = base.add(&acc[i + j], &base.mul(ai, bj));
            }
        }
        self.reduce_slow(&mut acc);
        acc
    }
}

/// `acc += a * b` as polynomials, with no reduction. The caller guarantees
/// the sums fit in `u32`; wrapping ops keep the loop vectorizable under
/// overflow checks.
fn schoolbook_u32(acc: &mut [u32], a: &[u32], b: &[u32]) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx2") {
            // SAFETY: the feature was detected at runtime.
            unsafe { schoolbook_u32_avx2(acc, a, b) };
            return;
        }
    }
    schoolbook_u32_generic(acc, a, b);
}

#[inline(always)]
fn schoolbook_u32_generic(acc: &mut [u32], a: &[u32], b: &[u32]) {
    let t = b.len();
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (slot, &bj) in acc[i..i + t].iter_mut().zip(b) {
            *slot = slot.wrapping_add(ai.wrapping_mul(bj));
        }
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn schoolbook_u32_avx2(acc: &mut [u32], a: &[u32], b: &[u32]) {
    schoolbook_u32_generic(acc, a, b)
}

impl Field for ExtensionField {
    type Elem = ExtElement;

    fn characteristic(&self) -> u64 {
        self.inner.base.modulus()
    }

    fn degree(&self) -> usize {
        self.t()
    }

    fn zero(&self) -> ExtElement {
        ExtElement(vec![0; self.t()])
    }

    fn one(&self) -> ExtElement {
        self.embed(1)
    }

    fn from_u64(&self, v: u64) -> ExtElement {
        self.embed(v)
    }

    fn is_zero(&self, a: &ExtElement) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let base = &self.inner.base;
        ExtElement(a.0.iter().zip(&b.0).map(|(x, y)| base.add(x, y)).collect())
    }

    fn sub(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let base = &self.inner.base;
        ExtElement(a.0.iter().zip(&b.0).map(|(x, y)| base.sub(x, y)).collect())
    }

    fn neg(&self, a: &ExtElement) -> ExtElement {
        let base = &self.inner.base;
        ExtElement(a.0.iter().map(|x| base.neg(x)).collect())
    }

    fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        debug_assert_eq!(a.0.len(), self.t());
        debug_assert_eq!(b.0.len(), self.t());
        if self.inner.lazy {
            ExtElement(self.mul_lazy(&a.0, &b.0))
        } else {
            ExtElement(self.mul_wide(&a.0, &b.0))
        }
    }

    fn inv(&self, a: &ExtElement) -> Result<ExtElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        // a^(q^t - 2)
        let exp = ntheory::big_pow(self.characteristic(), self.t() as u64) - 2u32;
        Ok(self.pow(a, &exp))
    }

    fn element_at(&self, index: &BigUint) -> ExtElement {
        ExtElement(digits(index, self.characteristic(), self.t()))
    }
}

/// Ben-Or test: `f` of degree `t` is irreducible over `F_q` iff
/// `gcd(y^(q^i) - y, f) = 1` for every `1 <= i <= t/2`.
pub fn is_irreducible(f: &Poly<PrimeField>) -> bool {
    let Some(t) = f.degree() else {
        return false;
    };
    if t == 0 {
        return false;
    }
    if t == 1 {
        return true;
    }
    let f = f.monic();
    if f.coeffs()[0] == 0 {
        return false;
    }
    let ring = ExtensionField::unchecked(*f.field(), f.coeffs().to_vec());
    let y = ring.generator();
    let mut h = y.clone();
    for _ in 1..=t / 2 {
        h = ring.frobenius(&h);
        let diff = Poly::new(*f.field(), ring.sub(&h, &y).0);
        if f.gcd(&diff).degree() != Some(0) {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `t` over `F_q`, ordering
/// candidates by the integer `sum c_i q^i` of their coefficients.
pub fn find_irreducible(q: u64, t: usize) -> Result<Poly<PrimeField>> {
    find_irreducible_nth(&PrimeField::new(q)?, t, 0)
}

/// The `rank`-th monic irreducible of degree `t` in the same order.
pub fn find_irreducible_nth(base: &PrimeField, t: usize, rank: usize) -> Result<Poly<PrimeField>> {
    if t == 0 {
        return Err(Error::precondition(
            "find_irreducible",
            "degree must be >= 1",
        ));
    }
    let q = base.modulus();
    let mut lower = vec![0u64; t];
    let mut found = 0;
    loop {
        let mut coeffs = lower.clone();
        coeffs.push(1);
        let candidate = Poly::new(*base, coeffs);
        if (t == 1 || lower[0] != 0) && is_irreducible(&candidate) {
            if found == rank {
                return Ok(candidate);
            }
            found += 1;
        }
        // next lower-coefficient vector, least significant digit first
        let mut i = 0;
        loop {
            if i == t {
                return Err(Error::precondition(
                    "find_irreducible",
                    format!("fewer than {} irreducibles of degree {t}", rank + 1),
                ));
            }
            lower[i] += 1;
            if lower[i] < q {
                break;
            }
            lower[i] = 0;
            i += 1;
        }
    }
}
