//! Dense univariate polynomials over a [`Field`].

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::ntheory;

/// A polynomial with coefficients indexed by exponent.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector and has degree `None`.
///
/// Arithmetic operators panic when the operands live over different fields.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * x^degree`.
    pub fn monomial(field: F, c: F::Elem, degree: usize) -> Self {
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(field, coeffs)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(field: F, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = field.one();
        coeffs[0] = field.sub(&coeffs[0], &field.one());
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::new(self.field.clone(), coeffs)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| {
            self.field.add(&self.field.mul(&acc, x), c)
        })
    }

    /// `a(x) -> a(x^r)`.
    pub fn inflate(&self, r: usize) -> Self {
        assert!(r > 0, "inflate: exponent must be positive");
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); (self.coeffs.len() - 1) * r + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * r] = c.clone();
        }
        Self::new(self.field.clone(), coeffs)
    }

    /// Applies a coefficient map into another field.
    pub fn map_coeffs<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::new(target.clone(), self.coeffs.iter().map(f).collect())
    }

    /// Fallible variant of [`Poly::map_coeffs`].
    pub fn try_map_coeffs<G: Field>(
        &self,
        target: &G,
        f: impl Fn(&F::Elem) -> Result<G::Elem>,
    ) -> Result<Poly<G>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(target.clone(), coeffs))
    }

    fn check_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "polynomials over different fields"
        );
    }

    /// Quotient and remainder with `deg(remainder) < deg(divisor)`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_field(divisor);
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let field = &self.field;
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Ok((Self::zero(field.clone()), self.clone()));
        };
        let lead_inv = field.inv(divisor.leading().unwrap())?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![field.zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = field.mul(&rem[i + dd], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = field.sub(&rem[i + j], &field.mul(&c, dj));
            }
            quo[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(field.clone(), quo), Self::new(field.clone(), rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        self.check_field(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, u, v)` with `u*self + v*other = g`, `g` the monic gcd, and
    /// cofactors of minimal degree.
    pub fn extended_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        self.check_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::precondition("extended_gcd", "both inputs are zero"));
        }
        let field = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(field.clone()), Self::zero(field.clone()));
        let (mut t0, mut t1) = (Self::zero(field.clone()), Self::one(field.clone()));
        while !r1.is_zero() {
            let (quo, rem) = r0.divrem(&r1)?;
            let s2 = &s0 - &(&quo * &s1);
            let t2 = &t0 - &(&quo * &t1);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = field.inv(r0.leading().expect("gcd is nonzero"))?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Inverse of `self` modulo `modulus`, of degree below `deg(modulus)`.
    pub fn inverse_mod(&self, modulus: &Self) -> Result<Self> {
        let (g, u, _) = self.extended_gcd(modulus)?;
        if g.degree() != Some(0) {
            return Err(Error::precondition(
                "inverse_mod",
                "polynomial is not coprime to the modulus",
            ));
        }
        Ok(u.divrem(modulus)?.1)
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;

    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        self.check_field(rhs);
        let f = &self.field;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f.clone(), coeffs)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;

    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;

    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        self.check_field(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f.clone());
        }
        let mut out = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f.clone(), out)
    }
}

/// The `d`-th cyclotomic polynomial over `field`, by repeated exact division
/// of `x^d - 1` by the cyclotomic polynomials of the proper divisors.
pub fn cyclotomic_poly<F: Field>(d: u64, field: &F) -> Result<Poly<F>> {
    if d == 0 {
        return Err(Error::precondition("cyclotomic_poly", "d must be positive"));
    }
    if d.is_multiple_of(field.characteristic()) {
        return Err(Error::precondition(
            "cyclotomic_poly",
            format!("characteristic {} divides {d}", field.characteristic()),
        ));
    }
    let divs = ntheory::divisors(d);
    let mut table: HashMap<u64, Poly<F>> = HashMap::new();
    for &e in &divs {
        let mut phi = Poly::x_pow_minus_one(field.clone(), e as usize);
        for &f in divs.iter().take_while(|&&f| f < e) {
            if e % f == 0 {
                let (quo, rem) = phi.divrem(&table[&f])?;
                debug_assert!(rem.is_zero());
                phi = quo;
            }
        }
        table.insert(e, phi);
    }
    Ok(table.remove(&d).unwrap())
}

impl fmt::Display for Poly<PrimeField> {
    /// Descending powers, e.g. `5*x^12 + 13*x^11 + x + 11`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn p(q: u64, c: &[i64]) -> Poly<PrimeField> {
        let f = fp(q);
        Poly::new(f, c.iter().map(|&v| f.from_i64(v)).collect())
    }

    #[test]
    fn gcd_in_characteristic_two() {
        assert_eq!(p(2, &[1, 0, 1]).gcd(&p(2, &[1, 1])), p(2, &[1, 1]));
    }

    #[test]
    fn divrem_geometric() {
        let (q, r) = p(7, &[-1, 0, 0, 1]).divrem(&p(7, &[-1, 1])).unwrap();
        assert_eq!(q, p(7, &[1, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(
            p(7, &[1]).divrem(&Poly::zero(fp(7))),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn factorization_of_x7_minus_1_over_f2() {
        let prod = &(&p(2, &[1, 1, 0, 1]) * &p(2, &[1, 0, 1, 1])) * &p(2, &[1, 1]);
        assert_eq!(prod, Poly::x_pow_minus_one(fp(2), 7));
    }

    #[test]
    fn extended_gcd_examples() {
        let (a, b) = (p(7, &[-1, 1]), p(7, &[1, 1]));
        let (g, u, v) = a.extended_gcd(&b).unwrap();
        assert_eq!(g, Poly::one(fp(7)));
        assert_eq!(&(&u * &a) + &(&v * &b), g);

        let f = p(7, &[3, 0, 2]);
        let (g, u, v) = f.extended_gcd(&f).unwrap();
        assert_eq!(g, f.monic());
        assert!(u.is_zero());
        assert_eq!(v, Poly::constant(fp(7), fp(7).inv(&2).unwrap()));

        assert!(Poly::zero(fp(7)).extended_gcd(&Poly::zero(fp(7))).is_err());
    }

    #[test]
    fn inverse_used_by_the_euclid_idempotent() {
        let f = p(2, &[1, 1, 0, 1]);
        let cofactor = Poly::x_pow_minus_one(fp(2), 7).divrem(&f).unwrap().0;
        let (g, u, _) = cofactor.extended_gcd(&f).unwrap();
        assert_eq!(g, Poly::one(fp(2)));
        let h = cofactor.inverse_mod(&f).unwrap();
        assert_eq!((&cofactor * &h).divrem(&f).unwrap().1, Poly::one(fp(2)));
        assert_eq!(u.divrem(&f).unwrap().1, h);
        // P = x^4 + x^2 + x + 1 = 1 (mod x^3 + x + 1)
        assert_eq!(h, Poly::one(fp(2)));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1, &fp(7)).unwrap(), p(7, &[-1, 1]));
        assert_eq!(
            cyclotomic_poly(9, &fp(7)).unwrap(),
            p(7, &[1, 0, 0, 1, 0, 0, 1])
        );
        assert!(cyclotomic_poly(7, &fp(7)).is_err());
        // Phi_{p^j}(x) = Phi_{p^m}(x^{p^(j-m)})
        let phi13 = cyclotomic_poly(13, &fp(17)).unwrap();
        assert_eq!(cyclotomic_poly(169, &fp(17)).unwrap(), phi13.inflate(13));
        let phi3 = cyclotomic_poly(3, &fp(7)).unwrap();
        assert_eq!(phi3.inflate(3), cyclotomic_poly(9, &fp(7)).unwrap());
    }

    #[test]
    fn cyclotomic_product_is_x_n_minus_1() {
        for (q, prime, max_j) in [(2u64, 3u64, 5u32), (7, 5, 3), (17, 13, 2), (3, 7, 3)] {
            for j in 0..=max_j {
                let n = prime.pow(j);
                let f = fp(q);
                let prod = ntheory::divisors(n)
                    .into_iter()
                    .map(|d| cyclotomic_poly(d, &f).unwrap())
                    .fold(Poly::one(f), |acc, c| &acc * &c);
                assert_eq!(prod, Poly::x_pow_minus_one(f, n as usize), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn inflate_examples() {
        assert_eq!(p(7, &[-1, 1]).inflate(3), p(7, &[-1, 0, 0, 1]));
        assert_eq!(p(7, &[4]).inflate(5), p(7, &[4]));
        assert!(Poly::zero(fp(7)).inflate(2).is_zero());
    }

    #[test]
    fn display_descending() {
        assert_eq!(p(2, &[1, 1, 1, 0, 1]).to_string(), "x^4 + x^2 + x + 1");
        assert_eq!(p(17, &[11, 5, 13]).to_string(), "13*x^2 + 5*x + 11");
        assert_eq!(Poly::zero(fp(3)).to_string(), "0");
    }

    fn arb_poly(q: u64, max_len: usize) -> impl Strategy<Value = Poly<PrimeField>> {
        proptest::collection::vec(0..q, 0..max_len).prop_map(move |c| Poly::new(fp(q), c))
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(a in arb_poly(13, 20), b in arb_poly(13, 10)) {
            prop_assume!(!b.is_zero());
            let (quo, rem) = a.divrem(&b).unwrap();
            prop_assert!(rem.degree() < b.degree());
            prop_assert_eq!(&(&quo * &b) + &rem, a);
        }

        #[test]
        fn bezout_identity(a in arb_poly(5, 15), b in arb_poly(5, 15)) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let (g, u, v) = a.extended_gcd(&b).unwrap();
            prop_assert!(g.is_monic());
            prop_assert_eq!(&(&u * &a) + &(&v * &b), g.clone());
            prop_assert_eq!(&g, &a.gcd(&b));
            if let (Some(db), Some(dg)) = (b.degree(), g.degree()) {
                if !a.divrem(&b).unwrap().1.is_zero() {
                    prop_assert!(u.degree().is_none_or(|du| du < db - dg));
                }
            }
        }
    }
}
