//! Number-theoretic skeleton of an instance `(q, p, k)`: the orders `t` and
//! `m`, the `q`-cyclotomic cosets mod `p^k`, and the irreducible factors of
//! `x^(p^k) - 1` over `F_q`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{prime_power_root_of_unity, ExtElement, ExtensionField, Field, PrimeField};
use crate::ntheory;
use crate::poly::Poly;

/// Size guards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring length `n = p^k` accepted.
    pub max_n: u64,
    /// Largest splitting-field degree `ord_n q` used to factor `x^n - 1`.
    pub max_splitting_degree: u64,
    /// `q^t - 1` must stay below `2^max_group_order_bits`.
    pub max_group_order_bits: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 10_000,
            max_splitting_degree: 512,
            max_group_order_bits: crate::field::DEFAULT_GROUP_ORDER_BITS,
        }
    }
}

/// A validated `(q, p, k)` with its derived invariants.
///
/// `t = ord_p q` (1 when `k = 0`) and `m` is the exponent with `p^m || q^t - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    q: u64,
    p: u64,
    k: u32,
    n: u64,
    t: u64,
    m: u32,
    limits: Limits,
}

impl ProblemInstance {
    pub fn new(q: u64, p: u64, k: u32) -> Result<Self> {
        instance_parameters(q, p, k, &Limits::default())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `min(m, k)`: the exponent of the roots of unity a ring of length
    /// `p^k` can use.
    pub fn effective_m(&self) -> u32 {
        self.m.min(self.k)
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.q).expect("validated at construction")
    }

    /// `D = ord_n q`, the degree of the splitting field of `x^n - 1`.
    pub fn splitting_degree(&self) -> u64 {
        ntheory::multiplicative_order(self.q, self.n).expect("gcd(q, n) = 1")
    }

    /// `p^e` as `u64`; callers only ask for `e <= k`.
    pub fn p_pow(&self, e: u32) -> u64 {
        self.p.pow(e)
    }
}

/// Validates `(q, p, k)` and computes `n`, `t` and `m`.
pub fn instance_parameters(q: u64, p: u64, k: u32, limits: &Limits) -> Result<ProblemInstance> {
    if !ntheory::is_prime(q) {
        return Err(Error::NotPrime {
            name: "q",
            value: q,
        });
    }
    if !ntheory::is_prime(p) {
        return Err(Error::NotPrime {
            name: "p",
            value: p,
        });
    }
    if q == p {
        return Err(Error::InvalidInstance(format!(
            "q = p = {q}; the group order must be coprime to q"
        )));
    }
    let n = p
        .checked_pow(k)
        .filter(|&n| n <= limits.max_n)
        .ok_or_else(|| Error::LimitExceeded {
            what: "n = p^k",
            value: format!("{p}^{k}"),
            limit: limits.max_n.to_string(),
        })?;
    let t = if k == 0 {
        1
    } else {
        ntheory::multiplicative_order(q, p)?
    };
    let group = ntheory::big_pow(q, t) - 1u32;
    if group.bits() > limits.max_group_order_bits {
        return Err(Error::LimitExceeded {
            what: "q^t - 1",
            value: format!("{q}^{t} - 1"),
            limit: format!("2^{}", limits.max_group_order_bits),
        });
    }
    let m = ntheory::valuation(&group, p);
    Ok(ProblemInstance {
        q,
        p,
        k,
        n,
        t,
        m,
        limits: *limits,
    })
}

/// One orbit of `r -> q r` on `Z_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    /// Minimal element.
    pub rep: u64,
    /// `n / gcd(n, rep)`: the order of the roots of unity indexed by this coset.
    pub divisor: u64,
    /// Sorted members.
    pub elements: Vec<u64>,
}

impl Coset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// The `q`-cyclotomic cosets mod `n`, ordered by minimal representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPartition {
    pub n: u64,
    pub q: u64,
    pub cosets: Vec<Coset>,
}

impl CosetPartition {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// `divisor -> (coset size, number of cosets)`.
    pub fn census(&self) -> BTreeMap<u64, (usize, usize)> {
        let mut out = BTreeMap::new();
        for c in &self.cosets {
            let entry = out.entry(c.divisor).or_insert((c.len(), 0));
            entry.1 += 1;
        }
        out
    }
}

pub fn cyclotomic_cosets(q: u64, n: u64) -> Result<CosetPartition> {
    if n == 0 || ntheory::gcd(q, n) != 1 {
        return Err(Error::precondition(
            "cyclotomic_cosets",
            format!("gcd({q}, {n}) != 1"),
        ));
    }
    let mut seen = vec![false; n as usize];
    let mut cosets = Vec::new();
    for rep in 0..n {
        if seen[rep as usize] {
            continue;
        }
        let mut elements = Vec::new();
        let mut r = rep;
        while !seen[r as usize] {
            seen[r as usize] = true;
            elements.push(r);
            r = ntheory::mul_mod(r, q, n);
        }
        elements.sort_unstable();
        cosets.push(Coset {
            rep,
            divisor: n / ntheory::gcd(n, rep),
            elements,
        });
    }
    Ok(CosetPartition { n, q, cosets })
}

/// A monic irreducible factor of `x^n - 1` over `F_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    /// The `d` with `factor | Phi_d`.
    pub divisor: u64,
    /// Minimal element of the coset of exponents of its roots.
    pub rep: u64,
    pub poly: Poly<PrimeField>,
}

/// Factors `x^n - 1` as the coset products `prod_{i in C} (x - zeta_n^i)`
/// computed in the splitting field `F_{q^D}`, `D = ord_n q`.
///
/// Factors come sorted by divisor, then by representative.
pub fn factor_xn_minus_1(instance: &ProblemInstance) -> Result<Vec<Factor>> {
    let base = instance.field();
    let n = instance.n();
    let degree = instance.splitting_degree();
    if degree > instance.limits().max_splitting_degree {
        return Err(Error::LimitExceeded {
            what: "splitting degree ord_n q",
            value: degree.to_string(),
            limit: instance.limits().max_splitting_degree.to_string(),
        });
    }
    let mut cosets = cyclotomic_cosets(instance.q(), n)?.cosets;
    cosets.sort_by_key(|c| (c.divisor, c.rep));

    let split = ExtensionField::smallest(instance.q(), degree as usize)?;
    let zeta = prime_power_root_of_unity(&split, instance.p(), instance.k())?;
    let mut powers = Vec::with_capacity(n as usize);
    let mut acc = split.one();
    for _ in 0..n {
        powers.push(acc.clone());
        acc = split.mul(&acc, &zeta);
    }

    let mut factors = Vec::with_capacity(cosets.len());
    for coset in cosets {
        let roots: Vec<&ExtElement> = coset
            .elements
            .iter()
            .map(|&i| &powers[i as usize])
            .collect();
        let product = product_of_linear_factors(&split, &roots);
        let poly = Poly::new(base, descend(&product, &coset)?);
        debug_assert_eq!(poly.degree(), Some(coset.len()));
        factors.push(Factor {
            divisor: coset.divisor,
            rep: coset.rep,
            poly,
        });
    }

    let product = factors
        .iter()
        .fold(Poly::one(base), |acc, f| &acc * &f.poly);
    if product != Poly::x_pow_minus_one(base, n as usize) {
        return Err(Error::InvariantViolation(
            "product of coset factors differs from x^n - 1".into(),
        ));
    }
    Ok(factors)
}

// prod (x - r) over the given roots, coefficients constant first.
fn product_of_linear_factors(field: &ExtensionField, roots: &[&ExtElement]) -> Vec<ExtElement> {
    let mut c = vec![field.one()];
    for &root in roots {
        let top = c.last().unwrap().clone();
        let len = c.len();
        for j in (1..len).rev() {
            let shifted = field.mul(root, &c[j]);
            c[j] = field.sub(&c[j - 1], &shifted);
        }
        c[0] = field.neg(&field.mul(root, &c[0]));
        c.push(top);
    }
    c
}

fn descend(coeffs: &[ExtElement], coset: &Coset) -> Result<Vec<u64>> {
    coeffs
        .iter()
        .map(|c| {
            c.as_base().ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "factor for coset {} has a coefficient outside F_q",
                    coset.rep
                ))
            })
        })
        .collect()
}

/// Number of primitive idempotents: one per coset.
pub fn expected_idempotent_count(instance: &ProblemInstance) -> Result<usize> {
    Ok(cyclotomic_cosets(instance.q(), instance.n())?.len())
}

/// `1 + (p^m' - 1)/t + (k - m') phi(p^m')/t` with `m' = min(m, k)`, where the
/// closed forms apply; `None` for `p = 2`, `q = 3 (mod 4)`, `k > m`.
pub fn closed_form_count(instance: &ProblemInstance) -> Option<u64> {
    let (p, k, t) = (instance.p(), instance.k(), instance.t());
    let m = instance.effective_m();
    if p == 2 && instance.q() % 4 == 3 && k > m {
        return None;
    }
    let pm = p.pow(m);
    Some(1 + (pm - 1) / t + (k - m) as u64 * ntheory::totient(pm) / t)
}
