//! Independent checks of a claimed system of primitive idempotents.
//!
//! A set that is nonzero, idempotent, pairwise orthogonal, sums to 1 and has
//! one member per irreducible factor of `x^n - 1` is the primitive system;
//! [`check_primitivity`] confirms it factor by factor.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::structure::{factor_xn_minus_1, Factor, ProblemInstance};
use crate::{all_idempotents_euclid, CyclicElement};

pub fn check_idempotency(e: &CyclicElement) -> bool {
    e.mul(e).is_ok_and(|sq| &sq == e)
}

pub fn check_orthogonality(set: &[CyclicElement]) -> bool {
    first_non_orthogonal(set).is_none()
}

pub fn check_completeness(set: &[CyclicElement]) -> bool {
    sum(set).is_some_and(|s| s.is_one())
}

/// One element per factor, each `= 1` modulo its own factor and `= 0` modulo
/// every other one.
pub fn check_primitivity(set: &[CyclicElement], factors: &[Factor]) -> bool {
    primitivity_failure(set, factors).is_none()
}

/// Equality as sets of ring elements; labels and order are ignored.
pub fn sets_equal(a: &[CyclicElement], b: &[CyclicElement]) -> bool {
    let key = |s: &[CyclicElement]| {
        let mut v: Vec<Vec<u64>> = s.iter().map(|e| e.to_u64_vec()).collect();
        v.sort();
        v
    };
    let (ka, kb) = (key(a), key(b));
    let distinct = ka.windows(2).all(|w| w[0] != w[1]);
    distinct && ka == kb
}

fn sum(set: &[CyclicElement]) -> Option<CyclicElement> {
    let first = set.first()?;
    let mut acc = CyclicElement::zero(*first.field(), first.n());
    for e in set {
        acc = acc.add(e).ok()?;
    }
    Some(acc)
}

fn first_non_orthogonal(set: &[CyclicElement]) -> Option<(usize, usize)> {
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            if !set[i].mul(&set[j]).is_ok_and(|p| p.is_zero()) {
                return Some((i, j));
            }
        }
    }
    None
}

fn residues(e: &CyclicElement, factors: &[Factor]) -> Vec<Option<bool>> {
    let lifted = e.lift();
    factors
        .iter()
        .map(|f| {
            let r = lifted.divrem(&f.poly).ok()?.1;
            if r.is_zero() {
                Some(false)
            } else if r.degree() == Some(0) && r.coeff(0) == 1 {
                Some(true)
            } else {
                None
            }
        })
        .collect()
}

fn primitivity_failure(set: &[CyclicElement], factors: &[Factor]) -> Option<String> {
    if set.len() != factors.len() {
        return Some(format!(
            "{} elements for {} irreducible factors",
            set.len(),
            factors.len()
        ));
    }
    let mut owner: Vec<Option<usize>> = vec![None; factors.len()];
    for (i, e) in set.iter().enumerate() {
        let res = residues(e, factors);
        if let Some(fi) = res.iter().position(|r| r.is_none()) {
            return Some(format!("element {i} is neither 0 nor 1 modulo factor {fi}"));
        }
        let ones: Vec<usize> = (0..res.len()).filter(|&f| res[f] == Some(true)).collect();
        if ones.len() != 1 {
            return Some(format!("element {i} is 1 modulo {} factors", ones.len()));
        }
        if let Some(prev) = owner[ones[0]].replace(i) {
            return Some(format!(
                "elements {prev} and {i} both belong to factor {}",
                ones[0]
            ));
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    pub n: u64,
    pub t: u64,
    pub m: u32,
}

impl From<&ProblemInstance> for InstanceSummary {
    fn from(i: &ProblemInstance) -> Self {
        InstanceSummary {
            q: i.q(),
            p: i.p(),
            k: i.k(),
            n: i.n(),
            t: i.t(),
            m: i.m(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl CheckOutcome {
    fn new(name: &str, failure: Option<String>) -> Self {
        CheckOutcome {
            name: name.to_string(),
            passed: failure.is_none(),
            diagnostic: failure,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance: InstanceSummary,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

impl VerificationReport {
    /// The first failing check, if any.
    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = &self.instance;
        writeln!(
            f,
            "instance q={} p={} k={} n={} t={} m={}",
            i.q, i.p, i.k, i.n, i.t, i.m
        )?;
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            match &c.diagnostic {
                Some(d) => writeln!(f, "  {:<14} {status}: {d}", c.name)?,
                None => writeln!(f, "  {:<14} {status}", c.name)?,
            }
        }
        write!(f, "overall: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// Runs every check, computing the factorization (and the oracle set when
/// `against_oracle` holds).
pub fn verify_system(
    instance: &ProblemInstance,
    set: &[CyclicElement],
    against_oracle: bool,
) -> Result<VerificationReport> {
    let factors = factor_xn_minus_1(instance)?;
    let oracle = if against_oracle {
        let recs = all_idempotents_euclid(instance)?;
        Some(recs.into_iter().map(|r| r.value).collect::<Vec<_>>())
    } else {
        None
    };
    Ok(verify_with_factors(
        instance,
        set,
        &factors,
        oracle.as_deref(),
    ))
}

/// As [`verify_system`], with the factorization and optional oracle supplied.
pub fn verify_with_factors(
    instance: &ProblemInstance,
    set: &[CyclicElement],
    factors: &[Factor],
    oracle: Option<&[CyclicElement]>,
) -> VerificationReport {
    let n = instance.n() as usize;
    let mut checks = Vec::new();

    let shape = set.iter().enumerate().find_map(|(i, e)| {
        if e.n() != n {
            Some(format!(
                "element {i} has {} coefficients, expected {n}",
                e.n()
            ))
        } else if e.field().modulus() != instance.q() {
            Some(format!("element {i} lives over F_{}", e.field().modulus()))
        } else {
            None
        }
    });
    let shape_ok = shape.is_none();
    checks.push(CheckOutcome::new("shape", shape));
    if !shape_ok {
        return finish(instance, checks);
    }

    checks.push(CheckOutcome::new(
        "nonzero",
        set.iter()
            .position(|e| e.is_zero())
            .map(|i| format!("element {i} is zero")),
    ));

    let idem = set.iter().enumerate().find_map(|(i, e)| {
        let sq = e.mul(e).ok()?;
        let at = (0..n).find(|&c| sq.coeffs()[c] != e.coeffs()[c])?;
        Some(format!(
            "element {i}: coefficient of x^{at} is {} in e^2 but {} in e",
            sq.coeffs()[at],
            e.coeffs()[at]
        ))
    });
    checks.push(CheckOutcome::new("idempotency", idem));

    checks.push(CheckOutcome::new(
        "orthogonality",
        first_non_orthogonal(set)
            .map(|(i, j)| format!("elements {i} and {j} have a nonzero product")),
    ));

    let complete = match sum(set) {
        None => Some("empty set".to_string()),
        Some(s) if s.is_one() => None,
        Some(s) => {
            let at = (0..n)
                .find(|&c| s.coeffs()[c] != u64::from(c == 0))
                .unwrap_or(0);
            Some(format!(
                "coefficient of x^{at} in the sum is {}",
                s.coeffs()[at]
            ))
        }
    };
    checks.push(CheckOutcome::new("completeness", complete));

    let card = (set.len() != factors.len()).then(|| {
        format!(
            "{} elements, {} cyclotomic cosets",
            set.len(),
            factors.len()
        )
    });
    checks.push(CheckOutcome::new("cardinality", card));

    checks.push(CheckOutcome::new(
        "primitivity",
        primitivity_failure(set, factors),
    ));

    if let Some(oracle) = oracle {
        let diff = (!sets_equal(set, oracle)).then(|| {
            let missing = oracle.iter().filter(|o| !set.contains(o)).count();
            let extra = set.iter().filter(|e| !oracle.contains(e)).count();
            format!("{missing} oracle elements missing, {extra} elements not in the oracle set")
        });
        checks.push(CheckOutcome::new("oracle", diff));
    }

    finish(instance, checks)
}

fn finish(instance: &ProblemInstance, checks: Vec<CheckOutcome>) -> VerificationReport {
    VerificationReport {
        instance: instance.into(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
