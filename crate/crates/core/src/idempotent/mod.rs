//! Constructors for the complete set of primitive idempotents of
//! `F_q[x]/(x^(p^k) - 1)`.
//!
//! * [`all_idempotents_euclid`]: one idempotent per irreducible factor of
//!   `x^n - 1`, via a modular inverse. Works everywhere; used as the oracle.
//! * [`tap1_idempotents`]: the fully split ring, `q = 1 (mod n)`.
//! * [`tap2_idempotents`]: `q` a primitive root mod `p^k`.
//! * [`split_case_idempotents`]: `p | q - 1`.
//! * [`general_case_idempotents`]: `ord_p q = t > 1`, through the trace of
//!   `F_{q^t}` over `F_q`.
//!
//! [`dispatch`] picks the closed form that applies.

mod closed_form;
mod euclid;

pub use closed_form::{
    general_case_idempotents, orbit_representatives, split_case_idempotents, tap1_idempotents,
    tap2_idempotents, OrbitDomain,
};
pub use euclid::{all_idempotents_euclid, euclid_idempotent, idempotents_from_factors};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::ProblemInstance;
use crate::CyclicElement;

/// Which family of the closed-form description a record belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdempotentKind {
    /// `(1/n) sum x^l`.
    UnitSum,
    /// Indexed by a root-of-unity exponent `j`.
    SecondType,
    /// Indexed by a level `s > m` and a unit `l`.
    ThirdType,
    /// Produced from a factor of `x^n - 1` with no closed-form index.
    Generic,
}

/// Index data of a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Params {
    J { j: u64 },
    SL { s: u32, l: u64 },
    Factor { d: u64, rep: u64 },
}

/// The constructor that produced a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Euclid,
    Tap1,
    Tap2,
    SplitCase,
    GeneralCase,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Euclid => "euclid",
            Method::Tap1 => "tap1",
            Method::Tap2 => "tap2",
            Method::SplitCase => "split-case",
            Method::GeneralCase => "general-case",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "euclid" => Method::Euclid,
            "tap1" => Method::Tap1,
            "tap2" => Method::Tap2,
            "split-case" | "split" => Method::SplitCase,
            "general-case" | "general" => Method::GeneralCase,
            other => return Err(Error::InvalidInstance(format!("unknown method {other:?}"))),
        })
    }
}

/// A primitive idempotent with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentRecord {
    pub value: CyclicElement,
    pub label: String,
    pub kind: IdempotentKind,
    pub params: Option<Params>,
    pub method: Method,
}

impl IdempotentRecord {
    fn sort_key(&self) -> (IdempotentKind, u64, u64) {
        match self.params {
            None => (self.kind, 0, 0),
            Some(Params::J { j }) => (self.kind, 0, j),
            Some(Params::SL { s, l }) => (self.kind, s as u64, l),
            Some(Params::Factor { d, rep }) => (self.kind, d, rep),
        }
    }
}

pub(crate) fn canonical_order(records: &mut [IdempotentRecord]) {
    records.sort_by_key(|r| r.sort_key());
}

/// Arbitrary-but-fixed choices made while constructing `F_{q^t}` and its
/// roots of unity. The resulting idempotent set does not depend on them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Choices {
    /// Which monic irreducible (in enumeration order) defines `F_{q^t}`.
    pub modulus_rank: usize,
    /// Which generator of the multiplicative group (in enumeration order)
    /// the roots of unity are derived from.
    pub generator_rank: usize,
}

/// The closed-form route for the instance: split case when `t = 1` (which
/// covers the fully split ring), general case when `t > 1` (which covers
/// `q` primitive mod `p^k`).
pub fn dispatch(instance: &ProblemInstance, choices: &Choices) -> Result<Vec<IdempotentRecord>> {
    if instance.t() == 1 {
        split_case_idempotents(instance, choices)
    } else {
        general_case_idempotents(instance, choices)
    }
}

/// Runs a specific constructor; [`Method::Euclid`] forces the oracle path.
pub fn dispatch_with_method(
    instance: &ProblemInstance,
    method: Method,
    choices: &Choices,
) -> Result<Vec<IdempotentRecord>> {
    match method {
        Method::Euclid => all_idempotents_euclid(instance),
        Method::Tap1 => tap1_idempotents(instance.q(), instance.n(), choices),
        Method::Tap2 => tap2_idempotents(instance.q(), instance.p(), instance.k()),
        Method::SplitCase => split_case_idempotents(instance, choices),
        Method::GeneralCase => general_case_idempotents(instance, choices),
    }
}

/// The method [`dispatch`] would use.
pub fn dispatch_method(instance: &ProblemInstance) -> Method {
    if instance.t() == 1 {
        Method::SplitCase
    } else {
        Method::GeneralCase
    }
}

/// Third-type records per level `s`.
pub fn third_type_counts(records: &[IdempotentRecord]) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for r in records {
        if let Some(Params::SL { s, .. }) = r.params {
            *out.entry(s).or_insert(0) += 1;
        }
    }
    out
}
