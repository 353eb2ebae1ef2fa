//! Primitive idempotents of the group algebra `F_q C_{p^k}`, i.e. of
//! `F_q[x]/(x^(p^k) - 1)`, together with the minimal cyclic codes they
//! generate.
//!
//! The closed-form constructors (see [`idempotent`]) are cross-checked by a
//! generic Euclid construction over the full factorization of `x^n - 1`, and
//! [`verify`] validates any claimed system independently of how it was built.
//!
//! ```
//! use idemforge::{dispatch, ProblemInstance};
//!
//! let instance = ProblemInstance::new(2, 7, 1).unwrap();
//! let records = dispatch(&instance, &Default::default()).unwrap();
//! assert_eq!(records.len(), 3);
//! ```

pub mod codes;
pub mod cyclic;
pub mod document;
mod error;
pub mod field;
pub mod idempotent;
pub mod ntheory;
pub mod poly;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use field::{ExtElement, ExtensionField, Field, PrimeField};
pub use idempotent::{
    all_idempotents_euclid, dispatch, dispatch_with_method, general_case_idempotents,
    split_case_idempotents, tap1_idempotents, tap2_idempotents, Choices, IdempotentKind,
    IdempotentRecord, Method, Params,
};
pub use structure::{Limits, ProblemInstance};

/// Polynomials over the base field `F_q`.
pub type BasePoly = poly::Poly<PrimeField>;
/// Polynomials over the extension `F_{q^t}`.
pub type ExtPoly = poly::Poly<ExtensionField>;
/// Elements of `F_q[x]/(x^n - 1)`; every idempotent lives here.
pub type CyclicElement = cyclic::CyclicRingElement<PrimeField>;
/// Elements of `F_{q^t}[x]/(x^n - 1)`.
pub type ExtCyclicElement = cyclic::CyclicRingElement<ExtensionField>;
