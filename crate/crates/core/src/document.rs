//! The exported form of an idempotent system (schema `idemforge/1`).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::codes::CyclicCodeSummary;
use crate::error::{Error, Result};
use crate::structure::{instance_parameters, Limits, ProblemInstance};
use crate::verify::VerificationReport;
use crate::{CyclicElement, IdempotentKind, IdempotentRecord, Method, Params};

pub const SCHEMA: &str = "idemforge/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub label: String,
    pub kind: IdempotentKind,
    pub params: Option<Params>,
    pub coeffs: Vec<u64>,
}

/// Field order here is the key order of the rendered JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema: String,
    pub q: u64,
    pub p: u64,
    pub k: u32,
    pub n: u64,
    pub t: u64,
    pub m: u32,
    pub method: Method,
    pub idempotents: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codes: Option<Vec<CyclicCodeSummary>>,
}

impl OutputDocument {
    pub fn new(instance: &ProblemInstance, method: Method, records: &[IdempotentRecord]) -> Self {
        OutputDocument {
            schema: SCHEMA.to_string(),
            q: instance.q(),
            p: instance.p(),
            k: instance.k(),
            n: instance.n(),
            t: instance.t(),
            m: instance.m(),
            method,
            idempotents: records
                .iter()
                .map(|r| Entry {
                    label: r.label.clone(),
                    kind: r.kind,
                    params: r.params,
                    coeffs: r.value.to_u64_vec(),
                })
                .collect(),
            verification: None,
            codes: None,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: OutputDocument =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        if doc.schema != SCHEMA {
            return Err(Error::Document(format!(
                "unknown schema {:?}, expected {SCHEMA:?}",
                doc.schema
            )));
        }
        Ok(doc)
    }

    /// Rebuilds the instance and checks that the stored parameters agree.
    pub fn instance(&self, limits: &Limits) -> Result<ProblemInstance> {
        let inst = instance_parameters(self.q, self.p, self.k, limits)?;
        let stored = (self.n, self.t, self.m);
        let actual = (inst.n(), inst.t(), inst.m());
        if stored != actual {
            return Err(Error::Document(format!(
                "stored (n, t, m) = {stored:?} but the instance has {actual:?}"
            )));
        }
        Ok(inst)
    }

    /// The entries as ring elements; every entry must have exactly `n`
    /// coefficients, each below `q`.
    pub fn records(&self, instance: &ProblemInstance) -> Result<Vec<IdempotentRecord>> {
        let field = instance.field();
        self.idempotents
            .iter()
            .map(|e| {
                if e.coeffs.len() as u64 != self.n {
                    return Err(Error::Document(format!(
                        "entry {:?} has {} coefficients, expected {}",
                        e.label,
                        e.coeffs.len(),
                        self.n
                    )));
                }
                if let Some(c) = e.coeffs.iter().find(|&&c| c >= self.q) {
                    return Err(Error::Document(format!(
                        "entry {:?} has coefficient {c} outside [0, {})",
                        e.label, self.q
                    )));
                }
                Ok(IdempotentRecord {
                    value: CyclicElement::from_coeffs(field, e.coeffs.clone())?,
                    label: e.label.clone(),
                    kind: e.kind,
                    params: e.params,
                    method: self.method,
                })
            })
            .collect()
    }

    /// One polynomial per line in descending powers.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# F_{}[x]/(x^{} - 1)  p={} k={} t={} m={}  method={}  count={}",
            self.q,
            self.n,
            self.p,
            self.k,
            self.t,
            self.m,
            self.method,
            self.idempotents.len()
        );
        let field = crate::PrimeField::new(self.q).ok();
        for e in &self.idempotents {
            let poly = field.map(|f| crate::BasePoly::new(f, e.coeffs.clone()));
            match poly {
                Some(p) => {
                    let _ = writeln!(out, "{} = {}", e.label, p);
                }
                None => {
                    let _ = writeln!(out, "{} = {:?}", e.label, e.coeffs);
                }
            }
        }
        if let Some(codes) = &self.codes {
            for c in codes {
                let _ = writeln!(out, "code {} {}", c.label, c.parameters());
            }
        }
        if let Some(v) = &self.verification {
            let _ = writeln!(out, "{v}");
        }
        out
    }
}
