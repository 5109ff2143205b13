//! JSON encodings. Big integers are decimal strings.

use crate::counts::CountReport;
use crate::field::{square_class, FieldDescriptor, SquareClass};
use crate::gw::{GwClass, GwInvariants};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("bad integer {0:?}")]
    BadInteger(String),
    #[error("bad square class label {0:?} for {1}")]
    BadClass(String, FieldDescriptor),
    #[error("stored invariants disagree with the coefficients")]
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub class: String,
    pub mult: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GwClassJson {
    pub coeffs: Vec<CoeffJson>,
    pub rank: String,
    pub signature: Option<String>,
    pub disc: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsJson {
    pub rank: String,
    pub signature: Option<String>,
    pub disc: String,
}

impl From<&GwInvariants> for InvariantsJson {
    fn from(inv: &GwInvariants) -> Self {
        InvariantsJson {
            rank: inv.rank.to_string(),
            signature: inv.signature.as_ref().map(BigInt::to_string),
            disc: inv.disc.label(),
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt, JsonError> {
    s.parse().map_err(|_| JsonError::BadInteger(s.to_string()))
}

/// Inverse of [`SquareClass::label`].
pub fn class_from_label(label: &str, field: FieldDescriptor) -> Result<SquareClass, JsonError> {
    let bad = || JsonError::BadClass(label.to_string(), field);
    if field.is_rationals() {
        let n = parse_int(label).map_err(|_| bad())?;
        let c = square_class(&field.from_bigint(&n)).map_err(|_| bad())?;
        if c != SquareClass::Rational(n) {
            return Err(bad());
        }
        Ok(c)
    } else {
        match label {
            "1" => Ok(SquareClass::one(field)),
            "q" => {
                let q = field.least_nonresidue().ok_or_else(bad)?;
                square_class(&field.from_i64(q as i64)).map_err(|_| bad())
            }
            _ => Err(bad()),
        }
    }
}

impl From<&GwClass> for GwClassJson {
    fn from(c: &GwClass) -> Self {
        let inv = c.invariants();
        GwClassJson {
            coeffs: c
                .terms()
                .map(|(k, m)| CoeffJson { class: k.label(), mult: m.to_string() })
                .collect(),
            rank: inv.rank.to_string(),
            signature: inv.signature.as_ref().map(BigInt::to_string),
            disc: inv.disc.label(),
        }
    }
}

impl GwClassJson {
    /// Rebuilds the class and checks the stored invariants.
    pub fn to_class(&self, field: FieldDescriptor) -> Result<GwClass, JsonError> {
        let mut c = GwClass::zero(field);
        for t in &self.coeffs {
            c.add_class(class_from_label(&t.class, field)?, parse_int(&t.mult)?);
        }
        if GwClassJson::from(&c) != *self {
            return Err(JsonError::Inconsistent);
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryJson {
    pub d: u32,
    pub n: u32,
    pub degrees: Vec<u32>,
    pub field: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReportJson {
    pub query: QueryJson,
    pub orientable: bool,
    pub reasons: Vec<String>,
    #[serde(rename = "n_R")]
    pub n_r: String,
    #[serde(rename = "n_C")]
    pub n_c: String,
    pub gw: GwClassJson,
    pub caveats: Vec<String>,
}

impl From<&CountReport> for CountReportJson {
    fn from(r: &CountReport) -> Self {
        CountReportJson {
            query: QueryJson {
                d: r.query.d,
                n: r.query.n,
                degrees: r.query.degrees.clone(),
                field: r.query.field.to_string(),
            },
            orientable: r.orientable(),
            reasons: r.orientability.reasons(),
            n_r: r.n_r.to_string(),
            n_c: r.n_c.to_string(),
            gw: GwClassJson::from(&r.gw_class),
            caveats: r.caveats.clone(),
        }
    }
}
