use std::fmt;

use serde::{Deserialize, Serialize};

use super::cpoly::CPoly;
use super::json::{CPolyJson, PolyJson};
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// A family member: real polynomial or complex polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Real(MultiPoly),
    Complex(CPoly),
}

impl Value {
    pub fn canonical_string(&self) -> String {
        match self {
            Value::Real(p) => p.canonical_string(),
            Value::Complex(c) => c.canonical_string(),
        }
    }

    pub fn as_real(&self) -> Option<&MultiPoly> {
        match self {
            Value::Real(p) => Some(p),
            Value::Complex(_) => None,
        }
    }

    pub fn as_complex(&self) -> Option<&CPoly> {
        match self {
            Value::Complex(c) => Some(c),
            Value::Real(_) => None,
        }
    }

    pub fn into_real(self) -> Result<MultiPoly> {
        match self {
            Value::Real(p) => Ok(p),
            Value::Complex(_) => Err(Error::usage("expected a real polynomial, found a complex one")),
        }
    }

    pub fn into_complex(self) -> CPoly {
        match self {
            Value::Real(p) => CPoly::real(p),
            Value::Complex(c) => c,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl From<MultiPoly> for Value {
    fn from(p: MultiPoly) -> Self {
        Value::Real(p)
    }
}

impl From<CPoly> for Value {
    fn from(c: CPoly) -> Self {
        Value::Complex(c)
    }
}

/// JSON form: a polynomial object, or `{"re":..,"im":..}` for complex values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueJson {
    Complex(CPolyJson),
    Real(PolyJson),
}

impl From<&Value> for ValueJson {
    fn from(v: &Value) -> Self {
        match v {
            Value::Real(p) => ValueJson::Real(p.into()),
            Value::Complex(c) => ValueJson::Complex(c.into()),
        }
    }
}

impl TryFrom<&ValueJson> for Value {
    type Error = Error;

    fn try_from(j: &ValueJson) -> Result<Self> {
        Ok(match j {
            ValueJson::Real(p) => Value::Real(MultiPoly::try_from(p)?),
            ValueJson::Complex(c) => Value::Complex(CPoly::try_from(c)?),
        })
    }
}
