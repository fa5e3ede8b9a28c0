use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An eigenvalue of a two-eigenvalue matrix in exact form: an integer, or
/// `±sqrt(radicand)` for a non-square radicand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExactValue {
    Int(i64),
    Sqrt { radicand: u64, negative: bool },
}

impl ExactValue {
    /// `±sqrt(radicand)`, collapsed to an integer when the radicand is a
    /// perfect square.
    pub fn sqrt(radicand: u64, negative: bool) -> Self {
        let root = radicand.isqrt();
        if root * root == radicand {
            let v = root as i64;
            ExactValue::Int(if negative { -v } else { v })
        } else {
            ExactValue::Sqrt { radicand, negative }
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExactValue::Int(v) => v as f64,
            ExactValue::Sqrt { radicand, negative } => {
                let r = (radicand as f64).sqrt();
                if negative {
                    -r
                } else {
                    r
                }
            }
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExactValue::Int(v) => write!(f, "{v}"),
            ExactValue::Sqrt { radicand, negative } => {
                write!(f, "{}sqrt({radicand})", if negative { "-" } else { "" })
            }
        }
    }
}

/// An eigenvalue as reported by a certificate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EigenValue {
    Exact(ExactValue),
    Float(f64),
}

impl EigenValue {
    pub fn to_f64(self) -> f64 {
        match self {
            EigenValue::Exact(v) => v.to_f64(),
            EigenValue::Float(x) => x,
        }
    }

    pub fn exact(self) -> Option<ExactValue> {
        match self {
            EigenValue::Exact(v) => Some(v),
            EigenValue::Float(_) => None,
        }
    }
}

impl fmt::Display for EigenValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenValue::Exact(v) => v.fmt(f),
            EigenValue::Float(x) => write!(f, "{x:.9}"),
        }
    }
}

// JSON: {"int": r}, {"sqrt": k}, {"sqrt": k, "sign": -1} or {"float": x}.
impl Serialize for EigenValue {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match *self {
            EigenValue::Exact(ExactValue::Int(v)) => {
                let mut m = ser.serialize_map(Some(1))?;
                m.serialize_entry("int", &v)?;
                m.end()
            }
            EigenValue::Exact(ExactValue::Sqrt { radicand, negative }) => {
                let mut m = ser.serialize_map(Some(if negative { 2 } else { 1 }))?;
                m.serialize_entry("sqrt", &radicand)?;
                if negative {
                    m.serialize_entry("sign", &-1)?;
                }
                m.end()
            }
            EigenValue::Float(x) => {
                let mut m = ser.serialize_map(Some(1))?;
                m.serialize_entry("float", &x)?;
                m.end()
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawValue {
    int: Option<i64>,
    sqrt: Option<u64>,
    sign: Option<i8>,
    float: Option<f64>,
}

impl<'de> Deserialize<'de> for EigenValue {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawValue::deserialize(de)?;
        match raw {
            RawValue {
                int: Some(v),
                sqrt: None,
                sign: None,
                float: None,
            } => Ok(EigenValue::Exact(ExactValue::Int(v))),
            RawValue {
                int: None,
                sqrt: Some(radicand),
                sign,
                float: None,
            } => {
                let negative = match sign {
                    None | Some(1) => false,
                    Some(-1) => true,
                    Some(s) => return Err(de::Error::custom(format!("invalid sign {s}"))),
                };
                Ok(EigenValue::Exact(ExactValue::Sqrt { radicand, negative }))
            }
            RawValue {
                int: None,
                sqrt: None,
                sign: None,
                float: Some(x),
            } => Ok(EigenValue::Float(x)),
            _ => Err(de::Error::custom(
                "expected exactly one of int, sqrt (with optional sign) or float",
            )),
        }
    }
}
