//! Subspace file format and serde helpers for extended reals.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SprError};
use crate::scalar::{Field, Scalar};
use crate::space::{AtomSpace, NormSpec, Subspace};

/// Serializes `f64` with infinities and NaN as the strings `"inf"`, `"-inf"`, `"nan"`.
pub mod ext_f64 {
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn to_repr(v: f64) -> serde_json::Value {
        if v.is_finite() {
            serde_json::json!(v)
        } else if v.is_nan() {
            serde_json::json!("nan")
        } else if v > 0.0 {
            serde_json::json!("inf")
        } else {
            serde_json::json!("-inf")
        }
    }

    pub fn parse(s: &str) -> Option<f64> {
        match s {
            "inf" | "+inf" | "infinity" => Some(f64::INFINITY),
            "-inf" | "-infinity" => Some(f64::NEG_INFINITY),
            "nan" => Some(f64::NAN),
            _ => None,
        }
    }

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => parse(&t).ok_or_else(|| D::Error::custom(format!("not a number: {t}"))),
        }
    }

    /// Same convention for `Option<f64>`.
    pub mod option {
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(x) => super::serialize(x, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            #[derive(Deserialize)]
            struct Wrap(#[serde(with = "super")] f64);
            Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
        }
    }

    /// Same convention for `Option<[f64; 2]>`.
    pub mod pair_option {
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &Option<[f64; 2]>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some([a, b]) => {
                    let mut seq = s.serialize_seq(Some(2))?;
                    seq.serialize_element(&super::to_repr(*a))?;
                    seq.serialize_element(&super::to_repr(*b))?;
                    seq.end()
                }
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<[f64; 2]>, D::Error> {
            #[derive(Deserialize)]
            struct Wrap(#[serde(with = "super")] f64);
            Ok(Option::<[Wrap; 2]>::deserialize(d)?.map(|[a, b]| [a.0, b.0]))
        }
    }
}

/// On-disk subspace: weights, norm, field and basis entries as `[re]` or `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspaceFile {
    pub field: Field,
    pub weights: Vec<f64>,
    pub norm: NormSpec,
    pub basis: Vec<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<serde_json::Value>,
}

/// A subspace over either scalar field.
#[derive(Clone, Debug)]
pub enum AnySubspace {
    Real(Subspace<f64>),
    Complex(Subspace<Complex64>),
}

impl AnySubspace {
    pub fn dim(&self) -> usize {
        match self {
            AnySubspace::Real(e) => e.dim(),
            AnySubspace::Complex(e) => e.dim(),
        }
    }

    pub fn to_file(&self) -> SubspaceFile {
        match self {
            AnySubspace::Real(e) => SubspaceFile::from_subspace(e),
            AnySubspace::Complex(e) => SubspaceFile::from_subspace(e),
        }
    }
}

impl SubspaceFile {
    pub fn from_subspace<S: Scalar>(e: &Subspace<S>) -> Self {
        let a = e.ambient();
        Self {
            field: S::FIELD,
            weights: a.weights().to_vec(),
            norm: a.norm_spec().clone(),
            basis: e.basis().iter().map(|b| b.iter().map(|z| z.to_parts()).collect()).collect(),
            manifest: None,
        }
    }

    /// Rebuilds the subspace, validating every invariant.
    pub fn into_subspace(self) -> Result<AnySubspace> {
        let space = Arc::new(AtomSpace::new(self.weights, self.norm, self.field)?);
        match self.field {
            Field::Real => Ok(AnySubspace::Real(Subspace::new(space, decode::<f64>(&self.basis)?)?)),
            Field::Complex => Ok(AnySubspace::Complex(Subspace::new(space, decode::<Complex64>(&self.basis)?)?)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("subspace files always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| SprError::Format(e.to_string()))
    }
}

fn decode<S: Scalar>(basis: &[Vec<Vec<f64>>]) -> Result<Vec<Vec<S>>> {
    basis
        .iter()
        .map(|b| {
            b.iter()
                .map(|parts| {
                    if parts.len() != S::REAL_DIM {
                        Err(SprError::Format(format!("{:?} entries need {} components, got {}", S::FIELD, S::REAL_DIM, parts.len())))
                    } else {
                        Ok(S::from_parts(parts))
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Probe {
        #[serde(with = "ext_f64")]
        a: f64,
        #[serde(with = "ext_f64::option")]
        b: Option<f64>,
        #[serde(with = "ext_f64::pair_option")]
        c: Option<[f64; 2]>,
    }

    #[test]
    fn infinities_round_trip() {
        let p = Probe { a: f64::INFINITY, b: Some(f64::NEG_INFINITY), c: Some([1.5, f64::INFINITY]) };
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"a":"inf","b":"-inf","c":[1.5,"inf"]}"#);
        assert_eq!(serde_json::from_str::<Probe>(&s).unwrap(), p);
        let q = Probe { a: 0.1, b: None, c: None };
        assert_eq!(serde_json::from_str::<Probe>(&serde_json::to_string(&q).unwrap()).unwrap(), q);
    }

    #[test]
    fn complex_file_round_trip() {
        let sp = Arc::new(AtomSpace::new(vec![0.5, 0.5], NormSpec::Lp { p: 2.0 }, Field::Complex).unwrap());
        let e = Subspace::new(sp, vec![vec![Complex64::new(1.0, 0.1), Complex64::new(-0.3, 2.0)]]).unwrap();
        let text = SubspaceFile::from_subspace(&e).to_json();
        assert!(text.contains("\"field\": \"complex\""));
        let AnySubspace::Complex(back) = SubspaceFile::from_json(&text).unwrap().into_subspace().unwrap() else { panic!("field changed") };
        assert_eq!(back.basis(), e.basis());
    }

    #[test]
    fn wrong_arity_is_a_format_error() {
        let text = r#"{"field":"complex","weights":[1.0],"norm":{"variant":"sup"},"basis":[[[1.0]]]}"#;
        let err = SubspaceFile::from_json(text).unwrap().into_subspace().unwrap_err();
        assert!(matches!(err, SprError::Format(_)));
    }
}
