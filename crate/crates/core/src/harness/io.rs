//! Instance and config documents.
//!
//! Both are JSON objects. Rational fields accept integers, `"p/q"` strings
//! and finite decimals (as numbers or strings); decimals are read from
//! their literal text, so `0.8` is exactly `4/5`.

use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::generate::RunConfig;
use crate::model::Instance;
use crate::rational::Rational;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document must be a JSON object")]
    NotAnObject,
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("field `{field}`: {message}")]
    InvalidField { field: String, message: String },
    #[error("instance has no agents")]
    EmptyProfile,
    #[error("d must be non-negative, got {0}")]
    NegativeCap(Rational),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::InvalidField {
        field: field.into(),
        message: message.into(),
    }
}

/// Reads one rational literal from a JSON value.
pub fn rational_from_value(field: &str, value: &Value) -> Result<Rational, ParseError> {
    let text = match value {
        // With arbitrary precision enabled, this is the literal as written.
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(invalid(field, format!("expected a rational literal, found {other}"))),
    };
    text.parse().map_err(|e| invalid(field, format!("{e}")))
}

fn as_object(doc: &Value) -> Result<&Map<String, Value>, ParseError> {
    doc.as_object().ok_or(ParseError::NotAnObject)
}

/// A parsed instance document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub name: Option<String>,
    pub instance: Instance,
}

pub fn parse_instance_file(bytes: &[u8]) -> Result<InstanceFile, ParseError> {
    let doc: Value = serde_json::from_slice(bytes)?;
    let obj = as_object(&doc)?;
    let d = rational_from_value("d", obj.get("d").ok_or(ParseError::MissingField("d"))?)?;
    if d.is_negative() {
        return Err(ParseError::NegativeCap(d));
    }
    let raw = obj
        .get("locations")
        .ok_or(ParseError::MissingField("locations"))?
        .as_array()
        .ok_or_else(|| invalid("locations", "expected an array"))?;
    if raw.is_empty() {
        return Err(ParseError::EmptyProfile);
    }
    let locations = raw
        .iter()
        .enumerate()
        .map(|(i, v)| rational_from_value(&format!("locations[{i}]"), v))
        .collect::<Result<Vec<_>, _>>()?;
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(invalid("name", "expected a string")),
    };
    let instance = Instance::new(d, locations).expect("validated above");
    Ok(InstanceFile { name, instance })
}

pub fn parse_instance(bytes: &[u8]) -> Result<Instance, ParseError> {
    parse_instance_file(bytes).map(|f| f.instance)
}

pub fn read_instance_file(path: &Path) -> Result<InstanceFile, ParseError> {
    let bytes = std::fs::read(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_instance_file(&bytes)
}

/// On-disk form of an instance; every rational is a `"p/q"` string.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub d: Rational,
    pub locations: Vec<Rational>,
}

impl InstanceDoc {
    pub fn new(instance: &Instance, name: Option<String>) -> Self {
        InstanceDoc {
            name,
            d: instance.d(),
            locations: instance.locations().to_vec(),
        }
    }
}

pub fn serialize_instance(instance: &Instance, name: Option<&str>) -> String {
    let doc = InstanceDoc::new(instance, name.map(str::to_string));
    let mut text = serde_json::to_string_pretty(&doc).expect("instance documents always serialize");
    text.push('\n');
    text
}

/// First 16 hex digits of the SHA-256 of the compact canonical document.
pub fn instance_hash(instance: &Instance) -> String {
    let canonical = serde_json::to_string(&InstanceDoc::new(instance, None)).expect("serializable");
    let digest = Sha256::digest(canonical.as_bytes());
    hex::encode(&digest[..8])
}

/// Overlays the fields present in a config document onto `base`.
pub fn parse_config(bytes: &[u8], base: RunConfig) -> Result<RunConfig, ParseError> {
    let doc: Value = serde_json::from_slice(bytes)?;
    let obj = as_object(&doc)?;
    let mut cfg = base;
    let uint = |key: &str, v: &Value| -> Result<u64, ParseError> {
        v.as_u64()
            .ok_or_else(|| invalid(key, "expected a non-negative integer"))
    };
    for (key, value) in obj {
        match key.as_str() {
            "seed" => cfg.seed = uint(key, value)?,
            "trials" => cfg.trials = uint(key, value)? as usize,
            "n_min" => cfg.n_range.0 = uint(key, value)? as usize,
            "n_max" => cfg.n_range.1 = uint(key, value)? as usize,
            "n_range" => {
                let pair = value
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| invalid(key, "expected [min, max]"))?;
                cfg.n_range = (uint(key, &pair[0])? as usize, uint(key, &pair[1])? as usize);
            }
            "coordinate_bound" => cfg.coordinate_bound = rational_from_value(key, value)?,
            "d" => cfg.d = rational_from_value(key, value)?,
            "granularity" => cfg.granularity = uint(key, value)? as i64,
            "max_coalition" => cfg.max_coalition = uint(key, value)? as usize,
            "node_budget" => cfg.node_budget = uint(key, value)?,
            "eps" => cfg.eps = rational_from_value(key, value)?,
            other => return Err(invalid(other, "unknown config key")),
        }
    }
    cfg.validate().map_err(|m| invalid("config", m))?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn z(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn parses_mixed_literals() {
        let inst = parse_instance(br#"{"d":1,"locations":[-2,"0.8",3]}"#).unwrap();
        assert_eq!(inst.d(), z(1));
        assert_eq!(inst.locations(), &[z(-2), q(4, 5), z(3)]);

        let inst = parse_instance(br#"{"d":"1/3","locations":["-1/3"]}"#).unwrap();
        assert_eq!((inst.d(), inst.locations()[0]), (q(1, 3), q(-1, 3)));

        // Bare JSON decimals are read exactly, not through f64.
        let inst = parse_instance(br#"{"d":0.1,"locations":[0.3, 1e-3]}"#).unwrap();
        assert_eq!(inst.d(), q(1, 10));
        assert_eq!(inst.locations(), &[q(3, 10), q(1, 1000)]);
    }

    #[test]
    fn rejects_bad_documents() {
        let cases: [&[u8]; 7] = [
            br#"{"d":1,"locations":[]}"#,
            br#"{"d":-1,"locations":[0]}"#,
            br#"{"locations":[0]}"#,
            br#"{"d":1,"locations":[true]}"#,
            br#"{"d":1,"locations":["NaN"]}"#,
            br#"[1,2]"#,
            br#"{"d":1,"locations":[0]"#,
        ];
        for bytes in cases {
            assert!(parse_instance(bytes).is_err(), "{}", String::from_utf8_lossy(bytes));
        }
        assert!(matches!(
            parse_instance(br#"{"d":1,"locations":[]}"#),
            Err(ParseError::EmptyProfile)
        ));
    }

    #[test]
    fn serialization_round_trips() {
        let inst = Instance::new(q(1, 3), vec![z(-2), q(4, 5), z(3)]).unwrap();
        let text = serialize_instance(&inst, Some("probe"));
        let back = parse_instance_file(text.as_bytes()).unwrap();
        assert_eq!(back.instance, inst);
        assert_eq!(back.name.as_deref(), Some("probe"));
        assert!(text.contains("\"4/5\""));
    }

    #[test]
    fn hash_is_stable_and_content_based() {
        let a = Instance::from_ints(1, &[-1, 1]).unwrap();
        let b = Instance::from_ints(1, &[1, -1]).unwrap();
        assert_eq!(instance_hash(&a), instance_hash(&a.clone()));
        assert_ne!(instance_hash(&a), instance_hash(&b));
        assert_eq!(instance_hash(&a).len(), 16);
    }

    #[test]
    fn config_overlay() {
        let cfg = parse_config(
            br#"{"seed":7,"n_range":[2,4],"eps":"1/10","d":"0.5"}"#,
            RunConfig::default(),
        )
        .unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.n_range, (2, 4));
        assert_eq!(cfg.eps, q(1, 10));
        assert_eq!(cfg.d, q(1, 2));
        assert_eq!(cfg.trials, RunConfig::default().trials);
        assert!(parse_config(br#"{"colour":1}"#, RunConfig::default()).is_err());
        assert!(parse_config(br#"{"trials":0}"#, RunConfig::default()).is_err());
    }
}
