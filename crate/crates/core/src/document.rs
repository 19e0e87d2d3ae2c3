//! The JSON file format for monoidal complexes.
//!
//! ```json
//! {"name": "two rays", "ambient_dim": 2, "generators": [[1, 0], [0, 1]], "facets": [[0], [1]]}
//! ```
//!
//! Generator indices in `facets` are 0-based. Reports name the variable of
//! generator `j` as `X{j+1}`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::complex::{build_complex, ComplexError, GeneratorSystem, MonoidalComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexDocument {
    pub name: Option<String>,
    pub ambient_dim: usize,
    pub generators: Vec<Vec<BigInt>>,
    pub facets: Vec<Vec<usize>>,
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Field { field: field.into(), message: message.into() }
}

fn array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>, DocumentError> {
    v.as_array().ok_or_else(|| field_err(field, "expected an array"))
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let v: Value = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let obj = v.as_object().ok_or_else(|| field_err("<root>", "expected an object"))?;
        if let Some(k) = obj.keys().find(|k| !["name", "ambient_dim", "generators", "facets"].contains(&k.as_str())) {
            return Err(field_err(k.as_str(), "unknown field"));
        }
        let name = match obj.get("name") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(field_err("name", "expected a string")),
        };
        let ambient_dim = obj
            .get("ambient_dim")
            .ok_or_else(|| field_err("ambient_dim", "missing"))?
            .as_u64()
            .and_then(|d| usize::try_from(d).ok())
            .ok_or_else(|| field_err("ambient_dim", "expected a nonnegative integer"))?;
        let gens = array(obj.get("generators").ok_or_else(|| field_err("generators", "missing"))?, "generators")?;
        let mut generators = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            let f = format!("generators[{i}]");
            let row = array(g, &f)?;
            if row.len() != ambient_dim {
                return Err(field_err(&f, format!("has {} entries, expected {ambient_dim}", row.len())));
            }
            let mut out = Vec::with_capacity(row.len());
            for (j, x) in row.iter().enumerate() {
                let x = x.as_i64().ok_or_else(|| field_err(format!("{f}[{j}]"), "expected an integer"))?;
                out.push(BigInt::from(x));
            }
            generators.push(out);
        }
        let fs = array(obj.get("facets").ok_or_else(|| field_err("facets", "missing"))?, "facets")?;
        let mut facets = Vec::with_capacity(fs.len());
        for (i, s) in fs.iter().enumerate() {
            let f = format!("facets[{i}]");
            let mut out = Vec::new();
            for (j, x) in array(s, &f)?.iter().enumerate() {
                let x = x
                    .as_u64()
                    .and_then(|x| usize::try_from(x).ok())
                    .ok_or_else(|| field_err(format!("{f}[{j}]"), "expected a generator index"))?;
                if x >= generators.len() {
                    return Err(field_err(format!("{f}[{j}]"), format!("index {x} out of range")));
                }
                out.push(x);
            }
            facets.push(out);
        }
        Ok(ComplexDocument { name, ambient_dim, generators, facets })
    }

    pub fn build(&self) -> Result<MonoidalComplex, ComplexError> {
        build_complex(GeneratorSystem::new(self.ambient_dim, self.generators.clone())?, &self.facets)
    }

    pub fn from_complex(cx: &MonoidalComplex, name: Option<String>) -> Self {
        ComplexDocument {
            name,
            ambient_dim: cx.ambient_dim(),
            generators: cx.generators().vectors().to_vec(),
            facets: cx.facets().to_vec(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        if let Some(n) = &self.name {
            m.insert("name".into(), json!(n));
        }
        m.insert("ambient_dim".into(), json!(self.ambient_dim));
        let gens: Vec<Value> = self
            .generators
            .iter()
            .map(|g| Value::Array(g.iter().map(big_to_json).collect()))
            .collect();
        m.insert("generators".into(), Value::Array(gens));
        m.insert("facets".into(), json!(self.facets));
        Value::Object(m)
    }

    /// One generator and one facet per line.
    pub fn render(&self) -> String {
        let line = |v: &Value| serde_json::to_string(v).expect("values serialize");
        let doc = self.to_json();
        let mut s = String::from("{\n");
        if let Some(n) = doc.get("name") {
            s.push_str(&format!("  \"name\": {},\n", line(n)));
        }
        s.push_str(&format!("  \"ambient_dim\": {},\n", self.ambient_dim));
        let list = |key: &str, items: &[Value]| {
            let body: Vec<String> = items.iter().map(|v| format!("    {}", line(v))).collect();
            format!("  \"{key}\": [\n{}\n  ]", body.join(",\n"))
        };
        s.push_str(&list("generators", doc["generators"].as_array().expect("array")));
        s.push_str(",\n");
        s.push_str(&list("facets", doc["facets"].as_array().expect("array")));
        s.push_str("\n}\n");
        s
    }
}

fn big_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"name": "two rays", "ambient_dim": 2, "generators": [[1, 0], [0, 1]], "facets": [[0], [1]]}"#;
        let d = ComplexDocument::parse(text).unwrap();
        let cx = d.build().unwrap();
        let back = ComplexDocument::from_complex(&cx, d.name.clone());
        assert_eq!(back, d);
        assert_eq!(ComplexDocument::parse(&back.render()).unwrap(), d);
    }

    #[test]
    fn precise_errors() {
        let e = ComplexDocument::parse("{\n  \"ambient_dim\": 2,\n  \"generators\": [[1, 0], [0, x]]\n}").unwrap_err();
        assert!(matches!(e, DocumentError::Syntax { line: 3, .. }), "{e}");
        let e = ComplexDocument::parse(r#"{"ambient_dim": 2, "generators": [[1, 0], [0, 1.5]], "facets": []}"#)
            .unwrap_err();
        assert_eq!(e.to_string(), "field `generators[1][1]`: expected an integer");
        let e = ComplexDocument::parse(r#"{"ambient_dim": 2, "generators": [[1, 0]], "facets": [[0, 3]]}"#)
            .unwrap_err();
        assert_eq!(e.to_string(), "field `facets[0][1]`: index 3 out of range");
        let e = ComplexDocument::parse(r#"{"ambient_dim": 2, "generators": [[1, 0, 0]], "facets": [[0]]}"#)
            .unwrap_err();
        assert_eq!(e.to_string(), "field `generators[0]`: has 3 entries, expected 2");
    }
}
