//! JSON encoding of certificates.
//!
//! A node used more than once is written in full at its first occurrence
//! (in premise order) with an `"id"`, and later as `{"ref": id}`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use super::{Certificate, Derivation, Judgement, Meta, Proof, Rule, Schema};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::syntax::Regex;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported certificate version {0}")]
    Version(u64),
    #[error("at {path}: {reason}")]
    Malformed { path: String, reason: String },
}

pub fn to_json(cert: &Certificate) -> String {
    let mut uses: HashMap<*const Derivation, usize> = HashMap::new();
    let mut stack = vec![cert.root.clone()];
    while let Some(d) = stack.pop() {
        let n = uses.entry(Arc::as_ptr(&d)).or_default();
        *n += 1;
        if *n == 1 {
            stack.extend(d.premises.iter().cloned());
        }
    }
    let mut writer = Writer {
        uses,
        ids: HashMap::new(),
    };
    let root = writer.node(&cert.root);
    let doc = json!({
        "version": FORMAT_VERSION,
        "lambda": format_rational(&cert.lambda),
        "hypotheses": cert.hypotheses.iter().map(judgement).collect::<Vec<_>>(),
        "root": root,
    });
    serde_json::to_string_pretty(&doc).expect("values serialize")
}

fn judgement(j: &Judgement) -> Value {
    json!({
        "left": j.left.to_string(),
        "right": j.right.to_string(),
        "eps": format_rational(&j.eps),
    })
}

struct Writer {
    uses: HashMap<*const Derivation, usize>,
    ids: HashMap<*const Derivation, usize>,
}

impl Writer {
    fn node(&mut self, d: &Proof) -> Value {
        let ptr = Arc::as_ptr(d);
        if let Some(id) = self.ids.get(&ptr) {
            return json!({ "ref": id });
        }
        let mut obj = Map::new();
        if self.uses[&ptr] > 1 {
            let id = self.ids.len();
            self.ids.insert(ptr, id);
            obj.insert("id".into(), id.into());
        }
        obj.insert("rule".into(), d.rule.tag().into());
        obj.insert("conclusion".into(), judgement(&d.conclusion));
        let premises: Vec<Value> = d.premises.iter().map(|p| self.node(p)).collect();
        obj.insert("premises".into(), premises.into());
        match &d.meta {
            Meta::None => {}
            Meta::Midpoint(m) => {
                obj.insert("meta".into(), json!({ "midpoint": m.to_string() }));
            }
            Meta::Template { schema, spot_indices } => {
                let params = match schema {
                    Schema::Approximants { left, right } => {
                        json!({ "left": left.to_string(), "right": right.to_string() })
                    }
                    Schema::StarUnroll { hypothesis } => json!({ "hypothesis": judgement(hypothesis) }),
                };
                obj.insert(
                    "meta".into(),
                    json!({ "schema": schema.id(), "params": params, "spot_indices": spot_indices }),
                );
            }
        }
        Value::Object(obj)
    }
}

pub fn from_json(text: &str) -> Result<Certificate, CertificateError> {
    let mut de = serde_json::Deserializer::from_str(text);
    de.disable_recursion_limit();
    let doc = Value::deserialize(&mut de)?;
    de.end()?;
    let mut reader = Reader { ids: HashMap::new() };
    let top = object(&doc, "certificate")?;
    let version = field(top, "version", "certificate")?
        .as_u64()
        .ok_or_else(|| malformed("version", "expected a number"))?;
    if version != FORMAT_VERSION {
        return Err(CertificateError::Version(version));
    }
    let lambda = rational(field(top, "lambda", "certificate")?, "lambda")?;
    let hypotheses = array(field(top, "hypotheses", "certificate")?, "hypotheses")?
        .iter()
        .enumerate()
        .map(|(i, h)| read_judgement(h, &format!("hypotheses/{i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let root = reader.node(field(top, "root", "certificate")?, "root")?;
    Ok(Certificate::with_hypotheses(lambda, hypotheses, root))
}

fn malformed(path: &str, reason: impl Into<String>) -> CertificateError {
    CertificateError::Malformed {
        path: path.to_string(),
        reason: reason.into(),
    }
}

fn object<'v>(v: &'v Value, path: &str) -> Result<&'v Map<String, Value>, CertificateError> {
    v.as_object().ok_or_else(|| malformed(path, "expected an object"))
}

fn array<'v>(v: &'v Value, path: &str) -> Result<&'v Vec<Value>, CertificateError> {
    v.as_array().ok_or_else(|| malformed(path, "expected an array"))
}

fn field<'v>(obj: &'v Map<String, Value>, key: &str, path: &str) -> Result<&'v Value, CertificateError> {
    obj.get(key)
        .ok_or_else(|| malformed(path, format!("missing field `{key}`")))
}

fn string<'v>(v: &'v Value, path: &str) -> Result<&'v str, CertificateError> {
    v.as_str().ok_or_else(|| malformed(path, "expected a string"))
}

fn expr(v: &Value, path: &str) -> Result<Regex, CertificateError> {
    Regex::parse_any(string(v, path)?).map_err(|e| malformed(path, e.to_string()))
}

fn rational(v: &Value, path: &str) -> Result<Rational, CertificateError> {
    parse_rational(string(v, path)?).map_err(|e| malformed(path, e.to_string()))
}

fn read_judgement(v: &Value, path: &str) -> Result<Judgement, CertificateError> {
    let obj = object(v, path)?;
    Ok(Judgement::new(
        expr(field(obj, "left", path)?, &format!("{path}/left"))?,
        expr(field(obj, "right", path)?, &format!("{path}/right"))?,
        rational(field(obj, "eps", path)?, &format!("{path}/eps"))?,
    ))
}

struct Reader {
    ids: HashMap<u64, Proof>,
}

impl Reader {
    fn node(&mut self, v: &Value, path: &str) -> Result<Proof, CertificateError> {
        let obj = object(v, path)?;
        if let Some(r) = obj.get("ref") {
            let id = r.as_u64().ok_or_else(|| malformed(path, "`ref` must be a number"))?;
            return self
                .ids
                .get(&id)
                .cloned()
                .ok_or_else(|| malformed(path, format!("`ref` {id} precedes its definition")));
        }
        let tag = string(field(obj, "rule", path)?, &format!("{path}/rule"))?;
        let rule: Rule = tag
            .parse()
            .map_err(|e: super::UnknownRule| malformed(path, e.to_string()))?;
        let conclusion = read_judgement(field(obj, "conclusion", path)?, &format!("{path}/conclusion"))?;
        let premises = match obj.get("premises") {
            None => Vec::new(),
            Some(ps) => array(ps, path)?
                .iter()
                .enumerate()
                .map(|(i, p)| self.node(p, &format!("{path}/{i}")))
                .collect::<Result<Vec<_>, _>>()?,
        };
        let meta = match obj.get("meta") {
            None | Some(Value::Null) => Meta::None,
            Some(m) => read_meta(m, &format!("{path}/meta"))?,
        };
        let proof = Arc::new(Derivation {
            conclusion,
            rule,
            premises,
            meta,
        });
        if let Some(id) = obj.get("id") {
            let id = id.as_u64().ok_or_else(|| malformed(path, "`id` must be a number"))?;
            if self.ids.insert(id, proof.clone()).is_some() {
                return Err(malformed(path, format!("duplicate id {id}")));
            }
        }
        Ok(proof)
    }
}

fn read_meta(v: &Value, path: &str) -> Result<Meta, CertificateError> {
    let obj = object(v, path)?;
    if let Some(m) = obj.get("midpoint") {
        return Ok(Meta::Midpoint(expr(m, &format!("{path}/midpoint"))?));
    }
    let id = string(field(obj, "schema", path)?, &format!("{path}/schema"))?;
    let params = object(field(obj, "params", path)?, &format!("{path}/params"))?;
    let ppath = format!("{path}/params");
    let schema = match id {
        "approximants" => Schema::Approximants {
            left: expr(field(params, "left", &ppath)?, &format!("{ppath}/left"))?,
            right: expr(field(params, "right", &ppath)?, &format!("{ppath}/right"))?,
        },
        "star_unroll" => Schema::StarUnroll {
            hypothesis: read_judgement(field(params, "hypothesis", &ppath)?, &format!("{ppath}/hypothesis"))?,
        },
        other => return Err(malformed(path, format!("unknown schema `{other}`"))),
    };
    let spot_indices = match obj.get("spot_indices") {
        None => Vec::new(),
        Some(v) => array(v, path)?
            .iter()
            .map(|i| {
                i.as_u64()
                    .and_then(|i| u32::try_from(i).ok())
                    .ok_or_else(|| malformed(path, "spot indices must be small nonnegative integers"))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    Ok(Meta::Template { schema, spot_indices })
}
