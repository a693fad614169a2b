//! Text and JSON forms of relations and operations.
//!
//! Relation text: a header line `n m`, then one member tuple per line as
//! space-separated elements (any order on input, lexicographic on output).
//! Operation text: a header `n k`, then the `n^k` table values on one line in
//! tuple-code order. Blank lines and lines starting with `#` are ignored.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Operation, Relation};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct RelationEnvelope {
    n: usize,
    arity: usize,
    tuples: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct OperationEnvelope {
    n: usize,
    arity: usize,
    table: Vec<usize>,
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RelationEnvelope {
            n: self.n(),
            arity: self.arity(),
            tuples: self.tuples().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Relation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let env = RelationEnvelope::deserialize(d)?;
        Relation::from_tuples(env.n, env.arity, env.tuples).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Operation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        OperationEnvelope {
            n: self.n(),
            arity: self.arity(),
            table: self.table().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Operation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let env = OperationEnvelope::deserialize(d)?;
        Operation::new(env.n, env.arity, env.table).map_err(serde::de::Error::custom)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("line {line_no}: not a number: {t:?}")))
        })
        .collect()
}

fn header(lines: &mut impl Iterator<Item = (usize, impl AsRef<str>)>) -> Result<(usize, usize)> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header line".into()))?;
    match numbers(no, line.as_ref())?[..] {
        [n, m] => Ok((n, m)),
        _ => Err(Error::Parse(format!("line {no}: header must be two numbers"))),
    }
}

pub fn parse_relation(text: &str) -> Result<Relation> {
    let mut lines = content_lines(text);
    let (n, arity) = header(&mut lines)?;
    let tuples = lines
        .map(|(no, l)| {
            let t = numbers(no, l)?;
            if t.len() != arity {
                return Err(Error::Parse(format!(
                    "line {no}: expected {arity} elements, found {}",
                    t.len()
                )));
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    Relation::from_tuples(n, arity, tuples)
}

pub fn format_relation(rel: &Relation) -> String {
    let mut out = format!("{} {}\n", rel.n(), rel.arity());
    for t in rel.tuples() {
        out.push_str(&join(&t));
        out.push('\n');
    }
    out
}

pub fn parse_operation(text: &str) -> Result<Operation> {
    let mut lines = content_lines(text);
    let (n, arity) = header(&mut lines)?;
    let mut table = Vec::new();
    for (no, l) in lines {
        table.extend(numbers(no, l)?);
    }
    Operation::new(n, arity, table)
}

pub fn format_operation(op: &Operation) -> String {
    format!("{} {}\n{}\n", op.n(), op.arity(), join(op.table()))
}

/// Accepts either the text form or the JSON envelope.
pub fn read_relation(text: &str) -> Result<Relation> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    } else {
        parse_relation(text)
    }
}

pub fn read_operation(text: &str) -> Result<Operation> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    } else {
        parse_operation(text)
    }
}

pub(crate) fn join(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}
