//! JSON file formats. Every rational is written as an exact `"num/den"`
//! (or integer) string; on input, JSON integers and quoted finite decimals
//! such as `"0.8"` are accepted too. Output is pretty-printed with sorted
//! keys, so canonical files survive a parse/write round trip byte for byte.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::geometry::{RationalMatrix, RationalVector};
use crate::hard::HardFamilyRecord;
use crate::rational::{format_exact, int, parse_rational, Rational};
use crate::reductions::{BackMap, LpInstance, ReductionError, StageInstance, StagePayload};
use crate::wolfe::{Instance, InstanceError};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("declared dimension {declared}, but point {index} has {found} coordinates")]
    Dimension {
        declared: usize,
        index: usize,
        found: usize,
    },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Lp(#[from] ReductionError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep only the reason.
        let message = match message.rfind(" at line ") {
            Some(cut) => message[..cut].to_string(),
            None => message,
        };
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

/// One exact scalar in a file.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Entry(Rational);

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_exact(&self.0))
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct EntryVisitor;

        impl Visitor<'_> for EntryVisitor {
            type Value = Entry;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string such as \"-3/4\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Entry, E> {
                parse_rational(v).map(Entry).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Entry, E> {
                Ok(Entry(int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Entry, E> {
                Ok(Entry(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Entry, E> {
                Err(E::custom(format!("{v} is a binary float; quote it, e.g. \"{v}\"")))
            }
        }

        deserializer.deserialize_any(EntryVisitor)
    }
}

fn entries(v: &RationalVector) -> Vec<Entry> {
    v.coords().iter().cloned().map(Entry).collect()
}

fn vector(entries: Vec<Entry>) -> RationalVector {
    RationalVector::new(entries.into_iter().map(|e| e.0).collect())
}

fn matrix_value(m: &RationalMatrix) -> Value {
    json!((0..m.rows())
        .map(|i| m.row(i).iter().cloned().map(Entry).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn points_value(points: &[RationalVector]) -> Value {
    json!(points.iter().map(entries).collect::<Vec<_>>())
}

/// Pretty JSON with sorted keys and a trailing newline.
fn canonical(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(&sort_keys(value)).expect("values always serialize");
    out.push('\n');
    out
}

fn sort_keys(value: &Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            let mut sorted = serde_json::Map::new();
            for k in keys {
                sorted.insert(k.clone(), sort_keys(&map[k]));
            }
            Value::Object(sorted)
        }
        Value::Array(items) => Value::Array(items.iter().map(sort_keys).collect()),
        other => other.clone(),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    dim: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
    points: Vec<Vec<Entry>>,
}

/// Contents of an instance file, kept as written (no deduplication).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub dim: usize,
    pub labels: Option<Vec<String>>,
    pub points: Vec<RationalVector>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let raw: RawInstance = serde_json::from_str(text)?;
        if let Some((index, p)) = raw.points.iter().enumerate().find(|(_, p)| p.len() != raw.dim) {
            return Err(FormatError::Dimension {
                declared: raw.dim,
                index,
                found: p.len(),
            });
        }
        Ok(Self {
            dim: raw.dim,
            labels: raw.labels,
            points: raw.points.into_iter().map(vector).collect(),
        })
    }

    pub fn from_instance(instance: &Instance) -> Self {
        Self {
            dim: instance.dim(),
            labels: Some(instance.labels().to_vec()),
            points: instance.points().to_vec(),
        }
    }

    /// Plain `p1, p2, ...` labels are left implicit.
    pub fn from_points(points: Vec<RationalVector>) -> Self {
        Self {
            dim: points.first().map_or(0, RationalVector::dim),
            labels: None,
            points,
        }
    }

    pub fn to_instance(&self) -> Result<Instance, InstanceError> {
        match &self.labels {
            Some(labels) => Instance::with_labels(self.points.clone(), labels.clone()),
            None => Instance::new(self.points.clone()),
        }
    }

    pub fn to_canonical_string(&self) -> String {
        let mut value = json!({ "dim": self.dim, "points": points_value(&self.points) });
        if let Some(labels) = &self.labels {
            value["labels"] = json!(labels);
        }
        canonical(&value)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLp {
    #[serde(rename = "A")]
    a: Vec<Vec<Entry>>,
    b: Vec<Entry>,
    c: Vec<Entry>,
}

/// `max cᵀx s.t. A x ≤ b` as `{"A": rows, "b": [...], "c": [...]}`.
pub fn parse_lp(text: &str) -> Result<LpInstance, FormatError> {
    let raw: RawLp = serde_json::from_str(text)?;
    let cols = raw.c.len();
    if let Some(row) = raw.a.iter().find(|r| r.len() != cols) {
        return Err(ReductionError::Shape {
            what: "constraint row",
            expected: cols,
            found: row.len(),
        }
        .into());
    }
    let rows: Vec<Vec<Rational>> = raw
        .a
        .into_iter()
        .map(|r| r.into_iter().map(|e| e.0).collect())
        .collect();
    let a = if rows.is_empty() {
        RationalMatrix::zeros(0, cols)
    } else {
        RationalMatrix::from_rows(&rows)
    };
    Ok(LpInstance::new(a, vector(raw.b), vector(raw.c))?)
}

pub fn lp_to_string(lp: &LpInstance) -> String {
    canonical(&json!({
        "A": matrix_value(&lp.a),
        "b": entries(&lp.b),
        "c": entries(&lp.c),
    }))
}

fn back_map_value(map: &BackMap) -> Value {
    let exact = |r: &Rational| json!(format_exact(r));
    match map {
        BackMap::SplitDifference { n } => json!({ "kind": "split_difference", "n": n }),
        BackMap::Identity => json!({ "kind": "identity" }),
        BackMap::Scale { factor, keep } => json!({ "kind": "scale", "factor": exact(factor), "keep": keep }),
        BackMap::Redundancy => json!({ "kind": "redundancy" }),
        BackMap::Threshold {
            threshold,
            epsilon,
            lift_rows,
        } => json!({
            "kind": "threshold",
            "threshold": exact(threshold),
            "epsilon": exact(epsilon),
            "lift_rows": lift_rows,
        }),
    }
}

pub fn stage_value(stage: &StageInstance) -> Value {
    let mut value = match &stage.payload {
        StagePayload::System { a, b, bound } => {
            let mut v = json!({ "A": matrix_value(a), "b": entries(b) });
            if let Some(bound) = bound {
                v["bound"] = json!(format_exact(bound));
            }
            v
        }
        StagePayload::Points(points) => json!({ "points": points_value(points) }),
    };
    value["stage"] = json!(stage.tag.name());
    value["back_map"] = back_map_value(&stage.back_map);
    value
}

/// A stage dump: one object per stage, in chain order.
pub fn stages_to_string(stages: &[StageInstance]) -> String {
    canonical(&Value::Array(stages.iter().map(stage_value).collect()))
}

/// Summary of a generated hard instance.
pub fn hard_record_value(record: &HardFamilyRecord) -> Value {
    json!({
        "d": record.d,
        "points": record.instance.len(),
        "max_l1": format_exact(&record.max_l1),
        "optimum_linf": format_exact(&record.optimum_linf),
        "optimum": entries(&record.optimum),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    const FIGURE: &str = r#"{
  "dim": 3,
  "labels": [
    "p1",
    "p2",
    "p3",
    "p4"
  ],
  "points": [
    [
      "4/5",
      "9/10",
      "0"
    ],
    [
      "3/2",
      "-1/2",
      "0"
    ],
    [
      "-1",
      "-1",
      "2"
    ],
    [
      "-4",
      "3/2",
      "2"
    ]
  ]
}
"#;

    #[test]
    fn canonical_instance_round_trips() {
        let file = InstanceFile::parse(FIGURE).unwrap();
        assert_eq!(
            file.points[1],
            RationalVector::from_fractions(&[(3, 2), (-1, 2), (0, 1)])
        );
        assert_eq!(file.to_canonical_string(), FIGURE);
    }

    #[test]
    fn loose_input_is_normalized() {
        let file = InstanceFile::parse(r#"{"points": [["0.8", 2, "6/4"]], "dim": 3}"#).unwrap();
        assert_eq!(file.points[0], RationalVector::new(vec![rat(4, 5), int(2), rat(3, 2)]));
        assert_eq!(file.labels, None);
        let again = InstanceFile::parse(&file.to_canonical_string()).unwrap();
        assert_eq!(again, file);
    }

    #[test]
    fn errors_carry_positions() {
        let err = InstanceFile::parse("{\n  \"dim\": 1,\n  \"points\": [[\"1/0\"]]\n}").unwrap_err();
        match err {
            FormatError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let err = InstanceFile::parse("{\"dim\": 1, \"points\": [[0.5]]}").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 1, .. }));
        let err = InstanceFile::parse("{\"dim\": 2, \"points\": [[1, 2], [3]]}").unwrap_err();
        assert!(matches!(
            err,
            FormatError::Dimension {
                declared: 2,
                index: 1,
                found: 1
            }
        ));
    }

    #[test]
    fn lp_round_trip() {
        let text = "{\n  \"A\": [\n    [\n      \"1\",\n      \"-1/2\"\n    ]\n  ],\n  \"b\": [\n    \"3\"\n  ],\n  \"c\": [\n    \"1\",\n    \"1\"\n  ]\n}\n";
        let lp = parse_lp(text).unwrap();
        assert_eq!(lp.a[(0, 1)], rat(-1, 2));
        assert_eq!(lp_to_string(&lp), text);
        assert!(matches!(
            parse_lp(r#"{"A": [[1, 2]], "b": [1], "c": [1]}"#),
            Err(FormatError::Lp(ReductionError::Shape { .. }))
        ));
    }

    #[test]
    fn stage_dump_is_tagged() {
        let lp = parse_lp(r#"{"A": [[1]], "b": [5], "c": [1]}"#).unwrap();
        let stages = crate::reductions::stage_dump(&lp, false).unwrap();
        let value: Value = serde_json::from_str(&stages_to_string(&stages)).unwrap();
        let tags: Vec<&str> = value
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["stage"].as_str().unwrap())
            .collect();
        assert_eq!(tags, ["FP", "BFP", "VPM", "ZVPM", "ZVPMD", "DVS"]);
        assert_eq!(value[1]["bound"], "3888");
        assert_eq!(value[0]["back_map"]["kind"], "split_difference");
    }
}
