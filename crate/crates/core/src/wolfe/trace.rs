use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use super::Instance;
use crate::geometry::RationalVector;
use crate::rational::{format_decimal, format_exact, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventKind {
    /// An improving point joined the potential corral.
    MajorEnter,
    /// A minor cycle dropped a point.
    MinorRemove,
    /// A major cycle ended on a corral (also emitted for the initial point).
    CorralReached,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::MajorEnter => "MAJOR_ENTER",
            EventKind::MinorRemove => "MINOR_REMOVE",
            EventKind::CorralReached => "CORRAL_REACHED",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One step of a run. Indices are 0-based positions in the instance.
///
/// `MAJOR_ENTER` carries the point before the step as `x` and the affine
/// minimizer of the enlarged set as `y`; `MINOR_REMOVE` carries the new
/// point `z` as `x`, the affine minimizer of the reduced set as `y`, and
/// the step length `theta`. Together with the initial `CORRAL_REACHED`,
/// these are exactly the rows of the usual iteration table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub kind: EventKind,
    pub major: usize,
    pub minor: usize,
    pub entering: Option<usize>,
    pub leaving: Option<usize>,
    pub corral: Vec<usize>,
    pub x: RationalVector,
    pub y: Option<RationalVector>,
    pub theta: Option<Rational>,
}

impl TraceEvent {
    /// Whether this event is a row of the iteration table.
    pub fn is_table_row(&self) -> bool {
        self.kind != EventKind::CorralReached || self.major == 0
    }

    /// Corral as a sorted index list, for order-insensitive comparison.
    pub fn corral_set(&self) -> Vec<usize> {
        let mut set = self.corral.clone();
        set.sort_unstable();
        set
    }

    /// One JSON object with exact `num/den` strings and decimal renderings.
    pub fn to_json(&self, instance: &Instance, precision: usize) -> Value {
        let exact = |v: &RationalVector| Value::from(v.coords().iter().map(format_exact).collect::<Vec<_>>());
        let decimal = |v: &RationalVector| Value::from(v.decimal_strings(precision));
        let mut obj = Map::new();
        obj.insert("kind".into(), json!(self.kind.name()));
        obj.insert("major".into(), json!(self.major));
        obj.insert("minor".into(), json!(self.minor));
        obj.insert(
            "corral".into(),
            json!(self.corral.iter().map(|&i| instance.label(i)).collect::<Vec<_>>()),
        );
        if let Some(i) = self.entering {
            obj.insert("entering".into(), json!(instance.label(i)));
        }
        if let Some(i) = self.leaving {
            obj.insert("leaving".into(), json!(instance.label(i)));
        }
        obj.insert("x".into(), exact(&self.x));
        obj.insert("x_decimal".into(), decimal(&self.x));
        if let Some(y) = &self.y {
            obj.insert("y".into(), exact(y));
            obj.insert("y_decimal".into(), decimal(y));
        }
        if let Some(t) = &self.theta {
            obj.insert("theta".into(), json!(format_exact(t)));
            obj.insert("theta_decimal".into(), json!(format_decimal(t, precision)));
        }
        Value::Object(obj)
    }

    /// A single line in the requested format, without the trailing newline.
    pub fn render(&self, instance: &Instance, format: TraceFormat, precision: usize) -> String {
        match format {
            TraceFormat::Jsonl => self.to_json(instance, precision).to_string(),
            TraceFormat::Text => {
                let mut line = format!(
                    "{:<14} {:>3} {:>3} {:<16} x={}",
                    self.kind.name(),
                    self.major,
                    self.minor,
                    instance.format_set(&self.corral),
                    self.x.display_decimal(precision)
                );
                if let Some(y) = &self.y {
                    line.push_str(&format!(" y={}", y.display_decimal(precision)));
                }
                if let Some(t) = &self.theta {
                    line.push_str(&format!(" theta={}", format_exact(t)));
                }
                line
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TraceFormat {
    #[default]
    Text,
    Jsonl,
}

impl FromStr for TraceFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(TraceFormat::Text),
            "jsonl" => Ok(TraceFormat::Jsonl),
            other => Err(format!("unknown trace format {other:?} (expected text or jsonl)")),
        }
    }
}
