//! Machine-readable output records for the command-line front end.
//!
//! Big integers are serialized as decimal strings (never floats) so that
//! 64-bit-float JSON consumers cannot silently lose digits. Sweep data uses
//! a fixed, documented CSV column set so figures can be regenerated by any
//! plotting tool.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::moments::MomentPolynomial;

/// Fixed leading columns of every sweep CSV.
pub const CSV_COLUMNS: [&str; 7] = ["rho", "n", "m", "exact", "normalized", "estimate", "ratio"];

/// One self-describing output document: command echo, inputs, payload, and
/// provenance. Serialized as stable JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub seed: Option<u64>,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: Value, result: Value, seed: Option<u64>) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs,
            result,
            provenance: Provenance {
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}

/// Polynomial as a JSON object mapping exponent to decimal-string
/// coefficient, e.g. `{"2":"9","4":"5"}`; the zero polynomial is `{}`.
pub fn polynomial_to_json(poly: &MomentPolynomial) -> Value {
    let mut map = Map::new();
    for (exp, coeff) in poly.coefficients() {
        map.insert(exp.to_string(), Value::String(coeff.to_string()));
    }
    Value::Object(map)
}

/// Renders a float for text/CSV output: integral values without a trailing
/// fraction, everything else via the shortest round-trip form.
pub fn format_float(x: f64) -> String {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

/// A sweep table with the fixed CSV columns (plus optional extras).
#[derive(Debug, Clone)]
pub struct SweepTable {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl SweepTable {
    /// Table with the seven fixed columns followed by `extra` columns.
    pub fn new(extra: &[&'static str]) -> Self {
        let mut header: Vec<&'static str> = CSV_COLUMNS.to_vec();
        header.extend_from_slice(extra);
        SweepTable {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// The same table as a JSON array of objects.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (name, cell) in self.header.iter().zip(row) {
                        obj.insert(name.to_string(), json!(cell));
                    }
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}
