//! The run-report envelope and its three serializations.
//!
//! Every subcommand produces one [`RunReport`]: the command name, the
//! parameters it consumed, a data table (schema per command), and the
//! verdicts of any verification it performed.  Serialization is a pure
//! function of the report, so identical inputs yield byte-identical
//! output.  Exact rationals render as `p/q` strings in every format;
//! floating point never crosses the boundary.

use num_rational::BigRational;
use serde_json::{Map, Value};

/// One table cell or parameter value.
#[derive(Clone, Debug)]
pub enum Cell {
    Int(i64),
    UInt(u64),
    Bool(bool),
    Str(String),
    /// Not applicable: JSON `null`, an empty CSV field, `-` in text.
    Null,
}

impl Cell {
    pub fn str(s: impl Into<String>) -> Self {
        Cell::Str(s.into())
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(n) => Value::from(*n),
            Cell::UInt(n) => Value::from(*n),
            Cell::Bool(b) => Value::from(*b),
            Cell::Str(s) => Value::from(s.as_str()),
            Cell::Null => Value::Null,
        }
    }

    /// Flat rendering for CSV fields and text tables.
    fn flat(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::UInt(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Str(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }

    /// Text-table rendering: like [`Cell::flat`] but with a visible
    /// placeholder for missing values.
    fn text(&self) -> String {
        match self {
            Cell::Null => "-".to_string(),
            other => other.flat(),
        }
    }
}

/// Outcome of one named check: how many instances were tried, whether all
/// of them held, and the first counterexample if one did not.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub name: String,
    pub trials: u64,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Verdict {
    /// A verdict from an optional counterexample: passing exactly when no
    /// witness was found.
    pub fn new(name: impl Into<String>, trials: u64, witness: Option<String>) -> Self {
        Verdict { name: name.into(), trials, pass: witness.is_none(), witness }
    }
}

/// The command-specific data section.
pub enum Payload {
    /// A plain table with a fixed column schema.
    Rows { columns: Vec<&'static str>, rows: Vec<Vec<Cell>> },
    /// The ramification report keeps its documented serialization:
    /// `{t, entries: [{d, discriminants, witnesses}], oracle_consistent}`.
    Ramification { t: i64, entries: Vec<RamificationRow>, oracle_consistent: Option<bool> },
}

/// One per-coset row of the ramification payload.
pub struct RamificationRow {
    pub d: i64,
    pub discriminants: Vec<i64>,
    /// Discriminant -> witness vector coordinates, ascending by key.
    pub witnesses: Vec<(i64, Vec<BigRational>)>,
}

/// The envelope every subcommand emits.
pub struct RunReport {
    pub command: &'static str,
    pub parameters: Vec<(&'static str, Cell)>,
    pub payload: Payload,
    pub verdicts: Vec<Verdict>,
}

impl RunReport {
    /// A report whose data section is a plain table.
    pub fn table(
        command: &'static str,
        parameters: Vec<(&'static str, Cell)>,
        columns: Vec<&'static str>,
        rows: Vec<Vec<Cell>>,
        verdicts: Vec<Verdict>,
    ) -> Self {
        RunReport { command, parameters, payload: Payload::Rows { columns, rows }, verdicts }
    }

    /// 0 when every verdict passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.iter().all(|v| v.pass) {
            0
        } else {
            1
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut doc = Map::new();
        doc.insert("command".into(), Value::from(self.command));
        let mut params = Map::new();
        for (k, v) in &self.parameters {
            params.insert((*k).into(), v.to_json());
        }
        doc.insert("parameters".into(), Value::Object(params));
        match &self.payload {
            Payload::Rows { columns, rows } => {
                let json_rows: Vec<Value> = rows
                    .iter()
                    .map(|row| {
                        let mut obj = Map::new();
                        for (col, cell) in columns.iter().zip(row) {
                            obj.insert((*col).into(), cell.to_json());
                        }
                        Value::Object(obj)
                    })
                    .collect();
                doc.insert("rows".into(), Value::Array(json_rows));
            }
            Payload::Ramification { t, entries, oracle_consistent } => {
                doc.insert("t".into(), Value::from(*t));
                let json_entries: Vec<Value> = entries
                    .iter()
                    .map(|entry| {
                        let mut obj = Map::new();
                        obj.insert("d".into(), Value::from(entry.d));
                        obj.insert(
                            "discriminants".into(),
                            Value::Array(entry.discriminants.iter().map(|&x| Value::from(x)).collect()),
                        );
                        let mut wit = Map::new();
                        for (delta, coords) in &entry.witnesses {
                            wit.insert(
                                delta.to_string(),
                                Value::Array(
                                    coords.iter().map(|c| Value::from(c.to_string())).collect(),
                                ),
                            );
                        }
                        obj.insert("witnesses".into(), Value::Object(wit));
                        Value::Object(obj)
                    })
                    .collect();
                doc.insert("entries".into(), Value::Array(json_entries));
                doc.insert(
                    "oracle_consistent".into(),
                    match oracle_consistent {
                        Some(b) => Value::from(*b),
                        None => Value::Null,
                    },
                );
            }
        }
        let json_verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| {
                let mut obj = Map::new();
                obj.insert("name".into(), Value::from(v.name.as_str()));
                obj.insert("trials".into(), Value::from(v.trials));
                obj.insert("pass".into(), Value::from(v.pass));
                obj.insert(
                    "witness".into(),
                    match &v.witness {
                        Some(w) => Value::from(w.as_str()),
                        None => Value::Null,
                    },
                );
                Value::Object(obj)
            })
            .collect();
        doc.insert("verdicts".into(), Value::Array(json_verdicts));
        let mut out = serde_json::to_string_pretty(&Value::Object(doc))
            .expect("report serialization cannot fail");
        out.push('\n');
        out
    }

    /// CSV output: the data table when it has rows, otherwise the verdict
    /// table (`name,trials,pass,witness`).  Always starts with a header row.
    pub fn to_csv_string(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let (header, records) = self.csv_table();
        writer.write_record(&header).expect("csv header");
        for record in records {
            writer.write_record(&record).expect("csv record");
        }
        let bytes = writer.into_inner().expect("csv buffer");
        String::from_utf8(bytes).expect("csv output is UTF-8")
    }

    fn csv_table(&self) -> (Vec<String>, Vec<Vec<String>>) {
        match &self.payload {
            Payload::Rows { columns, rows } if !rows.is_empty() => (
                columns.iter().map(|c| c.to_string()).collect(),
                rows.iter().map(|row| row.iter().map(Cell::flat).collect()).collect(),
            ),
            Payload::Ramification { entries, oracle_consistent, .. } => {
                let header =
                    vec!["d".into(), "discriminants".into(), "witnesses".into(), "oracle_consistent".into()];
                let oc = match oracle_consistent {
                    Some(b) => b.to_string(),
                    None => String::new(),
                };
                let records = entries
                    .iter()
                    .map(|entry| {
                        vec![
                            entry.d.to_string(),
                            entry
                                .discriminants
                                .iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join("; "),
                            entry
                                .witnesses
                                .iter()
                                .map(|(delta, coords)| {
                                    format!("{delta} -> ({})", join_rationals(coords))
                                })
                                .collect::<Vec<_>>()
                                .join("; "),
                            oc.clone(),
                        ]
                    })
                    .collect();
                (header, records)
            }
            _ => (
                vec!["name".into(), "trials".into(), "pass".into(), "witness".into()],
                self.verdicts
                    .iter()
                    .map(|v| {
                        vec![
                            v.name.clone(),
                            v.trials.to_string(),
                            v.pass.to_string(),
                            v.witness.clone().unwrap_or_default(),
                        ]
                    })
                    .collect(),
            ),
        }
    }

    pub fn to_text_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.parameters {
            out.push_str(&format!("{k}: {}\n", v.text()));
        }
        match &self.payload {
            Payload::Rows { columns, rows } => {
                if !rows.is_empty() {
                    out.push('\n');
                    let header: Vec<String> = columns.iter().map(|c| c.to_string()).collect();
                    let body: Vec<Vec<String>> =
                        rows.iter().map(|row| row.iter().map(Cell::text).collect()).collect();
                    out.push_str(&aligned_table(&header, &body));
                }
            }
            Payload::Ramification { entries, oracle_consistent, .. } => {
                out.push('\n');
                let header = vec!["d".to_string(), "discriminants".to_string(), "witnesses".to_string()];
                let body: Vec<Vec<String>> = entries
                    .iter()
                    .map(|entry| {
                        vec![
                            entry.d.to_string(),
                            if entry.discriminants.is_empty() {
                                "-".to_string()
                            } else {
                                entry
                                    .discriminants
                                    .iter()
                                    .map(|x| x.to_string())
                                    .collect::<Vec<_>>()
                                    .join("; ")
                            },
                            if entry.witnesses.is_empty() {
                                "-".to_string()
                            } else {
                                entry
                                    .witnesses
                                    .iter()
                                    .map(|(delta, coords)| {
                                        format!("{delta} -> ({})", join_rationals(coords))
                                    })
                                    .collect::<Vec<_>>()
                                    .join("; ")
                            },
                        ]
                    })
                    .collect();
                out.push_str(&aligned_table(&header, &body));
                out.push_str(&format!(
                    "\noracle_consistent: {}\n",
                    match oracle_consistent {
                        Some(b) => b.to_string(),
                        None => "not checked".to_string(),
                    }
                ));
            }
        }
        if !self.verdicts.is_empty() {
            out.push('\n');
            for v in &self.verdicts {
                let status = if v.pass { "PASS" } else { "FAIL" };
                out.push_str(&format!("verdict {}: {status} (trials = {})", v.name, v.trials));
                if let Some(w) = &v.witness {
                    out.push_str(&format!(" witness: {w}"));
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn render(&self, format: crate::Format) -> String {
        match format {
            crate::Format::Text => self.to_text_string(),
            crate::Format::Json => self.to_json_string(),
            crate::Format::Csv => self.to_csv_string(),
        }
    }
}

fn join_rationals(coords: &[BigRational]) -> String {
    coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
}

/// Left-aligned column layout with a two-space gutter.
fn aligned_table(header: &[String], rows: &[Vec<String>]) -> String {
    let columns = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut push_row = |cells: &[String]| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            line.push_str(cell);
            if i + 1 < columns {
                line.push_str(&" ".repeat(widths[i] - cell.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    push_row(header);
    for row in rows {
        push_row(row);
    }
    out
}
