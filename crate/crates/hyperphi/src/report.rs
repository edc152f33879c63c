//! The report every command emits, rendered as JSON, CSV or text.

use std::fmt::Write as _;

use hyperphi_core::{Check, RingCtx};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Context {
    pub p: u64,
    pub k: u32,
    pub n: usize,
}

impl From<&RingCtx> for Context {
    fn from(c: &RingCtx) -> Self {
        Context { p: c.p(), k: c.k(), n: c.n() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Item {
    Check(Check),
    Value { name: String, value: Value },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

/// Wall time; the only field outside the determinism contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_us: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub context: Option<Context>,
    pub seed: Option<u64>,
    pub results: Vec<Item>,
    pub omitted: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    pub budget_exceeded: bool,
    pub all_pass: bool,
    pub timing: Timing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Report {
    pub fn new(command: Vec<String>, ctx: Option<&RingCtx>) -> Self {
        Report {
            command,
            context: ctx.map(Context::from),
            seed: None,
            results: Vec::new(),
            omitted: Vec::new(),
            table: None,
            budget_exceeded: false,
            all_pass: true,
            timing: Timing::default(),
        }
    }

    pub fn check(&mut self, c: Check) {
        self.all_pass &= c.pass;
        self.results.push(Item::Check(c));
    }

    pub fn checks(&mut self, cs: impl IntoIterator<Item = Check>) {
        cs.into_iter().for_each(|c| self.check(c));
    }

    pub fn value(&mut self, name: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.results.push(Item::Value { name: name.into(), value });
    }

    /// A wide integer, kept as a JSON number when it fits in `u64`.
    pub fn count(&mut self, name: impl Into<String>, v: u128) {
        self.value(name, wide(v));
    }

    pub fn get_check(&self, name: &str) -> Option<&Check> {
        self.results.iter().find_map(|i| match i {
            Item::Check(c) if c.name == name => Some(c),
            _ => None,
        })
    }

    pub fn get_value(&self, name: &str) -> Option<&Value> {
        self.results.iter().find_map(|i| match i {
            Item::Value { name: n, value } if n == name => Some(value),
            _ => None,
        })
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.results.iter().filter_map(|i| match i {
            Item::Check(c) if !c.pass => Some(c),
            _ => None,
        })
    }

    /// 1 when a check fails, else 3 when the budget cut the run short, else 0.
    pub fn exit_code(&self) -> i32 {
        if !self.all_pass {
            1
        } else if self.budget_exceeded {
            3
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.render_csv(),
            Format::Text => Ok(self.render_text()),
        }
    }

    fn render_csv(&self) -> Result<String, CliError> {
        let table = self
            .table
            .as_ref()
            .ok_or_else(|| CliError::Usage("CSV output is only available for rank tables".into()))?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&table.columns).map_err(io)?;
        for row in &table.rows {
            w.write_record(row.iter().map(cell)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("CSV is UTF-8"))
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "hyperphi {}", self.command.join(" "));
        if let Some(c) = self.context {
            let _ = writeln!(s, "context: p={} k={} n={}", c.p, c.k, c.n);
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        for item in &self.results {
            match item {
                Item::Check(c) => {
                    let _ = writeln!(s, "{c}");
                }
                Item::Value { name, value } => {
                    let _ = writeln!(s, "{name} = {}", text_cell(value));
                }
            }
        }
        if let Some(t) = &self.table {
            s.push_str(&text_table(t));
        }
        for o in &self.omitted {
            let _ = writeln!(s, "SKIP {o}");
        }
        let total = self.results.iter().filter(|i| matches!(i, Item::Check(_))).count();
        let failed = self.failed().count();
        let _ = writeln!(
            s,
            "{}: {} of {total} checks pass{}",
            if failed == 0 { "ok" } else { "FAILED" },
            total - failed,
            if self.budget_exceeded { " (budget exceeded)" } else { "" }
        );
        let _ = writeln!(s, "elapsed: {:.3} s", self.timing.elapsed_us as f64 / 1e6);
        s
    }
}

pub fn wide(v: u128) -> Value {
    u64::try_from(v).map_or_else(|_| Value::String(v.to_string()), Value::from)
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn text_cell(v: &Value) -> String {
    if v.is_null() {
        "-".into()
    } else {
        cell(v)
    }
}

fn text_table(t: &Table) -> String {
    let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(text_cell).collect()).collect();
    let widths: Vec<usize> = (0..t.columns.len())
        .map(|j| cells.iter().map(|r| r.get(j).map_or(0, String::len)).chain([t.columns[j].len()]).max().unwrap_or(0))
        .collect();
    let line = |row: &[String]| -> String {
        let parts: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}", w = *w)).collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&t.columns);
    for r in &cells {
        out.push_str(&line(r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperphi_core::Relation;

    fn sample() -> Report {
        let ctx = RingCtx::new(2, 2, 2).unwrap();
        let mut r = Report::new(vec!["rank".into()], Some(&ctx));
        r.check(Check::new("a_le_b", 3, Relation::Le, 4));
        r.value("rank_W", 7u64);
        r.count("big", u128::MAX);
        r.check(Check::new("wide", u128::MAX, Relation::Eq, u128::MAX));
        r.table = Some(Table {
            columns: vec!["p".into(), "note".into()],
            rows: vec![vec![Value::from(2), Value::from("x,y")]],
        });
        r
    }

    #[test]
    fn json_round_trips() {
        let r = sample();
        let text = r.render(Format::Json).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn csv_quotes_cells_and_needs_a_table() {
        let mut r = sample();
        assert_eq!(r.render(Format::Csv).unwrap(), "p,note\n2,\"x,y\"\n");
        r.table = None;
        assert!(matches!(r.render(Format::Csv), Err(CliError::Usage(_))));
    }

    #[test]
    fn exit_codes_follow_checks_then_budget() {
        let mut r = sample();
        assert_eq!(r.exit_code(), 0);
        r.budget_exceeded = true;
        assert_eq!(r.exit_code(), 3);
        r.check(Check::violations("bad", 1));
        assert_eq!(r.exit_code(), 1);
        assert!(r.render(Format::Text).unwrap().contains("FAIL bad: 1 == 0"));
    }
}
