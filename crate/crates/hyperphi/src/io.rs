//! File formats: function tables (JSON, CSV), matrix dumps and fan documents.

use std::fs;
use std::path::Path;

use hyperphi_core::geometry::{make_fan, Cube, Fan, Plane2Nbhd};
use hyperphi_core::incidence::{canonical_direction, Line};
use hyperphi_core::phi::FnTable;
use hyperphi_core::{MatGFp, Point, RingCtx};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// On-disk shape of a function table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    p: u64,
    k: u32,
    n: usize,
    values: Vec<u64>,
}

fn table_from_parts(p: u64, k: u32, n: usize, values: Vec<u64>) -> Result<FnTable, CliError> {
    let ctx = RingCtx::new(p, k, n).map_err(|e| CliError::Parse(format!("table context: {e}")))?;
    if values.len() != ctx.size() {
        return Err(CliError::Parse(format!(
            "table has {} values, context ({p},{k},{n}) needs {}",
            values.len(),
            ctx.size()
        )));
    }
    if let Some((i, v)) = values.iter().enumerate().find(|(_, &v)| v >= p) {
        return Err(CliError::Parse(format!("entry {v} at index {i} is not below p = {p}")));
    }
    FnTable::new(ctx, values.into_iter().map(|v| v as u32).collect()).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn table_from_json(text: &str) -> Result<FnTable, CliError> {
    let doc: TableDoc = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("table JSON: {e}")))?;
    table_from_parts(doc.p, doc.k, doc.n, doc.values)
}

pub fn table_to_json(f: &FnTable) -> String {
    let c = f.ctx();
    let doc = TableDoc { p: c.p(), k: c.k(), n: c.n(), values: f.values().iter().map(|&v| v as u64).collect() };
    serde_json::to_string(&doc).expect("table serializes")
}

/// CSV tables: the line `p,k,n`, a line with the three numbers, then one
/// value per line in index order. The literal name line may be left out.
pub fn table_from_csv(text: &str) -> Result<FnTable, CliError> {
    let mut rdr =
        csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut records = rdr.records();
    let mut next = || -> Result<Option<csv::StringRecord>, CliError> {
        records.next().transpose().map_err(|e| CliError::Parse(format!("table CSV: {e}")))
    };
    let mut head = next()?.ok_or_else(|| CliError::Parse("empty table CSV".into()))?;
    if head.iter().eq(["p", "k", "n"]) {
        head = next()?.ok_or_else(|| CliError::Parse("table CSV has no context line".into()))?;
    }
    if head.len() != 3 {
        return Err(CliError::Parse(format!("context line needs p,k,n, got {} fields", head.len())));
    }
    let num = |s: &str| s.parse::<u64>().map_err(|_| CliError::Parse(format!("not a number: {s:?}")));
    let (p, k, n) = (num(&head[0])?, num(&head[1])?, num(&head[2])?);
    let k = u32::try_from(k).map_err(|_| CliError::Parse(format!("k = {k} too large")))?;
    let n = usize::try_from(n).map_err(|_| CliError::Parse(format!("n = {n} too large")))?;
    let mut values = Vec::new();
    while let Some(rec) = next()? {
        if rec.len() != 1 {
            return Err(CliError::Parse(format!("value lines hold one entry, got {}", rec.len())));
        }
        values.push(num(&rec[0])?);
    }
    table_from_parts(p, k, n, values)
}

pub fn table_to_csv(f: &FnTable) -> String {
    let c = f.ctx();
    let mut out = format!("p,k,n\n{},{},{}\n", c.p(), c.k(), c.n());
    for v in f.values() {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

/// Reads a table, choosing CSV for a `.csv` extension and JSON otherwise.
pub fn read_table(path: &Path) -> Result<FnTable, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        table_from_csv(&text)
    } else {
        table_from_json(&text)
    }
}

/// Header `p rows cols`, then one line of space-separated entries per row.
pub fn matrix_to_dump(m: &MatGFp) -> String {
    let mut out = format!("{} {} {}\n", m.p(), m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a dump. For `p ≤ 10` a row may also be written as a run of digits.
pub fn matrix_from_dump(text: &str) -> Result<MatGFp, CliError> {
    let bad = |msg: String| CliError::Parse(format!("matrix dump: {msg}"));
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let head: Vec<u64> = lines
        .next()
        .ok_or_else(|| bad("empty".into()))?
        .split_whitespace()
        .map(|s| s.parse().map_err(|_| bad(format!("bad header field {s:?}"))))
        .collect::<Result<_, _>>()?;
    let [p, rows, cols] = head[..] else {
        return Err(bad("header must be `p rows cols`".into()));
    };
    let (rows, cols) = (rows as usize, cols as usize);
    let mut data = Vec::with_capacity(rows);
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let row: Vec<u32> = if fields.len() == 1 && cols > 1 && p <= 10 {
            fields[0]
                .chars()
                .map(|c| c.to_digit(10).ok_or_else(|| bad(format!("row {i}: bad digit {c:?}"))))
                .collect::<Result<_, _>>()?
        } else {
            fields
                .iter()
                .map(|s| s.parse().map_err(|_| bad(format!("row {i}: bad entry {s:?}"))))
                .collect::<Result<_, _>>()?
        };
        if row.len() != cols {
            return Err(bad(format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        data.push(row);
    }
    if data.len() != rows {
        return Err(bad(format!("{} rows, expected {rows}", data.len())));
    }
    MatGFp::from_rows(p, cols, &data).map_err(|e| bad(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentDoc {
    pub base: Vec<u64>,
    pub direction: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneDoc {
    pub anchor: Vec<u64>,
    pub u: Vec<u64>,
    pub v: Vec<u64>,
    pub nbhd_scale: u32,
}

/// A fan as written to disk; `points` are indices into the point codec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDoc {
    pub scale: u32,
    pub qprime_base: Vec<u64>,
    pub q_base: Vec<u64>,
    pub segments: Vec<SegmentDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plane: Option<PlaneDoc>,
    pub points: Vec<usize>,
}

impl FanDoc {
    pub fn from_fan(fan: &Fan) -> Self {
        FanDoc {
            scale: fan.scale,
            qprime_base: fan.qprime.base.0.clone(),
            q_base: fan.q.base.0.clone(),
            segments: fan
                .lines
                .iter()
                .map(|l| SegmentDoc { base: l.a.0.clone(), direction: l.b.coords().to_vec() })
                .collect(),
            plane: fan.plane.as_ref().map(|pl| PlaneDoc {
                anchor: pl.anchor.0.clone(),
                u: pl.u.coords().to_vec(),
                v: pl.v.coords().to_vec(),
                nbhd_scale: pl.nbhd_scale,
            }),
            points: fan.points.clone(),
        }
    }

    /// Rebuilds the fan and checks that the stored point set matches.
    pub fn to_fan(&self, ctx: &RingCtx) -> Result<Fan, CliError> {
        let core = |e: hyperphi_core::Error| CliError::Parse(format!("fan: {e}"));
        let dir = |v: &[u64]| canonical_direction(ctx, &Point(v.to_vec())).map_err(core);
        let cube = |scale, base: &[u64]| Cube::containing(ctx, scale, &Point(base.to_vec())).map_err(core);
        let lines = self
            .segments
            .iter()
            .map(|s| Ok(Line { b: dir(&s.direction)?, a: Point(s.base.clone()) }))
            .collect::<Result<Vec<_>, CliError>>()?;
        let plane = match &self.plane {
            Some(pl) => Some(
                Plane2Nbhd::new(ctx, Point(pl.anchor.clone()), dir(&pl.u)?, dir(&pl.v)?, pl.nbhd_scale)
                    .map_err(core)?,
            ),
            None => None,
        };
        let qp = cube(self.scale, &self.qprime_base)?;
        let q = cube(self.scale + 1, &self.q_base)?;
        let fan = make_fan(ctx, self.scale, qp, q, lines, plane).map_err(core)?;
        if fan.points != self.points {
            return Err(CliError::Parse("fan point list does not match its segments".into()));
        }
        Ok(fan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> RingCtx {
        RingCtx::new(2, 2, 2).unwrap()
    }

    #[test]
    fn json_table_round_trip() {
        let f = FnTable::from_fn(ctx(), |x| (x[0] * x[1]) % 2);
        assert_eq!(table_from_json(&table_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn csv_table_round_trip_with_and_without_names() {
        let f = FnTable::from_fn(ctx(), |x| (x[0] + x[1]) % 2);
        let text = table_to_csv(&f);
        assert!(text.starts_with("p,k,n\n2,2,2\n"));
        assert_eq!(table_from_csv(&text).unwrap(), f);
        let bare = text.strip_prefix("p,k,n\n").unwrap();
        assert_eq!(table_from_csv(bare).unwrap(), f);
    }

    #[test]
    fn rejects_entries_at_or_above_p() {
        let mut values = vec![0u64; 16];
        values[5] = 2;
        let text = serde_json::json!({"p": 2, "k": 2, "n": 2, "values": values}).to_string();
        assert!(matches!(table_from_json(&text), Err(CliError::Parse(_))));
        let csv: String = std::iter::once("2,2,2".to_string())
            .chain(values.iter().map(u64::to_string))
            .collect::<Vec<_>>()
            .join("\n");
        assert!(matches!(table_from_csv(&csv), Err(CliError::Parse(_))));
    }

    #[test]
    fn rejects_wrong_length_and_unknown_fields() {
        let short = r#"{"p":2,"k":2,"n":2,"values":[0,1]}"#;
        assert!(table_from_json(short).is_err());
        let extra = r#"{"p":2,"k":1,"n":1,"values":[0,1],"q":3}"#;
        assert!(table_from_json(extra).is_err());
        assert!(table_from_json(r#"{"p":4,"k":1,"n":1,"values":[0,1,2,3]}"#).is_err());
    }

    #[test]
    fn matrix_dump_round_trip() {
        for p in [2, 3, 11] {
            let m = MatGFp::random(p, 5, 7, p).unwrap();
            let text = matrix_to_dump(&m);
            assert_eq!(matrix_from_dump(&text).unwrap().to_rows(), m.to_rows());
        }
    }

    #[test]
    fn matrix_dump_accepts_digit_runs() {
        let m = matrix_from_dump("3 2 3\n012\n2 2 1\n").unwrap();
        assert_eq!(m.to_rows(), vec![vec![0, 1, 2], vec![2, 2, 1]]);
        assert!(matrix_from_dump("2 1 2\n0 2\n").is_err());
        assert!(matrix_from_dump("2 2 2\n0 1\n").is_err());
    }

    #[test]
    fn fan_doc_round_trip() {
        let c = ctx();
        let fan = hyperphi_core::verify::worked_fan(&c).unwrap();
        let doc = FanDoc::from_fan(&fan);
        let text = serde_json::to_string(&doc).unwrap();
        let back: FanDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_fan(&c).unwrap(), fan);
        let mut tampered = back.clone();
        tampered.points.pop();
        assert!(tampered.to_fan(&c).is_err());
    }
}
