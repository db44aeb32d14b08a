//! Per-iteration trace records and their CSV / JSON-lines serializations.

use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One row of a solver trace. `objective` is the total objective at the
/// consensus pair `(z_a, z_b)`; the gap columns are filled on iterations
/// where the best-response bracket was computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub k: usize,
    pub ra: f64,
    pub rb: f64,
    pub sa: f64,
    pub sb: f64,
    pub total_residual: f64,
    pub objective: f64,
    pub gap_lower: Option<f64>,
    pub gap_upper: Option<f64>,
    pub wall_time_s: f64,
}

/// Whether emitted traces carry measured wall times or zeros. Zeroed is the
/// default: wall clocks differ between runs, and the byte-identical-trace
/// guarantee only holds without them. Summaries always carry measured time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimingMode {
    Zeroed,
    Measured,
}

pub const CSV_HEADER: &str = "k,ra,rb,sa,sb,total_residual,objective,gap_lower,gap_upper,wall_time_s";

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Renders records as CSV under the fixed header. Floats use the shortest
/// round-trip form; absent gaps serialize as empty fields.
pub fn render_csv(records: &[TraceRecord], timing: TimingMode) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let wall = match timing {
            TimingMode::Zeroed => 0.0,
            TimingMode::Measured => r.wall_time_s,
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.k,
            r.ra,
            r.rb,
            r.sa,
            r.sb,
            r.total_residual,
            r.objective,
            opt(r.gap_lower),
            opt(r.gap_upper),
            wall,
        ));
    }
    out
}

pub fn write_csv(path: &Path, records: &[TraceRecord], timing: TimingMode) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(render_csv(records, timing).as_bytes())?;
    Ok(())
}

/// JSON-lines variant: one record object per line, same fields as the CSV.
pub fn write_jsonl(path: &Path, records: &[TraceRecord], timing: TimingMode) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    for r in records {
        let mut r = r.clone();
        if timing == TimingMode::Zeroed {
            r.wall_time_s = 0.0;
        }
        let line = serde_json::to_string(&r)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        f.write_all(line.as_bytes())?;
        f.write_all(b"\n")?;
    }
    Ok(())
}

/// Parses a CSV produced by [`render_csv`]. Used by the comparison tooling
/// and tests; not a general CSV reader.
pub fn parse_csv(text: &str) -> Result<Vec<TraceRecord>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => {
            return Err(Error::Config(format!(
                "trace CSV header mismatch: got {other:?}"
            )))
        }
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 10 {
            return Err(Error::Config(format!(
                "trace CSV row {}: expected 10 fields, got {}",
                i + 2,
                cells.len()
            )));
        }
        let num = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|e| Error::Config(format!("trace CSV row {}: {e}", i + 2)))
        };
        let opt_num = |s: &str| -> Result<Option<f64>> {
            if s.is_empty() { Ok(None) } else { num(s).map(Some) }
        };
        out.push(TraceRecord {
            k: cells[0]
                .parse()
                .map_err(|e| Error::Config(format!("trace CSV row {}: {e}", i + 2)))?,
            ra: num(cells[1])?,
            rb: num(cells[2])?,
            sa: num(cells[3])?,
            sb: num(cells[4])?,
            total_residual: num(cells[5])?,
            objective: num(cells[6])?,
            gap_lower: opt_num(cells[7])?,
            gap_upper: opt_num(cells[8])?,
            wall_time_s: num(cells[9])?,
        });
    }
    Ok(out)
}
