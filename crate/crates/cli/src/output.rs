use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::Context;

use crate::CliError;

/// Opens `path` for writing, or standard output when there is none.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Seventeen significant digits, enough to round-trip any double.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes one header row and then the columns side by side.
pub fn write_csv(path: Option<&Path>, header: &[&str], columns: &[&[f64]]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(sink(path)?);
    let write = |w: &mut csv::Writer<Box<dyn Write>>| -> csv::Result<()> {
        w.write_record(header)?;
        for i in 0..columns.first().map_or(0, |c| c.len()) {
            w.write_record(columns.iter().map(|c| float(c[i])))?;
        }
        w.flush()?;
        Ok(())
    };
    write(&mut w).context("writing CSV")?;
    Ok(())
}

pub fn write_json(path: Option<&Path>, value: &serde_json::Value) -> Result<(), CliError> {
    let mut w = sink(path)?;
    serde_json::to_writer(&mut w, value).context("writing JSON")?;
    writeln!(w).and_then(|_| w.flush()).context("writing JSON")?;
    Ok(())
}

/// Rows of already formatted fields.
pub fn write_rows(path: Option<&Path>, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(sink(path)?);
    let write = |w: &mut csv::Writer<Box<dyn Write>>| -> csv::Result<()> {
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    };
    write(&mut w).context("writing CSV")?;
    Ok(())
}

/// Reads a uniformly spaced `x,F` table.
pub fn read_table(path: &Path) -> Result<relheat::evolution::GridFunction, CliError> {
    use relheat::evolution::{Grid, GridFunction};
    let bad = |msg: String| CliError::Usage(format!("{}: {msg}", path.display()));
    let mut r = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let mut xs = Vec::new();
    let mut fs = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        if rec.len() < 2 {
            return Err(bad("expected two columns x,F".into()));
        }
        let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(format!("not a number: {s:?}")));
        xs.push(parse(&rec[0])?);
        fs.push(parse(&rec[1])?);
    }
    if xs.len() < 4 {
        return Err(bad("need at least four rows".into()));
    }
    let (first, last) = (xs[0], xs[xs.len() - 1]);
    let grid = Grid::new(first, last, xs.len()).map_err(|e| bad(e.to_string()))?;
    let h = grid.step();
    if xs.iter().enumerate().any(|(i, &x)| (x - grid.point(i)).abs() > 1e-9 * h.max(1.0) * (1.0 + x.abs())) {
        return Err(bad("x column is not uniformly spaced".into()));
    }
    GridFunction::new(grid, fs, 0.0).map_err(|e| bad(e.to_string()))
}
