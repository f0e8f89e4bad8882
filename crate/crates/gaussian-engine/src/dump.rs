use std::io::{BufRead, Write};

use faer::{c64, Mat, MatRef};

use crate::{EngineError, Result};

/// Writes `# comment` lines, a `rows cols` header and one line per row of
/// space-separated `re,im` pairs.
pub fn write_matrix<W: Write>(
    out: &mut W,
    m: MatRef<'_, c64>,
    comments: &[&str],
) -> std::io::Result<()> {
    for c in comments {
        writeln!(out, "# {c}")?;
    }
    writeln!(out, "{} {}", m.nrows(), m.ncols())?;
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| format!("{:.17e},{:.17e}", m[(i, j)].re, m[(i, j)].im))
            .collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

fn bad(msg: impl Into<String>) -> EngineError {
    EngineError::Dump(msg.into())
}

pub fn read_matrix<R: BufRead>(input: R) -> Result<Mat<c64>> {
    let mut lines = input
        .lines()
        .map(|l| l.map_err(|e| bad(e.to_string())))
        .filter(|l| !matches!(l, Ok(s) if s.starts_with('#') || s.trim().is_empty()));
    let header = lines.next().ok_or_else(|| bad("missing header"))??;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|s| s.parse().map_err(|_| bad(format!("bad header `{header}`"))))
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(bad(format!("bad header `{header}`")));
    };
    let mut m = Mat::from_fn(rows, cols, |_, _| c64::new(0.0, 0.0));
    for i in 0..rows {
        let line = lines.next().ok_or_else(|| bad(format!("missing row {i}")))??;
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != cols {
            return Err(bad(format!("row {i} has {} entries", entries.len())));
        }
        for (j, e) in entries.iter().enumerate() {
            let (re, im) = e.split_once(',').ok_or_else(|| bad(format!("bad entry `{e}`")))?;
            let parse = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("bad number `{s}`")));
            m[(i, j)] = c64::new(parse(re)?, parse(im)?);
        }
    }
    Ok(m)
}
