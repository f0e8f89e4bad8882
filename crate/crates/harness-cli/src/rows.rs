use std::cmp::Ordering;
use std::io::Write;

use serde::Serialize;

use crate::config::OutputFormat;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CSV_HEADER: &str = "method,quantity,t,alpha,lambda,value_re,value_im,cutoff,kgrid,version";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Qp,
    Exact,
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Qp => "qp",
            Method::Exact => "exact",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub method: Method,
    pub quantity: String,
    pub t: f64,
    pub alpha: u32,
    pub lambda: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub cutoff: f64,
    pub kgrid: usize,
    pub version: &'static str,
}

impl ResultRow {
    pub fn real(method: Method, quantity: &str, t: f64, alpha: u32, value: f64) -> Self {
        Self {
            method,
            quantity: quantity.to_string(),
            t,
            alpha,
            lambda: 0.0,
            value_re: value,
            value_im: 0.0,
            cutoff: 0.0,
            kgrid: 0,
            version: VERSION,
        }
    }

    pub fn with_metadata(mut self, cutoff: f64, kgrid: usize) -> Self {
        self.cutoff = cutoff;
        self.kgrid = kgrid;
        self
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        self.method
            .cmp(&other.method)
            .then_with(|| self.quantity.cmp(&other.quantity))
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.lambda.total_cmp(&other.lambda))
            .then_with(|| self.t.total_cmp(&other.t))
    }

    /// One CSV line, floats at 17 significant digits.
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.method.as_str(),
            self.quantity,
            fmt_float(self.t),
            self.alpha,
            fmt_float(self.lambda),
            fmt_float(self.value_re),
            fmt_float(self.value_im),
            fmt_float(self.cutoff),
            self.kgrid,
            self.version
        )
    }
}

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Sorts by method, quantity, alpha, lambda and time so that row order does
/// not depend on scheduling.
pub fn sort_rows(rows: &mut [ResultRow]) {
    rows.sort_by(ResultRow::key_cmp);
}

pub fn write_rows<W: Write>(out: &mut W, rows: &[ResultRow], format: OutputFormat) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in rows {
                writeln!(out, "{}", r.to_csv())?;
            }
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_line_has_every_column() {
        let row = ResultRow::real(Method::Qp, "log_ratio", 1.5, 3, -0.25).with_metadata(1e-8, 4096);
        let line = row.to_csv();
        assert_eq!(line.split(',').count(), CSV_HEADER.split(',').count());
        assert!(line.starts_with("qp,log_ratio,1.5000000000000000e0,3,"));
    }

    #[test]
    fn float_format_roundtrips() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23] {
            assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn sorting_ignores_input_order() {
        let mut a = vec![
            ResultRow::real(Method::Qp, "b", 2.0, 2, 0.0),
            ResultRow::real(Method::Exact, "a", 1.0, 2, 0.0),
            ResultRow::real(Method::Qp, "b", 1.0, 2, 0.0),
        ];
        let mut b = a.clone();
        b.reverse();
        sort_rows(&mut a);
        sort_rows(&mut b);
        assert_eq!(a, b);
        assert_eq!(a[0].method, Method::Qp);
        assert_eq!(a[0].t, 1.0);
    }
}
