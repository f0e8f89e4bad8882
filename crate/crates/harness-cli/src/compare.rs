use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::config::{ExactMethod, ExperimentConfig};
use crate::rows::ResultRow;
use crate::run::{exact_rows, predict_rows};
use crate::Result;

/// A deviation passes when it is at most `max(relative * peak, absolute)`,
/// with `peak` the largest magnitude of the exact curve for that quantity and alpha.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub relative: f64,
    pub absolute: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            relative: 0.05,
            absolute: 0.2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareEntry {
    pub quantity: String,
    pub alpha: u32,
    pub peak: f64,
    pub allowed: f64,
    pub max_abs_deviation: f64,
    pub max_rel_deviation: f64,
    pub worst_t: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub tolerances: Tolerances,
    pub exact_method: &'static str,
    pub cutoff: f64,
    pub entries: Vec<CompareEntry>,
    pub passed: bool,
}

impl CompareReport {
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "compare: qp vs exact ({}), cutoff {:e}, tolerance max({} * peak, {:e})",
            self.exact_method, self.cutoff, self.tolerances.relative, self.tolerances.absolute
        );
        for e in &self.entries {
            let _ = writeln!(
                s,
                "{} {} alpha={} max|dev|={:.3e} (allowed {:.3e}, peak {:.3e}) worst t={}",
                if e.passed { "PASS" } else { "FAIL" },
                e.quantity,
                e.alpha,
                e.max_abs_deviation,
                e.allowed,
                e.peak,
                e.worst_t
            );
        }
        let _ = writeln!(s, "{}", if self.passed { "overall: PASS" } else { "overall: FAIL" });
        s
    }
}

type Key = (String, u32);

fn index(rows: &[ResultRow], suffix: &str) -> BTreeMap<Key, Vec<(f64, f64)>> {
    let mut out: BTreeMap<Key, Vec<(f64, f64)>> = BTreeMap::new();
    for r in rows {
        let base = if suffix.is_empty() {
            if r.quantity.ends_with("_composed") {
                continue;
            }
            r.quantity.as_str()
        } else {
            match r.quantity.strip_suffix(suffix) {
                Some(b) => b,
                None => continue,
            }
        };
        out.entry((base.to_string(), r.alpha))
            .or_default()
            .push((r.t, r.value_re));
    }
    out
}

/// Compares qp and exact rows that share quantity, alpha and t.
pub fn compare_rows(
    qp: &[ResultRow],
    exact: &[ResultRow],
    exact_suffix: &str,
    tolerances: Tolerances,
) -> Vec<CompareEntry> {
    let qp = index(qp, "");
    let exact = index(exact, exact_suffix);
    let mut entries = Vec::new();
    for (key, ex) in &exact {
        let Some(pred) = qp.get(key) else { continue };
        let peak = ex.iter().map(|&(_, v)| v.abs()).fold(0.0, f64::max);
        let allowed = (tolerances.relative * peak).max(tolerances.absolute);
        let mut worst = (0.0f64, 0.0f64);
        for &(t, v) in ex {
            if let Some(&(_, p)) = pred.iter().find(|(tp, _)| *tp == t) {
                let dev = (v - p).abs();
                if dev > worst.0 || worst.0.is_nan() || dev.is_nan() {
                    worst = (dev, t);
                }
            }
        }
        entries.push(CompareEntry {
            quantity: key.0.clone(),
            alpha: key.1,
            peak,
            allowed,
            max_abs_deviation: worst.0,
            max_rel_deviation: if peak > 0.0 { worst.0 / peak } else { worst.0 },
            worst_t: worst.1,
            passed: worst.0 <= allowed,
        });
    }
    entries
}

/// Runs both engines on `cfg` and compares them; the caller decides what a
/// failed report means for the exit status.
pub fn compare(cfg: &ExperimentConfig, tolerances: Tolerances) -> Result<CompareReport> {
    let qp = predict_rows(cfg)?;
    let exact = exact_rows(cfg)?;
    let suffix = if cfg.exact_method == ExactMethod::Composition {
        "_composed"
    } else {
        ""
    };
    let entries = compare_rows(&qp, &exact, suffix, tolerances);
    let passed = !entries.is_empty() && entries.iter().all(|e| e.passed);
    Ok(CompareReport {
        tolerances,
        exact_method: if suffix.is_empty() { "spectrum" } else { "composition" },
        cutoff: cfg.cutoff,
        entries,
        passed,
    })
}
