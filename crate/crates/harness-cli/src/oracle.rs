use std::fmt::Write as _;

use gaussian_engine::{correlation_dimer, GaussianComposition};
use negham_core::TripartiteGeometry;
use oracles::{dense_suite, pair_suite, DenseCase, REMEASURE_TOL};
use serde::Serialize;

use crate::Result;

/// Agreement required between the dense oracle and the covariance formulas.
pub const DENSE_TOL: f64 = 1e-8;
/// Times used for the dense equivalence sweep.
pub const DENSE_TIMES: [f64; 4] = [0.0, 2.0, 5.0, 10.0];

#[derive(Debug, Clone, Serialize)]
pub struct OracleCheck {
    pub suite: &'static str,
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub checks: Vec<OracleCheck>,
    pub passed: bool,
}

impl OracleReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{} [{}] {}: {:.3e} (tol {:.1e})",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite,
                c.name,
                c.deviation,
                c.tolerance
            );
        }
        let _ = writeln!(
            s,
            "{} checks, {} failed",
            self.checks.len(),
            self.failures()
        );
        s
    }
}

fn check(suite: &'static str, name: String, deviation: f64, tolerance: f64) -> OracleCheck {
    OracleCheck {
        suite,
        name,
        deviation,
        tolerance,
        passed: deviation <= tolerance,
    }
}

/// Every geometry with `l1 + l2 <= max_modes` and `1 <= d <= max_d`.
pub fn dense_geometries(max_modes: usize, max_d: usize) -> Vec<TripartiteGeometry> {
    let mut out = Vec::new();
    for l1 in 1..max_modes {
        for l2 in 1..=max_modes - l1 {
            for d in 1..=max_d {
                if let Ok(g) = TripartiteGeometry::new(l1, l2, d) {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Dense-oracle `E_1..E_4` against the covariance composition for one
/// geometry and time: `(remeasure defect, max |E_dense - E_covariance|)`.
pub fn dense_equivalence(g: &TripartiteGeometry, t: f64) -> Result<(f64, f64)> {
    let sites: Vec<i64> = g.sites().into_iter().map(|s| s as i64).collect();
    let c = correlation_dimer(t, &sites);
    let case = DenseCase {
        label: String::new(),
        covariance: c.entries().clone(),
        n1: g.l1(),
    };
    let outcome = dense_suite(std::slice::from_ref(&case))?.remove(0);
    let comp = GaussianComposition::new(&c, g.l1())?;
    let mut worst = 0.0f64;
    for (a, dense) in outcome.negativities.iter().enumerate() {
        let cov = comp.renyi_negativity(a as u32 + 1)?;
        let dev = (dense - cov).abs();
        worst = if dev.is_nan() { f64::NAN } else { worst.max(dev) };
    }
    Ok((outcome.remeasure, worst))
}

/// Pair-algebra suite on a `points x points` grid plus the dense sweep over
/// `dense_geometries(max_modes, max_d)` at `DENSE_TIMES`.
pub fn run_oracle(points: usize, max_modes: usize, max_d: usize) -> Result<OracleReport> {
    let mut checks: Vec<OracleCheck> = pair_suite(points)?
        .into_iter()
        .map(|c| {
            let passed = c.passed();
            OracleCheck {
                suite: "pair",
                name: c.name,
                deviation: c.deviation,
                tolerance: c.tolerance,
                passed,
            }
        })
        .collect();
    for g in dense_geometries(max_modes, max_d) {
        for &t in &DENSE_TIMES {
            let label = format!("l1={} l2={} d={} t={}", g.l1(), g.l2(), g.d(), t);
            let (remeasure, dev) = dense_equivalence(&g, t)?;
            checks.push(check("dense", format!("{label} remeasure"), remeasure, REMEASURE_TOL));
            checks.push(check("dense", format!("{label} E1..E4"), dev, DENSE_TOL));
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(OracleReport { checks, passed })
}
