use std::collections::HashMap;

use faer::{c64, Mat};
use negham_core::TripartiteGeometry;

use crate::bessel::bessel_j_table;
use crate::linalg;
use crate::{EngineError, Result};

/// `C[x, y] = <c_x^dagger c_y>` on a labelled set of lattice sites.
#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    entries: Mat<c64>,
    sites: Vec<i64>,
}

impl CorrelationMatrix {
    pub fn new(entries: Mat<c64>, sites: Vec<i64>) -> Result<Self> {
        let n = linalg::check_square(entries.as_ref(), "square correlation")?;
        if n != sites.len() {
            return Err(EngineError::ShapeMismatch {
                expected: format!("{0}x{0} for {0} sites", sites.len()),
                rows: n,
                cols: n,
            });
        }
        Ok(Self { entries, sites })
    }

    pub fn entries(&self) -> &Mat<c64> {
        &self.entries
    }

    pub fn sites(&self) -> &[i64] {
        &self.sites
    }

    pub fn dim(&self) -> usize {
        self.sites.len()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(self.entries.as_ref())
    }

    /// Ascending eigenvalues, the single-particle occupation spectrum.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        linalg::hermitian_eigenvalues(self.entries.as_ref(), "correlation matrix")
    }
}

fn minus_i_power(m: i64) -> c64 {
    match m.rem_euclid(4) {
        0 => c64::new(1.0, 0.0),
        1 => c64::new(0.0, -1.0),
        2 => c64::new(-1.0, 0.0),
        _ => c64::new(0.0, 1.0),
    }
}

/// Correlations at time `t` after releasing the dimer product state
/// `prod_j (c_2j^dagger + c_2j+1^dagger)/sqrt 2 |0>` into the hopping chain.
pub fn correlation_dimer(t: f64, sites: &[i64]) -> CorrelationMatrix {
    let n = sites.len();
    let entries = if t == 0.0 {
        Mat::from_fn(n, n, |i, j| {
            let same = sites[i].div_euclid(2) == sites[j].div_euclid(2);
            c64::new(if same { 0.5 } else { 0.0 }, 0.0)
        })
    } else {
        let lo = sites.iter().copied().min().unwrap_or(0);
        let hi = sites.iter().copied().max().unwrap_or(0);
        let bessel = bessel_j_table((hi - lo) as usize, 2.0 * t);
        Mat::from_fn(n, n, |i, j| {
            let (x, y) = (sites[i], sites[j]);
            let r = x - y;
            let stationary = match r.abs() {
                0 => 0.5,
                1 => 0.25,
                _ => 0.0,
            };
            let order = r.unsigned_abs() as usize;
            let jr = if r < 0 && order % 2 == 1 {
                -bessel[order]
            } else {
                bessel[order]
            };
            let dynamic = c64::new(0.0, r as f64 / (4.0 * t)) * minus_i_power(x + y) * jr;
            c64::new(stationary, 0.0) + dynamic
        })
    };
    CorrelationMatrix {
        entries,
        sites: sites.to_vec(),
    }
}

/// Restriction to `A1 u A2`, `A1` first, using the lattice view of `geometry`.
pub fn restrict(c: &CorrelationMatrix, geometry: &TripartiteGeometry) -> Result<CorrelationMatrix> {
    let index: HashMap<i64, usize> = c.sites.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let wanted: Vec<i64> = geometry.sites().into_iter().map(|s| s as i64).collect();
    let picks = wanted
        .iter()
        .map(|s| index.get(s).copied().ok_or(EngineError::SiteMissing(*s)))
        .collect::<Result<Vec<_>>>()?;
    let entries = Mat::from_fn(picks.len(), picks.len(), |i, j| c.entries[(picks[i], picks[j])]);
    Ok(CorrelationMatrix {
        entries,
        sites: wanted,
    })
}
