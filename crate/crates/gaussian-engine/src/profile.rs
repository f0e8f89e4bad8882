use faer::c64;
use negham_core::TripartiteGeometry;

use crate::peschel::OperatorMatrix;
use crate::{EngineError, Result};

/// One pairing coefficient of `c_x^dagger c_y^dagger` with `x in A2`, `y in A1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub x: i64,
    pub y: i64,
    pub value: c64,
    /// `(-1)^x value`.
    pub deoscillated: c64,
}

impl ProfileSample {
    pub fn distance(&self) -> i64 {
        self.x - self.y
    }
}

fn lattice_site(index: usize, geometry: &TripartiteGeometry) -> i64 {
    if index < geometry.l1() {
        index as i64
    } else {
        (index + geometry.d()) as i64
    }
}

fn check_doubled(op: &OperatorMatrix, geometry: &TripartiteGeometry) -> Result<usize> {
    let n = geometry.n_sites();
    if op.dim() != 2 * n {
        return Err(EngineError::ShapeMismatch {
            expected: format!("{0}x{0} doubled operator", 2 * n),
            rows: op.entries.nrows(),
            cols: op.entries.ncols(),
        });
    }
    Ok(n)
}

/// Pairing coefficients of a doubled operator, ordered by distance `x - y` and
/// then by `x`.
pub fn extract_offdiag_profile(
    offdiag: &OperatorMatrix,
    geometry: &TripartiteGeometry,
) -> Result<Vec<ProfileSample>> {
    let n = check_doubled(offdiag, geometry)?;
    let n1 = geometry.l1();
    let mut out = Vec::with_capacity(n1 * (n - n1));
    for xi in n1..n {
        for yi in 0..n1 {
            let x = lattice_site(xi, geometry);
            let value = offdiag.entries[(2 * xi, 2 * yi + 1)];
            let sign = if x % 2 == 0 { 1.0 } else { -1.0 };
            out.push(ProfileSample {
                x,
                y: lattice_site(yi, geometry),
                value,
                deoscillated: value * sign,
            });
        }
    }
    out.sort_by_key(|s| (s.distance(), s.x));
    Ok(out)
}

/// Hopping coefficients of `c_x^dagger c_{x+z}` for both sites inside the same
/// interval, as `(x, value)` pairs in lattice order.
pub fn nearest_site_profile(
    op: &OperatorMatrix,
    geometry: &TripartiteGeometry,
    z: usize,
) -> Result<Vec<(i64, c64)>> {
    let n = check_doubled(op, geometry)?;
    let n1 = geometry.l1();
    Ok((0..n)
        .filter(|&i| i + z < n && (i < n1) == (i + z < n1))
        .map(|i| (lattice_site(i, geometry), op.entries[(2 * i, 2 * (i + z))]))
        .collect())
}
