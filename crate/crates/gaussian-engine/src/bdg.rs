use faer::{c64, Mat};
use negham_core::TripartiteGeometry;

use crate::correlation::CorrelationMatrix;
use crate::linalg;
use crate::{EngineError, Result};

/// Particle-hole doubled two-point matrix `G[a, b] = <Psi_a^dagger Psi_b>` with
/// `Psi = (c_1, c_1^dagger, c_2, c_2^dagger, ...)`, i.e. site blocks
/// `[[<c_p^+ c_q>, <c_p^+ c_q^+>], [<c_p c_q>, <c_p c_q^+>]]`.
#[derive(Debug, Clone)]
pub struct BdgMatrix {
    entries: Mat<c64>,
}

impl BdgMatrix {
    pub fn new(entries: Mat<c64>) -> Result<Self> {
        let n = linalg::check_square(entries.as_ref(), "square BdG")?;
        if n % 2 != 0 {
            return Err(EngineError::ShapeMismatch {
                expected: "even-dimensional BdG".into(),
                rows: n,
                cols: n,
            });
        }
        Ok(Self { entries })
    }

    /// Number-conserving embedding with hole block `1 - C^T`.
    pub fn from_correlation(c: &CorrelationMatrix) -> Self {
        let m = c.entries();
        let n = c.dim();
        let entries = Mat::from_fn(2 * n, 2 * n, |a, b| {
            let (p, q) = (a / 2, b / 2);
            match (a % 2, b % 2) {
                (0, 0) => m[(p, q)],
                (1, 1) => c64::new(if p == q { 1.0 } else { 0.0 }, 0.0) - m[(q, p)],
                _ => c64::new(0.0, 0.0),
            }
        });
        Self { entries }
    }

    pub fn entries(&self) -> &Mat<c64> {
        &self.entries
    }

    pub fn modes(&self) -> usize {
        self.entries.nrows() / 2
    }

    /// Site block `(p, q)` as a 2x2 array.
    pub fn block(&self, p: usize, q: usize) -> [[c64; 2]; 2] {
        let e = &self.entries;
        [
            [e[(2 * p, 2 * q)], e[(2 * p, 2 * q + 1)]],
            [e[(2 * p + 1, 2 * q)], e[(2 * p + 1, 2 * q + 1)]],
        ]
    }

    /// Largest anomalous entry `<c^+ c^+>` or `<c c>`.
    pub fn pairing_norm(&self) -> f64 {
        let n = self.modes();
        let mut m: f64 = 0.0;
        for p in 0..n {
            for q in 0..n {
                let b = self.block(p, q);
                m = m.max(b[0][1].norm()).max(b[1][0].norm());
            }
        }
        m
    }

    /// Largest violation of `G[tau a, tau b] + G[b, a] = delta_ab`, where `tau`
    /// exchanges the particle and hole component of each site.
    pub fn particle_hole_defect(&self) -> f64 {
        let e = &self.entries;
        let dim = e.nrows();
        let tau = |a: usize| a ^ 1;
        let mut m: f64 = 0.0;
        for a in 0..dim {
            for b in 0..dim {
                let delta = if a == b { 1.0 } else { 0.0 };
                m = m.max((e[(tau(a), tau(b))] + e[(b, a)] - c64::new(delta, 0.0)).norm());
            }
        }
        m
    }
}

/// Map applied to a cross-interval site block by the partial time reversal of
/// `A1`: `-i sigma_x B` for blocks in `A1` rows and `-i B sigma_x` for blocks in
/// `A2` rows. It squares to `-1`.
pub fn cross_block_map(block: [[c64; 2]; 2], row_in_a1: bool) -> [[c64; 2]; 2] {
    let mi = c64::new(0.0, -1.0);
    if row_in_a1 {
        [
            [mi * block[1][0], mi * block[1][1]],
            [mi * block[0][0], mi * block[0][1]],
        ]
    } else {
        [
            [mi * block[0][1], mi * block[0][0]],
            [mi * block[1][1], mi * block[1][0]],
        ]
    }
}

/// Covariance of the partially time-reversed state `rho^R1`, where `A1` is the
/// first `geometry.l1()` modes of `c`.
pub fn fermionic_partial_transpose(
    c: &CorrelationMatrix,
    geometry: &TripartiteGeometry,
) -> Result<BdgMatrix> {
    if c.dim() != geometry.n_sites() {
        return Err(EngineError::ShapeMismatch {
            expected: format!("{0}x{0} restricted correlation", geometry.n_sites()),
            rows: c.dim(),
            cols: c.dim(),
        });
    }
    partial_transpose_bdg(&BdgMatrix::from_correlation(c), geometry.l1())
}

/// Same map applied to an existing number-conserving BdG matrix.
pub(crate) fn partial_transpose_bdg(g: &BdgMatrix, n1: usize) -> Result<BdgMatrix> {
    let pairing = g.pairing_norm();
    if pairing > 1e-12 {
        return Err(EngineError::PairingPresent(pairing));
    }
    let n = g.modes();
    let mut out = g.entries.clone();
    for p in 0..n {
        for q in 0..n {
            if (p < n1) == (q < n1) {
                continue;
            }
            let b = cross_block_map(g.block(p, q), p < n1);
            for (r, row) in b.iter().enumerate() {
                for (s, v) in row.iter().enumerate() {
                    out[(2 * p + r, 2 * q + s)] = *v;
                }
            }
        }
    }
    Ok(BdgMatrix { entries: out })
}

/// The `(A1 particles, A2 holes)` sector of the time-reversed BdG matrix,
/// `[[C11, i C21^T], [i C12^T, 1 - C22^T]]`. The full matrix is block diagonal
/// in this sector and its complement `1 - M^T`.
pub fn imbalance_block(c: &CorrelationMatrix, n1: usize) -> Mat<c64> {
    let m = c.entries();
    let n = c.dim();
    let i = c64::new(0.0, 1.0);
    Mat::from_fn(n, n, |p, q| match (p < n1, q < n1) {
        (true, true) => m[(p, q)],
        (true, false) => i * m[(q, p)],
        (false, true) => i * m[(q, p)],
        (false, false) => c64::new(if p == q { 1.0 } else { 0.0 }, 0.0) - m[(q, p)],
    })
}

/// Position of reduced-sector index `j` inside the doubled basis.
pub(crate) fn sector_index(j: usize, n1: usize, first: bool) -> usize {
    if (j < n1) == first {
        2 * j
    } else {
        2 * j + 1
    }
}
