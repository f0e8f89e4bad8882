//! Quasiparticle-picture predictions for two disjoint intervals after a quench:
//! pair-counting weights, Renyi entropies and negativities, charged moments and
//! the real-space kernels of the entanglement and negativity Hamiltonians.

mod charged;
mod counting;
mod entropy;
mod kernels;

pub use charged::charged_moment_qp;
pub use counting::{
    chi_m, chi_p, mixed_weight, mixed_weight_from_speed, pure_weight, pure_weight_bracket,
    pure_weight_intersection, CountingWeights,
};
pub use entropy::{log_negativity_qp, log_ratio_qp, renyi_entropy_qp, renyi_negativity_qp};
pub use kernels::{kernel_minus, kernel_mixed, kernel_plus, kernel_plus_minus, KernelSample};

pub use num_complex::Complex64;

use negham_core::{
    CoreError, Dispersion, MidpointGrid, OccupationFunction, StateKind, TripartiteGeometry,
    DEFAULT_FILLING_CLIP,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QpError {
    #[error("intervals of unequal length ({l1} != {l2}) are not supported")]
    UnequalIntervals { l1: usize, l2: usize },
    #[error("operation is not defined for {0:?} states")]
    UnsupportedState(StateKind),
    #[error("position {x} lies outside the subsystem")]
    OutsideSubsystem { x: f64 },
    #[error("negative time {0}")]
    NegativeTime(f64),
    #[error("quadrature produced a non-finite value for {quantity} at t={t} on {points} nodes")]
    NonFinite {
        quantity: &'static str,
        t: f64,
        points: usize,
    },
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type Result<T> = std::result::Result<T, QpError>;

/// Everything a quasiparticle prediction depends on besides `t`, `alpha` and `lambda`.
#[derive(Debug, Clone)]
pub struct QpSetup {
    pub dispersion: Dispersion,
    pub occupation: OccupationFunction,
    pub geometry: TripartiteGeometry,
    pub grid: MidpointGrid,
    /// Fillings are clipped into `[clip, 1 - clip]` before taking logarithms.
    pub clip: f64,
}

impl QpSetup {
    /// Hopping dispersion with the default grid and clip; requires equal intervals.
    pub fn new(occupation: OccupationFunction, geometry: TripartiteGeometry) -> Result<Self> {
        if !geometry.is_symmetric() {
            return Err(QpError::UnequalIntervals {
                l1: geometry.l1(),
                l2: geometry.l2(),
            });
        }
        Ok(Self {
            dispersion: Dispersion::hopping(),
            occupation,
            geometry,
            grid: MidpointGrid::default(),
            clip: DEFAULT_FILLING_CLIP,
        })
    }

    pub fn dimer(geometry: TripartiteGeometry) -> Result<Self> {
        Self::new(OccupationFunction::dimer(), geometry)
    }

    pub fn with_grid(mut self, points: usize) -> Self {
        self.grid = MidpointGrid::new(points);
        self
    }

    pub fn with_clip(mut self, clip: f64) -> Self {
        self.clip = clip;
        self
    }

    pub(crate) fn l(&self) -> f64 {
        self.geometry.l1() as f64
    }

    pub(crate) fn d(&self) -> f64 {
        self.geometry.d() as f64
    }

    pub(crate) fn filling(&self, k: f64) -> f64 {
        negham_core::clip_filling(self.occupation.n(k), self.clip)
    }

    pub(crate) fn speed_time(&self, k: f64, t: f64) -> f64 {
        self.dispersion.velocity(k).abs() * t
    }
}

/// Four-point Gauss-Legendre rule on [-1, 1].
const GAUSS4: [(f64, f64); 4] = [
    (-0.861_136_311_594_052_6, 0.347_854_845_137_453_86),
    (-0.339_981_043_584_856_26, 0.652_145_154_862_546_1),
    (0.339_981_043_584_856_26, 0.652_145_154_862_546_1),
    (0.861_136_311_594_052_6, 0.347_854_845_137_453_86),
];

impl QpSetup {
    /// Breakpoints in `|v|t` at which the counting weights change slope.
    fn breakpoints(&self) -> [f64; 4] {
        let (l, d) = (self.l(), self.d());
        [d / 2.0, l / 2.0, (l + d) / 2.0, l + d / 2.0]
    }

    /// Momenta in `(a, b)` where `|v|t` crosses a breakpoint, assuming `|v|`
    /// is monotone on the interval.
    fn kinks_in(&self, a: f64, b: f64, t: f64, out: &mut Vec<f64>) {
        let (fa, fb) = (self.speed_time(a, t), self.speed_time(b, t));
        for c in self.breakpoints() {
            if (fa - c) * (fb - c) >= 0.0 {
                continue;
            }
            let (mut lo, mut hi) = (a, b);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if (self.speed_time(mid, t) - c) * (fa - c) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
    }

    /// `integral dk/2pi f(k)` over one Gauss-Legendre panel per grid cell.
    ///
    /// Cells are split at the momenta where the counting weights have kinks at
    /// time `t`, so every panel sees a smooth integrand. Panel ends never
    /// sample `k = 0, +-pi`, where `eta` diverges.
    pub(crate) fn integrate<T, F>(&self, t: f64, f: F) -> T
    where
        T: Default + std::ops::AddAssign + std::ops::Mul<f64, Output = T>,
        F: Fn(f64) -> T,
    {
        let h = 2.0 * std::f64::consts::PI / self.grid.points() as f64;
        let mut acc = T::default();
        let mut cuts = Vec::with_capacity(8);
        for k in self.grid.nodes() {
            let (a, b) = (k - 0.5 * h, k + 0.5 * h);
            cuts.clear();
            cuts.push(a);
            self.kinks_in(a, k, t, &mut cuts);
            cuts.push(k);
            self.kinks_in(k, b, t, &mut cuts);
            cuts.push(b);
            cuts.sort_by(f64::total_cmp);
            for w in cuts.windows(2) {
                let (mid, half) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
                for (x, wt) in GAUSS4 {
                    acc += f(mid + half * x) * (wt * half);
                }
            }
        }
        acc * (1.0 / (2.0 * std::f64::consts::PI))
    }
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t < 0.0 || t.is_nan() {
        return Err(QpError::NegativeTime(t));
    }
    Ok(())
}

pub(crate) fn finite(value: f64, quantity: &'static str, t: f64, setup: &QpSetup) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(QpError::NonFinite {
            quantity,
            t,
            points: setup.grid.points(),
        })
    }
}
