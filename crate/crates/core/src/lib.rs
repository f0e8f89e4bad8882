//! Model-level building blocks shared by the quasiparticle predictor, the
//! Gaussian engine and the oracles: the dispersion of the hopping chain, mode
//! occupations of the two initial-state families, the tripartite geometry and
//! the scalar functions `eta` and `s_tilde`.

mod dispersion;
mod geometry;
mod grid;
mod occupation;
mod scalars;

pub use dispersion::Dispersion;
pub use geometry::TripartiteGeometry;
pub use grid::MidpointGrid;
pub use occupation::{OccupationFunction, PhaseFunction, StateKind};
pub use scalars::{
    binary_entropy, clip_filling, dimer_occupation, eta, eta_clipped, renyi_density, s_tilde,
    DEFAULT_FILLING_CLIP,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("filling {0} is outside the open interval (0, 1)")]
    FillingOutOfDomain(f64),
    #[error("Renyi index must be a positive integer, got {0}")]
    InvalidAlpha(u32),
    #[error("geometry sizes must be positive (l1={l1}, l2={l2}, d={d})")]
    InvalidGeometry { l1: usize, l2: usize, d: usize },
    #[error("occupation violates the {kind:?} constraint by {violation:.3e}")]
    OccupationConstraint { kind: StateKind, violation: f64 },
    #[error("occupation value {value} at k={k} is outside [0, 1]")]
    OccupationRange { k: f64, value: f64 },
}

pub type Result<T> = std::result::Result<T, CoreError>;
