use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::scalars::dimer_occupation;
use crate::{CoreError, MidpointGrid, Result};

/// Which family of initial states an occupation describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateKind {
    /// Pairs `(k, -k)` created together; requires `n(-k) = n(k)`.
    Squeezed,
    /// Pairs `(k, k - pi)` sharing one particle; requires `n(k) + n(k - pi) = 1`.
    Symmetric,
}

type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Mode filling `n(k)` on `[-pi, pi]` together with its state family.
#[derive(Clone)]
pub struct OccupationFunction {
    kind: StateKind,
    profile: Profile,
}

impl fmt::Debug for OccupationFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OccupationFunction")
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

const CONSTRAINT_TOL: f64 = 1e-12;
const CHECK_POINTS: usize = 1000;

impl OccupationFunction {
    /// The dimer product state, `n(k) = (1 + cos k) / 2`.
    pub fn dimer() -> Self {
        Self {
            kind: StateKind::Symmetric,
            profile: Arc::new(dimer_occupation),
        }
    }

    /// Wraps an arbitrary profile after checking range and the kind's constraint
    /// on a 1000-point grid.
    pub fn new<F>(kind: StateKind, profile: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let occ = Self {
            kind,
            profile: Arc::new(profile),
        };
        let grid = MidpointGrid::new(CHECK_POINTS);
        for k in grid.nodes() {
            let value = occ.n(k);
            if !(0.0..=1.0).contains(&value) {
                return Err(CoreError::OccupationRange { k, value });
            }
        }
        let violation = occ.constraint_violation(&grid);
        if violation > CONSTRAINT_TOL {
            return Err(CoreError::OccupationConstraint { kind, violation });
        }
        Ok(occ)
    }

    /// Constant filling; valid for squeezed states, and for symmetric ones only at 1/2.
    pub fn constant(kind: StateKind, n: f64) -> Result<Self> {
        Self::new(kind, move |_| n)
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    pub fn n(&self, k: f64) -> f64 {
        (self.profile)(k)
    }

    /// Largest violation of the kind's defining relation over the grid nodes.
    pub fn constraint_violation(&self, grid: &MidpointGrid) -> f64 {
        grid.nodes()
            .map(|k| match self.kind {
                StateKind::Squeezed => (self.n(k) - self.n(-k)).abs(),
                StateKind::Symmetric => {
                    let partner = if k > 0.0 { k - PI } else { k + PI };
                    (self.n(k) + self.n(partner) - 1.0).abs()
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Momentum-dependent phase of the pair coherence. It never enters scalar
/// observables but is carried so that this can be tested.
#[derive(Clone)]
pub struct PhaseFunction(Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl fmt::Debug for PhaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PhaseFunction(..)")
    }
}

impl PhaseFunction {
    pub fn new<F>(phi: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self(Arc::new(phi))
    }

    pub fn constant(phi: f64) -> Self {
        Self::new(move |_| phi)
    }

    pub fn phi(&self, k: f64) -> f64 {
        (self.0)(k)
    }
}

impl Default for PhaseFunction {
    fn default() -> Self {
        Self::constant(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimer_satisfies_symmetric_constraint() {
        let occ = OccupationFunction::dimer();
        assert_eq!(occ.kind(), StateKind::Symmetric);
        assert!(occ.constraint_violation(&MidpointGrid::new(1000)) < 1e-14);
    }

    #[test]
    fn squeezed_requires_even_profile() {
        assert!(OccupationFunction::new(StateKind::Squeezed, |k: f64| 0.5 + 0.3 * k.cos()).is_ok());
        let err = OccupationFunction::new(StateKind::Squeezed, |k: f64| 0.5 + 0.3 * k.sin());
        assert!(matches!(err, Err(CoreError::OccupationConstraint { .. })));
    }

    #[test]
    fn symmetric_constant_only_at_half() {
        assert!(OccupationFunction::constant(StateKind::Symmetric, 0.5).is_ok());
        assert!(OccupationFunction::constant(StateKind::Symmetric, 0.4).is_err());
        assert!(OccupationFunction::constant(StateKind::Squeezed, 0.4).is_ok());
    }

    #[test]
    fn range_is_checked() {
        let err = OccupationFunction::new(StateKind::Squeezed, |_| 1.5);
        assert!(matches!(err, Err(CoreError::OccupationRange { .. })));
    }

    #[test]
    fn phase_constant() {
        assert_eq!(PhaseFunction::constant(0.7).phi(1.0), 0.7);
        assert_eq!(PhaseFunction::default().phi(-2.0), 0.0);
    }
}
