use std::f64::consts::PI;

/// Midpoint rule on `[-pi, pi)`; `integrate` returns `(1 / 2pi) * integral`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MidpointGrid {
    points: usize,
}

impl MidpointGrid {
    pub const DEFAULT_POINTS: usize = 4096;

    pub fn new(points: usize) -> Self {
        assert!(points > 0, "grid needs at least one point");
        Self { points }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn node(&self, j: usize) -> f64 {
        -PI + 2.0 * PI * (j as f64 + 0.5) / self.points as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |j| self.node(j))
    }

    /// Weight of a single node in `integral dk / 2pi`.
    pub fn weight(&self) -> f64 {
        1.0 / self.points as f64
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes().map(&mut f).sum::<f64>() * self.weight()
    }
}

impl Default for MidpointGrid {
    fn default() -> Self {
        Self::new(Self::DEFAULT_POINTS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_trig_polynomials_exactly() {
        let g = MidpointGrid::new(64);
        assert!((g.integrate(|_| 1.0) - 1.0).abs() < 1e-14);
        assert!(g.integrate(f64::cos).abs() < 1e-14);
        assert!((g.integrate(|k| k.cos().powi(2)) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn nodes_are_symmetric() {
        let g = MidpointGrid::new(10);
        for j in 0..10 {
            assert!((g.node(j) + g.node(9 - j)).abs() < 1e-14);
        }
    }
}
