use std::f64::consts::PI;

/// Single-band dispersion: energy and group velocity as functions of momentum.
#[derive(Clone, Copy)]
pub struct Dispersion {
    energy: fn(f64) -> f64,
    velocity: fn(f64) -> f64,
}

impl std::fmt::Debug for Dispersion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dispersion").finish_non_exhaustive()
    }
}

fn hopping_energy(k: f64) -> f64 {
    -k.cos()
}

fn hopping_velocity(k: f64) -> f64 {
    k.sin()
}

impl Dispersion {
    pub fn new(energy: fn(f64) -> f64, velocity: fn(f64) -> f64) -> Self {
        Self { energy, velocity }
    }

    /// Nearest-neighbour hopping chain, `e(k) = -cos k`, `v(k) = sin k`.
    pub fn hopping() -> Self {
        Self {
            energy: hopping_energy,
            velocity: hopping_velocity,
        }
    }

    pub fn energy(&self, k: f64) -> f64 {
        (self.energy)(k)
    }

    pub fn velocity(&self, k: f64) -> f64 {
        (self.velocity)(k)
    }

    /// Largest |v| found on a fine uniform grid.
    pub fn max_speed(&self) -> f64 {
        let m = 1 << 14;
        (0..=m)
            .map(|j| self.velocity(-PI + 2.0 * PI * j as f64 / m as f64).abs())
            .fold(0.0, f64::max)
    }

    /// Largest deviation between the velocity and a central finite difference
    /// of the energy over `points` uniformly spaced momenta.
    pub fn derivative_mismatch(&self, points: usize, step: f64) -> f64 {
        (0..points)
            .map(|j| {
                let k = -PI + 2.0 * PI * (j as f64 + 0.5) / points as f64;
                let fd = (self.energy(k + step) - self.energy(k - step)) / (2.0 * step);
                (fd - self.velocity(k)).abs()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn velocity_is_energy_derivative() {
        let d = Dispersion::hopping();
        assert!(d.derivative_mismatch(1000, 1e-4) < 1e-6);
    }

    #[test]
    fn hopping_max_speed_is_one() {
        assert!((Dispersion::hopping().max_speed() - 1.0).abs() < 1e-12);
    }
}
