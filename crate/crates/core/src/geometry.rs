use std::ops::Range;

use crate::{CoreError, Result};

/// Two intervals `A1`, `A2` of `l1` and `l2` sites separated by a gap of `d` sites.
///
/// Lattice view: `A1 = 0..l1`, `A2 = l1+d .. l1+d+l2`. Continuum view: the
/// origin sits in the middle of the gap, `A1 = [-d/2 - l1, -d/2]`,
/// `A2 = [d/2, d/2 + l2]`, and lattice sites map to the centres of unit cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TripartiteGeometry {
    l1: usize,
    l2: usize,
    d: usize,
}

impl TripartiteGeometry {
    pub fn new(l1: usize, l2: usize, d: usize) -> Result<Self> {
        if l1 == 0 || l2 == 0 || d == 0 {
            return Err(CoreError::InvalidGeometry { l1, l2, d });
        }
        Ok(Self { l1, l2, d })
    }

    pub fn symmetric(l: usize, d: usize) -> Result<Self> {
        Self::new(l, l, d)
    }

    pub fn l1(&self) -> usize {
        self.l1
    }

    pub fn l2(&self) -> usize {
        self.l2
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_symmetric(&self) -> bool {
        self.l1 == self.l2
    }

    /// Number of sites in `A1 u A2`.
    pub fn n_sites(&self) -> usize {
        self.l1 + self.l2
    }

    /// Length of the chain segment spanned from the first site of `A1` to the last of `A2`.
    pub fn span(&self) -> usize {
        self.l1 + self.d + self.l2
    }

    pub fn a1_sites(&self) -> Range<usize> {
        0..self.l1
    }

    pub fn a2_sites(&self) -> Range<usize> {
        self.l1 + self.d..self.span()
    }

    /// Lattice sites of `A1` followed by those of `A2`.
    pub fn sites(&self) -> Vec<usize> {
        self.a1_sites().chain(self.a2_sites()).collect()
    }

    pub fn site_in_a1(&self, site: i64) -> bool {
        site >= 0 && (site as usize) < self.l1
    }

    pub fn site_in_a2(&self, site: i64) -> bool {
        site >= (self.l1 + self.d) as i64 && site < self.span() as i64
    }

    fn offset(&self) -> f64 {
        self.l1 as f64 + self.d as f64 / 2.0 - 0.5
    }

    pub fn to_continuum(&self, site: i64) -> f64 {
        site as f64 - self.offset()
    }

    pub fn to_lattice(&self, x: f64) -> i64 {
        (x + self.offset()).round() as i64
    }

    pub fn a1_interval(&self) -> (f64, f64) {
        let h = self.d as f64 / 2.0;
        (-h - self.l1 as f64, -h)
    }

    pub fn a2_interval(&self) -> (f64, f64) {
        let h = self.d as f64 / 2.0;
        (h, h + self.l2 as f64)
    }

    /// Half-open membership `[a, b)` in the continuum view.
    pub fn in_a1(&self, x: f64) -> bool {
        let (a, b) = self.a1_interval();
        x >= a && x < b
    }

    pub fn in_a2(&self, x: f64) -> bool {
        let (a, b) = self.a2_interval();
        x >= a && x < b
    }

    pub fn in_a(&self, x: f64) -> bool {
        self.in_a1(x) || self.in_a2(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_empty_sizes() {
        assert!(TripartiteGeometry::new(0, 1, 1).is_err());
        assert!(TripartiteGeometry::new(1, 1, 0).is_err());
    }

    #[test]
    fn lattice_views() {
        let g = TripartiteGeometry::new(2, 3, 1).unwrap();
        assert_eq!(g.sites(), vec![0, 1, 3, 4, 5]);
        assert!(g.site_in_a1(1) && !g.site_in_a1(2));
        assert!(g.site_in_a2(5) && !g.site_in_a2(6) && !g.site_in_a2(2));
    }

    #[test]
    fn sites_are_cell_centres() {
        let g = TripartiteGeometry::symmetric(4, 2).unwrap();
        assert_eq!(g.to_continuum(0), -4.5);
        assert_eq!(g.to_continuum(3), -1.5);
        assert_eq!(g.to_continuum(6), 1.5);
        for s in g.a1_sites() {
            assert!(g.in_a1(g.to_continuum(s as i64)));
        }
        for s in g.a2_sites() {
            assert!(g.in_a2(g.to_continuum(s as i64)));
        }
    }

    proptest! {
        #[test]
        fn round_trip(l1 in 1usize..500, l2 in 1usize..500, d in 1usize..500, s in -1000i64..2000) {
            let g = TripartiteGeometry::new(l1, l2, d).unwrap();
            prop_assert_eq!(g.to_lattice(g.to_continuum(s)), s);
            prop_assert_eq!(g.site_in_a1(s), g.in_a1(g.to_continuum(s)));
            prop_assert_eq!(g.site_in_a2(s), g.in_a2(g.to_continuum(s)));
        }
    }
}
