use faer::{c64, Mat};

/// Fock space of `modes` fermionic modes with little-endian occupation bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    modes: usize,
}

impl FockSpace {
    pub fn new(modes: usize) -> Self {
        assert!(modes < usize::BITS as usize, "too many modes");
        Self { modes }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim(&self) -> usize {
        1 << self.modes
    }

    /// Jordan-Wigner sign picked up by `c_j` or `c_j^dagger` acting on `state`.
    fn string_sign(state: usize, j: usize) -> f64 {
        if (state & ((1 << j) - 1)).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `c_j |state>` as `(new_state, sign)`, or `None` if the mode is empty.
    pub fn annihilate(&self, j: usize, state: usize) -> Option<(usize, f64)> {
        debug_assert!(j < self.modes);
        (state >> j & 1 == 1).then(|| (state ^ (1 << j), Self::string_sign(state, j)))
    }

    /// `c_j^dagger |state>` as `(new_state, sign)`, or `None` if the mode is full.
    pub fn create(&self, j: usize, state: usize) -> Option<(usize, f64)> {
        debug_assert!(j < self.modes);
        (state >> j & 1 == 0).then(|| (state ^ (1 << j), Self::string_sign(state, j)))
    }

    /// `c_i^dagger c_j |state>`.
    pub fn hop(&self, i: usize, j: usize, state: usize) -> Option<(usize, f64)> {
        let (mid, s1) = self.annihilate(j, state)?;
        let (out, s2) = self.create(i, mid)?;
        Some((out, s1 * s2))
    }

    pub fn annihilation(&self, j: usize) -> Mat<c64> {
        let mut m = Mat::from_fn(self.dim(), self.dim(), |_, _| c64::new(0.0, 0.0));
        for s in 0..self.dim() {
            if let Some((r, sign)) = self.annihilate(j, s) {
                m[(r, s)] = c64::new(sign, 0.0);
            }
        }
        m
    }

    pub fn creation(&self, j: usize) -> Mat<c64> {
        let mut m = Mat::from_fn(self.dim(), self.dim(), |_, _| c64::new(0.0, 0.0));
        for s in 0..self.dim() {
            if let Some((r, sign)) = self.create(j, s) {
                m[(r, s)] = c64::new(sign, 0.0);
            }
        }
        m
    }

    pub fn number(&self, j: usize) -> Mat<c64> {
        Mat::from_fn(self.dim(), self.dim(), |r, s| {
            c64::new(if r == s && s >> j & 1 == 1 { 1.0 } else { 0.0 }, 0.0)
        })
    }

    /// Majorana operator `gamma_a`: `c_j + c_j^dagger` for `a = 2j` and
    /// `i (c_j^dagger - c_j)` for `a = 2j + 1`.
    pub fn majorana(&self, a: usize) -> Mat<c64> {
        let j = a / 2;
        let mut m = Mat::from_fn(self.dim(), self.dim(), |_, _| c64::new(0.0, 0.0));
        for s in 0..self.dim() {
            let sign = Self::string_sign(s, j);
            let r = s ^ (1 << j);
            m[(r, s)] = if a % 2 == 0 {
                c64::new(sign, 0.0)
            } else if s >> j & 1 == 0 {
                c64::new(0.0, sign)
            } else {
                c64::new(0.0, -sign)
            };
        }
        m
    }

    /// The even Majorana `gamma_{2j}` as a signed permutation: `state -> (image, sign)`.
    pub(crate) fn even_majorana_action(&self, j: usize, state: usize) -> (usize, f64) {
        (state ^ (1 << j), Self::string_sign(state, j))
    }
}
