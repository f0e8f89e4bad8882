//! Brute-force reference computations: the two-mode pair algebra behind the
//! quasiparticle construction of transposed density matrices, and dense
//! Fock-space Gaussian states small enough to time-reverse term by term.
//!
//! Fock basis convention: modes are ordered `A1` first, occupation bits are
//! little-endian (bit `j` is mode `j`), and the Jordan-Wigner string of `c_j`
//! runs over the modes below `j`.

mod dense;
mod fock;
mod mat;
mod monomial;
mod pair;
mod suite;

pub use dense::{
    dense_from_covariance, dense_time_reversal, log_trace_norm, renyi_negativity_dense,
    DenseGaussianState, MAX_REVERSAL_MODES, MAX_STATE_MODES,
};
pub use fock::FockSpace;
pub use mat::{expm, max_abs_diff};
pub use monomial::{
    majorana_expansion, max_monomial_degree, time_reversal_entrywise, time_reversal_monomial,
    MAX_MONOMIAL_MODES,
};
pub use pair::{
    ab_split_defect, closed_form_trace, combination_defect, exponent_number, generator,
    pair_state, pair_traces, particle_hole_mode1, reversal_closed_form_defect,
    reversed_spectrum_defect, time_reversal_mode1, transpose_mode1, verify_exponential_forms,
    ExponentialFormReport, PairDensityMatrix, PairTransform, TraceVariant,
};
pub use suite::{
    dense_suite, pair_suite, CheckResult, DenseCase, DenseOutcome, COMBINATION_TOL, DENSE_CLIP,
    PAIR_TOL, REMEASURE_TOL,
};

pub use faer::{c64, Mat};
pub use negham_core::StateKind;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{operation} is limited to {limit} modes, got {modes}")]
    TooManyModes {
        operation: &'static str,
        modes: usize,
        limit: usize,
    },
    #[error("filling {0} lies outside [0, 1]")]
    FillingOutOfRange(f64),
    #[error("Renyi index must be a positive integer")]
    InvalidAlpha,
    #[error("expected a square matrix of dimension {expected}, got {rows}x{cols}")]
    Shape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("covariance matrix is not Hermitian (defect {0:.3e})")]
    NotHermitian(f64),
    #[error("eigendecomposition failed in {0}")]
    EigenFailed(&'static str),
    #[error("trace {0:.6e} cannot be logged")]
    NonPositiveTrace(f64),
    #[error("the exponential form applies to transposed or time-reversed pairs only")]
    Untransformed,
    #[error("A1 mode count {n1} exceeds the total {modes}")]
    Partition { n1: usize, modes: usize },
}

pub type Result<T> = std::result::Result<T, OracleError>;
