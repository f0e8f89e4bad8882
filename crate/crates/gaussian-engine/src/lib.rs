//! Exact lattice computation for the dimer quench of the hopping chain: the
//! time-dependent correlation matrix, Peschel-type extraction of entanglement
//! and fermionic negativity Hamiltonians, their decomposition and spectra, and
//! Renyi negativities computed from covariance data.

mod bdg;
mod bessel;
mod composition;
mod correlation;
mod decompose;
mod dump;
pub mod linalg;
mod peschel;
mod profile;
mod spectrum;

pub use bdg::{cross_block_map, fermionic_partial_transpose, imbalance_block, BdgMatrix};
pub use bessel::bessel_j_table;
pub use composition::GaussianComposition;
pub use correlation::{correlation_dimer, restrict, CorrelationMatrix};
pub use decompose::{decompose, embed_particle_operator, Decomposition};
pub use dump::{read_matrix, write_matrix};
pub use peschel::{
    entanglement_hamiltonian, negativity_hamiltonian, OperatorLabel, OperatorMatrix,
    ReducedNegativityHamiltonian, DEFAULT_CUTOFF,
};
pub use profile::{extract_offdiag_profile, nearest_site_profile, ProfileSample};
pub use spectrum::{
    renyi_entropy_exact, renyi_negativity_exact, ModeSpectrum, Reduction,
};

pub use faer::{c64, Mat};

use negham_core::CoreError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("eigendecomposition of the {context} failed to converge")]
    EigenFailed { context: &'static str },
    #[error("eigenpair residual {residual:.3e} exceeds {tolerance:.1e} in the {context}")]
    Residual {
        context: &'static str,
        residual: f64,
        tolerance: f64,
    },
    #[error("eigenvector matrix condition estimate {condition:.3e} exceeds {limit:.1e}")]
    IllConditioned { condition: f64, limit: f64 },
    #[error("expected a {expected} matrix, got {rows}x{cols}")]
    ShapeMismatch {
        expected: String,
        rows: usize,
        cols: usize,
    },
    #[error("site {0} is not covered by the correlation matrix")]
    SiteMissing(i64),
    #[error("input carries pairing correlations of size {0:.3e}; only number-conserving input is supported")]
    PairingPresent(f64),
    #[error("spectrum must be particle-hole reduced before evaluating scalar formulas")]
    NotReduced,
    #[error("imaginary residue {0:.3e} in a quantity that must be real")]
    ImaginaryResidue(f64),
    #[error("malformed matrix dump: {0}")]
    Dump(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type Result<T> = std::result::Result<T, EngineError>;
