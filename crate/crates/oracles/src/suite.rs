//! Grid sweeps over the pair identities and batch evaluation of dense cases.

use std::f64::consts::PI;

use faer::{c64, Mat};
use negham_core::StateKind;

use crate::dense::{dense_from_covariance, dense_time_reversal, renyi_negativity_dense};
use crate::mat::max_abs_diff;
use crate::monomial::time_reversal_entrywise;
use crate::pair::{
    ab_split_defect, closed_form_trace, combination_defect, pair_state, pair_traces,
    reversal_closed_form_defect, reversed_spectrum_defect, time_reversal_mode1, transpose_mode1,
    verify_exponential_forms, TraceVariant,
};
use crate::Result;

pub const PAIR_TOL: f64 = 1e-12;
pub const COMBINATION_TOL: f64 = 1e-14;
pub const REMEASURE_TOL: f64 = 1e-10;
const PHASE_SWEEP: usize = 16;
const MAX_ALPHA: u32 = 6;
const LAMBDAS: [f64; 4] = [0.0, 0.3, 1.1, PI / 2.0];

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

#[derive(Default)]
struct Tally(Vec<CheckResult>);

impl Tally {
    fn record(&mut self, name: &str, deviation: f64, tolerance: f64) {
        match self.0.iter_mut().find(|c| c.name == name) {
            Some(c) => c.deviation = c.deviation.max(deviation),
            None => self.0.push(CheckResult {
                name: name.to_string(),
                deviation,
                tolerance,
            }),
        }
    }
}

fn kind_label(kind: StateKind) -> &'static str {
    match kind {
        StateKind::Squeezed => "squeezed",
        StateKind::Symmetric => "symmetric",
    }
}

/// Every pair identity over a `points x points` grid of fillings
/// `(i + 1/2) / points` and phases `2 pi j / points`.
pub fn pair_suite(points: usize) -> Result<Vec<CheckResult>> {
    let mut tally = Tally::default();
    for kind in [StateKind::Squeezed, StateKind::Symmetric] {
        let label = kind_label(kind);
        for i in 0..points {
            let n = (i as f64 + 0.5) / points as f64;
            for j in 0..points {
                let phi = 2.0 * PI * j as f64 / points as f64;
                pair_point(&mut tally, kind, label, n, phi)?;
            }
            phase_sweep(&mut tally, kind, label, n)?;
        }
    }
    Ok(tally.0)
}

fn pair_point(tally: &mut Tally, kind: StateKind, label: &str, n: f64, phi: f64) -> Result<()> {
    let rho = pair_state(kind, n, phi)?;
    for (name, transformed) in [
        ("transpose", transpose_mode1(&rho)),
        ("time reversal", time_reversal_mode1(&rho)),
    ] {
        let r = verify_exponential_forms(&transformed)?;
        tally.record(&format!("{label} {name}: exponential form"), r.reconstruction, PAIR_TOL);
        tally.record(&format!("{label} {name}: product with adjoint"), r.doubled, PAIR_TOL);
        tally.record(&format!("{label} {name}: generator spectrum"), r.spectrum_defect, PAIR_TOL);
        tally.record(
            &format!("{label} {name}: generator polynomial identity"),
            r.polynomial_identity,
            PAIR_TOL,
        );
        tally.record(
            &format!("{label} {name}: generator conserves exponent number"),
            r.number_commutator,
            PAIR_TOL,
        );
        tally.record(
            &format!("{label} {name}: generator Majorana degree"),
            r.degree.abs_diff(r.expected_degree()) as f64,
            0.0,
        );
        tally.record(&format!("{name}: particle-hole replacement"), r.particle_hole, PAIR_TOL);
    }
    tally.record(
        &format!("{label}: time reversal equals A + iB"),
        reversal_closed_form_defect(&rho),
        PAIR_TOL,
    );
    tally.record(
        &format!("{label}: (1 -+ i)/2 combination identity"),
        combination_defect(&rho),
        COMBINATION_TOL,
    );
    tally.record(&format!("{label}: A/B split powers"), ab_split_defect(&rho, MAX_ALPHA), PAIR_TOL);
    tally.record(
        &format!("{label}: time-reversed spectrum"),
        reversed_spectrum_defect(&rho)?,
        PAIR_TOL,
    );
    let entrywise = time_reversal_entrywise(rho.entries(), 2, 1)?;
    tally.record(
        &format!("{label}: entrywise reversal matches monomial rule"),
        max_abs_diff(entrywise.as_ref(), time_reversal_mode1(&rho).entries()),
        PAIR_TOL,
    );
    for alpha in 1..=MAX_ALPHA {
        for lambda in LAMBDAS {
            let want = closed_form_trace(kind, n, alpha, lambda);
            let t = pair_traces(&rho, TraceVariant::Transpose, alpha, Some(lambda))?;
            let r = pair_traces(&rho, TraceVariant::TimeReversal, alpha, Some(lambda))?;
            tally.record(&format!("{label}: charged moments closed form"), (t - want).norm(), PAIR_TOL);
            tally.record(&format!("{label}: standard equals fermionic moments"), (t - r).norm(), PAIR_TOL);
        }
    }
    Ok(())
}

fn moments(kind: StateKind, n: f64, phi: f64) -> Result<Vec<c64>> {
    let rho = pair_state(kind, n, phi)?;
    let mut out = Vec::new();
    for alpha in 1..=MAX_ALPHA {
        for lambda in LAMBDAS {
            out.push(pair_traces(&rho, TraceVariant::Transpose, alpha, Some(lambda))?);
            out.push(pair_traces(&rho, TraceVariant::TimeReversal, alpha, Some(lambda))?);
        }
    }
    let reversed = time_reversal_mode1(&rho);
    out.push(c64::new(crate::dense::log_trace_norm(reversed.entries())?, 0.0));
    Ok(out)
}

fn phase_sweep(tally: &mut Tally, kind: StateKind, label: &str, n: f64) -> Result<()> {
    let base = moments(kind, n, 0.0)?;
    for j in 1..PHASE_SWEEP {
        let phi = 2.0 * PI * j as f64 / PHASE_SWEEP as f64;
        let other = moments(kind, n, phi)?;
        let dev = base
            .iter()
            .zip(&other)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        tally.record(&format!("{label}: scalar traces independent of phase"), dev, PAIR_TOL);
    }
    Ok(())
}

/// A covariance matrix `<c_i^dagger c_j>` whose first `n1` modes form `A1`.
#[derive(Debug, Clone)]
pub struct DenseCase {
    pub label: String,
    pub covariance: Mat<c64>,
    pub n1: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOutcome {
    pub label: String,
    /// `max |<c^dagger c>_dense - C|`.
    pub remeasure: f64,
    /// `E_alpha` for `alpha = 1..=4`, with `E_1 = log Tr|rho^R1|`.
    pub negativities: [f64; 4],
}

pub const DENSE_CLIP: f64 = 1e-13;

/// Rebuilds each case in Fock space, time-reverses it and evaluates `E_1..E_4`.
pub fn dense_suite(cases: &[DenseCase]) -> Result<Vec<DenseOutcome>> {
    cases
        .iter()
        .map(|case| {
            let state = dense_from_covariance(case.covariance.as_ref(), DENSE_CLIP)?;
            let remeasure = max_abs_diff(state.remeasure().as_ref(), case.covariance.as_ref());
            let rho_r = dense_time_reversal(&state, case.n1)?;
            let mut negativities = [0.0; 4];
            for (a, slot) in negativities.iter_mut().enumerate() {
                *slot = renyi_negativity_dense(rho_r.as_ref(), a as u32 + 1)?;
            }
            Ok(DenseOutcome {
                label: case.label.clone(),
                remeasure,
                negativities,
            })
        })
        .collect()
}
