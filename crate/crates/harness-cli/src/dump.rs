use std::io::Write;

use gaussian_engine::{entanglement_hamiltonian, write_matrix, ReducedNegativityHamiltonian};
use negham_core::TripartiteGeometry;

use crate::run::subsystem_correlation;
use crate::Result;

/// Matrices available to `dump-matrix`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Correlation,
    Entanglement,
    Negativity,
}

impl std::str::FromStr for MatrixKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "correlation" | "C" => Ok(Self::Correlation),
            "entanglement" | "K" => Ok(Self::Entanglement),
            "negativity" | "N" => Ok(Self::Negativity),
            other => Err(format!(
                "unknown matrix '{other}' (expected correlation, entanglement or negativity)"
            )),
        }
    }
}

/// Writes one matrix of the dimer quench at time `t` in the plain-text dump format.
pub fn dump_matrix<W: Write>(
    out: &mut W,
    kind: MatrixKind,
    g: &TripartiteGeometry,
    t: f64,
    cutoff: f64,
) -> Result<()> {
    let c = subsystem_correlation(g, t);
    let header = format!(
        "dimer quench t={t} l1={} l2={} d={} cutoff={cutoff:e}",
        g.l1(),
        g.l2(),
        g.d()
    );
    match kind {
        MatrixKind::Correlation => write_matrix(
            out,
            c.entries().as_ref(),
            &[&header, "C[x,y] = <c_x^dagger c_y>", "basis: A1 sites then A2 sites"],
        )?,
        MatrixKind::Entanglement => {
            let k = entanglement_hamiltonian(&c, cutoff)?;
            write_matrix(
                out,
                k.entries.as_ref(),
                &[
                    &header,
                    "K[x,y] multiplies c_x^dagger c_y",
                    "basis: A1 sites then A2 sites",
                ],
            )?
        }
        MatrixKind::Negativity => {
            let n = ReducedNegativityHamiltonian::from_correlation(&c, g.l1(), cutoff)?;
            let bdg = n.to_bdg();
            write_matrix(
                out,
                bdg.entries.as_ref(),
                &[
                    &header,
                    "doubled negativity Hamiltonian, entry [a,b] multiplies Psi_a^dagger Psi_b / 2",
                    "Psi = (c_1, c_1^dagger, c_2, c_2^dagger, ...), A1 sites then A2 sites",
                ],
            )?
        }
    }
    Ok(())
}
