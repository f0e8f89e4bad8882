use std::path::Path;

use gaussian_engine::{
    correlation_dimer, decompose, entanglement_hamiltonian, linalg, nearest_site_profile,
    renyi_entropy_exact, CorrelationMatrix, GaussianComposition, ReducedNegativityHamiltonian,
};
use negham_core::{dimer_occupation, OccupationFunction, StateKind, TripartiteGeometry};
use qp_predictor::{
    charged_moment_qp, log_negativity_qp, log_ratio_qp, renyi_entropy_qp, renyi_negativity_qp,
    QpSetup,
};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, StateChoice};
use crate::rows::{sort_rows, Method, ResultRow};
use crate::{HarnessError, Result};

/// `requested`, or the available parallelism when it is zero.
pub fn resolve_workers(requested: usize) -> usize {
    if requested > 0 {
        requested
    } else {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    }
}

fn in_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(resolve_workers(workers))
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    Ok(pool.install(job))
}

fn geometry(cfg: &ExperimentConfig) -> Result<TripartiteGeometry> {
    Ok(TripartiteGeometry::new(cfg.l1, cfg.l2, cfg.d)?)
}

pub fn qp_setup(cfg: &ExperimentConfig) -> Result<QpSetup> {
    let occupation = match cfg.state {
        StateChoice::Dimer => OccupationFunction::dimer(),
        StateChoice::Squeezed => OccupationFunction::new(StateKind::Squeezed, dimer_occupation)?,
    };
    Ok(QpSetup::new(occupation, geometry(cfg)?)?.with_grid(cfg.kgrid))
}

fn predict_at(cfg: &ExperimentConfig, setup: &QpSetup, t: f64) -> Result<Vec<ResultRow>> {
    let meta = |r: ResultRow| r.with_metadata(setup.clip, cfg.kgrid);
    let mut rows = vec![meta(ResultRow::real(
        Method::Qp,
        "log_negativity",
        t,
        1,
        log_negativity_qp(t, setup)?,
    ))];
    for &alpha in &cfg.alphas {
        rows.push(meta(ResultRow::real(
            Method::Qp,
            "renyi_entropy",
            t,
            alpha,
            renyi_entropy_qp(alpha, t, setup)?,
        )));
        rows.push(meta(ResultRow::real(
            Method::Qp,
            "log_ratio",
            t,
            alpha,
            log_ratio_qp(alpha, t, setup)?,
        )));
        rows.push(meta(ResultRow::real(
            Method::Qp,
            "renyi_negativity",
            t,
            alpha,
            renyi_negativity_qp(alpha, t, setup)?,
        )));
        for &lambda in &cfg.lambdas {
            let z = charged_moment_qp(alpha, lambda, t, setup)?;
            let mut row = meta(ResultRow::real(Method::Qp, "log_charged_moment", t, alpha, z.re));
            row.value_im = z.im;
            row.lambda = lambda;
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Quasiparticle rows for every time, sorted.
pub fn predict_rows(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    if cfg.state == StateChoice::Squeezed && !cfg.lambdas.is_empty() {
        return Err(HarnessError::Invalid(
            "charged moments are defined for the dimer (symmetric) state only".into(),
        ));
    }
    let setup = qp_setup(cfg)?;
    let times = cfg.times();
    let chunks = in_pool(cfg.workers, || {
        times
            .par_iter()
            .map(|&t| predict_at(cfg, &setup, t))
            .collect::<Result<Vec<_>>>()
    })??;
    let mut rows: Vec<ResultRow> = chunks.into_iter().flatten().collect();
    sort_rows(&mut rows);
    Ok(rows)
}

/// Correlation matrix of `A1 u A2` at time `t`, `A1` first.
pub fn subsystem_correlation(geometry: &TripartiteGeometry, t: f64) -> CorrelationMatrix {
    let sites: Vec<i64> = geometry.sites().into_iter().map(|s| s as i64).collect();
    correlation_dimer(t, &sites)
}

fn exact_at(cfg: &ExperimentConfig, g: &TripartiteGeometry, t: f64) -> Result<Vec<ResultRow>> {
    let meta = |r: ResultRow| r.with_metadata(cfg.cutoff, 0);
    let c = subsystem_correlation(g, t);
    let nu = c.spectrum()?;
    let mut rows = Vec::new();
    let mut entropies = Vec::with_capacity(cfg.alphas.len());
    for &alpha in &cfg.alphas {
        let s = renyi_entropy_exact(&nu, alpha, cfg.cutoff)?;
        entropies.push(s);
        rows.push(meta(ResultRow::real(Method::Exact, "renyi_entropy", t, alpha, s)));
    }
    let mut push_negativities = |suffix: &str, e: &dyn Fn(u32) -> Result<f64>| -> Result<()> {
        rows.push(meta(ResultRow::real(
            Method::Exact,
            &format!("log_negativity{suffix}"),
            t,
            1,
            e(1)?,
        )));
        for (&alpha, &s) in cfg.alphas.iter().zip(&entropies) {
            let ea = e(alpha)?;
            rows.push(meta(ResultRow::real(
                Method::Exact,
                &format!("renyi_negativity{suffix}"),
                t,
                alpha,
                ea,
            )));
            let log_ratio = ea - (1.0 - alpha as f64) * s;
            rows.push(meta(ResultRow::real(
                Method::Exact,
                &format!("log_ratio{suffix}"),
                t,
                alpha,
                log_ratio,
            )));
        }
        Ok(())
    };
    if cfg.exact_method.spectrum() {
        let n = ReducedNegativityHamiltonian::from_correlation(&c, g.l1(), cfg.cutoff)?;
        push_negativities("", &|a| Ok(n.renyi_negativity(a)?))?;
        if let Some(dir) = &cfg.dump_dir {
            dump_operators(Path::new(dir), g, &c, &n, cfg.cutoff, t)?;
        }
    }
    if cfg.exact_method.composition() {
        let comp = GaussianComposition::new(&c, g.l1())?;
        push_negativities("_composed", &|a| Ok(comp.renyi_negativity(a)?))?;
    }
    Ok(rows)
}

fn dump_operators(
    dir: &Path,
    g: &TripartiteGeometry,
    c: &CorrelationMatrix,
    n: &ReducedNegativityHamiltonian,
    cutoff: f64,
    t: f64,
) -> Result<()> {
    use std::io::Write;
    std::fs::create_dir_all(dir)?;
    let tag = format!("t{t:.6}");
    let k = entanglement_hamiltonian(c, cutoff)?;
    let mut f = std::io::BufWriter::new(std::fs::File::create(dir.join(format!("K_{tag}.txt")))?);
    gaussian_engine::write_matrix(
        &mut f,
        k.entries.as_ref(),
        &[
            "entanglement Hamiltonian K, coefficient of c_x^dagger c_y",
            "basis: A1 sites then A2 sites in lattice order",
        ],
    )?;
    let parts = decompose(&n.to_bdg(), &k)?;
    let mut f = std::io::BufWriter::new(std::fs::File::create(
        dir.join(format!("ndiag_profile_{tag}.csv")),
    )?);
    writeln!(f, "z,x,value_re,value_im")?;
    for z in 0..=2usize {
        for (x, v) in nearest_site_profile(&parts.diag, g, z)? {
            writeln!(f, "{z},{x},{:.16e},{:.16e}", v.re, v.im)?;
        }
    }
    let eigs = linalg::hermitian_eigenvalues(parts.imag.entries.as_ref(), "imaginary part")?;
    let mut f = std::io::BufWriter::new(std::fs::File::create(
        dir.join(format!("nimag_eigenvalues_{tag}.csv")),
    )?);
    writeln!(f, "eigenvalue")?;
    for e in &eigs {
        writeln!(f, "{e:.16e}")?;
    }
    let bins = 64usize;
    let mut counts = vec![0usize; bins];
    let pi = std::f64::consts::PI;
    for e in &eigs {
        let b = (((e + pi) / (2.0 * pi)) * bins as f64).floor().clamp(0.0, (bins - 1) as f64);
        counts[b as usize] += 1;
    }
    let mut f = std::io::BufWriter::new(std::fs::File::create(
        dir.join(format!("nimag_histogram_{tag}.csv")),
    )?);
    writeln!(f, "bin_low,bin_high,count")?;
    for (b, count) in counts.iter().enumerate() {
        let lo = -pi + 2.0 * pi * b as f64 / bins as f64;
        let hi = lo + 2.0 * pi / bins as f64;
        writeln!(f, "{lo:.16e},{hi:.16e},{count}")?;
    }
    let profile = gaussian_engine::extract_offdiag_profile(&parts.offdiag, g)?;
    let mut f = std::io::BufWriter::new(std::fs::File::create(
        dir.join(format!("offdiag_profile_{tag}.csv")),
    )?);
    writeln!(f, "x,y,value_re,value_im,deoscillated_re,deoscillated_im")?;
    for s in profile {
        writeln!(
            f,
            "{},{},{:.16e},{:.16e},{:.16e},{:.16e}",
            s.x, s.y, s.value.re, s.value.im, s.deoscillated.re, s.deoscillated.im
        )?;
    }
    Ok(())
}

/// Checks the doubled-matrix ceiling of the exact engine.
pub fn check_ceiling(cfg: &ExperimentConfig) -> Result<()> {
    let dim = 2 * (cfg.l1 + cfg.l2);
    if dim > cfg.ceiling {
        return Err(HarnessError::Resource {
            dim,
            ceiling: cfg.ceiling,
        });
    }
    Ok(())
}

/// Exact rows for every time, sorted.
pub fn exact_rows(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    if cfg.state != StateChoice::Dimer {
        return Err(HarnessError::Invalid(
            "exact evolution is implemented for the dimer state only".into(),
        ));
    }
    check_ceiling(cfg)?;
    let g = geometry(cfg)?;
    let times = cfg.times();
    let chunks = in_pool(cfg.workers, || {
        times
            .par_iter()
            .map(|&t| exact_at(cfg, &g, t))
            .collect::<Result<Vec<_>>>()
    })??;
    let mut rows: Vec<ResultRow> = chunks.into_iter().flatten().collect();
    sort_rows(&mut rows);
    Ok(rows)
}
