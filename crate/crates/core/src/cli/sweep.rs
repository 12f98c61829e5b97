//! Experiment drivers. Grid points run on a worker pool and are merged in
//! grid order.

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{
    atomic_parameters, classify_minima, drell_e1, optical_potential, potential_period,
    truncation_probability, AtomicParameters, MinimaReport,
};
use crate::error::{Error, Result};
use crate::hamiltonians::{build_effective_step1, build_spin_gauge, build_truncated_ks, EffectiveParams};
use crate::lattice::{
    enumerate_gauge_sector, gauss_generator_in, ConfigBasis, FullBasis, GaussConvention,
};
use crate::solver::{expectation, ground_state, verify_truncation_theorem, SolverOptions, TheoremReport};
use crate::sparse::SparseOperator;
use crate::spinops::SpinRep;

use super::config::SweepConfig;
use super::output::{Cell, SweepResult};

fn in_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(job))
}

fn solver_options(cfg: &SweepConfig) -> SolverOptions {
    SolverOptions {
        tol: cfg.tol,
        seed: cfg.seed,
        ..Default::default()
    }
}

/// Diagonal `L_z` of one link.
pub fn link_lz<B: ConfigBasis>(basis: &B, link: usize) -> SparseOperator<f64> {
    SparseOperator::from_diagonal(
        basis.tag(),
        (0..basis.dim()).map(|i| basis.config(i)[link] as f64).collect(),
    )
}

/// Columns `g, l, e1_spin_gauge, e1_truncated_ks, e1_drell`.
pub fn run_e1_curves(cfg: &SweepConfig) -> Result<SweepResult> {
    let points: Vec<(f64, u32)> = cfg.g.iter().flat_map(|&g| cfg.l.iter().map(move |&l| (g, l))).collect();
    let opts = solver_options(cfg);
    let rows = in_pool(cfg.workers, || {
        points
            .par_iter()
            .map(|&(g, l)| -> Result<Vec<Cell>> {
                let sector = enumerate_gauge_sector(&cfg.lattice, SpinRep::new(l)?, &cfg.charges)?;
                if sector.is_empty() {
                    return Err(Error::Domain(format!(
                        "no gauge-invariant states for charges {} at l={l}",
                        cfg.charges.describe()
                    )));
                }
                let e1 = link_lz(&sector, cfg.e1_link);
                let sg = ground_state(&build_spin_gauge(&sector, g * g)?, &opts)?;
                let ks = ground_state(&build_truncated_ks(&sector, g * g)?, &opts)?;
                Ok(vec![
                    Cell::Real(g),
                    Cell::Int(l as i64),
                    Cell::Real(expectation(&e1, &sg.vector)?),
                    Cell::Real(expectation(&e1, &ks.vector)?),
                    Cell::Real(drell_e1(g)?),
                ])
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let mut out = SweepResult::new(&["g", "l", "e1_spin_gauge", "e1_truncated_ks", "e1_drell"]);
    rows.into_iter().for_each(|r| out.push(r));
    Ok(out)
}

/// Columns `g, l, p_l`.
pub fn run_plg(cfg: &SweepConfig) -> Result<SweepResult> {
    let points: Vec<(f64, u32)> = cfg.g.iter().flat_map(|&g| cfg.l.iter().map(move |&l| (g, l))).collect();
    let rows = in_pool(cfg.workers, || {
        points
            .par_iter()
            .map(|&(g, l)| Ok(vec![Cell::Real(g), Cell::Int(l as i64), Cell::Real(truncation_probability(l, g)?)]))
            .collect::<Result<Vec<_>>>()
    })??;
    let mut out = SweepResult::new(&["g", "l", "p_l"]);
    rows.into_iter().for_each(|r| out.push(r));
    Ok(out)
}

/// Columns `lambda`, `lz_link_<i>` per tracked link, `g_vertex_<n1>_<n2>`
/// per tracked vertex. Uses the first effective Hamiltonian on the full
/// product space with `l = 1`.
pub fn run_emergence(cfg: &SweepConfig) -> Result<SweepResult> {
    let basis = FullBasis::new(&cfg.lattice, SpinRep::new(1)?)?;
    let lz: Vec<_> = cfg.tracked_links.iter().map(|&l| link_lz(&basis, l)).collect();
    let gauss = cfg
        .tracked_vertices
        .iter()
        .map(|&v| gauss_generator_in::<f64, _>(&basis, v, GaussConvention::AllPlus))
        .collect::<Result<Vec<_>>>()?;
    let opts = solver_options(cfg);
    let rows = in_pool(cfg.workers, || {
        cfg.lambda
            .par_iter()
            .map(|&lambda| -> Result<Vec<Cell>> {
                let params = EffectiveParams::new(lambda, cfg.mu, cfg.omega)?;
                let h = build_effective_step1(&basis, &params, &cfg.charges)?;
                let gs = ground_state(&h, &opts)?;
                let mut row = vec![Cell::Real(lambda)];
                for op in lz.iter().chain(&gauss) {
                    row.push(Cell::Real(expectation(op, &gs.vector)?));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let mut columns = vec!["lambda".to_string()];
    columns.extend(cfg.tracked_links.iter().map(|l| format!("lz_link_{l}")));
    columns.extend(cfg.tracked_vertices.iter().map(|v| format!("g_vertex_{}_{}", v.n1, v.n2)));
    let mut out = SweepResult {
        columns,
        rows: Vec::new(),
    };
    rows.into_iter().for_each(|r| out.push(r));
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremSummary {
    pub cases: Vec<TheoremReport>,
    pub all_pass: bool,
}

pub fn run_theorem(cfg: &SweepConfig) -> Result<TheoremSummary> {
    let cases = in_pool(cfg.workers, || {
        cfg.theorem
            .par_iter()
            .map(|case| {
                let proxy = case
                    .l_large_proxy
                    .unwrap_or(case.l_small + case.order as u32 + 2);
                verify_truncation_theorem(
                    &cfg.lattice,
                    &SweepConfig::theorem_charges(case),
                    case.l_small,
                    proxy,
                    case.order,
                )
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let all_pass = cases.iter().all(|c| c.pass);
    Ok(TheoremSummary { cases, all_pass })
}

pub fn run_params(cfg: &SweepConfig) -> Result<AtomicParameters> {
    atomic_parameters(cfg.atomic, &cfg.lattice, &cfg.charges, cfg.hierarchy_threshold)
}

/// Potential over one unit cell (columns `x, y, v`) plus its minima.
pub fn run_potential(cfg: &SweepConfig) -> Result<(SweepResult, MinimaReport)> {
    let p = &cfg.potential;
    let report = classify_minima(p.v0, p.k, p.points_per_period)?;
    let n = p.points_per_period;
    let step = potential_period(p.k) / n as f64;
    let rows = in_pool(cfg.workers, || {
        (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (x, y) = ((idx / n) as f64 * step, (idx % n) as f64 * step);
                vec![Cell::Real(x), Cell::Real(y), Cell::Real(optical_potential(x, y, p.v0, p.k))]
            })
            .collect::<Vec<_>>()
    })?;
    let mut out = SweepResult::new(&["x", "y", "v"]);
    rows.into_iter().for_each(|r| out.push(r));
    Ok((out, report))
}
