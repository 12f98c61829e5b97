//! Lowest eigenpair of a real symmetric sparse operator.
//!
//! Small operators are diagonalised densely; larger ones use Lanczos with
//! full reorthogonalisation from a seeded pseudo-random start vector.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::SparseOperator;

/// Operators up to this dimension are solved densely under
/// [`Method::Auto`].
pub const DENSE_LIMIT: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Dense,
    Lanczos,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Bound on the returned residual `‖Hv − Ev‖`.
    pub tol: f64,
    pub max_iterations: usize,
    /// Seed of the Lanczos start vector.
    pub seed: u64,
    pub method: Method,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_iterations: 2000,
            seed: 0x5eed,
            method: Method::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenResult {
    pub energy: f64,
    /// Unit-norm ground-state amplitudes, largest-magnitude component
    /// positive.
    pub vector: Vec<f64>,
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn fix_sign(v: &mut [f64]) {
    let pivot = v
        .iter()
        .copied()
        .fold(0.0f64, |best, x| if x.abs() > best.abs() + 1e-12 { x } else { best });
    if pivot < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn residual(op: &SparseOperator<f64>, energy: f64, v: &[f64]) -> Result<f64> {
    let hv = op.matvec(v)?;
    Ok(hv
        .iter()
        .zip(v)
        .map(|(h, x)| (h - energy * x).powi(2))
        .sum::<f64>()
        .sqrt())
}

fn finish(op: &SparseOperator<f64>, energy: f64, mut vector: Vec<f64>) -> Result<EigenResult> {
    let n = norm(&vector);
    vector.iter_mut().for_each(|x| *x /= n);
    fix_sign(&mut vector);
    let residual = residual(op, energy, &vector)?;
    Ok(EigenResult {
        energy,
        vector,
        residual,
    })
}

fn lowest(eigen: &SymmetricEigen<f64, nalgebra::Dyn>) -> usize {
    eigen
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("non-empty spectrum")
}

pub fn dense_ground_state(op: &SparseOperator<f64>) -> Result<EigenResult> {
    let eigen = SymmetricEigen::new(op.to_dense());
    let i = lowest(&eigen);
    finish(op, eigen.eigenvalues[i], eigen.eigenvectors.column(i).iter().copied().collect())
}

pub fn lanczos_ground_state(op: &SparseOperator<f64>, opts: &SolverOptions) -> Result<EigenResult> {
    let dim = op.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut start: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let n0 = norm(&start);
    start.iter_mut().for_each(|x| *x /= n0);

    let limit = opts.max_iterations.min(dim).max(1);
    let mut basis: Vec<Vec<f64>> = vec![start];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();

    loop {
        let k = basis.len() - 1;
        let mut w = op.matvec(&basis[k])?;
        let alpha = dot(&w, &basis[k]);
        alphas.push(alpha);
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
        }
        let beta = norm(&w);

        let m = alphas.len();
        let mut t = DMatrix::zeros(m, m);
        for i in 0..m {
            t[(i, i)] = alphas[i];
            if i + 1 < m {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        let eigen = SymmetricEigen::new(t);
        let j = lowest(&eigen);
        let estimate = (beta * eigen.eigenvectors[(m - 1, j)]).abs();

        let exhausted = beta <= 1e-14 * alpha.abs().max(1.0) || m >= limit;
        if estimate <= 0.1 * opts.tol || exhausted {
            let mut ritz = vec![0.0; dim];
            for (i, q) in basis.iter().enumerate() {
                let c = eigen.eigenvectors[(i, j)];
                ritz.iter_mut().zip(q).for_each(|(x, y)| *x += c * y);
            }
            let result = finish(op, eigen.eigenvalues[j], ritz)?;
            if result.residual <= opts.tol {
                return Ok(result);
            }
            if exhausted {
                return Err(Error::NonConvergence {
                    iterations: m,
                    residual: result.residual,
                });
            }
        }
        betas.push(beta);
        basis.push(w.into_iter().map(|x| x / beta).collect());
        if basis.len() > limit {
            return Err(Error::NonConvergence {
                iterations: m,
                residual: estimate,
            });
        }
    }
}

/// Lowest eigenpair, dense for `dim ≤ 512` under [`Method::Auto`].
pub fn ground_state(op: &SparseOperator<f64>, opts: &SolverOptions) -> Result<EigenResult> {
    if op.dim() == 0 {
        return Err(Error::Domain("cannot solve a zero-dimensional operator".into()));
    }
    let result = match opts.method {
        Method::Dense => dense_ground_state(op)?,
        Method::Lanczos => return lanczos_ground_state(op, opts),
        Method::Auto if op.dim() <= DENSE_LIMIT => dense_ground_state(op)?,
        Method::Auto => return lanczos_ground_state(op, opts),
    };
    if result.residual > opts.tol {
        return Err(Error::NonConvergence {
            iterations: 0,
            residual: result.residual,
        });
    }
    Ok(result)
}

/// `vᵀ·A·v`.
pub fn expectation(op: &SparseOperator<f64>, state: &[f64]) -> Result<f64> {
    op.quadratic_form(state)
}
