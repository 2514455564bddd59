//! Dense eigensolvers and spectrum post-processing.
//!
//! Both entry points return an [`EigenSolution`] in a single normal form so
//! downstream diagnostics never care which algorithm produced it: eigenvalues
//! sorted ascending by real part (imaginary part breaks ties), one unit-norm
//! vector column per eigenvalue, a backward-error residual per column, and a
//! flag marking eigenvalues that are real up to the configured tolerance.

mod general;
mod symmetric;

use crate::error::{Error, Result};
use crate::matrix::{norm2, Mat};
use crate::operator::DiscreteOperator;

/// Knobs for the dense solvers. The defaults suit collocation matrices.
#[derive(Debug, Clone, Copy)]
pub struct EigConfig {
    /// An eigenvalue counts as real when `|im| <= tol_im * ||A||_F`.
    pub tol_im: f64,
    /// Iteration budget per eigenvalue before giving up. The symmetric QL
    /// path charges each eigenvalue individually; the general QR path pools
    /// the budget across the spectrum (the classical 30n accounting),
    /// because its early iterations make global progress that later
    /// deflations inherit.
    pub max_iter_per_eigenvalue: usize,
    /// Apply diagonal balancing in the general solver. Keep this on for
    /// mapped operators; their row norms span many orders of magnitude.
    pub balance: bool,
}

impl Default for EigConfig {
    fn default() -> Self {
        EigConfig {
            tol_im: 1e-8,
            max_iter_per_eigenvalue: 50,
            balance: true,
        }
    }
}

/// Spectrum of a discrete operator in the normal form described at the
/// module level. For a complex conjugate pair both entries carry the same
/// residual and both vector columns store the (unit) real part.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    /// `(re, im)` pairs, sorted ascending by `(re, im)`.
    pub values: Vec<(f64, f64)>,
    /// One column per eigenvalue, each of unit Euclidean norm.
    pub vectors: Mat,
    /// Relative residuals `||A v - lambda v|| / (||v|| ||A||_F)`.
    pub residuals: Vec<f64>,
    /// Whether the eigenvalue is real within `tol_im * ||A||_F`.
    pub real_flags: Vec<bool>,
}

impl EigenSolution {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Real parts of the real-flagged eigenvalues, ascending.
    pub fn real_values(&self) -> Vec<f64> {
        self.values
            .iter()
            .zip(&self.real_flags)
            .filter(|(_, &flag)| flag)
            .map(|(&(re, _), _)| re)
            .collect()
    }

    /// Positions (in the sorted spectrum) of the real-flagged eigenvalues.
    pub fn real_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.real_flags[j]).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Spectrum of a symmetric operator via Householder tridiagonalization and
/// implicit-shift QL. Everything it returns is real, so `real_flags` is all
/// true and the vector columns are mutually orthonormal.
pub fn eig_symmetric(op: &DiscreteOperator, config: &EigConfig) -> Result<EigenSolution> {
    let a = &op.matrix;
    check_finite_square(a)?;
    if !op.symmetric || a.max_asymmetry() != 0.0 {
        return Err(Error::ContractViolation(
            "symmetric eigensolver requires an exactly symmetric operator".into(),
        ));
    }
    let (d, v) = symmetric::solve(a, config.max_iter_per_eigenvalue)?;
    let e = vec![0.0; d.len()];
    Ok(finalize(a, &d, &e, v, config))
}

/// Spectrum of a general operator via balancing, Hessenberg reduction, and
/// double-shift QR with backsubstituted eigenvectors.
pub fn eig_general(op: &DiscreteOperator, config: &EigConfig) -> Result<EigenSolution> {
    let a = &op.matrix;
    check_finite_square(a)?;
    let (d, e, v) = general::solve(a, config.balance, config.max_iter_per_eigenvalue)?;
    Ok(finalize(a, &d, &e, v, config))
}

/// Pick `count` real-flagged eigenpairs: the `count` closest to `near` when
/// given (ties keep the lower index), otherwise the lowest `count`. The
/// result is again sorted ascending.
pub fn select(solution: &EigenSolution, count: usize, near: Option<f64>) -> Result<EigenSolution> {
    let real_idx = solution.real_indices();
    if count > real_idx.len() {
        return Err(Error::InvalidArgument(format!(
            "requested {count} real eigenvalues but only {} are available",
            real_idx.len()
        )));
    }
    let mut chosen: Vec<usize> = match near {
        Some(target) => {
            let mut by_dist = real_idx;
            by_dist.sort_by(|&a, &b| {
                (solution.values[a].0 - target)
                    .abs()
                    .total_cmp(&(solution.values[b].0 - target).abs())
            });
            by_dist.truncate(count);
            by_dist
        }
        None => real_idx[..count].to_vec(),
    };
    chosen.sort_unstable();

    let m = solution.vectors.rows();
    let mut vectors = Mat::zeros(m, chosen.len());
    for (out, &j) in chosen.iter().enumerate() {
        vectors.set_col(out, &solution.vectors.col(j));
    }
    Ok(EigenSolution {
        values: chosen.iter().map(|&j| solution.values[j]).collect(),
        vectors,
        residuals: chosen.iter().map(|&j| solution.residuals[j]).collect(),
        real_flags: vec![true; chosen.len()],
    })
}

fn check_finite_square(a: &Mat) -> Result<()> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::InvalidArgument(format!(
            "eigensolver needs a nonempty square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if let Some(pos) = a.as_slice().iter().position(|x| !x.is_finite()) {
        let (i, j) = (pos / a.cols(), pos % a.cols());
        return Err(Error::InvalidArgument(format!(
            "matrix entry ({i}, {j}) is not finite"
        )));
    }
    Ok(())
}

// Bring the raw solver output into the normal form: residuals from one
// multiplication A*V (computed before any reordering, while complex pairs
// still sit in their native adjacent layout), unit-norm columns with a
// deterministic sign, then a stable ascending sort.
fn finalize(a: &Mat, d: &[f64], e: &[f64], v: Mat, config: &EigConfig) -> EigenSolution {
    let m = d.len();
    let a_fro = a.frobenius_norm();
    let av = a.matmul(&v);

    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut residuals = vec![0.0; m];
    let mut j = 0;
    while j < m {
        if e[j] == 0.0 {
            let col = v.col(j);
            let nv = norm2(&col);
            let mut acc = 0.0;
            for i in 0..m {
                acc += (av[(i, j)] - d[j] * col[i]).powi(2);
            }
            residuals[j] = scaled_residual(acc.sqrt(), nv, a_fro);
            cols.push(unit(col));
            j += 1;
        } else {
            // Complex pair: column j holds the real part, j + 1 the
            // imaginary part; both members share the residual and expose
            // the real part as their stored vector.
            debug_assert!(e[j] > 0.0 && j + 1 < m && e[j + 1] == -e[j]);
            let vr = v.col(j);
            let vi = v.col(j + 1);
            let (p, q) = (d[j], e[j]);
            let nv = (vr.iter().map(|x| x * x).sum::<f64>()
                + vi.iter().map(|x| x * x).sum::<f64>())
            .sqrt();
            let mut acc = 0.0;
            for i in 0..m {
                let rr = av[(i, j)] - (p * vr[i] - q * vi[i]);
                let ri = av[(i, j + 1)] - (p * vi[i] + q * vr[i]);
                acc += rr * rr + ri * ri;
            }
            let res = scaled_residual(acc.sqrt(), nv, a_fro);
            residuals[j] = res;
            residuals[j + 1] = res;
            let stored = if norm2(&vr) > 0.0 { unit(vr) } else { unit(vi) };
            cols.push(stored.clone());
            cols.push(stored);
            j += 2;
        }
    }

    let real_flags: Vec<bool> = e.iter().map(|&im| im.abs() <= config.tol_im * a_fro).collect();

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| {
        d[x].total_cmp(&d[y]).then_with(|| e[x].total_cmp(&e[y]))
    });

    let mut vectors = Mat::zeros(m, m);
    let mut values = Vec::with_capacity(m);
    let mut res_sorted = Vec::with_capacity(m);
    let mut flags_sorted = Vec::with_capacity(m);
    for (out, &src) in order.iter().enumerate() {
        vectors.set_col(out, &cols[src]);
        values.push((d[src], e[src]));
        res_sorted.push(residuals[src]);
        flags_sorted.push(real_flags[src]);
    }

    EigenSolution {
        values,
        vectors,
        residuals: res_sorted,
        real_flags: flags_sorted,
    }
}

fn scaled_residual(num: f64, vec_norm: f64, a_fro: f64) -> f64 {
    if vec_norm == 0.0 {
        return f64::INFINITY;
    }
    if a_fro == 0.0 {
        // Zero matrix: the residual numerator is zero too.
        return 0.0;
    }
    num / vec_norm / a_fro
}

// Unit norm with a deterministic sign: the first component of largest
// magnitude is made positive, so reruns and different solve paths agree.
fn unit(mut col: Vec<f64>) -> Vec<f64> {
    let nv = norm2(&col);
    if nv > 0.0 {
        for x in &mut col {
            *x /= nv;
        }
    }
    let mut lead = 0.0_f64;
    let mut lead_val = 0.0_f64;
    for &x in &col {
        if x.abs() > lead {
            lead = x.abs();
            lead_val = x;
        }
    }
    if lead_val < 0.0 {
        for x in &mut col {
            *x = -*x;
        }
    }
    col
}
