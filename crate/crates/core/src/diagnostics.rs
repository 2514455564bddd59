//! Accuracy machinery: eigenvalue drift between discretization parameters,
//! drift against closed-form spectra, basis-coefficient spectra with a
//! rounding-plateau estimate, and eigenvector orthogonality deficiency.
//!
//! None of these certify an eigenvalue on their own. Drift flags eigenvalues
//! that move when the discretization is shaken; a coefficient plateau bounds
//! the attainable expansion accuracy; deficiency measures departure from the
//! orthogonality a self-adjoint problem owes its eigenvectors.

use crate::error::{Error, Result};
use crate::matrix::{dot, norm2, Mat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DriftKind {
    Absolute,
    Relative,
}

/// Per-index movement of a sorted eigenvalue list between two settings of a
/// discretization parameter.
#[derive(Debug, Clone)]
pub struct DriftReport {
    /// Which knob moved, e.g. "n" or "c".
    pub parameter_name: String,
    pub alpha1: f64,
    pub alpha2: f64,
    /// `(index, delta)` pairs, delta >= 0.
    pub drift: Vec<(usize, f64)>,
    pub kind: DriftKind,
}

impl DriftReport {
    /// Label the report with the parameter pair it compares.
    pub fn with_parameter(mut self, name: &str, alpha1: f64, alpha2: f64) -> Self {
        self.parameter_name = name.to_string();
        self.alpha1 = alpha1;
        self.alpha2 = alpha2;
        self
    }

    pub fn max_delta(&self) -> f64 {
        self.drift.iter().map(|&(_, d)| d).fold(0.0, f64::max)
    }
}

/// Expansion coefficients of an eigenvector in its collocation basis.
#[derive(Debug, Clone)]
pub struct CoeffSpectrum {
    pub coefficients: Vec<f64>,
    pub basis: Basis,
    /// Estimated rounding floor (0 when too short to estimate).
    pub plateau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Chebyshev,
    Sinc,
}

fn check_sorted(name: &str, lam: &[f64]) -> Result<()> {
    if lam.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::ContractViolation(format!(
            "{name} must be sorted ascending"
        )));
    }
    Ok(())
}

fn check_ne(ne: usize, len1: usize, len2: usize) -> Result<()> {
    let avail = len1.min(len2);
    if ne > avail {
        return Err(Error::InvalidArgument(format!(
            "drift over {ne} eigenvalues requested but only {avail} are available"
        )));
    }
    Ok(())
}

/// delta_j = |lam1[j] - lam2[j]| for the first `ne` indices.
pub fn absolute_drift(lam1: &[f64], lam2: &[f64], ne: usize) -> Result<DriftReport> {
    check_sorted("lam1", lam1)?;
    check_sorted("lam2", lam2)?;
    check_ne(ne, lam1.len(), lam2.len())?;
    let drift = (0..ne).map(|j| (j, (lam1[j] - lam2[j]).abs())).collect();
    Ok(DriftReport {
        parameter_name: "n".into(),
        alpha1: 0.0,
        alpha2: 0.0,
        drift,
        kind: DriftKind::Absolute,
    })
}

/// delta_j = |lam1[j] - lam2[j]| / |lam1[j]|. The first list is the
/// reference; a zero reference eigenvalue is refused rather than divided.
pub fn relative_drift(lam1: &[f64], lam2: &[f64], ne: usize) -> Result<DriftReport> {
    check_sorted("lam1", lam1)?;
    check_sorted("lam2", lam2)?;
    check_ne(ne, lam1.len(), lam2.len())?;
    let mut drift = Vec::with_capacity(ne);
    for j in 0..ne {
        if lam1[j] == 0.0 {
            return Err(Error::DivisionGuard { index: j });
        }
        drift.push((j, (lam1[j] - lam2[j]).abs() / lam1[j].abs()));
    }
    Ok(DriftReport {
        parameter_name: "n".into(),
        alpha1: 0.0,
        alpha2: 0.0,
        drift,
        kind: DriftKind::Relative,
    })
}

/// delta_j = |lam[j] - exact(j)| against a closed-form spectrum.
pub fn drift_vs_exact(
    lam: &[f64],
    exact: &dyn Fn(usize) -> f64,
    ne: usize,
) -> Result<DriftReport> {
    check_sorted("lam", lam)?;
    check_ne(ne, lam.len(), lam.len())?;
    let drift = (0..ne).map(|j| (j, (lam[j] - exact(j)).abs())).collect();
    Ok(DriftReport {
        parameter_name: "exact".into(),
        alpha1: 0.0,
        alpha2: 0.0,
        drift,
        kind: DriftKind::Absolute,
    })
}

/// Chebyshev coefficients a_k of the interpolant through samples on the
/// Gauss-Lobatto grid (descending node ordering), so that
/// sum_k a_k T_k(s_j) reproduces the samples.
///
/// Implemented as the direct cosine-matrix product: with m = len - 1,
///
///   a_k = (2 / (m c_k)) * sum''_j v_j cos(pi j k / m),
///
/// where the double prime halves the j = 0 and j = m terms and c_k = 2 at
/// the two ends, 1 otherwise. The cosine argument is reduced with exact
/// integer arithmetic (j k mod 2m) so large grids lose no accuracy to
/// argument growth. O(n^2) but bit-deterministic, which matters more here
/// than speed at desk scale.
pub fn cheb_coeffs(values: &[f64]) -> Result<CoeffSpectrum> {
    let n = values.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "Chebyshev transform needs at least 2 samples, got {n}"
        )));
    }
    let m = n - 1;
    let mut coefficients = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = 0.0;
        for (j, &v) in values.iter().enumerate() {
            let t = (j * k) % (2 * m);
            let t = t.min(2 * m - t);
            let w = if j == 0 || j == m { 0.5 } else { 1.0 };
            acc += w * v * (std::f64::consts::PI * t as f64 / m as f64).cos();
        }
        let ck = if k == 0 || k == m { 2.0 } else { 1.0 };
        coefficients.push(2.0 * acc / (m as f64 * ck));
    }
    let plateau = plateau_or_zero(&coefficients);
    Ok(CoeffSpectrum {
        coefficients,
        basis: Basis::Chebyshev,
        plateau,
    })
}

/// Evaluate sum_k coeffs[k] T_k(s) by the Clenshaw recurrence.
pub fn cheb_eval(coeffs: &[f64], s: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &c in coeffs.iter().rev() {
        let b0 = 2.0 * s * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    // b1 currently holds c0 + 2s*b1' - b2'; undo the doubled T0 weight.
    b1 - s * b2
}

/// Sinc expansions are cardinal: the coefficients ARE the nodal values.
pub fn sinc_coeffs(values: &[f64]) -> CoeffSpectrum {
    CoeffSpectrum {
        coefficients: values.to_vec(),
        basis: Basis::Sinc,
        plateau: plateau_or_zero(values),
    }
}

/// Median absolute value of the trailing tenth of the coefficients: where a
/// spectrally convergent expansion has flattened onto its rounding floor.
pub fn plateau_estimate(spec: &CoeffSpectrum) -> Result<f64> {
    if spec.coefficients.len() < 16 {
        return Err(Error::InvalidArgument(format!(
            "plateau estimate needs at least 16 coefficients, got {}",
            spec.coefficients.len()
        )));
    }
    Ok(plateau_or_zero(&spec.coefficients))
}

fn plateau_or_zero(coefficients: &[f64]) -> f64 {
    let n = coefficients.len();
    if n < 16 {
        return 0.0;
    }
    let tail = (n / 10).max(1);
    let mut mags: Vec<f64> = coefficients[n - tail..].iter().map(|c| c.abs()).collect();
    mags.sort_by(f64::total_cmp);
    let mid = mags.len() / 2;
    if mags.len() % 2 == 1 {
        mags[mid]
    } else {
        0.5 * (mags[mid - 1] + mags[mid])
    }
}

/// |<v_i, v_j>| for every column j != i, ascending in j. A self-adjoint
/// problem owes orthogonality; the deficiency measures what the solver and
/// discretization actually delivered. Columns must arrive unit-normalized
/// (within 1e-8) so the inner products are comparable across j.
pub fn orthogonality_deficiency(vectors: &Mat, i: usize) -> Result<Vec<f64>> {
    let k = vectors.cols();
    if i >= k {
        return Err(Error::InvalidArgument(format!(
            "reference column {i} out of range for {k} vectors"
        )));
    }
    for j in 0..k {
        let nj = norm2(&vectors.col(j));
        if (nj - 1.0).abs() > 1e-8 {
            return Err(Error::ContractViolation(format!(
                "column {j} has norm {nj:.3e}, expected unit vectors"
            )));
        }
    }
    let vi = vectors.col(i);
    Ok((0..k)
        .filter(|&j| j != i)
        .map(|j| dot(&vi, &vectors.col(j)).abs())
        .collect())
}
