//! Collocation grids and dense differentiation matrices for the Chebyshev
//! and sinc bases.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matrix::Mat;

/// Which family of collocation nodes a grid carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridKind {
    ChebyshevGaussLobatto,
    SincEquispaced,
}

/// Ordered collocation nodes.
///
/// Chebyshev-Gauss-Lobatto nodes are strictly decreasing with
/// `nodes[0] = 1` and `nodes[n-1] = -1`; all row and column deletion done
/// downstream assumes this ordering. Sinc nodes are strictly increasing,
/// equispaced with step `h`, and exactly symmetric about 0.
#[derive(Clone, Debug)]
pub struct Grid {
    pub nodes: Vec<f64>,
    pub kind: GridKind,
    /// Node spacing; sinc grids only.
    pub h: Option<f64>,
}

impl Grid {
    pub fn n(&self) -> usize {
        self.nodes.len()
    }
}

/// A grid together with differentiation matrices of orders `1..=max_order`;
/// `matrices[k-1]` approximates the k-th derivative.
#[derive(Clone, Debug)]
pub struct DiffOp {
    pub grid: Grid,
    pub matrices: Vec<Mat>,
    pub max_order: usize,
}

/// Chebyshev-Gauss-Lobatto nodes `cos(j*pi/(n-1))`, descending.
///
/// Computed in the sine form `sin(pi*(n-1-2j)/(2(n-1)))` so the grid is
/// exactly antisymmetric and the midpoint of odd grids is exactly zero.
pub fn chebyshev_grid(n: usize) -> Result<Grid> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "chebyshev grid needs n >= 2, got {n}"
        )));
    }
    let m = (n - 1) as i64;
    let denom = 2.0 * m as f64;
    let nodes = (0..n as i64)
        .map(|j| (PI * (m - 2 * j) as f64 / denom).sin())
        .collect();
    Ok(Grid {
        nodes,
        kind: GridKind::ChebyshevGaussLobatto,
        h: None,
    })
}

/// Dense Chebyshev differentiation matrices of orders `1..=max_order` on the
/// `n`-point Gauss-Lobatto grid.
///
/// Entries follow the trigonometric-difference construction with the
/// flipping trick for the lower half of the node differences, and each
/// diagonal is set to the negated row sum of the off-diagonal entries, which
/// avoids the cancellation the analytic diagonal formulas suffer from.
/// Matrices of successive orders come from the recursion
/// `D_l = l * Z .* (C .* diag(D_{l-1}) - D_{l-1})` over the off-diagonals.
pub fn chebyshev_diffmats(n: usize, max_order: usize) -> Result<DiffOp> {
    let grid = chebyshev_grid(n)?;
    if max_order < 1 || max_order > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "differentiation order must lie in 1..={}, got {max_order}",
            n - 1
        )));
    }
    let m = n - 1;
    let theta: Vec<f64> = (0..n).map(|j| PI * j as f64 / m as f64).collect();

    // dx[(i, j)] = x_i - x_j via 2 sin((t_i+t_j)/2) sin((t_j-t_i)/2); the
    // lower half mirrors the upper half so opposite pairs cancel exactly.
    let mut dx = Mat::zeros(n, n);
    let upper = n.div_ceil(2);
    for i in 0..upper {
        for j in 0..n {
            dx[(i, j)] = 2.0 * ((theta[i] + theta[j]) / 2.0).sin()
                * ((theta[j] - theta[i]) / 2.0).sin();
        }
    }
    for i in upper..n {
        let src = n - 1 - i;
        for j in 0..n {
            dx[(i, j)] = -dx[(src, n - 1 - j)];
        }
    }
    for i in 0..n {
        dx[(i, i)] = 1.0;
    }

    // Endpoint weights: 2 at the two boundary nodes.
    let c = |i: usize| if i == 0 || i == m { 2.0 } else { 1.0 };

    let mut d_prev = Mat::identity(n);
    let mut matrices = Vec::with_capacity(max_order);
    for order in 1..=max_order {
        let mut d = Mat::zeros(n, n);
        for i in 0..n {
            let dii = d_prev[(i, i)];
            let mut row_sum = 0.0;
            for j in 0..n {
                if i == j {
                    continue;
                }
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                let cij = sign * c(i) / c(j);
                let val = order as f64 * (cij * dii - d_prev[(i, j)]) / dx[(i, j)];
                d[(i, j)] = val;
                row_sum += val;
            }
            // Negative sum trick: the exact diagonal makes every row of the
            // k-th derivative annihilate constants' k-th derivative pattern.
            d[(i, i)] = -row_sum;
        }
        matrices.push(d.clone());
        d_prev = d;
    }
    Ok(DiffOp {
        grid,
        matrices,
        max_order,
    })
}

/// Equispaced symmetric grid `node[j] = (j - (n-1)/2) * h`, ascending.
pub fn sinc_grid(n: usize, h: f64) -> Result<Grid> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "sinc grid needs n >= 2, got {n}"
        )));
    }
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "sinc spacing must be positive, got {h}"
        )));
    }
    // 2j - (n-1) is an exact integer, so node[j] + node[n-1-j] == 0 exactly.
    let nodes = (0..n as i64)
        .map(|j| (2 * j - (n as i64 - 1)) as f64 * 0.5 * h)
        .collect();
    Ok(Grid {
        nodes,
        kind: GridKind::SincEquispaced,
        h: Some(h),
    })
}

/// Sinc differentiation matrices from the closed-form derivatives of the
/// cardinal functions at the nodes; orders 1 and 2 only.
///
/// Order 1: zero diagonal, `(-1)^(j-k) / (h (j-k))` off the diagonal.
/// Order 2: constant diagonal `-pi^2 / (3 h^2)`, off-diagonal
/// `-2 (-1)^(j-k) / (h (j-k))^2`. Each entry is written to both mirror
/// positions, so skew-symmetry and symmetry hold exactly, not merely to
/// rounding.
pub fn sinc_diffmats(n: usize, h: f64, max_order: usize) -> Result<DiffOp> {
    let grid = sinc_grid(n, h)?;
    if max_order == 0 {
        return Err(Error::InvalidArgument(
            "differentiation order must be at least 1".into(),
        ));
    }
    if max_order > 2 {
        return Err(Error::Unsupported(format!(
            "sinc differentiation matrices stop at order 2, got {max_order}"
        )));
    }

    let mut d1 = Mat::zeros(n, n);
    for j in 0..n {
        for k in (j + 1)..n {
            let gap = (k - j) as f64;
            let sign = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
            let entry = -sign / (h * gap); // row j, col k has j - k = -(k-j)
            d1[(j, k)] = entry;
            d1[(k, j)] = -entry;
        }
    }

    let mut matrices = vec![d1];
    if max_order == 2 {
        let mut d2 = Mat::zeros(n, n);
        let diag = -PI * PI / (3.0 * h * h);
        for j in 0..n {
            d2[(j, j)] = diag;
        }
        for j in 0..n {
            for k in (j + 1)..n {
                let gap = (k - j) as f64;
                let sign = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
                let entry = -2.0 * sign / (h * h * gap * gap);
                d2[(j, k)] = entry;
                d2[(k, j)] = entry;
            }
        }
        matrices.push(d2);
    }
    Ok(DiffOp {
        grid,
        matrices,
        max_order,
    })
}
