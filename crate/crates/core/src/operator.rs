//! Assembly of dense collocation approximations to −d²/dx² + q(x).
//!
//! Three assemblers cover the three domain classes: an affinely mapped
//! Chebyshev grid for finite intervals, an algebraically mapped Chebyshev
//! grid for the half-line, and a sinc grid for the whole real line. The
//! Chebyshev assemblies impose homogeneous Dirichlet conditions by deleting
//! the first and last rows and columns of the collocation matrix, which is
//! also what keeps singular endpoint potentials out of reach: q is only ever
//! evaluated at interior nodes.

use std::fmt;
use std::str::FromStr;

use crate::diffmat::{chebyshev_diffmats, sinc_diffmats};
use crate::error::{Error, Result};
use crate::maps::{AffineMap, AlgebraicMap};
use crate::matrix::Mat;
use crate::problems::{DomainClass, PotentialSpec};

/// Collocation discretization family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Chebyshev collocation on a finite interval.
    ChC,
    /// Chebyshev collocation composed with the algebraic half-line map.
    MappedChC,
    /// Sinc (Whittaker cardinal) collocation on the real line.
    SiC,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ChC => "chc",
            Method::MappedChC => "mapped-chc",
            Method::SiC => "sic",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chc" => Ok(Method::ChC),
            "mapped-chc" => Ok(Method::MappedChC),
            "sic" => Ok(Method::SiC),
            other => Err(Error::InvalidArgument(format!(
                "unknown method '{other}' (expected chc, mapped-chc, or sic)"
            ))),
        }
    }
}

/// Provenance of an assembled operator, echoed into output metadata.
#[derive(Debug, Clone)]
pub struct OperatorMeta {
    /// Grid size before boundary deletion.
    pub n: usize,
    /// Half-line map parameter, when one was used.
    pub c: Option<f64>,
    /// Sinc step size, when one was used.
    pub h: Option<f64>,
    pub potential: String,
    pub params: Vec<(String, f64)>,
}

/// Dense m x m approximation of −d²/dx² + q on the interior grid.
#[derive(Debug, Clone)]
pub struct DiscreteOperator {
    pub matrix: Mat,
    /// Physical abscissae matching the matrix rows. m = n − 2 for the
    /// Chebyshev assemblies (boundary rows deleted), m = n for sinc.
    pub interior_nodes: Vec<f64>,
    /// True only when the matrix is exactly symmetric entrywise.
    pub symmetric: bool,
    pub method: Method,
    pub meta: OperatorMeta,
}

impl DiscreteOperator {
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "assembly needs n >= 4 grid points, got {n}"
        )));
    }
    Ok(())
}

fn eval_q(pot: &PotentialSpec, node: usize, x: f64) -> Result<f64> {
    let qx = (pot.q)(x);
    if !qx.is_finite() {
        return Err(Error::AssemblyError {
            potential: pot.name.clone(),
            node,
            x,
        });
    }
    Ok(qx)
}

/// Operator on a finite interval (a, b) with u(a) = u(b) = 0: the Chebyshev
/// second-derivative block scaled by the affine pullback, plus diag(q).
/// The raw Chebyshev matrix is nonsymmetric, so `symmetric` is false even
/// though the spectrum is real.
pub fn assemble_regular_dirichlet(pot: &PotentialSpec, n: usize) -> Result<DiscreteOperator> {
    let (a, b) = match pot.domain_class {
        DomainClass::FiniteInterval(a, b) => (a, b),
        ref other => {
            return Err(Error::InvalidArgument(format!(
                "potential '{}' lives on {other}, but this assembler needs a finite interval",
                pot.name
            )))
        }
    };
    check_n(n)?;
    let affine = AffineMap::new(a, b)?;
    let diff = chebyshev_diffmats(n, 2)?;
    let d2 = diff.matrices[1].interior();
    let m = n - 2;

    // d/dx = (ds/dx) d/ds, so the second derivative picks up the square of
    // the constant Jacobian.
    let scale = 1.0 / (affine.derivative() * affine.derivative());
    let mut matrix = Mat::from_fn(m, m, |i, j| -scale * d2[(i, j)]);
    let mut interior_nodes = Vec::with_capacity(m);
    for (i, &s) in diff.grid.nodes[1..n - 1].iter().enumerate() {
        let x = affine.forward(s);
        matrix[(i, i)] += eval_q(pot, i, x)?;
        interior_nodes.push(x);
    }

    Ok(DiscreteOperator {
        matrix,
        interior_nodes,
        symmetric: false,
        method: Method::ChC,
        meta: OperatorMeta {
            n,
            c: None,
            h: None,
            potential: pot.name.clone(),
            params: pot.params.clone(),
        },
    })
}

/// Operator on the half-line x in (0, inf), pulled back to s in (-1, 1) by
/// the algebraic map. With f1 = x'(s) and f2 = x''(s),
///
///   u_xx = u_ss / f1² − u_s f2 / f1³,
///
/// so A = −diag(1/f1²) D2 + diag(f2/f1³) D1 + diag(q(x(s))) on the interior
/// nodes. Deleting the boundary rows and columns enforces u(0) = 0 and
/// boundedness at infinity, and keeps the singular endpoint x = 0 (and the
/// infinite one) away from q.
pub fn assemble_mapped_halfline(
    pot: &PotentialSpec,
    map: &AlgebraicMap,
    n: usize,
) -> Result<DiscreteOperator> {
    match pot.domain_class {
        DomainClass::HalfLine => {}
        ref other => {
            return Err(Error::InvalidArgument(format!(
                "potential '{}' lives on {other}, but this assembler needs the half-line",
                pot.name
            )))
        }
    }
    check_n(n)?;
    let diff = chebyshev_diffmats(n, 2)?;
    let d1 = diff.matrices[0].interior();
    let d2 = diff.matrices[1].interior();
    let m = n - 2;

    let s_interior = &diff.grid.nodes[1..n - 1];
    let (f1, f2) = map.chain_factors(s_interior)?;

    let mut matrix = Mat::zeros(m, m);
    let mut interior_nodes = Vec::with_capacity(m);
    for i in 0..m {
        let w2 = -1.0 / (f1[i] * f1[i]);
        let w1 = f2[i] / (f1[i] * f1[i] * f1[i]);
        for j in 0..m {
            matrix[(i, j)] = w2 * d2[(i, j)] + w1 * d1[(i, j)];
        }
        let x = map.forward(s_interior[i])?;
        matrix[(i, i)] += eval_q(pot, i, x)?;
        interior_nodes.push(x);
    }

    Ok(DiscreteOperator {
        matrix,
        interior_nodes,
        symmetric: false,
        method: Method::MappedChC,
        meta: OperatorMeta {
            n,
            c: Some(map.c()),
            h: None,
            potential: pot.name.clone(),
            params: pot.params.clone(),
        },
    })
}

/// Operator on the whole real line on the equispaced sinc grid:
/// A = −D2 + diag(q). Decay at infinity is built into the basis, so no rows
/// are deleted, and A inherits the exact entrywise symmetry of D2.
pub fn assemble_sinc_line(pot: &PotentialSpec, n: usize, h: f64) -> Result<DiscreteOperator> {
    match pot.domain_class {
        DomainClass::RealLine => {}
        ref other => {
            return Err(Error::InvalidArgument(format!(
                "potential '{}' lives on {other}, but this assembler needs the real line",
                pot.name
            )))
        }
    }
    check_n(n)?;
    let diff = sinc_diffmats(n, h, 2)?;
    let d2 = &diff.matrices[1];

    let mut matrix = Mat::from_fn(n, n, |i, j| -d2[(i, j)]);
    let mut interior_nodes = Vec::with_capacity(n);
    for (i, &x) in diff.grid.nodes.iter().enumerate() {
        matrix[(i, i)] += eval_q(pot, i, x)?;
        interior_nodes.push(x);
    }

    Ok(DiscreteOperator {
        matrix,
        interior_nodes,
        symmetric: true,
        method: Method::SiC,
        meta: OperatorMeta {
            n,
            c: None,
            h: Some(h),
            potential: pot.name.clone(),
            params: pot.params.clone(),
        },
    })
}
