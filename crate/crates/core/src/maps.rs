//! Coordinate transforms between the canonical interval [-1, 1] and the
//! physical domains, with the chain-rule factors needed to transform
//! derivatives.

use crate::error::{Error, Result};

/// The rational map `x = c (1+s) / (1-s)` taking [-1, 1) onto the half line
/// [0, inf). Larger `c` pushes nodes outward; the right choice is
/// problem-dependent and is tuned by sweeping `c` against the eigenvalue
/// drift (see the sweep-c subcommand).
#[derive(Clone, Copy, Debug)]
pub struct AlgebraicMap {
    c: f64,
}

impl AlgebraicMap {
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "scaling factor must be positive, got {c}"
            )));
        }
        Ok(AlgebraicMap { c })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `x = c (1+s) / (1-s)` for `s` in [-1, 1); s = 1 is the point at
    /// infinity.
    pub fn forward(&self, s: f64) -> Result<f64> {
        if !(-1.0..1.0).contains(&s) {
            return Err(Error::DomainError(format!(
                "map argument must lie in [-1, 1), got {s}"
            )));
        }
        Ok(self.c * (1.0 + s) / (1.0 - s))
    }

    /// `s = (x - c) / (x + c)`; round-trips with `forward` to relative 1e-14.
    pub fn inverse(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::DomainError(format!(
                "half-line coordinate must be nonnegative, got {x}"
            )));
        }
        Ok((x - self.c) / (x + self.c))
    }

    /// First and second derivatives of the map, `dx/ds = 2c/(1-s)^2` and
    /// `d2x/ds2 = 4c/(1-s)^3`, at each node. These feed the transformed
    /// derivatives `u'(x) = u'(s) / x_s` and
    /// `u''(x) = u''(s)/x_s^2 - u'(s) x_ss / x_s^3`.
    pub fn chain_factors(&self, s_nodes: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        for (j, &s) in s_nodes.iter().enumerate() {
            if !(s.abs() < 1.0) {
                return Err(Error::DomainError(format!(
                    "chain factors need |s| < 1, node {j} is {s}"
                )));
            }
        }
        let dxds = s_nodes
            .iter()
            .map(|&s| 2.0 * self.c / ((1.0 - s) * (1.0 - s)))
            .collect();
        let d2xds2 = s_nodes
            .iter()
            .map(|&s| 4.0 * self.c / ((1.0 - s) * (1.0 - s) * (1.0 - s)))
            .collect();
        Ok((dxds, d2xds2))
    }
}

/// Linear map from [-1, 1] onto [a, b].
#[derive(Clone, Copy, Debug)]
pub struct AffineMap {
    a: f64,
    b: f64,
}

impl AffineMap {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a < b) {
            return Err(Error::InvalidArgument(format!(
                "interval endpoints must satisfy a < b, got [{a}, {b}]"
            )));
        }
        Ok(AffineMap { a, b })
    }

    /// Written so the endpoints map exactly: forward(-1) = a, forward(1) = b.
    pub fn forward(&self, s: f64) -> f64 {
        self.a * (1.0 - s) / 2.0 + self.b * (1.0 + s) / 2.0
    }

    /// `dx/ds`, constant for a linear map.
    pub fn derivative(&self) -> f64 {
        (self.b - self.a) / 2.0
    }
}
