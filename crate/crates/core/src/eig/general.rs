//! Nonsymmetric dense eigensolver: diagonal balancing, Householder reduction
//! to Hessenberg form, and the Francis double-shift QR iteration with
//! eigenvectors recovered by backsubstitution of the quasi-triangular form.
//!
//! The mapped half-line operators this crate assembles mix second- and
//! first-derivative blocks whose magnitudes differ by many orders, so the
//! balancing pass is not optional polish: without it the low-lying
//! eigenvalues drown in roundoff proportional to the matrix norm.

use crate::error::{Error, Result};
use crate::matrix::Mat;

/// Full spectrum of a general real matrix.
///
/// Returns `(re, im, v)` where complex conjugate pairs occupy adjacent
/// slots (positive imaginary part first) and `v` stores, for a real
/// eigenvalue, the eigenvector column, and for a complex pair at columns
/// `j`, `j + 1`, the real and imaginary parts of the eigenvector.
pub(super) fn solve(a: &Mat, balance: bool, max_iter: usize) -> Result<(Vec<f64>, Vec<f64>, Mat)> {
    let n = a.rows();
    let mut h = a.clone();
    let scale = if balance {
        balance_in_place(&mut h)
    } else {
        vec![1.0; n]
    };
    let mut v = Mat::zeros(n, n);
    let mut ort = vec![0.0; n];
    orthes(n, &mut h, &mut v, &mut ort);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    hqr2(n, &mut h, &mut v, &mut d, &mut e, max_iter)?;
    if balance {
        // Undo the similarity scaling row by row (the eigenvalues are
        // untouched, only the vectors stretch back).
        for i in 0..n {
            let s = scale[i];
            if s != 1.0 {
                for j in 0..n {
                    v[(i, j)] *= s;
                }
            }
        }
    }
    Ok((d, e, v))
}

// Iterative diagonal scaling making row and column norms comparable,
// following the EISPACK balanc strategy restricted to powers of the radix
// so no rounding error is introduced. Permutations are skipped: collocation
// matrices are dense with no isolable rows. Returns the accumulated scale
// factors; the similarity is A <- D^-1 A D with D = diag(scale).
fn balance_in_place(a: &mut Mat) -> Vec<f64> {
    let n = a.rows();
    let mut scale = vec![1.0_f64; n];
    let radix = 2.0_f64;
    let sqrdx = radix * radix;
    // The sweep count is bounded in theory; the cap is defensive only.
    for _ in 0..100 {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / radix;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= radix;
                    c *= sqrdx;
                }
                g = r * radix;
                while c > g {
                    f /= radix;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    scale[i] *= f;
                    for j in 0..n {
                        a[(i, j)] *= g;
                    }
                    for j in 0..n {
                        a[(j, i)] *= f;
                    }
                }
            }
        }
        if done {
            break;
        }
    }
    scale
}

// Householder reduction to upper Hessenberg form with the orthogonal
// transform accumulated into `v`. This is derived from the Algol procedures
// orthes and ortran by Martin and Wilkinson, Handbook for Auto. Comp.,
// Vol. II - Linear Algebra, and the corresponding EISPACK routines.
fn orthes(n: usize, h: &mut Mat, v: &mut Mat, ort: &mut [f64]) {
    if n == 0 {
        return;
    }
    let low = 0usize;
    let high = n - 1;

    let mut m = low + 1;
    while m < high {
        // Scale column to avoid under/overflow.
        let mut scale = 0.0;
        for i in m..=high {
            scale += h[(i, m - 1)].abs();
        }
        if scale != 0.0 {
            // Compute Householder transformation.
            let mut hsum = 0.0;
            for i in (m..=high).rev() {
                ort[i] = h[(i, m - 1)] / scale;
                hsum += ort[i] * ort[i];
            }
            let mut g = hsum.sqrt();
            if ort[m] > 0.0 {
                g = -g;
            }
            hsum -= ort[m] * g;
            ort[m] -= g;

            // Apply Householder similarity transformation
            // H = (I - u*u'/h) * H * (I - u*u'/h).
            for j in m..n {
                let mut f = 0.0;
                for i in (m..=high).rev() {
                    f += ort[i] * h[(i, j)];
                }
                f /= hsum;
                for i in m..=high {
                    h[(i, j)] -= f * ort[i];
                }
            }
            for i in 0..=high {
                let mut f = 0.0;
                for j in (m..=high).rev() {
                    f += ort[j] * h[(i, j)];
                }
                f /= hsum;
                for j in m..=high {
                    h[(i, j)] -= f * ort[j];
                }
            }
            ort[m] *= scale;
            h[(m, m - 1)] = scale * g;
        }
        m += 1;
    }

    // Accumulate transformations (Algol's ortran).
    for i in 0..n {
        for j in 0..n {
            v[(i, j)] = if i == j { 1.0 } else { 0.0 };
        }
    }
    let mut m = high.saturating_sub(1);
    while m > low {
        if h[(m, m - 1)] != 0.0 {
            for i in (m + 1)..=high {
                ort[i] = h[(i, m - 1)];
            }
            for j in m..=high {
                let mut g = 0.0;
                for i in m..=high {
                    g += ort[i] * v[(i, j)];
                }
                // Double division avoids possible underflow.
                g = (g / ort[m]) / h[(m, m - 1)];
                for i in m..=high {
                    v[(i, j)] += g * ort[i];
                }
            }
        }
        m -= 1;
    }
}

// Complex scalar division, Smith's algorithm.
fn cdiv(xr: f64, xi: f64, yr: f64, yi: f64) -> (f64, f64) {
    if yr.abs() > yi.abs() {
        let r = yi / yr;
        let d = yr + r * yi;
        ((xr + r * xi) / d, (xi - r * xr) / d)
    } else {
        let r = yr / yi;
        let d = yi + r * yr;
        ((r * xr + xi) / d, (r * xi - xr) / d)
    }
}

// Francis double-shift QR iteration on a Hessenberg matrix, with
// backsubstitution of the resulting quasi-triangular form to recover
// eigenvectors. This is derived from the Algol procedure hqr2 by Martin and
// Wilkinson, Handbook for Auto. Comp., Vol. II - Linear Algebra, and the
// corresponding EISPACK routine, with two changes: the iteration budget of
// `max_iter` steps per eigenvalue (pooled across the spectrum, the classical
// 30n accounting) is enforced as an error instead of being a comment, and
// the deflation rotation for a converged real 2 x 2 block is skipped when
// the block is already triangular (the rotation would divide zero by zero).
// The budget is pooled because early steps make global progress: on stiff
// collocation matrices the first deflation routinely consumes a multiple of
// the per-eigenvalue average before the rest deflate almost for free.
//
// Real eigenvalues land in `d` with `e` zero; complex pairs occupy adjacent
// slots with `d` the real part and `e` the imaginary part, positive first.
#[allow(clippy::too_many_lines)]
fn hqr2(
    nn: usize,
    h: &mut Mat,
    v: &mut Mat,
    d: &mut [f64],
    e: &mut [f64],
    max_iter: usize,
) -> Result<()> {
    if nn == 0 {
        return Ok(());
    }
    let low = 0usize;
    let high = nn - 1;
    let eps = f64::EPSILON;
    let mut exshift = 0.0_f64;
    let (mut r, mut s, mut z) = (0.0_f64, 0.0_f64, 0.0_f64);
    let mut p;
    let mut q;
    let mut t;
    let mut w;
    let mut x;
    let mut y;

    // One-norm of the Hessenberg part.
    let mut norm = 0.0_f64;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[(i, j)].abs();
        }
    }
    if norm == 0.0 {
        // The matrix is identically zero: the spectrum is zero and the
        // accumulated basis is already orthonormal. The iteration below
        // would divide by the vanishing norm.
        d.fill(0.0);
        e.fill(0.0);
        return Ok(());
    }

    // Outer loop: `na` is one past the last index of the active block.
    let mut na = nn;
    // Steps since the last deflation drive the exceptional shifts; the
    // pooled budget decides when to give up.
    let mut iter = 0usize;
    let mut budget = max_iter.saturating_mul(nn);
    while na > 0 {
        let nl = na - 1;

        // Look for a single small subdiagonal element.
        let mut l = nl;
        while l > low {
            s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
            if s == 0.0 {
                s = norm;
            }
            if h[(l, l - 1)].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == nl {
            // One root found.
            h[(nl, nl)] += exshift;
            d[nl] = h[(nl, nl)];
            e[nl] = 0.0;
            na -= 1;
            iter = 0;
        } else if l + 1 == nl {
            // Two roots found.
            w = h[(nl, nl - 1)] * h[(nl - 1, nl)];
            p = (h[(nl - 1, nl - 1)] - h[(nl, nl)]) / 2.0;
            q = p * p + w;
            z = q.abs().sqrt();
            h[(nl, nl)] += exshift;
            h[(nl - 1, nl - 1)] += exshift;
            x = h[(nl, nl)];

            if q >= 0.0 {
                // Real pair.
                z = if p >= 0.0 { p + z } else { p - z };
                d[nl - 1] = x + z;
                d[nl] = d[nl - 1];
                if z != 0.0 {
                    d[nl] = x - w / z;
                }
                e[nl - 1] = 0.0;
                e[nl] = 0.0;
                x = h[(nl, nl - 1)];
                s = x.abs() + z.abs();
                if s != 0.0 {
                    p = x / s;
                    q = z / s;
                    r = (p * p + q * q).sqrt();
                    p /= r;
                    q /= r;

                    // Row modification.
                    for j in (nl - 1)..nn {
                        z = h[(nl - 1, j)];
                        h[(nl - 1, j)] = q * z + p * h[(nl, j)];
                        h[(nl, j)] = q * h[(nl, j)] - p * z;
                    }
                    // Column modification.
                    for i in 0..=nl {
                        z = h[(i, nl - 1)];
                        h[(i, nl - 1)] = q * z + p * h[(i, nl)];
                        h[(i, nl)] = q * h[(i, nl)] - p * z;
                    }
                    // Accumulate transformations.
                    for i in low..=high {
                        z = v[(i, nl - 1)];
                        v[(i, nl - 1)] = q * z + p * v[(i, nl)];
                        v[(i, nl)] = q * v[(i, nl)] - p * z;
                    }
                }
            } else {
                // Complex pair.
                d[nl - 1] = x + p;
                d[nl] = x + p;
                e[nl - 1] = z;
                e[nl] = -z;
            }
            na -= 2;
            iter = 0;
        } else {
            // No convergence yet.

            // Form shift.
            x = h[(nl, nl)];
            y = 0.0;
            w = 0.0;
            if l < nl {
                y = h[(nl - 1, nl - 1)];
                w = h[(nl, nl - 1)] * h[(nl - 1, nl)];
            }

            // Wilkinson's original ad hoc shift.
            if iter == 10 {
                exshift += x;
                for i in low..=nl {
                    h[(i, i)] -= x;
                }
                s = h[(nl, nl - 1)].abs() + h[(nl - 1, nl - 2)].abs();
                y = 0.75 * s;
                x = y;
                w = -0.4375 * s * s;
            }

            // MATLAB's new ad hoc shift.
            if iter == 30 {
                s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in low..=nl {
                        h[(i, i)] -= s;
                    }
                    exshift += s;
                    w = 0.964;
                    y = w;
                    x = y;
                }
            }

            iter += 1;
            if budget == 0 {
                return Err(Error::ConvergenceError {
                    index: nl,
                    iterations: iter - 1,
                });
            }
            budget -= 1;

            // Look for two consecutive small subdiagonal elements.
            let mut m = nl - 2;
            loop {
                z = h[(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[(m + 1, m)] + h[(m, m + 1)];
                q = h[(m + 1, m + 1)] - z - r - s;
                r = h[(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if h[(m, m - 1)].abs() * (q.abs() + r.abs())
                    < eps
                        * (p.abs()
                            * (h[(m - 1, m - 1)].abs() + z.abs() + h[(m + 1, m + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }

            for i in (m + 2)..=nl {
                h[(i, i - 2)] = 0.0;
                if i > m + 2 {
                    h[(i, i - 3)] = 0.0;
                }
            }

            // Double QR step involving rows l..=nl and columns m..=nl.
            for k in m..nl {
                let notlast = k != nl - 1;
                if k != m {
                    p = h[(k, k - 1)];
                    q = h[(k + 1, k - 1)];
                    r = if notlast { h[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }

                s = (p * p + q * q + r * r).sqrt();
                if p < 0.0 {
                    s = -s;
                }
                if s != 0.0 {
                    if k != m {
                        h[(k, k - 1)] = -s * x;
                    } else if l != m {
                        h[(k, k - 1)] = -h[(k, k - 1)];
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;

                    // Row modification.
                    for j in k..nn {
                        p = h[(k, j)] + q * h[(k + 1, j)];
                        if notlast {
                            p += r * h[(k + 2, j)];
                            h[(k + 2, j)] -= p * z;
                        }
                        h[(k, j)] -= p * x;
                        h[(k + 1, j)] -= p * y;
                    }

                    // Column modification.
                    for i in 0..=nl.min(k + 3) {
                        p = x * h[(i, k)] + y * h[(i, k + 1)];
                        if notlast {
                            p += z * h[(i, k + 2)];
                            h[(i, k + 2)] -= p * r;
                        }
                        h[(i, k)] -= p;
                        h[(i, k + 1)] -= p * q;
                    }

                    // Accumulate transformations.
                    for i in low..=high {
                        p = x * v[(i, k)] + y * v[(i, k + 1)];
                        if notlast {
                            p += z * v[(i, k + 2)];
                            v[(i, k + 2)] -= p * r;
                        }
                        v[(i, k)] -= p;
                        v[(i, k + 1)] -= p * q;
                    }
                }
            }
        }
    }

    // Backsubstitute to find vectors of the upper quasi-triangular form.
    for nl in (0..nn).rev() {
        p = d[nl];
        q = e[nl];

        if q == 0.0 {
            // Real vector.
            let mut l = nl;
            h[(nl, nl)] = 1.0;
            for i in (0..nl).rev() {
                w = h[(i, i)] - p;
                r = 0.0;
                for j in l..=nl {
                    r += h[(i, j)] * h[(j, nl)];
                }
                if e[i] < 0.0 {
                    z = w;
                    s = r;
                } else {
                    l = i;
                    if e[i] == 0.0 {
                        if w != 0.0 {
                            h[(i, nl)] = -r / w;
                        } else {
                            h[(i, nl)] = -r / (eps * norm);
                        }
                    } else {
                        // Solve real equations.
                        x = h[(i, i + 1)];
                        y = h[(i + 1, i)];
                        q = (d[i] - p) * (d[i] - p) + e[i] * e[i];
                        t = (x * s - z * r) / q;
                        h[(i, nl)] = t;
                        if x.abs() > z.abs() {
                            h[(i + 1, nl)] = (-r - w * t) / x;
                        } else {
                            h[(i + 1, nl)] = (-s - y * t) / z;
                        }
                    }

                    // Overflow control.
                    t = h[(i, nl)].abs();
                    if (eps * t) * t > 1.0 {
                        for j in i..=nl {
                            h[(j, nl)] /= t;
                        }
                    }
                }
            }
        } else if q < 0.0 {
            // Complex vector, second of the pair.
            let mut l = nl - 1;

            // Last vector component imaginary, so the matrix is triangular.
            if h[(nl, nl - 1)].abs() > h[(nl - 1, nl)].abs() {
                h[(nl - 1, nl - 1)] = q / h[(nl, nl - 1)];
                h[(nl - 1, nl)] = -(h[(nl, nl)] - p) / h[(nl, nl - 1)];
            } else {
                let (cr, ci) = cdiv(0.0, -h[(nl - 1, nl)], h[(nl - 1, nl - 1)] - p, q);
                h[(nl - 1, nl - 1)] = cr;
                h[(nl - 1, nl)] = ci;
            }
            h[(nl, nl - 1)] = 0.0;
            h[(nl, nl)] = 1.0;
            for i in (0..nl - 1).rev() {
                let mut ra = 0.0;
                let mut sa = 0.0;
                for j in l..=nl {
                    ra += h[(i, j)] * h[(j, nl - 1)];
                    sa += h[(i, j)] * h[(j, nl)];
                }
                w = h[(i, i)] - p;

                if e[i] < 0.0 {
                    z = w;
                    r = ra;
                    s = sa;
                } else {
                    l = i;
                    if e[i] == 0.0 {
                        let (cr, ci) = cdiv(-ra, -sa, w, q);
                        h[(i, nl - 1)] = cr;
                        h[(i, nl)] = ci;
                    } else {
                        // Solve complex equations.
                        x = h[(i, i + 1)];
                        y = h[(i + 1, i)];
                        let mut vr =
                            (d[i] - p) * (d[i] - p) + e[i] * e[i] - q * q;
                        let vi = (d[i] - p) * 2.0 * q;
                        if vr == 0.0 && vi == 0.0 {
                            vr = eps
                                * norm
                                * (w.abs() + q.abs() + x.abs() + y.abs() + z.abs());
                        }
                        let (cr, ci) =
                            cdiv(x * r - z * ra + q * sa, x * s - z * sa - q * ra, vr, vi);
                        h[(i, nl - 1)] = cr;
                        h[(i, nl)] = ci;
                        if x.abs() > z.abs() + q.abs() {
                            h[(i + 1, nl - 1)] =
                                (-ra - w * h[(i, nl - 1)] + q * h[(i, nl)]) / x;
                            h[(i + 1, nl)] =
                                (-sa - w * h[(i, nl)] - q * h[(i, nl - 1)]) / x;
                        } else {
                            let (cr, ci) = cdiv(
                                -r - y * h[(i, nl - 1)],
                                -s - y * h[(i, nl)],
                                z,
                                q,
                            );
                            h[(i + 1, nl - 1)] = cr;
                            h[(i + 1, nl)] = ci;
                        }
                    }

                    // Overflow control.
                    t = h[(i, nl - 1)].abs().max(h[(i, nl)].abs());
                    if (eps * t) * t > 1.0 {
                        for j in i..=nl {
                            h[(j, nl - 1)] /= t;
                            h[(j, nl)] /= t;
                        }
                    }
                }
            }
        }
    }

    // Back transformation to get eigenvectors of the original matrix.
    for j in (low..nn).rev() {
        for i in low..=high {
            z = 0.0;
            for k in low..=j.min(high) {
                z += v[(i, k)] * h[(k, j)];
            }
            v[(i, j)] = z;
        }
    }

    Ok(())
}
