//! Randomized structural properties, complementing the deterministic
//! property checks in the acceptance suite.

use proptest::prelude::*;

use specschrod::diagnostics::{absolute_drift, cheb_coeffs, cheb_eval, relative_drift};
use specschrod::diffmat::{chebyshev_diffmats, chebyshev_grid, sinc_grid};
use specschrod::eig::{eig_general, eig_symmetric, EigConfig};
use specschrod::maps::{AffineMap, AlgebraicMap};
use specschrod::matrix::Mat;
use specschrod::operator::{DiscreteOperator, Method, OperatorMeta};

fn op_from(matrix: Mat, symmetric: bool) -> DiscreteOperator {
    let n = matrix.rows();
    DiscreteOperator {
        matrix,
        interior_nodes: (0..n).map(|i| i as f64).collect(),
        symmetric,
        method: Method::SiC,
        meta: OperatorMeta {
            n,
            c: None,
            h: None,
            potential: "test".into(),
            params: Vec::new(),
        },
    }
}

proptest! {
    #[test]
    fn map_round_trip_is_identity(c in 0.1f64..50.0, s in -1.0f64..=0.999_999) {
        let map = AlgebraicMap::new(c).unwrap();
        let x = map.forward(s).unwrap();
        let back = map.inverse(x).unwrap();
        prop_assert!((back - s).abs() <= 1e-13 * s.abs().max(1.0));
    }

    #[test]
    fn map_is_strictly_increasing(c in 0.1f64..50.0, a in -1.0f64..0.999, d in 1e-9f64..0.5) {
        let map = AlgebraicMap::new(c).unwrap();
        let b = (a + d).min(0.9999);
        prop_assume!(a < b);
        prop_assert!(map.forward(a).unwrap() < map.forward(b).unwrap());
    }

    #[test]
    fn chain_factors_match_finite_differences(c in 0.5f64..10.0, s in -0.95f64..0.95) {
        let map = AlgebraicMap::new(c).unwrap();
        let (dxds, _) = map.chain_factors(&[s]).unwrap();
        let eps = 1e-6;
        let fd = (map.forward(s + eps).unwrap() - map.forward(s - eps).unwrap()) / (2.0 * eps);
        prop_assert!((dxds[0] - fd).abs() <= 1e-6 * dxds[0].abs().max(1.0) * 20.0);
    }

    #[test]
    fn affine_map_hits_endpoints(a in -100.0f64..100.0, w in 1e-3f64..200.0) {
        let map = AffineMap::new(a, a + w).unwrap();
        prop_assert_eq!(map.forward(-1.0), a);
        prop_assert_eq!(map.forward(1.0), a + w);
    }

    #[test]
    fn drift_is_symmetric_and_zero_on_self(
        vals in proptest::collection::vec(-1e3f64..1e3, 2..40),
    ) {
        let mut lam = vals;
        lam.sort_by(f64::total_cmp);
        lam.dedup();
        let ne = lam.len();
        let zero = absolute_drift(&lam, &lam, ne).unwrap();
        prop_assert!(zero.drift.iter().all(|&(_, d)| d == 0.0));

        let mut shifted: Vec<f64> = lam.iter().map(|x| x + 0.5).collect();
        shifted.sort_by(f64::total_cmp);
        let ab = absolute_drift(&lam, &shifted, ne).unwrap();
        let ba = absolute_drift(&shifted, &lam, ne).unwrap();
        for (x, y) in ab.drift.iter().zip(&ba.drift) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn relative_drift_is_scale_invariant(
        vals in proptest::collection::vec(0.1f64..1e3, 2..30),
        t in 1e-3f64..1e3,
    ) {
        let mut lam1 = vals;
        lam1.sort_by(f64::total_cmp);
        lam1.dedup();
        let lam2: Vec<f64> = lam1.iter().map(|x| x * 1.25).collect();
        let ne = lam1.len();
        let base = relative_drift(&lam1, &lam2, ne).unwrap();
        let s1: Vec<f64> = lam1.iter().map(|x| x * t).collect();
        let s2: Vec<f64> = lam2.iter().map(|x| x * t).collect();
        let scaled = relative_drift(&s1, &s2, ne).unwrap();
        for (&(_, a), &(_, b)) in base.drift.iter().zip(&scaled.drift) {
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300));
        }
    }

    #[test]
    fn chebyshev_transform_reconstructs_nodal_values(
        vals in proptest::collection::vec(-1.0f64..1.0, 2..80),
    ) {
        let spectrum = cheb_coeffs(&vals).unwrap();
        let nodes = chebyshev_grid(vals.len()).unwrap();
        for (j, &node) in nodes.nodes.iter().enumerate() {
            let y = cheb_eval(&spectrum.coefficients, node);
            prop_assert!((y - vals[j]).abs() <= 1e-10 * vals.len() as f64);
        }
    }

    #[test]
    fn chebyshev_derivative_exact_on_random_cubics(
        c0 in -2.0f64..2.0, c1 in -2.0f64..2.0, c2 in -2.0f64..2.0, c3 in -2.0f64..2.0,
        n in 6usize..40,
    ) {
        let d = chebyshev_diffmats(n, 1).unwrap();
        let p = |s: f64| c0 + c1 * s + c2 * s * s + c3 * s * s * s;
        let dp = |s: f64| c1 + 2.0 * c2 * s + 3.0 * c3 * s * s;
        let vals: Vec<f64> = d.grid.nodes.iter().map(|&s| p(s)).collect();
        let got = d.matrices[0].matvec(&vals);
        for (i, &s) in d.grid.nodes.iter().enumerate() {
            prop_assert!((got[i] - dp(s)).abs() <= 1e-10 * (n * n) as f64);
        }
    }

    #[test]
    fn grids_have_documented_shape(n in 2usize..200, m in 2usize..200, h in 0.01f64..2.0) {
        let cheb = chebyshev_grid(n).unwrap();
        prop_assert_eq!(cheb.nodes[0], 1.0);
        prop_assert_eq!(cheb.nodes[n - 1], -1.0);
        prop_assert!(cheb.nodes.windows(2).all(|w| w[0] > w[1]));

        let sinc = sinc_grid(m, h).unwrap();
        prop_assert!(sinc.nodes.windows(2).all(|w| w[0] < w[1]));
        for i in 0..m {
            // Mirror symmetry is exact by construction.
            prop_assert_eq!(sinc.nodes[i], -sinc.nodes[m - 1 - i]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetric_eigensolve_invariants(
        seed in proptest::collection::vec(-5.0f64..5.0, 36),
        n in 2usize..6,
    ) {
        let mut a = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v = seed[i * 6 + j];
                a[(i, j)] = v;
                a[(j, i)] = v;
            }
        }
        let op = op_from(a, true);
        let sol = eig_symmetric(&op, &EigConfig::default()).unwrap();
        prop_assert!(sol.values.windows(2).all(|w| w[0].0 <= w[1].0));
        prop_assert!(sol.real_flags.iter().all(|&f| f));
        // Residuals are stored relative to the Frobenius norm.
        prop_assert!(sol.max_residual() <= 1e-10);
        // Columns are unit vectors.
        for j in 0..n {
            let norm: f64 = sol.vectors.col(j).iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assert!((norm - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn general_eigensolve_invariants(
        seed in proptest::collection::vec(-5.0f64..5.0, 49),
        n in 2usize..8,
    ) {
        let mut a = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = seed[i * 7 + j];
            }
        }
        let op = op_from(a, false);
        let sol = eig_general(&op, &EigConfig::default()).unwrap();
        // Sorted by (re, im), complex entries in conjugate pairs.
        for w in sol.values.windows(2) {
            let ord = w[0].0 < w[1].0 || (w[0].0 == w[1].0 && w[0].1 <= w[1].1);
            prop_assert!(ord);
        }
        let mut j = 0;
        while j < sol.values.len() {
            let im = sol.values[j].1;
            if im != 0.0 {
                // The partner carries the conjugate.
                let partner = sol.values.iter().position(|&(re, i2)| {
                    re == sol.values[j].0 && i2 == -im
                });
                prop_assert!(partner.is_some());
            }
            j += 1;
        }
        prop_assert!(sol.max_residual() <= 1e-8);
    }
}
