//! Acceptance gate: every benchmark the library is expected to reproduce,
//! one test per criterion, each ending in a single PASS line (a failure
//! panics with the matching FAIL line).
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//! Tests marked #[ignore] repeat criteria at the largest grid sizes; they
//! take minutes and are meant for occasional full validation:
//! `cargo test --test acceptance -- --ignored --nocapture`.

use std::sync::LazyLock;
use std::time::Instant;

use specschrod::diagnostics::{absolute_drift, cheb_coeffs, relative_drift};
use specschrod::diffmat::{chebyshev_diffmats, sinc_diffmats};
use specschrod::eig::{eig_general, eig_symmetric, EigConfig, EigenSolution};
use specschrod::maps::AlgebraicMap;
use specschrod::matrix::Mat;
use specschrod::operator::{
    assemble_mapped_halfline, assemble_regular_dirichlet, assemble_sinc_line, DiscreteOperator,
};
use specschrod::problems::{anharmonic, coffey_evans, coulomb_decay, harmonic, hydrogen};

struct Solve {
    sol: EigenSolution,
    secs: f64,
}

fn timed(op: DiscreteOperator) -> Solve {
    let t0 = Instant::now();
    let cfg = EigConfig::default();
    let sol = if op.symmetric {
        eig_symmetric(&op, &cfg).expect("symmetric eigensolve")
    } else {
        eig_general(&op, &cfg).expect("general eigensolve")
    };
    Solve {
        sol,
        secs: t0.elapsed().as_secs_f64(),
    }
}

fn solve_coffey_evans(n: usize) -> Solve {
    timed(assemble_regular_dirichlet(&coffey_evans(30.0), n).expect("assemble"))
}

fn solve_hydrogen(n: usize) -> Solve {
    let map = AlgebraicMap::new(2.0).unwrap();
    timed(assemble_mapped_halfline(&hydrogen(1.0), &map, n).expect("assemble"))
}

fn solve_coulomb(n: usize) -> Solve {
    let map = AlgebraicMap::new(2.0).unwrap();
    timed(assemble_mapped_halfline(&coulomb_decay(1.0), &map, n).expect("assemble"))
}

fn solve_anharmonic(n: usize) -> Solve {
    let pot = anharmonic(1.0, 500.0).unwrap();
    timed(assemble_sinc_line(&pot, n, 0.1).expect("assemble"))
}

static CE_256: LazyLock<Solve> = LazyLock::new(|| solve_coffey_evans(256));
static CE_512: LazyLock<Solve> = LazyLock::new(|| solve_coffey_evans(512));
static HYD_1024: LazyLock<Solve> = LazyLock::new(|| solve_hydrogen(1024));
static HYD_2048: LazyLock<Solve> = LazyLock::new(|| solve_hydrogen(2048));
static COU_512: LazyLock<Solve> = LazyLock::new(|| solve_coulomb(512));
static COU_760: LazyLock<Solve> = LazyLock::new(|| solve_coulomb(760));
static ANH_400: LazyLock<Solve> = LazyLock::new(|| solve_anharmonic(400));
static ANH_500: LazyLock<Solve> = LazyLock::new(|| solve_anharmonic(500));

fn check(line: &str, ok: bool, detail: String) {
    if ok {
        println!("{line}: PASS ({detail})");
    } else {
        panic!("{line}: FAIL ({detail})");
    }
}

/// True when `x` starts with the decimal digits of `prefix` (written with a
/// leading point-free mantissa, e.g. "2.31664929" for 231.664929...).
fn shares_digits(x: f64, prefix: &str) -> bool {
    let digits: String = prefix.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut rendered: String = format!("{x:.16e}")
        .chars()
        .take_while(|&c| c != 'e')
        .filter(|c| c.is_ascii_digit())
        .collect();
    rendered.truncate(digits.len());
    rendered == digits
}

fn sig_digits(x: f64, k: i32) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let scale = k - 1 - x.abs().log10().floor() as i32;
    (x * 10f64.powi(scale)).round() / 10f64.powi(scale)
}

fn negatives(v: &[f64]) -> Vec<f64> {
    v.iter().copied().filter(|&x| x < 0.0).collect()
}

#[test]
fn criterion_1_coffey_evans_high_index_eigenvalues() {
    let s = &*CE_512;
    let lam = s.sol.real_values();
    let table = [
        (20usize, 951.8788067966),
        (30, 1438.2952446408),
        (40, 2146.4053605398),
        (50, 3060.9234915114),
    ];
    let mut worst = 0.0f64;
    for &(j, want) in &table {
        let rel = (lam[j] - want).abs() / want.abs();
        worst = worst.max(rel);
        assert!(
            rel <= 1e-10,
            "criterion 1: FAIL (index {j}: got {:.13e}, want {want}, rel {rel:.2e})",
            lam[j]
        );
    }
    let rel200 = (lam[200] - 40851.637646050).abs() / 40851.637646050;
    check(
        "criterion 1",
        rel200 <= 1e-9 && s.secs <= 60.0,
        format!(
            "indices 20..50 rel <= {worst:.1e}, index 200 rel {rel200:.1e}, solve {:.1}s",
            s.secs
        ),
    );
}

#[test]
fn criterion_2_coffey_evans_near_zero_ground_state() {
    let lam = CE_512.sol.real_values();
    check(
        "criterion 2",
        lam[0].abs() <= 1e-8,
        format!("lambda_0 = {:.3e}", lam[0]),
    );
}

#[test]
fn criterion_3_coffey_evans_resolves_clustered_triplets() {
    let lam = CE_512.sol.real_values();
    let low = [lam[2], lam[3], lam[4]];
    let high = [lam[6], lam[7], lam[8]];
    let ok_low = low.iter().all(|&x| shares_digits(x, "2.31664929"));
    let ok_high = high.iter().all(|&x| shares_digits(x, "4.45283"));
    check(
        "criterion 3",
        ok_low && ok_high,
        format!(
            "triplet 2-4 = {:.10}, {:.10}, {:.10}; triplet 6-8 = {:.7}, {:.7}, {:.7}",
            low[0], low[1], low[2], high[0], high[1], high[2]
        ),
    );
}

#[test]
fn criterion_4_coffey_evans_drift_under_refinement() {
    let lam1 = CE_256.sol.real_values();
    let lam2 = CE_512.sol.real_values();
    let report = absolute_drift(&lam1, &lam2, 100).unwrap();
    let max = report.max_delta();
    check("criterion 4", max <= 1e-9, format!("max |delta| = {max:.2e} over first 100"));
}

#[test]
fn criterion_5_hydrogen_bound_states() {
    let lam = HYD_1024.sol.real_values();
    let neg = negatives(&lam);
    let mut worst = 0.0f64;
    for (k, &got) in neg.iter().take(10).enumerate() {
        let want = -1.0 / ((2 * k + 4) as f64).powi(2);
        worst = worst.max((got - want).abs());
    }
    let has_positive = lam.iter().any(|&x| x > 0.0);
    check(
        "criterion 5",
        neg.len() >= 10 && worst <= 1e-8 && has_positive,
        format!(
            "first 10 bound states off by <= {worst:.2e}, {} negatives, positive branch present",
            neg.len()
        ),
    );
}

#[test]
#[ignore = "extended: ~n^3 at n=2048 takes minutes"]
fn criterion_5_extended_hydrogen_ground_state_refined() {
    let lam = HYD_2048.sol.real_values();
    let neg = negatives(&lam);
    let err = (neg[0] - (-0.0625)).abs();
    let count_ok = (neg.len() as i64 - 67).abs() <= 3;
    check(
        "criterion 5 (extended)",
        err <= 1e-10 && count_ok,
        format!("lambda_0 error {err:.2e}, {} negatives (expected 67 +- 3)", neg.len()),
    );
}

#[test]
fn criterion_6_coulomb_decay_bound_states_and_drift() {
    let lam512 = negatives(&COU_512.sol.real_values());
    let lam760 = negatives(&COU_760.sol.real_values());
    let table = [
        -0.0616818466332,
        -0.0274980999438,
        -0.0155015616942,
        -0.0099354968539,
        -0.0069067013755,
    ];
    let mut worst = 0.0f64;
    for (j, &want) in table.iter().enumerate() {
        worst = worst.max((lam512[j] - want).abs());
    }
    let d10 = (lam512[9] - lam760[9]).abs();
    check(
        "criterion 6",
        worst <= 1e-9 && d10 <= 1e-6,
        format!("first five off by <= {worst:.2e}, tenth drifts {d10:.2e} between grids"),
    );
}

#[test]
fn criterion_7_anharmonic_high_modes_and_drift() {
    let lam = ANH_500.sol.real_values();
    // Published high-lying values, placed at their position in the strictly
    // ascending spectrum (ladder rungs 100, 151, and 202; the uniformly
    // spaced ladder pins each value's home unambiguously).
    let table = [
        (99usize, 199.001994801512),
        (150, 301.001995781805),
        (201, 403.001995224433),
    ];
    let mut worst = 0.0f64;
    let mut five_digits = true;
    for &(j, want) in &table {
        worst = worst.max((lam[j] - want).abs());
        // Rung k (1-based) sits near the harmonic value 2k - 1; the flat
        // perturbation only shows up past the fifth significant digit.
        let ladder = (2 * (j + 1) - 1) as f64;
        five_digits &= sig_digits(lam[j], 5) == sig_digits(ladder, 5);
    }
    let lam400 = ANH_400.sol.real_values();
    let rel = relative_drift(&lam400, &lam, 70).unwrap().max_delta();
    check(
        "criterion 7",
        worst <= 1e-5 && five_digits && rel <= 1e-11,
        format!("table error <= {worst:.2e}, ladder digits {}, drift <= {rel:.2e}",
            if five_digits { "hold" } else { "BROKEN" }),
    );
}

#[test]
fn criterion_8_anharmonic_eigenvector_orthogonality() {
    let sol = &ANH_500.sol;
    let idx = sol.real_indices();
    assert!(idx.len() >= 200, "need 200 real eigenvectors");
    let m = sol.vectors.rows();
    let mut v = Mat::zeros(m, 200);
    for (out, &j) in idx[..200].iter().enumerate() {
        v.set_col(out, &sol.vectors.col(j));
    }
    let dev = specschrod::diagnostics::orthogonality_deficiency(&v, 0).unwrap();
    let max = dev.iter().copied().fold(0.0f64, f64::max);
    check(
        "criterion 8",
        max <= 1e-12,
        format!("max |<u_1, u_j>| = {max:.2e} over j = 2..200"),
    );
}

#[test]
fn criterion_9_property_suite() {
    // Monomial exactness of the first derivative up to degree 12.
    for n in [13usize, 24, 40] {
        let d = chebyshev_diffmats(n, 1).unwrap();
        let tol = 1e-10 * (n * n) as f64;
        for k in 0..=12usize {
            let vals: Vec<f64> = d.grid.nodes.iter().map(|&s| s.powi(k as i32)).collect();
            let want: Vec<f64> = d
                .grid
                .nodes
                .iter()
                .map(|&s| if k == 0 { 0.0 } else { k as f64 * s.powi(k as i32 - 1) })
                .collect();
            let got = d.matrices[0].matvec(&vals);
            for i in 0..n {
                assert!(
                    (got[i] - want[i]).abs() <= tol,
                    "criterion 9: FAIL (monomial degree {k}, n = {n}, node {i})"
                );
            }
        }
    }

    // The second differentiation matrix is the square of the first.
    for n in [8usize, 32, 64] {
        let d = chebyshev_diffmats(n, 2).unwrap();
        let sq = d.matrices[0].matmul(&d.matrices[0]);
        let tol = 1e-9 * (n * n) as f64;
        for i in 0..n {
            for j in 0..n {
                assert!(
                    (d.matrices[1][(i, j)] - sq[(i, j)]).abs() <= tol,
                    "criterion 9: FAIL (D2 vs D1^2 at ({i}, {j}), n = {n})"
                );
            }
        }
    }

    // Sinc second derivative: exactly symmetric, exact diagonal.
    let h = 0.35;
    let d = sinc_diffmats(31, h, 2).unwrap();
    let d2 = &d.matrices[1];
    let want_diag = -std::f64::consts::PI.powi(2) / (3.0 * h * h);
    for i in 0..31 {
        assert_eq!(d2[(i, i)], want_diag, "criterion 9: FAIL (sinc diagonal)");
        for j in 0..31 {
            assert_eq!(d2[(i, j)], d2[(j, i)], "criterion 9: FAIL (sinc symmetry)");
        }
    }

    // Half-line map round-trip: identity on [-1, 1 - 1e-6] to 1e-13,
    // relative to the domain scale.
    for c in [0.5, 2.0, 9.0] {
        let map = AlgebraicMap::new(c).unwrap();
        let mut s = -1.0;
        while s <= 1.0 - 1e-6 {
            let x = map.forward(s).unwrap();
            let back = map.inverse(x).unwrap();
            assert!(
                (back - s).abs() <= 1e-13 * s.abs().max(1.0),
                "criterion 9: FAIL (map round-trip, c = {c}, s = {s})"
            );
            s += 0.000731;
        }
    }

    // Residual bound and orthonormality on the cached big solves.
    let res = CE_512.sol.max_residual();
    assert!(res <= 1e-8, "criterion 9: FAIL (scaled residual {res:.2e})");
    let sol = &ANH_500.sol;
    let n = sol.vectors.cols();
    let gram = {
        let mut g = Mat::zeros(n, n);
        for i in 0..n {
            let vi = sol.vectors.col(i);
            for j in i..n {
                let vj = sol.vectors.col(j);
                let dot: f64 = vi.iter().zip(&vj).map(|(a, b)| a * b).sum();
                g[(i, j)] = dot;
                g[(j, i)] = dot;
            }
        }
        g
    };
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!(
                (gram[(i, j)] - want).abs() <= 1e-10,
                "criterion 9: FAIL (orthonormality at ({i}, {j}))"
            );
        }
    }

    // Harmonic oscillator ladder 1, 3, 5, ...
    let pot = harmonic();
    let op = assemble_sinc_line(&pot, 200, 0.2).unwrap();
    let hsol = eig_symmetric(&op, &EigConfig::default()).unwrap();
    let hlam = hsol.real_values();
    for (k, &lam) in hlam.iter().take(20).enumerate() {
        let want = (2 * k + 1) as f64;
        assert!(
            (lam - want).abs() <= 1e-8,
            "criterion 9: FAIL (harmonic level {k}: {lam} vs {want})"
        );
    }

    // Drift of a run against itself is exactly zero.
    let lam = ANH_500.sol.real_values();
    let zero = absolute_drift(&lam, &lam, 100).unwrap();
    assert!(
        zero.drift.iter().all(|&(_, d)| d == 0.0),
        "criterion 9: FAIL (self-drift not exactly zero)"
    );

    check("criterion 9", true, "differentiation, map, residual, orthonormality, ladder, self-drift".into());
}

#[test]
fn criterion_9_csv_byte_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    std::fs::write(
        &config,
        r#"{"problem": "harmonic", "n": 64, "h": 0.3, "ne": 8}"#,
    )
    .unwrap();
    let out1 = dir.path().join("a");
    let out2 = dir.path().join("b");
    for out in [&out1, &out2] {
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_specschrod"))
            .args(["solve", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(out1.join("eigenvalues.csv")).unwrap();
    let b = std::fs::read(out2.join("eigenvalues.csv")).unwrap();
    check(
        "criterion 9 (determinism)",
        !a.is_empty() && a == b,
        format!("{} bytes identical across reruns", a.len()),
    );
}

/// Supplementary: expansion coefficients of converged eigenvectors decay to
/// a rounding-level plateau, which is what the plateau estimator reports.
#[test]
fn coefficient_plateau_reaches_rounding_floor() {
    let sol = &CE_512.sol;
    let idx = sol.real_indices();
    let col = sol.vectors.col(idx[0]);
    let mut padded = Vec::with_capacity(col.len() + 2);
    padded.push(0.0);
    padded.extend_from_slice(&col);
    padded.push(0.0);
    let spectrum = cheb_coeffs(&padded).unwrap();
    assert!(
        spectrum.plateau <= 1e-12,
        "plateau {:.2e} above rounding floor",
        spectrum.plateau
    );
}
