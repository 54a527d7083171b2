//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use ediscovery::dataset::{LabeledDataset, Point};
use ediscovery::rng::SplitMix64;
use std::path::PathBuf;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

/// The 11-point grid dataset: a 7-point negative block on the left, four
/// positives on the right. Indices 3, 5, 6 — the negatives (2,1), (2,3),
/// (3,2) — are the critical points.
pub fn grid_figure() -> LabeledDataset {
    LabeledDataset::load(&fixture_path("grid.json")).expect("grid fixture loads")
}

/// The 10-point two-cluster dataset with decimal coordinates. Index 4,
/// the right-most negative (2.4, 2.2), is critical; index 5, the interior
/// (1.8, 2.5), is not.
pub fn clusters_figure() -> LabeledDataset {
    LabeledDataset::load(&fixture_path("clusters.json")).expect("clusters fixture loads")
}

/// The XOR square: positives on one diagonal, negatives on the other.
/// Linearly inseparable; separable under a quadratic kernel.
pub fn xor_dataset() -> LabeledDataset {
    LabeledDataset::parse(
        &[&["1", "1"], &["-1", "-1"], &["1", "-1"], &["-1", "1"]],
        &[1, 1, -1, -1],
    )
    .expect("xor dataset")
}

/// Four collinear points, negatives left of positives.
pub fn collinear_line() -> LabeledDataset {
    LabeledDataset::parse(
        &[&["-2", "0"], &["-1", "0"], &["1", "0"], &["2", "0"]],
        &[-1, -1, 1, 1],
    )
    .expect("collinear dataset")
}

/// A random pair of planar point lists with small integer coordinates.
/// Deliberately messy: sides may overlap, points may repeat, and a point
/// may occur on both sides — every configuration both separability
/// deciders must agree on.
pub fn random_planar_sides(rng: &mut SplitMix64) -> (Vec<Point>, Vec<Point>) {
    let span = 8i64;
    let n_pos = 1 + rng.bounded(6) as usize;
    let n_neg = 1 + rng.bounded(6) as usize;
    let mut draw = |n: usize| -> Vec<Point> {
        (0..n)
            .map(|_| {
                let x = rng.bounded(2 * span as u64 + 1) as i64 - span;
                let y = rng.bounded(2 * span as u64 + 1) as i64 - span;
                Point::from_ints(&[x, y])
            })
            .collect()
    };
    let pos = draw(n_pos);
    let neg = draw(n_neg);
    (pos, neg)
}

fn solve_symmetric(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flatten()
        .fold(1.0f64, |acc, v| acc.max(v.abs()));
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() <= 1e-10 * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in 0..n {
            if row == col {
                continue;
            }
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// Independent maximum-margin oracle by combinatorial KKT enumeration.
///
/// The unique margin maximizer is determined by some tight set of at most
/// `dim + 1` points. For every candidate set, solve the equality-KKT
/// system `[[Q, y], [y^T, 0]] (mu, b) = (1, 0)` with
/// `Q_ij = y_i y_j x_i.x_j`, rebuild `w = sum mu_i y_i x_i`, and accept
/// when the multipliers are nonnegative and every training margin is at
/// least one. Any accepted candidate is the optimum. Returns
/// `(w, b, ||w||^2)`.
///
/// This shares no code with the production trainer: different algorithm,
/// different solver, test-local arithmetic.
pub fn kkt_enumeration_svm(data: &LabeledDataset) -> Option<(Vec<f64>, f64, f64)> {
    let m = data.len();
    let n = data.dim();
    assert!(m <= 16, "oracle is exponential; keep instances small");
    let x: Vec<Vec<f64>> = data.points().iter().map(Point::to_f64).collect();
    let y: Vec<f64> = data.labels().iter().map(|l| l.as_f64()).collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>();

    let mut best: Option<(Vec<f64>, f64, f64)> = None;
    for mask in 1u32..(1u32 << m) {
        let t: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        if t.len() > n + 1 {
            continue;
        }
        let k = t.len();
        // KKT system over (mu, b).
        let mut a = vec![vec![0.0; k + 1]; k + 1];
        let mut rhs = vec![0.0; k + 1];
        for (r, &i) in t.iter().enumerate() {
            for (c, &j) in t.iter().enumerate() {
                a[r][c] = y[i] * y[j] * dot(&x[i], &x[j]);
            }
            a[r][k] = y[i];
            a[k][r] = y[i];
            rhs[r] = 1.0;
        }
        let Some(sol) = solve_symmetric(a, rhs) else {
            continue;
        };
        let (mu, b) = (&sol[..k], sol[k]);
        if mu.iter().any(|&v| v < -1e-9) {
            continue;
        }
        let mut w = vec![0.0; n];
        for (r, &i) in t.iter().enumerate() {
            for (wc, xc) in w.iter_mut().zip(&x[i]) {
                *wc += mu[r] * y[i] * xc;
            }
        }
        let feasible = (0..m).all(|i| y[i] * (dot(&w, &x[i]) + b) >= 1.0 - 1e-9);
        if !feasible {
            continue;
        }
        let objective = dot(&w, &w);
        match &best {
            None => best = Some((w, b, objective)),
            Some((_, _, prev)) => {
                // Every accepted candidate is a global optimum; they must
                // agree on the objective.
                assert!(
                    (prev - objective).abs() <= 1e-6 * (1.0 + prev.abs()),
                    "two KKT candidates disagree: {prev} vs {objective}"
                );
            }
        }
    }
    best
}
