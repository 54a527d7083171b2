//! Kernelized separability and hard-margin training.
//!
//! Everything the exact layer does for affine thresholds lifts to a feature
//! space through a kernel function: consistency, leak membership, critical
//! points, and maximum-margin training all go through decision functions of
//! the form `f(x) = sum_j alpha_j K(x_j, x) + b` anchored at the data
//! points. Because feature spaces are float territory (the RBF kernel has
//! no rational representation), this module works under an explicit
//! tolerance contract rather than exactly: a labeling counts as separable
//! when the margin-1 system over `(alpha, b)` is feasible within tolerance.
//!
//! With the linear kernel the notions coincide with the exact layer — the
//! maximum-margin normal always lies in the span of the data — and that
//! reduction is tested against [`crate::separability::check_separability`]
//! on instances whose certified margin keeps floats honest.

use crate::dataset::{IndexSet, Label, LabeledDataset, Point};
use crate::linalg::solve_dense;
use crate::svm::{SolverConfig, SvmError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from kernel computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("invalid kernel: {reason}")]
    InvalidKernel { reason: &'static str },
    #[error("point has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("training data is not separable in the kernel feature space")]
    NotSeparableInFeatureSpace,
    #[error("kernel solver did not converge within {iterations} iterations")]
    NoConvergence { iterations: u64 },
    #[error("index {index} out of range for a dataset of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error(transparent)]
    Config(#[from] SvmError),
}

/// A kernel function selector.
///
/// Serialized form tags the variant: `{"kernel":"linear"}`,
/// `{"kernel":"poly","degree":2,"coef0":1.0}`, `{"kernel":"rbf","gamma":0.5}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kernel", rename_all = "lowercase")]
pub enum KernelSpec {
    /// The plain inner product; reduces every notion here to the exact
    /// affine layer.
    Linear,
    /// `(x.y + coef0)^degree`. With `coef0 = 0` the features are the
    /// degree-`degree` monomials only; antipodal points then coincide in
    /// feature space for even degrees, which is occasionally what a test
    /// wants and occasionally a surprise.
    Poly { degree: u32, coef0: f64 },
    /// `exp(-gamma ||x - y||^2)`, strictly positive definite: any labeling
    /// of distinct points is separable under it.
    Rbf { gamma: f64 },
}

impl KernelSpec {
    /// Rejects degenerate parameterizations.
    pub fn validate(&self) -> Result<(), KernelError> {
        match self {
            KernelSpec::Linear => Ok(()),
            KernelSpec::Poly { degree, coef0 } => {
                if *degree == 0 {
                    Err(KernelError::InvalidKernel {
                        reason: "polynomial degree must be at least 1",
                    })
                } else if !coef0.is_finite() {
                    Err(KernelError::InvalidKernel {
                        reason: "coef0 must be finite",
                    })
                } else {
                    Ok(())
                }
            }
            KernelSpec::Rbf { gamma } => {
                if *gamma > 0.0 && gamma.is_finite() {
                    Ok(())
                } else {
                    Err(KernelError::InvalidKernel {
                        reason: "gamma must be positive and finite",
                    })
                }
            }
        }
    }

    /// Evaluates the kernel on float coordinate slices.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), y.len());
        let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
        match self {
            KernelSpec::Linear => dot,
            KernelSpec::Poly { degree, coef0 } => (dot + coef0).powi(*degree as i32),
            KernelSpec::Rbf { gamma } => {
                let sq: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
                (-gamma * sq).exp()
            }
        }
    }
}

fn float_points(points: &[Point]) -> Result<Vec<Vec<f64>>, KernelError> {
    let mut dim = None;
    for p in points {
        match dim {
            None => dim = Some(p.dim()),
            Some(d) if p.dim() != d => {
                return Err(KernelError::DimensionMismatch {
                    expected: d,
                    got: p.dim(),
                })
            }
            _ => {}
        }
    }
    Ok(points.iter().map(Point::to_f64).collect())
}

/// The kernel matrix `G[i][j] = K(points[i], points[j])`, symmetric and
/// positive semidefinite up to float roundoff.
pub fn gram(spec: &KernelSpec, points: &[Point]) -> Result<Vec<Vec<f64>>, KernelError> {
    spec.validate()?;
    let fp = float_points(points)?;
    let m = fp.len();
    let mut g = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..=i {
            let v = spec.eval(&fp[i], &fp[j]);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    Ok(g)
}

/// A trained kernel classifier `x -> sign(sum_j alpha_j K(anchor_j, x) + b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelClassifier {
    /// Signed coefficients over the anchors (zero where the anchor is not
    /// a support point).
    pub alphas: Vec<f64>,
    /// Additive offset.
    pub offset: f64,
    /// The training points the decision function is anchored at.
    pub anchors: Vec<Point>,
    /// The kernel the coefficients were trained under.
    pub spec: KernelSpec,
}

impl KernelClassifier {
    /// The decision value for float coordinates.
    pub fn decision_slice(&self, x: &[f64]) -> f64 {
        self.anchors
            .iter()
            .zip(&self.alphas)
            .map(|(a, alpha)| alpha * self.spec.eval(&a.to_f64(), x))
            .sum::<f64>()
            + self.offset
    }

    /// The decision value for an exact point.
    pub fn decision(&self, x: &Point) -> f64 {
        self.decision_slice(&x.to_f64())
    }

    /// Classifies by decision sign; the boundary counts as positive.
    pub fn classify(&self, x: &Point) -> Label {
        if self.decision(x) < 0.0 {
            Label::Minus
        } else {
            Label::Plus
        }
    }

    /// For the linear kernel, the induced affine form `(w, b)` with
    /// `w = sum_j alpha_j anchor_j`.
    pub fn induced_linear(&self) -> Option<(Vec<f64>, f64)> {
        if self.spec != KernelSpec::Linear {
            return None;
        }
        let dim = self.anchors.first().map_or(0, Point::dim);
        let mut w = vec![0.0; dim];
        for (a, alpha) in self.anchors.iter().zip(&self.alphas) {
            for (wv, c) in w.iter_mut().zip(a.to_f64()) {
                *wv += alpha * c;
            }
        }
        Some((w, self.offset))
    }
}

/// Phase-1 float simplex for `A v >= 1` with `v` free.
///
/// Returns the minimized total constraint violation (zero means feasible).
/// Deterministic: most-negative pivoting with first-index tie-breaks and a
/// first-negative fallback once the iteration count suggests stalling.
fn margin_system_violation(a: &[Vec<f64>], max_iterations: u64) -> f64 {
    let m = a.len();
    if m == 0 {
        return 0.0;
    }
    let c = a[0].len();
    // Columns: v+ (c), v- (c), surplus (m), artificial (m), rhs.
    let vars = 2 * c + 2 * m;
    let width = vars + 1;
    let mut t = vec![vec![0.0f64; width]; m];
    for (i, row) in a.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            t[i][j] = v;
            t[i][c + j] = -v;
        }
        t[i][2 * c + i] = -1.0;
        t[i][2 * c + m + i] = 1.0;
        t[i][width - 1] = 1.0;
    }
    let scale = 1.0 + a.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let eps = 1e-11 * scale;
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * c + m + i).collect();
    // Reduced costs for minimizing the artificial sum.
    let mut r = vec![0.0f64; width];
    for j in 0..width {
        if (2 * c + m..2 * c + 2 * m).contains(&j) {
            continue;
        }
        r[j] = -t.iter().map(|row| row[j]).sum::<f64>();
    }
    let bland_after = 60 * (m + c) as u64 + 500;
    let cap = max_iterations.max(2 * bland_after);
    let mut iter = 0u64;
    loop {
        iter += 1;
        if iter > cap {
            break;
        }
        let enter = if iter <= bland_after {
            let mut best = None;
            let mut best_v = -eps;
            for (j, &rv) in r[..vars].iter().enumerate() {
                if rv < best_v {
                    best_v = rv;
                    best = Some(j);
                }
            }
            best
        } else {
            r[..vars].iter().position(|&rv| rv < -eps)
        };
        let Some(enter) = enter else { break };
        let mut leave = None;
        let mut best_ratio = f64::INFINITY;
        for i in 0..m {
            if t[i][enter] > eps {
                let ratio = t[i][width - 1] / t[i][enter];
                if ratio < best_ratio - 1e-15
                    || (ratio <= best_ratio + 1e-15
                        && leave.is_some_and(|l: usize| basis[i] < basis[l]))
                {
                    best_ratio = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else { break };
        let pivot = t[leave][enter];
        for v in t[leave].iter_mut() {
            *v /= pivot;
        }
        for i in 0..m {
            if i != leave && t[i][enter] != 0.0 {
                let f = t[i][enter];
                for j in 0..width {
                    t[i][j] -= f * t[leave][j];
                }
                t[i][enter] = 0.0;
            }
        }
        if r[enter] != 0.0 {
            let f = r[enter];
            for j in 0..width {
                r[j] -= f * t[leave][j];
            }
            r[enter] = 0.0;
        }
        basis[leave] = enter;
    }
    let mut violation = 0.0;
    for i in 0..m {
        if (2 * c + m..2 * c + 2 * m).contains(&basis[i]) {
            violation += t[i][width - 1].max(0.0);
        }
    }
    violation
}

fn margin_rows(
    gram: &[Vec<f64>],
    labels: &[f64],
) -> Vec<Vec<f64>> {
    let m = labels.len();
    (0..m)
        .map(|i| {
            let mut row: Vec<f64> = (0..m).map(|j| labels[i] * gram[i][j]).collect();
            row.push(labels[i]);
            row
        })
        .collect()
}

/// Decides feature-space separability within tolerance.
///
/// Builds the margin-1 system `y_i (sum_j K(x_i, x_j) a_j + b) >= 1` over
/// the representer coefficients and offset — the maximum-margin normal
/// always lies in the span of the data, so this loses nothing — and calls
/// the labeling separable when the minimized violation is at most
/// `tolerance * (1 + max |K|)`.
pub fn kernel_separability(
    pos: &[Point],
    neg: &[Point],
    spec: &KernelSpec,
    config: &SolverConfig,
) -> Result<bool, KernelError> {
    spec.validate()?;
    config.validate()?;
    let all: Vec<Point> = pos.iter().chain(neg).cloned().collect();
    let g = gram(spec, &all)?;
    let labels: Vec<f64> = pos
        .iter()
        .map(|_| 1.0)
        .chain(neg.iter().map(|_| -1.0))
        .collect();
    let rows = margin_rows(&g, &labels);
    let violation = margin_system_violation(&rows, config.max_iterations);
    let scale = 1.0 + g.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
    Ok(violation <= config.tolerance * scale)
}

/// Trains a hard-margin kernel SVM by dual pairwise coordinate ascent with
/// maximal-violating-pair selection, then polishes the support system with
/// a direct linear solve.
///
/// Gates on [`kernel_separability`] first; inseparable data errors with
/// [`KernelError::NotSeparableInFeatureSpace`] instead of diverging.
pub fn train_kernel_svm(
    data: &LabeledDataset,
    spec: &KernelSpec,
    config: &SolverConfig,
) -> Result<KernelClassifier, KernelError> {
    spec.validate()?;
    config.validate()?;
    let pos = data.select(&data.positives());
    let neg = data.select(&data.negatives());
    if !kernel_separability(&pos, &neg, spec, config)? {
        return Err(KernelError::NotSeparableInFeatureSpace);
    }

    let m = data.len();
    let g = gram(spec, data.points())?;
    let y: Vec<f64> = data.labels().iter().map(|l| l.as_f64()).collect();
    let kscale = 1.0 + g.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));

    // Dual ascent on D(l) = sum(l) - 1/2 sum l_i l_j y_i y_j K_ij with
    // l >= 0 and sum l_i y_i = 0. The working pair moves along
    // (dl_i, dl_j) = (y_i t, -y_j t), the direction that preserves the
    // equality constraint.
    let mut lambda = vec![0.0f64; m];
    let mut f = vec![0.0f64; m]; // f_k = sum_j lambda_j y_j K(k, j)
    let eps = 1e-10 * kscale;
    let mut converged = m == 0;
    for _ in 0..config.max_iterations {
        let mut up: Option<(usize, f64)> = None;
        let mut down: Option<(usize, f64)> = None;
        for i in 0..m {
            let grad = y[i] * (1.0 - y[i] * f[i]); // y_i * dD/dlambda_i
            if (y[i] > 0.0 || lambda[i] > 0.0) && up.is_none_or(|(_, v)| grad > v) {
                up = Some((i, grad));
            }
            if (y[i] < 0.0 || lambda[i] > 0.0) && down.is_none_or(|(_, v)| grad < v) {
                down = Some((i, grad));
            }
        }
        let (Some((i, gi)), Some((j, gj))) = (up, down) else {
            converged = true;
            break;
        };
        let violation = gi - gj;
        if violation <= eps || i == j {
            converged = true;
            break;
        }
        let mut t_max = f64::INFINITY;
        if y[i] < 0.0 {
            t_max = t_max.min(lambda[i]);
        }
        if y[j] > 0.0 {
            t_max = t_max.min(lambda[j]);
        }
        let eta = g[i][i] + g[j][j] - 2.0 * g[i][j];
        let t = if eta > 1e-14 * kscale {
            (violation / eta).min(t_max)
        } else {
            t_max
        };
        if !t.is_finite() || t <= 0.0 {
            // An unbounded ascent direction means the dual diverges, i.e.
            // the primal is infeasible; the gate should have caught this.
            return Err(KernelError::NotSeparableInFeatureSpace);
        }
        lambda[i] += y[i] * t;
        lambda[j] -= y[j] * t;
        for k in 0..m {
            f[k] += t * (g[k][i] - g[k][j]);
        }
    }
    if !converged {
        return Err(KernelError::NoConvergence {
            iterations: config.max_iterations,
        });
    }

    let lambda_max = lambda.iter().fold(0.0f64, |a, &v| a.max(v));
    let support: Vec<usize> = (0..m)
        .filter(|&i| lambda[i] > 1e-9 * (1.0 + lambda_max))
        .collect();
    let mut offset = match (data.positives().is_empty(), data.negatives().is_empty()) {
        (false, true) => 1.0,
        (true, false) => -1.0,
        _ => 0.0,
    };
    if !support.is_empty() {
        offset = support
            .iter()
            .map(|&i| y[i] - f[i])
            .sum::<f64>()
            / support.len() as f64;
    }

    // Support polishing: on the margin-tight set the KKT conditions are a
    // square linear system; solving it directly removes the coordinate
    // ascent's first-order error. Keep the polished values only if they
    // remain a valid hard-margin solution.
    if !support.is_empty() {
        let k = support.len();
        let mut a = vec![vec![0.0; k + 1]; k + 1];
        let mut rhs = vec![0.0; k + 1];
        for (r, &i) in support.iter().enumerate() {
            for (cidx, &j) in support.iter().enumerate() {
                a[r][cidx] = y[i] * y[j] * g[i][j];
            }
            a[r][k] = y[i];
            rhs[r] = 1.0;
        }
        for (cidx, &j) in support.iter().enumerate() {
            a[k][cidx] = y[j];
        }
        if let Some(sol) = solve_dense(a, rhs) {
            if sol[..k].iter().all(|&v| v >= -1e-9) {
                let mut lam2 = vec![0.0; m];
                for (pos_idx, &i) in support.iter().enumerate() {
                    lam2[i] = sol[pos_idx].max(0.0);
                }
                let mut f2 = vec![0.0; m];
                for kk in 0..m {
                    f2[kk] = (0..m).map(|j| lam2[j] * y[j] * g[kk][j]).sum();
                }
                let b2 = sol[k];
                let ok = (0..m)
                    .all(|i| y[i] * (f2[i] + b2) >= 1.0 - config.tolerance * kscale);
                if ok {
                    lambda = lam2;
                    f = f2;
                    offset = b2;
                }
            }
        }
    }

    for i in 0..m {
        let margin = y[i] * (f[i] + offset);
        if margin < 1.0 - config.tolerance.max(1e-7) * kscale {
            return Err(KernelError::NoConvergence {
                iterations: config.max_iterations,
            });
        }
    }

    let alphas: Vec<f64> = (0..m).map(|i| lambda[i] * y[i]).collect();
    Ok(KernelClassifier {
        alphas,
        offset,
        anchors: data.points().to_vec(),
        spec: spec.clone(),
    })
}

/// Critical points in the kernel feature space: the non-members of
/// `a_plus` that stay separable when relabeled positive against all the
/// remaining non-members.
///
/// Same formula as the exact [`crate::separability::critical_points`],
/// with feature-space separability decided by [`kernel_separability`].
/// Under a strictly positive definite kernel (RBF) every non-member is
/// critical; under `poly` with `coef0 = 0` points that coincide in feature
/// space can make the set empty.
pub fn kernel_critical_points(
    s: &LabeledDataset,
    a_plus: &IndexSet,
    spec: &KernelSpec,
    config: &SolverConfig,
) -> Result<IndexSet, KernelError> {
    spec.validate()?;
    config.validate()?;
    for i in a_plus.iter() {
        if i >= s.len() {
            return Err(KernelError::IndexOutOfRange {
                index: i,
                len: s.len(),
            });
        }
    }
    let rest = a_plus.complement(s.len());
    let pos = s.select(a_plus);
    if !kernel_separability(&pos, &s.select(&rest), spec, config)? {
        return Err(KernelError::NotSeparableInFeatureSpace);
    }
    let mut critical = IndexSet::new();
    for x in rest.iter() {
        let mut pos_x = pos.clone();
        pos_x.push(s.point(x).clone());
        let mut others = rest.clone();
        others.remove(x);
        if kernel_separability(&pos_x, &s.select(&others), spec, config)? {
            critical.insert(x);
        }
    }
    Ok(critical)
}
