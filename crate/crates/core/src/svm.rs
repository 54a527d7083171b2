//! Hard-margin support vector machines.
//!
//! `train_hard_svm` solves `min ||w||^2` subject to `y_i (w.x_i + b) >= 1`
//! with a primal active-set method, warm-started from the exact margin-1
//! separator so the float solver never has to discover feasibility on its
//! own. Separability itself is always decided by the exact layer first; the
//! floats only refine a separator into *the* maximum-margin one.
//!
//! The solution is unique (the objective is strictly convex in `w`, and `b`
//! is pinned by the margin-tight points), and it depends only on the
//! positives and the critical negatives: adding or removing other negatives
//! leaves `(w, b)` unchanged. That independence property is what makes the
//! disclosure protocol's output match a single-party run, and it is tested
//! exhaustively for small negative sets.

use crate::dataset::{Label, LabeledDataset, Point};
use crate::linalg::{null_space, solve_dense};
use crate::separability::{check_separability, SeparabilityError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from SVM training and classification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SvmError {
    #[error("training data is not strictly linearly separable")]
    NotSeparable,
    #[error("solver did not converge within {iterations} iterations")]
    NoConvergence { iterations: u64 },
    #[error("invalid solver configuration: {reason}")]
    InvalidConfig { reason: &'static str },
    #[error("point has dimension {got}, classifier expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Separability(#[from] SeparabilityError),
}

/// Tunables for the float solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Feasibility and agreement tolerance (relative to the decision-value
    /// scale). Must be positive.
    pub tolerance: f64,
    /// Iteration budget before the solver gives up. Must be positive.
    pub max_iterations: u64,
    /// Seed reserved for randomized tie-breaking. The shipped solvers are
    /// fully deterministic and do not consume it; it exists so that a
    /// randomized solver can be swapped in without changing call sites.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tolerance: 1e-8,
            max_iterations: 200_000,
            seed: 0,
        }
    }
}

impl SolverConfig {
    /// Rejects nonpositive tolerances and zero iteration budgets.
    pub fn validate(&self) -> Result<(), SvmError> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(SvmError::InvalidConfig {
                reason: "tolerance must be positive and finite",
            });
        }
        if self.max_iterations == 0 {
            return Err(SvmError::InvalidConfig {
                reason: "max_iterations must be positive",
            });
        }
        Ok(())
    }
}

/// A trained maximum-margin linear classifier `x -> sign(w.x + b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmSolution {
    /// Normal vector of the separating hyperplane.
    pub w: Vec<f64>,
    /// Offset: the decision value is `w.x + b`.
    pub b: f64,
    /// Indices of the margin-tight training points, sorted.
    pub support: Vec<usize>,
    /// The squared norm `||w||^2` (inverse squared half-margin).
    pub objective: f64,
}

impl SvmSolution {
    /// The decision value `w.x + b` for float coordinates.
    pub fn decision_slice(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.w.len());
        self.w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + self.b
    }

    /// The decision value for an exact point (converted to floats).
    pub fn decision(&self, x: &Point) -> f64 {
        self.decision_slice(&x.to_f64())
    }
}

/// Classifies a point; the boundary `w.x + b = 0` counts as positive.
pub fn classify(solution: &SvmSolution, x: &Point) -> Result<Label, SvmError> {
    if x.dim() != solution.w.len() {
        return Err(SvmError::DimensionMismatch {
            expected: solution.w.len(),
            got: x.dim(),
        });
    }
    Ok(if solution.decision(x) < 0.0 {
        Label::Minus
    } else {
        Label::Plus
    })
}

/// True when both solutions agree coordinatewise within `tol`:
/// `max(||w_a - w_b||_inf, |b_a - b_b|) <= tol`. Solutions of different
/// dimensions are never equal.
pub fn solutions_equal(a: &SvmSolution, b: &SvmSolution, tol: f64) -> bool {
    if a.w.len() != b.w.len() {
        return false;
    }
    let dw = a
        .w
        .iter()
        .zip(&b.w)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0f64, f64::max);
    dw.max((a.b - b.b).abs()) <= tol
}

/// Trains a hard-margin SVM.
///
/// Exact gating first: if the labeling is not strictly separable this
/// errors with [`SvmError::NotSeparable`] rather than letting the float
/// solver wander. On separable data the exact margin-1 separator becomes
/// the feasible starting point of a primal active-set descent, which
/// terminates at the unique KKT point of the margin maximization.
pub fn train_hard_svm(
    data: &LabeledDataset,
    config: &SolverConfig,
) -> Result<SvmSolution, SvmError> {
    config.validate()?;
    let pos = data.select(&data.positives());
    let neg = data.select(&data.negatives());
    let gate = check_separability(&pos, &neg)?;
    let Some(separator) = gate.separator() else {
        return Err(SvmError::NotSeparable);
    };

    let n = data.dim();
    let m = data.len();
    let points: Vec<Vec<f64>> = data.points().iter().map(Point::to_f64).collect();
    let labels: Vec<f64> = data.labels().iter().map(|l| l.as_f64()).collect();
    // Constraint gradients a_i = y_i * (x_i, 1); feasibility is a_i.z >= 1
    // for z = (w, b).
    let grads: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut g: Vec<f64> = points[i].iter().map(|v| v * labels[i]).collect();
            g.push(labels[i]);
            g
        })
        .collect();

    // Warm start from the exact separator, inflated slightly so rounding
    // cannot push any margin below 1.
    let (w0, b0) = separator.to_float();
    let mut z: Vec<f64> = w0.iter().chain(std::iter::once(&b0)).map(|v| v * (1.0 + 1e-7)).collect();
    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };

    let mut working: Vec<usize> = Vec::new();
    let mut converged = false;
    for _ in 0..config.max_iterations {
        // Step subproblem: minimize ||w + p_w||^2 over steps that keep the
        // working constraints tight.
        let p: Vec<f64> = if working.is_empty() {
            let mut p = vec![0.0; n + 1];
            p[..n].copy_from_slice(&z[..n]);
            p.iter_mut().for_each(|v| *v = -*v);
            p
        } else {
            let a_w: Vec<Vec<f64>> = working.iter().map(|&i| grads[i].clone()).collect();
            let basis = null_space(&a_w, n + 1);
            if basis.is_empty() {
                vec![0.0; n + 1]
            } else {
                // Reduced normal equations over the null-space coordinates;
                // the w-projections of the basis are linearly independent,
                // so the system is positive definite.
                let k = basis.len();
                let mut gram = vec![vec![0.0; k]; k];
                let mut rhs = vec![0.0; k];
                for (i, u) in basis.iter().enumerate() {
                    for (j, v) in basis.iter().enumerate() {
                        gram[i][j] = dot(&u[..n], &v[..n]);
                    }
                    rhs[i] = -dot(&basis[i][..n], &z[..n]);
                }
                match solve_dense(gram, rhs) {
                    Some(q) => {
                        let mut p = vec![0.0; n + 1];
                        for (qi, u) in q.iter().zip(&basis) {
                            for (pv, uv) in p.iter_mut().zip(u) {
                                *pv += qi * uv;
                            }
                        }
                        p
                    }
                    None => vec![0.0; n + 1],
                }
            }
        };

        let scale = 1.0 + z.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let step_norm = p.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if step_norm <= 1e-11 * scale {
            // At the subspace minimizer: check the working-set multipliers.
            if working.is_empty() {
                converged = true;
                break;
            }
            let k = working.len();
            let mut gram = vec![vec![0.0; k]; k];
            let mut rhs = vec![0.0; k];
            for (i, &wi) in working.iter().enumerate() {
                for (j, &wj) in working.iter().enumerate() {
                    gram[i][j] = dot(&grads[wi], &grads[wj]);
                }
                rhs[i] = dot(&grads[wi][..n], &z[..n]);
            }
            let mu = solve_dense(gram, rhs).ok_or(SvmError::NoConvergence {
                iterations: config.max_iterations,
            })?;
            let (drop_pos, drop_val) = mu
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .expect("working set nonempty");
            if *drop_val >= -1e-9 {
                converged = true;
                break;
            }
            working.remove(drop_pos);
            continue;
        }

        // Ratio test against the inactive constraints.
        let mut alpha = 1.0f64;
        let mut blocker: Option<usize> = None;
        for i in 0..m {
            if working.contains(&i) {
                continue;
            }
            let d = dot(&grads[i], &p);
            if d < -1e-13 * scale {
                let slack = dot(&grads[i], &z) - 1.0;
                let ratio = (slack / -d).max(0.0);
                if ratio < alpha {
                    alpha = ratio;
                    blocker = Some(i);
                }
            }
        }
        for (zv, pv) in z.iter_mut().zip(&p) {
            *zv += alpha * pv;
        }
        if let Some(i) = blocker {
            working.push(i);
        }
    }
    if !converged {
        return Err(SvmError::NoConvergence {
            iterations: config.max_iterations,
        });
    }

    let w = z[..n].to_vec();
    let b = z[n];
    let mut support = Vec::new();
    for i in 0..m {
        let margin = labels[i] * (dot(&points[i], &w) + b);
        if margin < 1.0 - config.tolerance * (1.0 + margin.abs()) {
            return Err(SvmError::NoConvergence {
                iterations: config.max_iterations,
            });
        }
        if (margin - 1.0).abs() <= 1e-6 * (1.0 + margin.abs()) {
            support.push(i);
        }
    }
    let objective = dot(&w, &w);
    Ok(SvmSolution {
        w,
        b,
        support,
        objective,
    })
}
