//! Exact phase-1 simplex over arbitrary-precision rationals.
//!
//! This module answers one question exactly: does the system
//! `A x = b, x >= 0` have a solution? It either returns a feasible `x` or
//! a dual vector `y` certifying infeasibility. Everything downstream
//! (separability checks, leak membership, cone membership, safe regions)
//! reduces to this single primitive, so it is written for correctness
//! first: rational pivots, Bland's anti-cycling rule, and certificates that
//! are re-verifiable by plain arithmetic.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Outcome of a phase-1 feasibility solve for `A x = b, x >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum Phase1 {
    /// A feasible point: `A x = b`, `x >= 0`, exactly.
    Feasible { x: Vec<BigRational> },
    /// A dual certificate of infeasibility: `y^T A <= 0` componentwise and
    /// `y^T b > 0`, which refutes every nonnegative solution.
    Infeasible { duals: Vec<BigRational> },
}

impl Phase1 {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Phase1::Feasible { .. })
    }
}

/// Decides feasibility of `A x = b, x >= 0` by minimizing the sum of
/// artificial variables with the simplex method under Bland's rule.
///
/// `a` is row-major with uniform row length; `b` has one entry per row.
/// Rows may carry negative right-hand sides (they are sign-normalized
/// internally; returned certificates refer to the original orientation).
///
/// Runs in exact arithmetic and terminates on every input: Bland's rule
/// excludes cycling and the phase-1 objective is bounded below by zero.
pub fn phase1_feasibility(a: &[Vec<BigRational>], b: &[BigRational]) -> Phase1 {
    let m = a.len();
    assert_eq!(m, b.len(), "matrix and rhs must have equal row counts");
    let k = a.first().map_or(0, Vec::len);
    for row in a {
        assert_eq!(row.len(), k, "ragged constraint matrix");
    }
    if m == 0 {
        return Phase1::Feasible {
            x: vec![BigRational::zero(); k],
        };
    }

    // Tableau layout: k original columns, m artificial columns, rhs last.
    // Rows are sign-normalized so the artificial basis starts feasible.
    let width = k + m + 1;
    let mut flipped = vec![false; m];
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        flipped[i] = flip;
        let mut row: Vec<BigRational> = Vec::with_capacity(width);
        for v in &a[i] {
            row.push(if flip { -v } else { v.clone() });
        }
        for j in 0..m {
            row.push(if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        row.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(row);
    }

    // Reduced-cost row for minimizing the artificial sum: with the
    // artificial basis, r_j = -sum_i t[i][j] on original columns, 0 on
    // artificial columns; the objective equals sum_i rhs_i.
    let mut r: Vec<BigRational> = vec![BigRational::zero(); width];
    for j in 0..width {
        if (k..k + m).contains(&j) {
            continue;
        }
        let mut s = BigRational::zero();
        for row in &t {
            s -= &row[j];
        }
        r[j] = s;
    }
    // r[width-1] holds the negated objective value for bookkeeping.
    let mut basis: Vec<usize> = (k..k + m).collect();

    loop {
        // Bland: entering column = smallest index with negative reduced cost.
        let Some(enter) = (0..k + m).find(|&j| r[j].is_negative()) else {
            break;
        };
        // Ratio test; among ties pick the row whose basic variable has the
        // smallest index (Bland's leaving rule).
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b
                            || (ratio == *b
                                && basis[i] < basis[leave.expect("tie has a prior row")])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(pivot_row) = leave else {
            // A descent direction with no blocking row would drive the
            // objective below zero, which is impossible for a sum of
            // nonnegative variables.
            unreachable!("phase-1 objective is bounded below");
        };

        // Pivot: normalize the pivot row, eliminate the column elsewhere.
        let pivot = t[pivot_row][enter].clone();
        for v in t[pivot_row].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..m {
            if i != pivot_row && !t[i][enter].is_zero() {
                let factor = t[i][enter].clone();
                for j in 0..width {
                    let delta = &factor * &t[pivot_row][j];
                    t[i][j] -= delta;
                }
            }
        }
        if !r[enter].is_zero() {
            let factor = r[enter].clone();
            for j in 0..width {
                let delta = &factor * &t[pivot_row][j];
                r[j] -= delta;
            }
        }
        basis[pivot_row] = enter;
    }

    // Objective value = sum of artificial variables at the optimum.
    let mut objective = BigRational::zero();
    for i in 0..m {
        if basis[i] >= k {
            objective += &t[i][width - 1];
        }
    }

    if objective.is_zero() {
        let mut x = vec![BigRational::zero(); k];
        for i in 0..m {
            if basis[i] < k {
                x[basis[i]] = t[i][width - 1].clone();
            }
        }
        debug_assert!(verify_feasible(a, b, &x));
        Phase1::Feasible { x }
    } else {
        // Simplex multipliers: for artificial column j (unit cost), the
        // final reduced cost is 1 - y_j. Undo the row sign flips so the
        // certificate refers to the caller's orientation.
        let mut duals = Vec::with_capacity(m);
        for i in 0..m {
            let y = BigRational::one() - &r[k + i];
            duals.push(if flipped[i] { -y } else { y });
        }
        debug_assert!(verify_infeasibility_certificate(a, b, &duals));
        Phase1::Infeasible { duals }
    }
}

/// Checks `A x = b` and `x >= 0` exactly.
pub fn verify_feasible(a: &[Vec<BigRational>], b: &[BigRational], x: &[BigRational]) -> bool {
    if x.iter().any(Signed::is_negative) {
        return false;
    }
    a.iter().zip(b).all(|(row, rhs)| {
        let lhs: BigRational = row.iter().zip(x).map(|(c, v)| c * v).sum();
        lhs == *rhs
    })
}

/// Checks the dual certificate: `y^T A <= 0` componentwise and `y^T b > 0`.
///
/// Such a `y` refutes feasibility: any `x >= 0` with `A x = b` would give
/// `0 < y^T b = y^T A x <= 0`.
pub fn verify_infeasibility_certificate(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    y: &[BigRational],
) -> bool {
    let k = a.first().map_or(0, Vec::len);
    for j in 0..k {
        let col: BigRational = a.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum();
        if col.is_positive() {
            return false;
        }
    }
    let rhs: BigRational = b.iter().zip(y).map(|(bi, yi)| bi * yi).sum();
    rhs.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn matrix(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect()
    }

    fn rhs(vals: &[i64]) -> Vec<BigRational> {
        vals.iter().map(|&v| rat(v)).collect()
    }

    #[test]
    fn solves_a_trivial_system() {
        // x1 + x2 = 2, x1 - x2 = 0 has x = (1, 1).
        let a = matrix(&[&[1, 1], &[1, -1]]);
        let b = rhs(&[2, 0]);
        match phase1_feasibility(&a, &b) {
            Phase1::Feasible { x } => {
                assert_eq!(x, vec![rat(1), rat(1)]);
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn detects_sign_infeasibility() {
        // x1 + x2 = -1 has no nonnegative solution.
        let a = matrix(&[&[1, 1]]);
        let b = rhs(&[-1]);
        match phase1_feasibility(&a, &b) {
            Phase1::Infeasible { duals } => {
                assert!(verify_infeasibility_certificate(&a, &b, &duals));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn detects_contradictory_rows() {
        // x1 = 1 and x1 = 2 conflict.
        let a = matrix(&[&[1], &[1]]);
        let b = rhs(&[1, 2]);
        match phase1_feasibility(&a, &b) {
            Phase1::Infeasible { duals } => {
                assert!(verify_infeasibility_certificate(&a, &b, &duals));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn feasible_with_negative_rhs_rows() {
        // -x1 = -3 is feasible with x1 = 3 after sign normalization.
        let a = matrix(&[&[-1, 0], &[0, 1]]);
        let b = rhs(&[-3, 2]);
        match phase1_feasibility(&a, &b) {
            Phase1::Feasible { x } => assert_eq!(x, vec![rat(3), rat(2)]),
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn exact_fractions_survive_pivoting() {
        // 3x = 1 has the exact solution 1/3.
        let a = matrix(&[&[3]]);
        let b = rhs(&[1]);
        match phase1_feasibility(&a, &b) {
            Phase1::Feasible { x } => assert_eq!(x[0], ratq(1, 3)),
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn empty_system_is_feasible() {
        let out = phase1_feasibility(&[], &[]);
        assert!(out.is_feasible());
    }

    #[test]
    fn degenerate_zero_rhs_terminates() {
        // x1 - x2 = 0 with zero rhs exercises degenerate pivots.
        let a = matrix(&[&[1, -1], &[1, 1]]);
        let b = rhs(&[0, 2]);
        assert!(phase1_feasibility(&a, &b).is_feasible());
    }

    proptest! {
        /// Every outcome carries an exactly verifiable artifact.
        #[test]
        fn outcomes_verify(
            rows in 1usize..5,
            cols in 0usize..5,
            seed in proptest::collection::vec(-6i64..=6, 0..40),
            rhs_seed in proptest::collection::vec(-6i64..=6, 0..5),
        ) {
            let a: Vec<Vec<BigRational>> = (0..rows)
                .map(|i| {
                    (0..cols)
                        .map(|j| rat(*seed.get(i * cols + j).unwrap_or(&0)))
                        .collect()
                })
                .collect();
            let b: Vec<BigRational> = (0..rows)
                .map(|i| rat(*rhs_seed.get(i).unwrap_or(&1)))
                .collect();
            match phase1_feasibility(&a, &b) {
                Phase1::Feasible { x } => prop_assert!(verify_feasible(&a, &b, &x)),
                Phase1::Infeasible { duals } => {
                    prop_assert!(verify_infeasibility_certificate(&a, &b, &duals))
                }
            }
        }
    }
}
