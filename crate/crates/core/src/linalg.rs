//! Small dense float linear algebra used by the solvers.
//!
//! Everything here operates on systems of at most a few dozen unknowns, so
//! plain Gaussian elimination with partial pivoting is both adequate and
//! easy to audit.

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when the matrix is numerically singular.
pub(crate) fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), n);
    let scale = a
        .iter()
        .flatten()
        .fold(1.0f64, |acc, v| acc.max(v.abs()));
    let eps = 1e-12 * scale;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("nonempty pivot candidates");
        if a[pivot_row][col].abs() <= eps {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// An orthogonal-free null-space basis of a row-major matrix with `cols`
/// columns, computed from the reduced row echelon form. Returns one basis
/// vector per free column; an empty input spans nothing and yields the
/// standard basis.
pub(crate) fn null_space(a: &[Vec<f64>], cols: usize) -> Vec<Vec<f64>> {
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let rows = m.len();
    let scale = m
        .iter()
        .flatten()
        .fold(1.0f64, |acc, v| acc.max(v.abs()));
    let eps = 1e-11 * scale;
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let best = (r..rows)
            .max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))
            .expect("rows remain");
        if m[best][c].abs() <= eps {
            continue;
        }
        m.swap(r, best);
        let p = m[r][c];
        for k in 0..cols {
            m[r][k] /= p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0.0 {
                let f = m[i][c];
                for k in 0..cols {
                    m[i][k] -= f * m[r][k];
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0.0; cols];
        v[free] = 1.0;
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[row][free];
        }
        basis.push(v);
    }
    basis
}
