//! Strict linear separability, leak sets, critical points, and safe regions,
//! all decided exactly.
//!
//! The central objects, for a universe `S` and disjoint index sets
//! `A+`/`A-`:
//!
//! - the *consistent classifiers* are the affine thresholds `sign(d.x - c)`
//!   that put every `A+` point strictly positive and every `A-` point
//!   strictly negative;
//! - the *leak set* is every point of `S` that at least one consistent
//!   classifier labels positive, together with `A-` itself (those points'
//!   labels are already known to the receiving party);
//! - the *critical points* of `A+` are the non-members `x` that would leak
//!   even when every other non-member is disclosed as negative — they are
//!   exactly the vertices of the safe region, and they are the minimum
//!   extra disclosure any correct protocol must make;
//! - the *safe region* of `(A+, A-)` is every point that no consistent
//!   margin-respecting direction can push past the negatives.
//!
//! Strict inequalities are normalized to margin-1 form (`d.p - c >= 1` on
//! positives, `d.q - c <= -1` on negatives), which is equivalent to
//! strictness up to positive scaling of `(d, c)`. Feasibility questions are
//! answered through [`crate::lp::phase1_feasibility`] on the Farkas
//! alternative system, so every verdict comes with an exact certificate:
//! a margin-1 separator, or nonnegative multipliers that recombine the
//! constraints into a contradiction.

use crate::dataset::{IndexSet, Label, LabeledDataset, Point};
use crate::hull2d;
use crate::lp::{phase1_feasibility, Phase1};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// Errors from separability queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparabilityError {
    #[error("points have mixed dimensions: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the reference labeling is not linearly separable")]
    NotSeparable,
    #[error("safe-region queries require at least one negative point")]
    EmptyNegatives,
    #[error("index {index} out of range for a dataset of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("positive and negative index sets overlap at index {index}")]
    OverlappingSets { index: usize },
}

/// An exact linear threshold classifier `x -> sign(d.x - c)`.
///
/// Scaling `(d, c)` by any positive rational leaves every classification
/// unchanged. Points exactly on the boundary classify as positive; margin-1
/// separators never place their defining points there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearClassifier {
    direction: Vec<BigRational>,
    threshold: BigRational,
}

impl LinearClassifier {
    pub fn new(direction: Vec<BigRational>, threshold: BigRational) -> Self {
        LinearClassifier {
            direction,
            threshold,
        }
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    /// The normal direction `d`.
    pub fn direction(&self) -> &[BigRational] {
        &self.direction
    }

    /// The threshold `c`.
    pub fn threshold(&self) -> &BigRational {
        &self.threshold
    }

    /// The exact decision value `d.x - c`.
    pub fn decision(&self, x: &Point) -> BigRational {
        debug_assert_eq!(x.dim(), self.dim());
        let dot: BigRational = self
            .direction
            .iter()
            .zip(x.coords())
            .map(|(d, c)| d * c)
            .sum();
        dot - &self.threshold
    }

    /// Classifies by the sign of the decision value (boundary counts
    /// positive).
    pub fn classify(&self, x: &Point) -> Label {
        if self.decision(x).is_negative() {
            Label::Minus
        } else {
            Label::Plus
        }
    }

    /// The same classifier scaled by a positive rational.
    pub fn scaled(&self, k: &BigRational) -> LinearClassifier {
        debug_assert!(k.is_positive());
        LinearClassifier {
            direction: self.direction.iter().map(|d| d * k).collect(),
            threshold: &self.threshold * k,
        }
    }

    /// Float form `(w, b)` with `w.x + b = d.x - c` up to rounding.
    pub fn to_float(&self) -> (Vec<f64>, f64) {
        use num_traits::ToPrimitive;
        let w = self
            .direction
            .iter()
            .map(|d| d.to_f64().expect("direction fits in f64"))
            .collect();
        let b = -self.threshold.to_f64().expect("threshold fits in f64");
        (w, b)
    }
}

/// Nonnegative multipliers that refute separability.
///
/// One multiplier per input constraint: first the positive points in input
/// order (constraint `d.p - c >= 1`), then the negative points (constraint
/// `c - d.q >= 1`). Recombining the constraints with these weights yields
/// `0 >= sum(multipliers) > 0`, a contradiction, so no separator exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasWitness {
    multipliers: Vec<BigRational>,
}

impl FarkasWitness {
    /// The multipliers, positives first, then negatives.
    pub fn multipliers(&self) -> &[BigRational] {
        &self.multipliers
    }

    /// Re-verifies the certificate against the point sets it was issued
    /// for: multipliers are nonnegative, not all zero, and the weighted
    /// constraint rows sum to the zero functional.
    pub fn verify(&self, pos: &[Point], neg: &[Point]) -> bool {
        if self.multipliers.len() != pos.len() + neg.len() {
            return false;
        }
        if self.multipliers.iter().any(Signed::is_negative) {
            return false;
        }
        let total: BigRational = self.multipliers.iter().sum();
        if !total.is_positive() {
            return false;
        }
        let dim = pos.iter().chain(neg).map(Point::dim).next().unwrap_or(0);
        // Weighted sum of homogenized rows (p, -1) and (-q, +1) must vanish.
        let mut acc = vec![BigRational::zero(); dim + 1];
        for (p, m) in pos.iter().zip(&self.multipliers) {
            for (a, c) in acc.iter_mut().zip(p.coords()) {
                *a += c * m;
            }
            acc[dim] -= m;
        }
        for (q, m) in neg.iter().zip(&self.multipliers[pos.len()..]) {
            for (a, c) in acc.iter_mut().zip(q.coords()) {
                *a -= c * m;
            }
            acc[dim] += m;
        }
        acc.iter().all(Zero::is_zero)
    }
}

/// Outcome of an exact separability check: a separator or a refutation.
#[derive(Debug, Clone, PartialEq)]
pub enum SeparabilityResult {
    /// A margin-1 separator: `d.p - c >= 1` on positives, `d.q - c <= -1`
    /// on negatives, exactly.
    Separator(LinearClassifier),
    /// A Farkas certificate that no strict separator exists.
    Infeasible(FarkasWitness),
}

impl SeparabilityResult {
    pub fn is_separable(&self) -> bool {
        matches!(self, SeparabilityResult::Separator(_))
    }

    pub fn separator(&self) -> Option<&LinearClassifier> {
        match self {
            SeparabilityResult::Separator(c) => Some(c),
            SeparabilityResult::Infeasible(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&FarkasWitness> {
        match self {
            SeparabilityResult::Separator(_) => None,
            SeparabilityResult::Infeasible(w) => Some(w),
        }
    }
}

fn common_dim(pos: &[Point], neg: &[Point]) -> Result<Option<usize>, SeparabilityError> {
    let mut dim = None;
    for p in pos.iter().chain(neg) {
        match dim {
            None => dim = Some(p.dim()),
            Some(d) if p.dim() != d => {
                return Err(SeparabilityError::DimensionMismatch {
                    expected: d,
                    got: p.dim(),
                })
            }
            _ => {}
        }
    }
    Ok(dim)
}

fn unit_direction(dim: usize) -> Vec<BigRational> {
    let mut d = vec![BigRational::zero(); dim.max(1)];
    d[0] = BigRational::one();
    d
}

/// Decides whether some affine threshold puts all of `pos` strictly above
/// and all of `neg` strictly below, returning an exact margin-1 separator
/// or a Farkas refutation.
///
/// Empty sides are separable by convention: with no negatives the
/// separator sits just below the positives along the first axis (and
/// symmetrically with no positives); with both sides empty it is the
/// canonical `(e1, 0)`. Coincident points with equal labels collapse to a
/// single constraint; a point present on both sides is refuted with the
/// obvious half-half witness.
pub fn check_separability(
    pos: &[Point],
    neg: &[Point],
) -> Result<SeparabilityResult, SeparabilityError> {
    let dim = match common_dim(pos, neg)? {
        // No points at all: canonical separator in one dimension.
        None => {
            return Ok(SeparabilityResult::Separator(LinearClassifier::new(
                unit_direction(1),
                BigRational::zero(),
            )))
        }
        Some(d) => d,
    };

    if neg.is_empty() {
        let min1 = pos
            .iter()
            .map(|p| p.coords().first().cloned().unwrap_or_else(BigRational::zero))
            .min()
            .expect("nonempty positives");
        return Ok(SeparabilityResult::Separator(LinearClassifier::new(
            unit_direction(dim),
            min1 - BigRational::one(),
        )));
    }
    if pos.is_empty() {
        let max1 = neg
            .iter()
            .map(|q| q.coords().first().cloned().unwrap_or_else(BigRational::zero))
            .max()
            .expect("nonempty negatives");
        return Ok(SeparabilityResult::Separator(LinearClassifier::new(
            unit_direction(dim),
            max1 + BigRational::one(),
        )));
    }

    // Deduplicate coincident same-side points, remembering where each
    // deduplicated constraint should report its multiplier.
    let mut columns: Vec<Vec<BigRational>> = Vec::new();
    let mut owners: Vec<usize> = Vec::new();
    let mut seen: BTreeMap<(bool, &Point), usize> = BTreeMap::new();
    for (i, p) in pos.iter().enumerate() {
        if seen.insert((true, p), i).is_none() {
            // Homogenized margin row (p, -1), extended by the simplex-sum
            // coordinate used by the alternative system.
            let mut col: Vec<BigRational> = p.coords().to_vec();
            col.push(-BigRational::one());
            col.push(BigRational::one());
            columns.push(col);
            owners.push(i);
        }
    }
    for (j, q) in neg.iter().enumerate() {
        if seen.insert((false, q), j).is_none() {
            let mut col: Vec<BigRational> = q.coords().iter().map(|c| -c).collect();
            col.push(BigRational::one());
            col.push(BigRational::one());
            columns.push(col);
            owners.push(pos.len() + j);
        }
    }

    // Farkas alternative of the margin-1 system `A v >= 1` (v free): find
    // multipliers with `A^T m = 0` and `sum(m) = 1`. Feasible multipliers
    // refute separability; if they cannot exist, the dual values of the
    // refutation-of-the-refutation rescale into a margin-1 separator.
    let rows = dim + 2;
    let mut a: Vec<Vec<BigRational>> = vec![Vec::with_capacity(columns.len()); rows];
    for col in &columns {
        for (r, v) in col.iter().enumerate() {
            a[r].push(v.clone());
        }
    }
    let mut b = vec![BigRational::zero(); rows];
    b[rows - 1] = BigRational::one();

    match phase1_feasibility(&a, &b) {
        Phase1::Feasible { x } => {
            let mut multipliers = vec![BigRational::zero(); pos.len() + neg.len()];
            for (col, owner) in owners.iter().enumerate() {
                multipliers[*owner] = x[col].clone();
            }
            let witness = FarkasWitness { multipliers };
            debug_assert!(witness.verify(pos, neg));
            Ok(SeparabilityResult::Infeasible(witness))
        }
        Phase1::Infeasible { duals } => {
            // duals = (u, t) satisfy u.a_i + t <= 0 for every homogenized
            // row a_i and t > 0, so v = -u/t solves a_i.v >= 1.
            let t = duals[rows - 1].clone();
            debug_assert!(t.is_positive());
            // v = -(u, s)/t satisfies every homogenized margin row
            // `(p, -1).v >= 1` / `(-q, 1).v >= 1`, so v is literally the
            // stacked `(direction, threshold)` of a margin-1 separator.
            let v: Vec<BigRational> = duals[..rows - 1].iter().map(|u| -(u / &t)).collect();
            let direction = v[..dim].to_vec();
            let threshold = v[dim].clone();
            let classifier = LinearClassifier::new(direction, threshold);
            debug_assert!(is_margin_one_separator(&classifier, pos, neg));
            Ok(SeparabilityResult::Separator(classifier))
        }
    }
}

/// Checks the margin-1 inequalities exactly.
pub fn is_margin_one_separator(c: &LinearClassifier, pos: &[Point], neg: &[Point]) -> bool {
    let one = BigRational::one();
    pos.iter().all(|p| c.decision(p) >= one)
        && neg.iter().all(|q| c.decision(q) <= -one.clone())
}

fn validate_indices(s: &LabeledDataset, set: &IndexSet) -> Result<(), SeparabilityError> {
    for i in set.iter() {
        if i >= s.len() {
            return Err(SeparabilityError::IndexOutOfRange {
                index: i,
                len: s.len(),
            });
        }
    }
    Ok(())
}

fn validate_disjoint(a: &IndexSet, b: &IndexSet) -> Result<(), SeparabilityError> {
    if let Some(i) = a.intersection(b).iter().next() {
        return Err(SeparabilityError::OverlappingSets { index: i });
    }
    Ok(())
}

fn ensure_separable(
    s: &LabeledDataset,
    a_plus: &IndexSet,
    a_minus: &IndexSet,
) -> Result<(), SeparabilityError> {
    let sep = check_separability(&s.select(a_plus), &s.select(a_minus))?;
    if sep.is_separable() {
        Ok(())
    } else {
        Err(SeparabilityError::NotSeparable)
    }
}

/// Membership of one point in the leak set, assuming the inputs were
/// already validated and `(a_plus, a_minus)` is separable.
fn leak_contains_unchecked(
    s: &LabeledDataset,
    a_plus: &IndexSet,
    a_minus: &IndexSet,
    x: usize,
) -> bool {
    if a_minus.contains(x) {
        return true;
    }
    if a_plus.contains(x) {
        return true;
    }
    let mut pos = s.select(a_plus);
    pos.push(s.point(x).clone());
    let neg = s.select(a_minus);
    check_separability(&pos, &neg)
        .expect("validated dimensions")
        .is_separable()
}

/// True iff `x` can be labeled positive by some classifier consistent with
/// `(a_plus, a_minus)`, or is itself a disclosed negative.
///
/// Errors with [`SeparabilityError::NotSeparable`] when the reference
/// labeling admits no consistent classifier at all.
pub fn leak_contains(
    s: &LabeledDataset,
    a_plus: &IndexSet,
    a_minus: &IndexSet,
    x: usize,
) -> Result<bool, SeparabilityError> {
    validate_indices(s, a_plus)?;
    validate_indices(s, a_minus)?;
    if x >= s.len() {
        return Err(SeparabilityError::IndexOutOfRange {
            index: x,
            len: s.len(),
        });
    }
    validate_disjoint(a_plus, a_minus)?;
    ensure_separable(s, a_plus, a_minus)?;
    Ok(leak_contains_unchecked(s, a_plus, a_minus, x))
}

/// The full leak set: every universe point some consistent classifier can
/// label positive, together with the disclosed negatives.
///
/// Always contains `a_plus` and `a_minus`; with no negatives disclosed it
/// is the whole universe.
pub fn leak_set(
    s: &LabeledDataset,
    a_plus: &IndexSet,
    a_minus: &IndexSet,
) -> Result<IndexSet, SeparabilityError> {
    validate_indices(s, a_plus)?;
    validate_indices(s, a_minus)?;
    validate_disjoint(a_plus, a_minus)?;
    ensure_separable(s, a_plus, a_minus)?;
    Ok(IndexSet::from_iter(
        (0..s.len()).filter(|&x| leak_contains_unchecked(s, a_plus, a_minus, x)),
    ))
}

/// The critical points of `a_plus` within `s`: the non-members that leak
/// even when every other non-member is disclosed as negative.
///
/// Equivalently (and tested as) the vertices of the safe region of
/// `(a_plus, complement)`. Disclosing `a_plus` plus exactly this set is
/// the minimum any correct disclosure protocol reveals, and the leak set
/// of that disclosure is again `a_plus` plus this set (a fixed point).
///
/// The definition is taken literally in degenerate configurations too: for
/// collinear data `{(-2,0)-, (-1,0)-, (1,0)+, (2,0)+}` only the inner
/// negative `(-1,0)` is critical, because relabeling the outer `(-2,0)`
/// positive while keeping `(-1,0)` negative is inconsistent.
pub fn critical_points(
    s: &LabeledDataset,
    a_plus: &IndexSet,
) -> Result<IndexSet, SeparabilityError> {
    validate_indices(s, a_plus)?;
    let rest = a_plus.complement(s.len());
    ensure_separable(s, a_plus, &rest)?;
    let pos_points = s.select(a_plus);
    Ok(IndexSet::from_iter(rest.iter().filter(|&x| {
        let mut pos = pos_points.clone();
        pos.push(s.point(x).clone());
        let mut neg_idx = rest.clone();
        neg_idx.remove(x);
        let neg = s.select(&neg_idx);
        check_separability(&pos, &neg)
            .expect("validated dimensions")
            .is_separable()
    })))
}

/// Vertices of the safe region of `(s_plus, complement)`.
///
/// This is the same set as [`critical_points`]; the alias exists because
/// callers reasoning geometrically ask for "the vertices of what is safe
/// to withhold" while callers reasoning about disclosure ask for "the
/// points that would leak anyway".
pub fn vertices_of_safe(
    s: &LabeledDataset,
    s_plus: &IndexSet,
) -> Result<IndexSet, SeparabilityError> {
    critical_points(s, s_plus)
}

/// True iff `x` is *safe* for `(a_plus, a_minus)`: every direction that
/// ranks all of `a_plus` at least as high as all of `a_minus` keeps `x` at
/// or below the top of `a_minus`. Safe points can be withheld without any
/// consistent classifier ever claiming them as positive.
///
/// Requires at least one negative (with none, nothing is safe and the
/// notion degenerates) and a separable reference labeling.
pub fn safe_contains(
    a_plus: &[Point],
    a_minus: &[Point],
    x: &Point,
) -> Result<bool, SeparabilityError> {
    let dim = common_dim(a_plus, a_minus)?;
    if a_minus.is_empty() {
        return Err(SeparabilityError::EmptyNegatives);
    }
    let dim = dim.expect("negatives are nonempty");
    if x.dim() != dim {
        return Err(SeparabilityError::DimensionMismatch {
            expected: dim,
            got: x.dim(),
        });
    }
    if !check_separability(a_plus, a_minus)?.is_separable() {
        return Err(SeparabilityError::NotSeparable);
    }

    // x is unsafe iff some direction d ranks every positive at least as
    // high as every negative and still gives x a strictly higher score
    // than every negative; after scaling, the strict part becomes
    // `d.(x - q) >= 1`. Safety is the infeasibility of that system, i.e.
    // feasibility of its Farkas alternative.
    let mut columns: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for p in a_plus {
        for q in a_minus {
            let row: Vec<BigRational> = p
                .coords()
                .iter()
                .zip(q.coords())
                .map(|(a, b)| a - b)
                .collect();
            columns.push((row, BigRational::zero()));
        }
    }
    for q in a_minus {
        let row: Vec<BigRational> = x
            .coords()
            .iter()
            .zip(q.coords())
            .map(|(a, b)| a - b)
            .collect();
        columns.push((row, BigRational::one()));
    }

    let rows = dim + 1;
    let mut a: Vec<Vec<BigRational>> = vec![Vec::with_capacity(columns.len()); rows];
    for (row, rhs) in &columns {
        for (r, v) in row.iter().enumerate() {
            a[r].push(v.clone());
        }
        a[rows - 1].push(rhs.clone());
    }
    let mut b = vec![BigRational::zero(); rows];
    b[rows - 1] = BigRational::one();

    Ok(phase1_feasibility(&a, &b).is_feasible())
}

/// Leak membership decided through the homogenization cone instead of the
/// margin-1 alternative system.
///
/// The consistent classifiers of `(a_plus, a_minus)` correspond to the
/// linear functionals strictly positive on the homogenized generators
/// `(p, 1)` for positives and `(-q, -1)` for negatives; a point `z`
/// outside `a_minus` leaks exactly when `(-z, -1)` lies outside the cone
/// those generators span. This is a deliberately different reduction from
/// [`leak_contains`] and serves as its cross-check.
pub fn cone_leak_oracle(
    s: &LabeledDataset,
    a_plus: &IndexSet,
    a_minus: &IndexSet,
    z: usize,
) -> Result<bool, SeparabilityError> {
    validate_indices(s, a_plus)?;
    validate_indices(s, a_minus)?;
    if z >= s.len() {
        return Err(SeparabilityError::IndexOutOfRange {
            index: z,
            len: s.len(),
        });
    }
    validate_disjoint(a_plus, a_minus)?;
    ensure_separable(s, a_plus, a_minus)?;
    if a_minus.contains(z) {
        return Ok(true);
    }

    let dim = s.dim();
    let rows = dim + 1;
    let mut a: Vec<Vec<BigRational>> = vec![Vec::new(); rows];
    let mut push_generator = |coords: Vec<BigRational>, last: BigRational| {
        for (r, v) in coords.into_iter().enumerate() {
            a[r].push(v);
        }
        a[rows - 1].push(last);
    };
    for i in a_plus.iter() {
        push_generator(s.point(i).coords().to_vec(), BigRational::one());
    }
    for j in a_minus.iter() {
        push_generator(
            s.point(j).coords().iter().map(|c| -c).collect(),
            -BigRational::one(),
        );
    }
    let mut b: Vec<BigRational> = s.point(z).coords().iter().map(|c| -c).collect();
    b.push(-BigRational::one());

    // Inside the cone: some nonnegative combination of generators reaches
    // (-z, -1), so every consistent classifier scores z negative.
    Ok(!phase1_feasibility(&a, &b).is_feasible())
}

/// Strict separability of two planar point sets decided with convex-hull
/// geometry only — no linear programming anywhere on this path.
///
/// Agrees with [`check_separability`] on every 2-D input: two finite sets
/// admit a strict affine separator exactly when their closed convex hulls
/// are disjoint.
pub fn hull_oracle_2d(pos: &[Point], neg: &[Point]) -> Result<bool, SeparabilityError> {
    if let Some(dim) = common_dim(pos, neg)? {
        if dim != 2 {
            return Err(SeparabilityError::DimensionMismatch {
                expected: 2,
                got: dim,
            });
        }
    }
    Ok(hull2d::hulls_disjoint(pos, neg))
}
