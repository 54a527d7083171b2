//! Exact convex-hull geometry in the plane.
//!
//! Two finite point sets are strictly linearly separable exactly when their
//! convex hulls are disjoint. This module decides hull disjointness with
//! rational orientation predicates and no linear programming at all, which
//! makes it an independent witness for the LP-based separability check.

use crate::dataset::Point;
use num_rational::BigRational;
use num_traits::Signed;

/// Sign of the cross product (b - a) x (c - a): positive for a left turn,
/// negative for a right turn, zero for collinear points.
fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    let (ax, ay) = (&a.coords()[0], &a.coords()[1]);
    let (bx, by) = (&b.coords()[0], &b.coords()[1]);
    let (cx, cy) = (&c.coords()[0], &c.coords()[1]);
    let cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    if cross.is_positive() {
        1
    } else if cross.is_negative() {
        -1
    } else {
        0
    }
}

/// Convex hull by Andrew's monotone chain, counter-clockwise, without
/// collinear interior vertices. Handles degenerate inputs: the hull of a
/// single point is that point and the hull of collinear points is the two
/// extreme endpoints.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::with_capacity(n);
    for p in pts.iter() {
        while lower.len() >= 2
            && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::with_capacity(n);
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    // Each chain ends where the other begins; drop the duplicates.
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn between_1d(a: &BigRational, b: &BigRational, x: &BigRational) -> bool {
    (a <= x && x <= b) || (b <= x && x <= a)
}

/// True if `x` lies on the closed segment `[a, b]`.
fn on_segment(a: &Point, b: &Point, x: &Point) -> bool {
    orient(a, b, x) == 0
        && between_1d(&a.coords()[0], &b.coords()[0], &x.coords()[0])
        && between_1d(&a.coords()[1], &b.coords()[1], &x.coords()[1])
}

/// True if closed segments `[a, b]` and `[c, d]` share a point, including
/// collinear overlap and endpoint contact.
fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// True if `x` lies in the closed convex hull given as a CCW vertex list.
fn hull_contains(hull: &[Point], x: &Point) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == *x,
        2 => on_segment(&hull[0], &hull[1], x),
        n => (0..n).all(|i| orient(&hull[i], &hull[(i + 1) % n], x) >= 0),
    }
}

fn hull_edges(hull: &[Point]) -> Vec<(usize, usize)> {
    match hull.len() {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        n => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    }
}

/// True if the closed convex hulls of the two point sets are disjoint.
///
/// An empty side has an empty hull and is disjoint from everything. The
/// test is exact: two hulls intersect iff some pair of boundary edges
/// crosses or one hull contains the other, and both conditions are decided
/// with rational predicates.
pub fn hulls_disjoint(a: &[Point], b: &[Point]) -> bool {
    if a.is_empty() || b.is_empty() {
        return true;
    }
    let ha = convex_hull(a);
    let hb = convex_hull(b);
    for &(i, j) in &hull_edges(&ha) {
        for &(k, l) in &hull_edges(&hb) {
            if segments_intersect(&ha[i], &ha[j], &hb[k], &hb[l]) {
                return false;
            }
        }
    }
    // No boundary crossing: the hulls intersect only by containment.
    if hull_contains(&hb, &ha[0]) || hull_contains(&ha, &hb[0]) {
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(&[x, y])
    }

    fn pq(coords: &[&str]) -> Point {
        Point::parse(coords).unwrap()
    }

    #[test]
    fn hull_of_square_with_interior_point() {
        let pts = vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2), p(1, 1)];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
        assert!(!hull.contains(&p(1, 1)));
    }

    #[test]
    fn hull_drops_collinear_edge_points() {
        let pts = vec![p(0, 0), p(1, 0), p(2, 0), p(1, 1)];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 3);
        assert!(!hull.contains(&p(1, 0)));
    }

    #[test]
    fn degenerate_hulls() {
        assert!(convex_hull(&[]).is_empty());
        assert_eq!(convex_hull(&[p(3, 4), p(3, 4)]), vec![p(3, 4)]);
        let seg = convex_hull(&[p(0, 0), p(2, 2), p(1, 1)]);
        assert_eq!(seg, vec![p(0, 0), p(2, 2)]);
    }

    #[test]
    fn separated_squares_are_disjoint() {
        let a = vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)];
        let b = vec![p(3, 0), p(4, 0), p(4, 1), p(3, 1)];
        assert!(hulls_disjoint(&a, &b));
    }

    #[test]
    fn touching_hulls_are_not_disjoint() {
        // Sharing a single corner point still means non-disjoint closed hulls.
        let a = vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)];
        let b = vec![p(1, 1), p(2, 1), p(2, 2), p(1, 2)];
        assert!(!hulls_disjoint(&a, &b));
    }

    #[test]
    fn nested_hulls_are_not_disjoint() {
        let outer = vec![p(0, 0), p(10, 0), p(10, 10), p(0, 10)];
        let inner = vec![p(4, 4), p(5, 4), p(5, 5)];
        assert!(!hulls_disjoint(&outer, &inner));
    }

    #[test]
    fn point_inside_segment_hull() {
        let seg = vec![p(0, 0), p(4, 4)];
        let single = vec![p(2, 2)];
        assert!(!hulls_disjoint(&seg, &single));
        let off = vec![p(2, 3)];
        assert!(hulls_disjoint(&seg, &off));
    }

    #[test]
    fn collinear_overlapping_segments() {
        let a = vec![p(0, 0), p(3, 0)];
        let b = vec![p(2, 0), p(5, 0)];
        assert!(!hulls_disjoint(&a, &b));
        let c = vec![p(4, 0), p(5, 0)];
        assert!(hulls_disjoint(&a, &c));
    }

    #[test]
    fn empty_side_is_disjoint() {
        assert!(hulls_disjoint(&[], &[p(1, 1)]));
        assert!(hulls_disjoint(&[], &[]));
    }

    #[test]
    fn rational_coordinates_are_exact() {
        // A point a hair off the segment is disjoint from it.
        let seg = vec![pq(&["0", "0"]), pq(&["1", "1"])];
        let near = vec![pq(&["1/2", "500000001/1000000000"])];
        assert!(hulls_disjoint(&seg, &near));
        let exact = vec![pq(&["1/2", "1/2"])];
        assert!(!hulls_disjoint(&seg, &exact));
    }
}
