//! Exact integer predicates on planar points.
//!
//! Every predicate reduces to the sign of a 2x2 determinant of coordinate
//! differences, evaluated in `i128`. With coordinates bounded by
//! [`COORD_LIMIT`] the determinant never exceeds 2^64 in magnitude, so no
//! result depends on rounding. Angles are never materialized: an oriented
//! angle is represented only by its sign and by circular direction order.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num::integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible absolute coordinate value (2^30).
pub const COORD_LIMIT: i64 = 1 << 30;

/// A point with exact integer coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// True when both coordinates respect [`COORD_LIMIT`].
    pub fn within_limit(&self) -> bool {
        self.x.abs() <= COORD_LIMIT && self.y.abs() <= COORD_LIMIT
    }

    fn minus(self, other: Point) -> (i128, i128) {
        (
            self.x as i128 - other.x as i128,
            self.y as i128 - other.y as i128,
        )
    }
}

impl From<[i64; 2]> for Point {
    fn from(a: [i64; 2]) -> Self {
        Point::new(a[0], a[1])
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Exact sign of a predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(v: i128) -> Self {
        match v.cmp(&0) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("direction point {0} coincides with the pivot")]
    DirectionAtPivot(Point),
    #[error("points {0} and {1} lie on the same ray from the pivot {2}")]
    CollinearDirections(Point, Point, Point),
    #[error("angle vertex {0} coincides with one of its arms")]
    DegenerateAngle(Point),
}

#[inline]
fn cross(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

/// Sign of `(q - p) x (r - p)`; positive when `r` lies counterclockwise of
/// the ray from `p` through `q`.
pub fn orientation(p: Point, q: Point, r: Point) -> Sign {
    Sign::of(cross(q.minus(p), r.minus(p)))
}

/// Sign of the oriented angle from ray `y->x` to ray `y->z`, measured
/// counterclockwise in `(-pi, pi)`.
pub fn angle_sign(x: Point, y: Point, z: Point) -> Result<Sign, GeometryError> {
    if x == y || z == y {
        return Err(GeometryError::DegenerateAngle(y));
    }
    Ok(orientation(y, x, z))
}

/// `p` lies on the closed segment `ab`, given that `a`, `b`, `p` are collinear.
fn within_box(a: Point, b: Point, p: Point) -> bool {
    a.x.min(b.x) <= p.x && p.x <= a.x.max(b.x) && a.y.min(b.y) <= p.y && p.y <= a.y.max(b.y)
}

/// True iff the closed segments `ab` and `cd` share no point.
///
/// Shared endpoints, proper crossings and touching (including collinear
/// overlap) all count as intersecting.
pub fn segments_disjoint(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);

    if o1 != o2
        && o3 != o4
        && o1 != Sign::Zero
        && o2 != Sign::Zero
        && o3 != Sign::Zero
        && o4 != Sign::Zero
    {
        return false;
    }
    if o1 == Sign::Zero && within_box(a, b, c) {
        return false;
    }
    if o2 == Sign::Zero && within_box(a, b, d) {
        return false;
    }
    if o3 == Sign::Zero && within_box(c, d, a) {
        return false;
    }
    if o4 == Sign::Zero && within_box(c, d, b) {
        return false;
    }
    true
}

/// Convex hull in counterclockwise order, collinear boundary points dropped.
///
/// Returns one point for a singleton input and the two extremes for a
/// collinear input.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2
            && orientation(lower[lower.len() - 2], lower[lower.len() - 1], p) != Sign::Positive
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && orientation(upper[upper.len() - 2], upper[upper.len() - 1], p) != Sign::Positive
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.truncate(1);
    }
    lower
}

/// True iff `p` lies in the closed convex hull of `set`.
///
/// # Panics
///
/// Panics when `set` is empty.
pub fn point_in_convex_hull(p: Point, set: &[Point]) -> bool {
    assert!(!set.is_empty(), "convex hull of an empty set");
    let hull = convex_hull(set);
    match hull.len() {
        1 => hull[0] == p,
        2 => orientation(hull[0], hull[1], p) == Sign::Zero && within_box(hull[0], hull[1], p),
        k => (0..k).all(|i| orientation(hull[i], hull[(i + 1) % k], p) != Sign::Negative),
    }
}

/// All points pairwise distinct and no three collinear (brute force).
pub fn in_general_position(points: &[Point]) -> bool {
    first_degeneracy(points).is_none()
}

/// A witness against general position: a repeated pair or a collinear triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    Duplicate(usize, usize),
    Collinear(usize, usize, usize),
}

pub fn first_degeneracy(points: &[Point]) -> Option<Degeneracy> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Some(Degeneracy::Duplicate(i, j));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orientation(points[i], points[j], points[k]) == Sign::Zero {
                    return Some(Degeneracy::Collinear(i, j, k));
                }
            }
        }
    }
    None
}

/// Counterclockwise order of direction vectors starting at the positive x axis.
pub fn ccw_direction_cmp(a: (i128, i128), b: (i128, i128)) -> Ordering {
    let half = |v: (i128, i128)| {
        if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

/// Index form of [`widest_gap_extremes`]: positions into `dirs`.
///
/// Two directions on the same ray from `pivot` are rejected. Opposite rays
/// are accepted; the gap between them is exactly a half-turn.
pub fn widest_gap_indices(
    pivot: Point,
    dirs: &[Point],
) -> Result<Option<(usize, usize)>, GeometryError> {
    let mut seen: HashSet<(i128, i128)> = HashSet::with_capacity(dirs.len());
    let mut ray_owner: Vec<usize> = Vec::with_capacity(dirs.len());
    for (i, &d) in dirs.iter().enumerate() {
        if d == pivot {
            return Err(GeometryError::DirectionAtPivot(d));
        }
        let (dx, dy) = d.minus(pivot);
        let g = dx.gcd(&dy);
        if !seen.insert((dx / g, dy / g)) {
            let other = ray_owner
                .iter()
                .copied()
                .find(|&j| orientation(pivot, dirs[j], d) == Sign::Zero)
                .expect("a recorded ray has an owner");
            return Err(GeometryError::CollinearDirections(dirs[other], d, pivot));
        }
        ray_owner.push(i);
    }

    let k = dirs.len();
    if k == 0 {
        return Ok(None);
    }
    if k == 1 {
        return Ok(Some((0, 0)));
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| ccw_direction_cmp(dirs[a].minus(pivot), dirs[b].minus(pivot)));
    for i in 0..k {
        let before = order[i];
        let after = order[(i + 1) % k];
        if cross(dirs[before].minus(pivot), dirs[after].minus(pivot)) < 0 {
            return Ok(Some((after, before)));
        }
    }
    Ok(None)
}

/// Angular extremes of `dirs` seen from `pivot`, when they fit in a cone
/// narrower than a half-turn.
///
/// Returns `(first, last)`: the direction right after the unique gap wider
/// than a half-turn and the direction right before it, so that every input
/// lies in the closed counterclockwise cone from `first` to `last`. Returns
/// `None` when no such gap exists.
pub fn widest_gap_extremes(
    pivot: Point,
    dirs: &[Point],
) -> Result<Option<(Point, Point)>, GeometryError> {
    Ok(widest_gap_indices(pivot, dirs)?.map(|(f, l)| (dirs[f], dirs[l])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(p(0, 0), p(1, 0), p(0, 1)), Sign::Positive);
        assert_eq!(orientation(p(0, 0), p(1, 0), p(2, 0)), Sign::Zero);
        assert_eq!(orientation(p(0, 0), p(0, 1), p(1, 0)), Sign::Negative);
    }

    #[test]
    fn orientation_at_coordinate_limit() {
        let l = COORD_LIMIT;
        assert_eq!(orientation(p(-l, -l), p(l, -l), p(l, l)), Sign::Positive);
        assert_eq!(orientation(p(-l, -l), p(l, l), p(0, 0)), Sign::Zero);
        assert_eq!(orientation(p(-l, -l), p(l, l), p(0, 1)), Sign::Positive);
    }

    #[test]
    fn angle_sign_examples() {
        assert_eq!(angle_sign(p(1, 0), p(0, 0), p(0, 1)), Ok(Sign::Positive));
        assert_eq!(angle_sign(p(0, 1), p(0, 0), p(1, 0)), Ok(Sign::Negative));
        assert_eq!(angle_sign(p(1, 1), p(0, 0), p(2, 2)), Ok(Sign::Zero));
        assert!(angle_sign(p(0, 0), p(0, 0), p(1, 0)).is_err());
        assert!(angle_sign(p(1, 0), p(0, 0), p(0, 0)).is_err());
    }

    #[test]
    fn segments_disjoint_examples() {
        assert!(segments_disjoint(p(0, 0), p(1, 0), p(0, 1), p(1, 1)));
        assert!(!segments_disjoint(p(0, 0), p(2, 2), p(0, 2), p(2, 0)));
        assert!(!segments_disjoint(p(0, 0), p(1, 0), p(1, 0), p(2, 1)));
    }

    #[test]
    fn segments_touching_and_overlapping() {
        // endpoint on the interior of the other segment
        assert!(!segments_disjoint(p(0, 0), p(2, 0), p(1, 0), p(1, 5)));
        // collinear overlap
        assert!(!segments_disjoint(p(0, 0), p(3, 0), p(2, 0), p(5, 0)));
        // collinear but separated
        assert!(segments_disjoint(p(0, 0), p(1, 0), p(2, 0), p(5, 0)));
        // lines cross outside both segments
        assert!(segments_disjoint(p(0, 0), p(1, 1), p(3, 0), p(2, 1)));
    }

    #[test]
    fn hull_membership_examples() {
        assert!(point_in_convex_hull(
            p(0, 0),
            &[p(1, 0), p(0, 1), p(-1, -1)]
        ));
        assert!(!point_in_convex_hull(p(5, 5), &[p(0, 0), p(1, 0), p(0, 1)]));
        assert!(!point_in_convex_hull(p(0, 0), &[p(1, 1)]));
        assert!(point_in_convex_hull(p(1, 1), &[p(1, 1)]));
        assert!(point_in_convex_hull(p(1, 1), &[p(0, 0), p(2, 2)]));
        assert!(!point_in_convex_hull(p(3, 3), &[p(0, 0), p(2, 2)]));
        assert!(!point_in_convex_hull(p(1, 0), &[p(0, 0), p(2, 2)]));
        // boundary counts as inside
        assert!(point_in_convex_hull(p(1, 0), &[p(0, 0), p(2, 0), p(0, 2)]));
    }

    #[test]
    fn general_position_examples() {
        // triples of the first example checked one by one
        let pts = [p(0, 0), p(1, 0), p(0, 1), p(2, 3)];
        for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
            assert_ne!(orientation(pts[i], pts[j], pts[k]), Sign::Zero);
        }
        assert!(in_general_position(&pts));
        assert!(!in_general_position(&[p(0, 0), p(1, 1), p(2, 2)]));
        assert!(!in_general_position(&[p(0, 0), p(0, 0)]));
        assert_eq!(
            first_degeneracy(&[p(0, 0), p(5, 1), p(1, 1), p(2, 2)]),
            Some(Degeneracy::Collinear(0, 2, 3))
        );
    }

    #[test]
    fn widest_gap_examples() {
        let o = p(0, 0);
        assert_eq!(
            widest_gap_extremes(o, &[p(1, 1), p(0, 1), p(-1, 1)]),
            Ok(Some((p(1, 1), p(-1, 1))))
        );
        assert_eq!(
            widest_gap_extremes(o, &[p(-1, 1), p(1, 1), p(0, 1)]),
            Ok(Some((p(1, 1), p(-1, 1))))
        );
        // opposite rays bound a gap of exactly a half-turn, which is not wider
        assert_eq!(
            widest_gap_extremes(o, &[p(1, 0), p(0, 1), p(-1, 0), p(0, -1)]),
            Ok(None)
        );
        assert_eq!(widest_gap_extremes(o, &[p(1, 0), p(-3, 0)]), Ok(None));
        assert_eq!(
            widest_gap_extremes(o, &[p(1, 0), p(-1, 2), p(-1, -2)]),
            Ok(None)
        );
        assert_eq!(
            widest_gap_extremes(o, &[p(2, 1)]),
            Ok(Some((p(2, 1), p(2, 1))))
        );
        assert!(widest_gap_extremes(o, &[p(0, 0)]).is_err());
        assert!(widest_gap_extremes(o, &[p(1, 1), p(3, 3)]).is_err());
    }

    #[test]
    fn widest_gap_wraps_across_positive_axis() {
        // cone from -45 to +45 degrees straddles the sort origin
        let o = p(0, 0);
        assert_eq!(
            widest_gap_extremes(o, &[p(1, 1), p(5, -1), p(1, -1), p(4, 1)]),
            Ok(Some((p(1, -1), p(1, 1))))
        );
    }

    fn small_point() -> impl Strategy<Value = Point> {
        (-50i64..50, -50i64..50).prop_map(|(x, y)| Point::new(x, y))
    }

    proptest! {
        #[test]
        fn orientation_symmetries(a in small_point(), b in small_point(), c in small_point()) {
            prop_assert_eq!(orientation(a, b, c), orientation(a, c, b).reversed());
            prop_assert_eq!(orientation(a, b, c), orientation(b, c, a));
        }

        #[test]
        fn disjointness_symmetric(a in small_point(), b in small_point(), c in small_point(), d in small_point()) {
            prop_assume!(a != b && c != d);
            let r = segments_disjoint(a, b, c, d);
            prop_assert_eq!(r, segments_disjoint(c, d, a, b));
            prop_assert_eq!(r, segments_disjoint(b, a, c, d));
            prop_assert_eq!(r, segments_disjoint(a, b, d, c));
        }

        #[test]
        fn four_points_trichotomy(a in small_point(), b in small_point(), c in small_point(), d in small_point()) {
            prop_assume!(in_general_position(&[a, b, c, d]));
            // distinct points: no shared endpoint, so crossing xor disjoint
            let crossing = orientation(a, b, c) != orientation(a, b, d)
                && orientation(c, d, a) != orientation(c, d, b);
            prop_assert_eq!(crossing, !segments_disjoint(a, b, c, d));
        }

        #[test]
        fn widest_gap_cone_contains_all(pivot in small_point(), dirs in prop::collection::vec(small_point(), 1..8)) {
            let mut all = vec![pivot];
            all.extend(dirs.iter().copied());
            prop_assume!(in_general_position(&all));
            if let Some((first, last)) = widest_gap_extremes(pivot, &dirs).unwrap() {
                for &d in &dirs {
                    prop_assert!(orientation(pivot, first, d) != Sign::Negative);
                    prop_assert!(orientation(pivot, d, last) != Sign::Negative);
                }
                prop_assert!(!point_in_convex_hull(pivot, &dirs));
            } else {
                prop_assert!(point_in_convex_hull(pivot, &dirs));
            }
        }
    }
}
