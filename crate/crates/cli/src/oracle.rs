//! Independent recounts of disjoint edge pairs.
//!
//! The segment test here solves for the intersection parameters of the two
//! supporting lines instead of using orientation signs, so it shares no
//! code with the library predicate it cross-checks.

use std::collections::HashMap;

use djgraph::disjoint::dj_graph;
use djgraph::geometry::{convex_hull, Point};
use djgraph::graph::GeometricGraph;
use djgraph::verifier::convex_chord_oracle;
use serde::Serialize;

fn cross(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

fn sub(p: Point, q: Point) -> (i128, i128) {
    (p.x as i128 - q.x as i128, p.y as i128 - q.y as i128)
}

/// `num / den` lies in `[0, 1]`, for `den != 0`.
fn unit_interval(num: i128, den: i128) -> bool {
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    0 <= num && num <= den
}

/// Whether the closed segments `ab` and `cd` share a point.
pub fn segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool {
    let r = sub(b, a);
    let s = sub(d, c);
    let ca = sub(c, a);
    let den = cross(r, s);
    if den != 0 {
        // a + t r = c + u s
        let t = cross(ca, s);
        let u = cross(ca, r);
        return unit_interval(t, den) && unit_interval(u, den);
    }
    if cross(ca, r) != 0 {
        return false;
    }
    // collinear: compare projections on r
    let dot = |v: (i128, i128)| v.0 * r.0 + v.1 * r.1;
    let (lo, hi) = (0, dot(r));
    let (p, q) = (dot(ca), dot(sub(d, a)));
    p.max(q) >= lo && p.min(q) <= hi
}

pub fn brute_force_count(g: &GeometricGraph) -> u64 {
    let edges = g.edges();
    let mut count = 0;
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            let meet = segments_meet(
                g.point(e.u()),
                g.point(e.v()),
                g.point(f.u()),
                g.point(f.v()),
            );
            if !meet {
                count += 1;
            }
        }
    }
    count
}

/// Chord-rule count when every point lies on the convex hull.
pub fn chord_rule_count(g: &GeometricGraph) -> Option<u64> {
    let hull = convex_hull(g.points());
    if hull.len() != g.n() {
        return None;
    }
    let position: HashMap<Point, usize> = hull.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let chords: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (position[&g.point(e.u())], position[&g.point(e.v())]))
        .collect();
    Some(convex_chord_oracle(g.n(), &chords))
}

#[derive(Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ChordRule {
    Count(u64),
    Skipped(&'static str),
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub dj_graph: u64,
    pub brute_force: u64,
    pub chord_rule: ChordRule,
    pub agree: bool,
}

pub fn run_oracles(g: &GeometricGraph) -> OracleReport {
    let dj = dj_graph(g);
    let brute_force = brute_force_count(g);
    let chord_rule = match chord_rule_count(g) {
        Some(c) => ChordRule::Count(c),
        None => ChordRule::Skipped("points are not in convex position"),
    };
    let agree = brute_force == dj && chord_rule_count_agrees(&chord_rule, dj);
    OracleReport {
        dj_graph: dj,
        brute_force,
        chord_rule,
        agree,
    }
}

fn chord_rule_count_agrees(rule: &ChordRule, dj: u64) -> bool {
    match rule {
        ChordRule::Count(c) => *c == dj,
        ChordRule::Skipped(_) => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn parametric_test_cases() {
        // proper crossing
        assert!(segments_meet(p(0, 0), p(4, 4), p(0, 4), p(4, 0)));
        // shared endpoint
        assert!(segments_meet(p(0, 0), p(4, 4), p(4, 4), p(9, 1)));
        // T-junction
        assert!(segments_meet(p(0, 0), p(4, 0), p(2, 0), p(2, 5)));
        // parallel apart
        assert!(!segments_meet(p(0, 0), p(4, 0), p(0, 1), p(4, 1)));
        // collinear apart and overlapping
        assert!(!segments_meet(p(0, 0), p(1, 1), p(2, 2), p(3, 3)));
        assert!(segments_meet(p(0, 0), p(2, 2), p(1, 1), p(3, 3)));
        // lines cross outside both segments
        assert!(!segments_meet(p(0, 0), p(1, 0), p(3, 1), p(3, 5)));
    }

    #[test]
    fn interior_point_skips_chord_rule() {
        let g = GeometricGraph::new(
            vec![p(0, 0), p(10, 0), p(0, 10), p(2, 3)],
            &[(0, 1), (2, 3), (1, 2)],
        )
        .unwrap();
        let r = run_oracles(&g);
        assert!(matches!(r.chord_rule, ChordRule::Skipped(_)));
        assert_eq!(r.brute_force, r.dj_graph);
        assert!(r.agree);
    }
}
