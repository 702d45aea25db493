//! Deterministic constructions and seeded random instances.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with a 64-bit value,
//! which yields the same stream on every platform. Edge coins are drawn as
//! `uniform(0..den) < num` for an edge probability `num/den`, over vertex
//! pairs in lexicographic order.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::geometry::{orientation, Point, Sign, COORD_LIMIT};
use crate::graph::{GeometricGraph, GraphError};

/// Default half-width of the sampling box for general-position instances.
pub const DEFAULT_BOX: i64 = 1_000_000;

/// Resampling attempts allowed per point before giving up.
pub const MAX_POINT_ATTEMPTS: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("G(n,k) needs n and k of different parity, got n={n}, k={k}")]
    Parity { n: usize, k: usize },
    #[error("G(n,k) needs n - 2 > k > {min_exclusive}, got n={n}, k={k}")]
    Range {
        n: usize,
        k: usize,
        min_exclusive: usize,
    },
    #[error("{what} needs n >= {min}, got {n}")]
    TooSmall {
        what: &'static str,
        n: usize,
        min: usize,
    },
    #[error("{n} points do not fit on the integer parabola within the coordinate limit")]
    CoordinateOverflow { n: usize },
    #[error("sampling box {0} exceeds the coordinate limit or is not positive")]
    BadBox(i64),
    #[error("could not place point {index} in general position after {attempts} attempts")]
    GeneralPositionExhausted { index: usize, attempts: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An edge probability `num/den` with `0 <= num <= den`, `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Probability {
    num: u64,
    den: u64,
}

impl Probability {
    pub fn new(num: u64, den: u64) -> Option<Self> {
        (den > 0 && num <= den).then(|| {
            let g = gcd(num, den);
            Probability {
                num: num / g,
                den: den / g,
            }
        })
    }

    pub const ONE: Probability = Probability { num: 1, den: 1 };
    pub const ZERO: Probability = Probability { num: 0, den: 1 };

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    fn flip(&self, rng: &mut ChaCha8Rng) -> bool {
        rng.gen_range(0..self.den) < self.num
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Probability {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid probability {s:?}: expected p/q with 0 <= p <= q");
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: u64 = n.parse().map_err(|_| bad())?;
        let d: u64 = d.parse().map_err(|_| bad())?;
        Probability::new(n, d).ok_or_else(bad)
    }
}

impl Serialize for Probability {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Probability {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which admissible `k` values [`extremal_gnk_with`] accepts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KRange {
    /// `n - 2 > k > 2`
    #[default]
    Strict,
    /// `n - 2 > k >= 2`, admitting the `k = 2` member of the family
    IncludeTwo,
}

/// A fully determined generator call; regenerating it reproduces the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GenSpec {
    ExtremalGnk {
        n: usize,
        k: usize,
        #[serde(default)]
        k_range: KRange,
    },
    DisjointStars {
        n: usize,
    },
    ConvexComplete {
        n: usize,
    },
    RandomConvex {
        n: usize,
        p: Probability,
        seed: u64,
    },
    RandomGeneral {
        n: usize,
        p: Probability,
        seed: u64,
        #[serde(rename = "box")]
        coord_box: i64,
    },
}

impl GenSpec {
    pub fn generate(&self) -> Result<GeometricGraph, GenError> {
        match *self {
            GenSpec::ExtremalGnk { n, k, k_range } => extremal_gnk_with(n, k, k_range),
            GenSpec::DisjointStars { n } => disjoint_stars(n),
            GenSpec::ConvexComplete { n } => convex_complete(n),
            GenSpec::RandomConvex { n, p, seed } => random_convex_graph(n, p, seed),
            GenSpec::RandomGeneral {
                n,
                p,
                seed,
                coord_box,
            } => random_general_graph(n, p, seed, coord_box),
        }
    }

    pub fn name(&self) -> String {
        match self {
            GenSpec::ExtremalGnk { n, k, .. } => format!("G_{{{n},{k}}}"),
            GenSpec::DisjointStars { n } => format!("two disjoint stars S_{n}"),
            GenSpec::ConvexComplete { n } => format!("convex K_{n}"),
            GenSpec::RandomConvex { n, p, seed } => {
                format!("random convex n={n} p={p} seed={seed}")
            }
            GenSpec::RandomGeneral {
                n,
                p,
                seed,
                coord_box,
            } => format!("random general n={n} p={p} seed={seed} box={coord_box}"),
        }
    }
}

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of instance `index` under `master`: `splitmix64(master ^ splitmix64(index))`.
/// Depends only on its arguments, so serial and parallel runs agree.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

/// `n` points in strictly convex position, listed counterclockwise.
///
/// Points sit on the parabola `(t, t^2)` for `t = i - floor(n/2)`, sheared by
/// `(x, y) -> (x, x + y)`.
pub fn convex_position_points(n: usize) -> Result<Vec<Point>, GenError> {
    if n < 3 {
        return Err(GenError::TooSmall {
            what: "convex position",
            n,
            min: 3,
        });
    }
    let half = (n / 2) as i64;
    let mut pts = Vec::with_capacity(n);
    for i in 0..n as i64 {
        let t = i - half;
        let y = t.checked_mul(t).and_then(|sq| sq.checked_add(t));
        match y {
            Some(y) if y.abs() <= COORD_LIMIT && t.abs() <= COORD_LIMIT => {
                pts.push(Point::new(t, y))
            }
            _ => return Err(GenError::CoordinateOverflow { n }),
        }
    }
    Ok(pts)
}

fn convex_graph(n: usize, edges: &[(usize, usize)]) -> Result<GeometricGraph, GenError> {
    Ok(GeometricGraph::new(convex_position_points(n)?, edges)?)
}

/// The convex graph `G_{n,k}`: `x_i x_j` whenever `j - i` is congruent mod `n`
/// to one of the `k + 2` offsets `(n-k-1)/2, ..., (n+k+1)/2`.
pub fn extremal_gnk(n: usize, k: usize) -> Result<GeometricGraph, GenError> {
    extremal_gnk_with(n, k, KRange::Strict)
}

pub fn extremal_gnk_with(n: usize, k: usize, range: KRange) -> Result<GeometricGraph, GenError> {
    if (n + k).is_multiple_of(2) {
        return Err(GenError::Parity { n, k });
    }
    let min_exclusive = match range {
        KRange::Strict => 2,
        KRange::IncludeTwo => 1,
    };
    if k <= min_exclusive || n < k + 3 {
        return Err(GenError::Range {
            n,
            k,
            min_exclusive,
        });
    }
    let lo = (n - k - 1) / 2;
    let hi = (n + k).div_ceil(2);
    let mut edges = Vec::new();
    for i in 0..n {
        for offset in lo..=hi {
            let j = (i + offset) % n;
            if i < j {
                edges.push((i, j));
            }
        }
    }
    convex_graph(n, &edges)
}

pub fn convex_complete(n: usize) -> Result<GeometricGraph, GenError> {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    convex_graph(n, &edges)
}

/// Two stars `S_n` on consecutive arcs of one convex polygon: centers at
/// positions `0` and `n + 1`, leaves on the arcs that follow them.
pub fn disjoint_stars(n: usize) -> Result<GeometricGraph, GenError> {
    if n < 1 {
        return Err(GenError::TooSmall {
            what: "disjoint stars",
            n,
            min: 1,
        });
    }
    let mut edges: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    edges.extend((n + 2..=2 * n + 1).map(|j| (n + 1, j)));
    convex_graph(2 * n + 2, &edges)
}

fn random_edges(n: usize, p: Probability, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if p.flip(rng) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Convex-position points with each chord present independently with probability `p`.
pub fn random_convex_graph(
    n: usize,
    p: Probability,
    seed: u64,
) -> Result<GeometricGraph, GenError> {
    let points = convex_position_points(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = random_edges(n, p, &mut rng);
    Ok(GeometricGraph::new(points, &edges)?)
}

/// Uniform integer points in `[-box, box]^2` kept in general position by
/// resampling any point that repeats or is collinear with two earlier ones;
/// edges as in [`random_convex_graph`].
pub fn random_general_graph(
    n: usize,
    p: Probability,
    seed: u64,
    coord_box: i64,
) -> Result<GeometricGraph, GenError> {
    if coord_box <= 0 || coord_box > COORD_LIMIT {
        return Err(GenError::BadBox(coord_box));
    }
    if n < 1 {
        return Err(GenError::TooSmall {
            what: "random general graph",
            n,
            min: 1,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Point> = Vec::with_capacity(n);
    for index in 0..n {
        let mut attempts = 0;
        loop {
            if attempts == MAX_POINT_ATTEMPTS {
                return Err(GenError::GeneralPositionExhausted { index, attempts });
            }
            attempts += 1;
            let c = Point::new(
                rng.gen_range(-coord_box..=coord_box),
                rng.gen_range(-coord_box..=coord_box),
            );
            if fits(&points, c) {
                points.push(c);
                break;
            }
        }
    }
    let edges = random_edges(n, p, &mut rng);
    Ok(GeometricGraph::new(points, &edges)?)
}

fn fits(points: &[Point], c: Point) -> bool {
    for (i, &a) in points.iter().enumerate() {
        if a == c {
            return false;
        }
        for &b in &points[i + 1..] {
            if orientation(a, b, c) == Sign::Zero {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disjoint::dj_graph;
    use crate::geometry::{convex_hull, in_general_position};

    #[test]
    fn convex_points_are_on_their_hull_in_order() {
        for n in [3usize, 4, 5, 12, 31] {
            let pts = convex_position_points(n).unwrap();
            assert!(in_general_position(&pts));
            let hull = convex_hull(&pts);
            assert_eq!(hull.len(), n);
            for i in 0..n {
                let (a, b, c) = (pts[i], pts[(i + 1) % n], pts[(i + 2) % n]);
                assert_eq!(orientation(a, b, c), Sign::Positive);
            }
        }
        assert!(convex_position_points(2).is_err());
        assert!(convex_position_points(100_000).is_err());
    }

    #[test]
    fn gnk_parameter_validation() {
        assert_eq!(extremal_gnk(11, 3), Err(GenError::Parity { n: 11, k: 3 }));
        assert!(matches!(extremal_gnk(11, 2), Err(GenError::Range { .. })));
        assert!(extremal_gnk_with(11, 2, KRange::IncludeTwo).is_ok());
        assert!(extremal_gnk(12, 3).is_ok());
        assert!(extremal_gnk(6, 3).is_ok());
        // n - 2 > k fails
        assert!(matches!(extremal_gnk(5, 4), Err(GenError::Range { .. })));
        assert!(matches!(
            extremal_gnk_with(4, 1, KRange::IncludeTwo),
            Err(GenError::Range { .. })
        ));
    }

    #[test]
    fn gnk_shape() {
        for (n, k, e) in [(11, 2, 22), (12, 3, 30), (13, 4, 39), (6, 3, 15)] {
            let g = extremal_gnk_with(n, k, KRange::IncludeTwo).unwrap();
            assert_eq!(g.e(), e);
            assert!((0..n).all(|v| g.degree(v) == k + 2));
        }
    }

    #[test]
    fn random_graphs_are_reproducible() {
        let p = Probability::new(1, 2).unwrap();
        assert_eq!(
            random_convex_graph(10, p, 42).unwrap(),
            random_convex_graph(10, p, 42).unwrap()
        );
        assert_eq!(
            random_general_graph(9, p, 5, 100).unwrap(),
            random_general_graph(9, p, 5, 100).unwrap()
        );
        assert_eq!(random_convex_graph(6, Probability::ONE, 3).unwrap().e(), 15);
        assert_eq!(random_convex_graph(5, Probability::ZERO, 3).unwrap().e(), 0);
        let single = random_general_graph(1, Probability::ONE, 0, 10).unwrap();
        assert_eq!((single.n(), single.e()), (1, 0));
    }

    #[test]
    fn small_box_still_general_position() {
        let g = random_general_graph(12, Probability::ONE, 9, 20).unwrap();
        assert!(in_general_position(g.points()));
        assert!(matches!(
            random_general_graph(10, Probability::ONE, 9, 1),
            Err(GenError::GeneralPositionExhausted { .. })
        ));
        assert_eq!(
            random_general_graph(3, Probability::ONE, 0, 0),
            Err(GenError::BadBox(0))
        );
    }

    #[test]
    fn stars_examples() {
        let g = disjoint_stars(3).unwrap();
        assert_eq!((g.n(), g.e(), dj_graph(&g)), (8, 6, 9));
        assert_eq!(dj_graph(&disjoint_stars(9).unwrap()), 81);
        assert_eq!(dj_graph(&disjoint_stars(1).unwrap()), 1);
    }

    #[test]
    fn probability_parsing() {
        assert_eq!(
            "2/4".parse::<Probability>(),
            Ok(Probability::new(1, 2).unwrap())
        );
        assert_eq!("1".parse::<Probability>(), Ok(Probability::ONE));
        assert!("3/2".parse::<Probability>().is_err());
        assert!("0.5".parse::<Probability>().is_err());
        assert!("1/0".parse::<Probability>().is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }

    #[test]
    fn spec_json_shape() {
        let spec = GenSpec::RandomGeneral {
            n: 5,
            p: Probability::new(1, 4).unwrap(),
            seed: 11,
            coord_box: 100,
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            text,
            r#"{"kind":"random_general","n":5,"p":"1/4","seed":11,"box":100}"#
        );
        let back: GenSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }
}
