//! Counting pairs of disjoint edges.

use crate::graph::{Edge, GeometricGraph, GraphError};

/// Edges of `g` whose closed segments miss `uv` entirely.
pub fn dj_edge(g: &GeometricGraph, uv: Edge) -> Result<Vec<Edge>, GraphError> {
    if g.edge_index(uv).is_none() {
        return Err(GraphError::UnknownEdge(uv));
    }
    Ok(g.edges()
        .iter()
        .copied()
        .filter(|&f| g.edges_disjoint(uv, f))
        .collect())
}

/// Number of unordered pairs of disjoint edges.
pub fn dj_graph(g: &GeometricGraph) -> u64 {
    let edges = g.edges();
    let mut count = 0u64;
    for (i, &a) in edges.iter().enumerate() {
        for &b in &edges[i + 1..] {
            if g.edges_disjoint(a, b) {
                count += 1;
            }
        }
    }
    count
}

/// `|DJ(uv)|` for every edge, indexed like [`GeometricGraph::edges`].
pub fn dj_counts(g: &GeometricGraph) -> Vec<u64> {
    let edges = g.edges();
    let mut counts = vec![0u64; edges.len()];
    for (i, &a) in edges.iter().enumerate() {
        for (j, &b) in edges.iter().enumerate().skip(i + 1) {
            if g.edges_disjoint(a, b) {
                counts[i] += 1;
                counts[j] += 1;
            }
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{convex_complete, convex_position_points};
    use crate::geometry::Point;

    #[test]
    fn hexagon_edges() {
        let g = convex_complete(6).unwrap();
        let hull_edge = dj_edge(&g, Edge::new(0, 1)).unwrap();
        let expected: Vec<Edge> = (2..6)
            .flat_map(|i| (i + 1..6).map(move |j| Edge::new(i, j)))
            .collect();
        assert_eq!(hull_edge, expected);
        let diagonal = dj_edge(&g, Edge::new(0, 3)).unwrap();
        assert_eq!(diagonal, vec![Edge::new(1, 2), Edge::new(4, 5)]);
        assert_eq!(dj_graph(&g), 30);
    }

    #[test]
    fn small_graphs() {
        let single =
            GeometricGraph::new(vec![Point::new(0, 0), Point::new(1, 3)], &[(0, 1)]).unwrap();
        assert!(dj_edge(&single, Edge::new(0, 1)).unwrap().is_empty());
        assert_eq!(dj_graph(&single), 0);
        assert_eq!(
            dj_edge(&single, Edge::new(0, 2)),
            Err(GraphError::UnknownEdge(Edge::new(0, 2)))
        );
        let cycle = GeometricGraph::new(
            convex_position_points(5).unwrap(),
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
        )
        .unwrap();
        assert_eq!(dj_graph(&cycle), 5);
        assert_eq!(dj_counts(&cycle), vec![2; 5]);
    }
}
