//! Simple finite graphs with canonical edge order.
//!
//! Vertices are `1..=vertex_count`. Edges are stored with the smaller
//! endpoint first and sorted lexicographically; every module downstream
//! (tile order, incidence matrices, CSV column names) inherits this order.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// An undirected simple graph. No self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
}

/// Structure detected by [`Graph::classify`], used to pick closed-form
/// tile counts over enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Connected, every vertex of degree 2; the value is the length.
    Cycle(usize),
    /// Path on `n` vertices (`n - 1` edges in a line); includes `n <= 2`.
    Path(usize),
    /// Anything else, including disconnected graphs.
    Other,
}

/// Serialized form: `{"vertex_count": V, "edges": [[i, j], ...]}`, 1-based.
#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    /// Builds a graph from 1-based edges, validating and canonicalizing.
    pub fn new(vertex_count: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidEdge(format!("self-loop at vertex {a}")));
            }
            if a == 0 || b == 0 || a as usize > vertex_count || b as usize > vertex_count {
                return Err(Error::InvalidEdge(format!(
                    "edge ({a}, {b}) outside 1..={vertex_count}"
                )));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if canon.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge("duplicate edge".into()));
        }
        Ok(Graph {
            vertex_count,
            edges: canon,
        })
    }

    /// Cycle of length `l`: `l = 1` is an isolated vertex, `l = 2` a single
    /// edge, `l >= 3` a proper cycle. `l = 0` is rejected.
    pub fn cycle(l: usize) -> Result<Self> {
        match l {
            0 => Err(Error::InvalidArgument("cycle length 0".into())),
            1 => Graph::new(1, &[]),
            2 => Graph::new(2, &[(1, 2)]),
            _ => {
                let mut edges: Vec<(u32, u32)> =
                    (1..l as u32).map(|i| (i, i + 1)).collect();
                edges.push((1, l as u32));
                Graph::new(l, &edges)
            }
        }
    }

    /// Path on `n` vertices (`n - 1` edges); `n = 0` is the empty graph.
    pub fn path(n: usize) -> Self {
        let edges: Vec<(u32, u32)> = (1..n as u32).map(|i| (i, i + 1)).collect();
        Graph::new(n, &edges).expect("path edges are valid by construction")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges in canonical order: smaller endpoint first, sorted
    /// lexicographically.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex degrees, indexed `0..vertex_count` for vertices `1..=V`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a as usize - 1] += 1;
            deg[b as usize - 1] += 1;
        }
        deg
    }

    /// Detects path/cycle structure (up to labeling) for closed-form counts.
    pub fn classify(&self) -> Shape {
        let v = self.vertex_count;
        if v == 0 {
            return Shape::Path(0);
        }
        let deg = self.degrees();
        if !self.is_connected() {
            return Shape::Other;
        }
        if deg.iter().all(|&d| d == 2) && self.edges.len() == v {
            return Shape::Cycle(v);
        }
        let ends = deg.iter().filter(|&&d| d == 1).count();
        let high = deg.iter().filter(|&&d| d > 2).count();
        if high == 0 && self.edges.len() + 1 == v && (ends == 2 || v == 1) {
            return Shape::Path(v);
        }
        Shape::Other
    }

    fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a as usize - 1].push(b as usize - 1);
            adj[b as usize - 1].push(a as usize - 1);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Parses the JSON graph format (`{"vertex_count": V, "edges": [[i,j],…]}`).
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        Graph::new(file.vertex_count, &file.edges)
    }

    /// Serializes to the JSON graph format.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphFile {
            vertex_count: self.vertex_count,
            edges: self.edges.clone(),
        })
        .expect("graph serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_edges_canonical() {
        let g = Graph::cycle(5).unwrap();
        assert_eq!(g.edges(), &[(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(g.classify(), Shape::Cycle(5));
    }

    #[test]
    fn tiny_cycles_degenerate() {
        assert!(matches!(Graph::cycle(0), Err(Error::InvalidArgument(_))));
        let c1 = Graph::cycle(1).unwrap();
        assert_eq!((c1.vertex_count(), c1.edge_count()), (1, 0));
        let c2 = Graph::cycle(2).unwrap();
        assert_eq!(c2.edges(), &[(1, 2)]);
        assert_eq!(c2.classify(), Shape::Path(2));
    }

    #[test]
    fn path_shape() {
        assert_eq!(Graph::path(0).classify(), Shape::Path(0));
        assert_eq!(Graph::path(1).classify(), Shape::Path(1));
        assert_eq!(Graph::path(7).classify(), Shape::Path(7));
        assert_eq!(Graph::path(7).edge_count(), 6);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::new(3, &[(1, 1)]),
            Err(Error::InvalidEdge(_))
        ));
        assert!(matches!(
            Graph::new(3, &[(1, 4)]),
            Err(Error::InvalidEdge(_))
        ));
        assert!(matches!(
            Graph::new(3, &[(1, 2), (2, 1)]),
            Err(Error::InvalidEdge(_))
        ));
        assert!(matches!(
            Graph::new(2, &[(0, 1)]),
            Err(Error::InvalidEdge(_))
        ));
    }

    #[test]
    fn classify_other() {
        // Disconnected: two disjoint edges.
        let g = Graph::new(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(g.classify(), Shape::Other);
        // Star: one vertex of degree 3.
        let g = Graph::new(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(g.classify(), Shape::Other);
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::cycle(4).unwrap();
        let back = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn json_error_reports_position() {
        let err = Graph::from_json("{\"vertex_count\": 2,\n  \"edges\": [[1, ]]}").unwrap_err();
        match err {
            Error::Json { line, .. } => assert_eq!(line, 2),
            other => panic!("expected Json error, got {other:?}"),
        }
    }
}
