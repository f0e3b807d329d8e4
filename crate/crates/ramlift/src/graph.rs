//! Oriented undirected multigraphs: loops and parallel edges allowed, each
//! undirected edge stored once as an oriented pair (head, tail) with the
//! reverse orientation implicit. Edge indices are stable and are how labelings
//! address edges (endpoint addressing is ambiguous with multi-edges).

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("graph must be nonempty")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("cannot parse graph: {0}")]
    Parse(String),
}

/// One oriented representative per undirected edge: tail -> head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub head: usize,
    pub tail: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.head == self.tail
    }
}

/// Finite multigraph on vertices 0..n-1 with an orientation chosen per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedMultigraph {
    n: usize,
    edges: Vec<Edge>,
}

/// An oriented edge reference: edge index plus direction.
/// `forward` means tail -> head as stored; the reverse swaps endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientedEdge {
    pub index: usize,
    pub forward: bool,
}

impl OrientedMultigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        for &(h, t) in &edges {
            if h >= n {
                return Err(GraphError::VertexOutOfRange { v: h, n });
            }
            if t >= n {
                return Err(GraphError::VertexOutOfRange { v: t, n });
            }
        }
        Ok(OrientedMultigraph {
            n,
            edges: edges.into_iter().map(|(head, tail)| Edge { head, tail }).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn head(&self, e: usize) -> usize {
        self.edges[e].head
    }

    pub fn tail(&self, e: usize) -> usize {
        self.edges[e].tail
    }

    /// Degree of v; loops contribute 2.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.head == v) as usize + (e.tail == v) as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.head] += 1;
            d[e.tail] += 1;
        }
        d
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|e| e.is_loop())
    }

    /// Oriented edges leaving v (both orientations; a loop yields two).
    pub fn oriented_out(&self, v: usize) -> Vec<OrientedEdge> {
        let mut out = vec![];
        for (i, e) in self.edges.iter().enumerate() {
            if e.tail == v {
                out.push(OrientedEdge { index: i, forward: true });
            }
            if e.head == v {
                out.push(OrientedEdge { index: i, forward: false });
            }
        }
        out
    }

    /// Target vertex of an oriented edge leaving its source.
    pub fn oriented_head(&self, oe: OrientedEdge) -> usize {
        if oe.forward {
            self.edges[oe.index].head
        } else {
            self.edges[oe.index].tail
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for oe in self.oriented_out(v) {
                let u = self.oriented_head(oe);
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.n
    }

    /// 2-coloring attempt; loops or odd cycles make this None.
    fn bipartition(&self) -> Option<Vec<u8>> {
        if self.has_loops() {
            return None;
        }
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for oe in self.oriented_out(v) {
                    let u = self.oriented_head(oe);
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        queue.push_back(u);
                    } else if color[u] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }
}

/// Structural facts used to pick rho formulas and loop-handling branches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub connected: bool,
    pub bipartite: bool,
    pub regular_degree: Option<usize>,
    /// (degree of the side containing vertex 0, degree of the other side).
    pub biregular_degrees: Option<(usize, usize)>,
    pub has_loops: bool,
    pub max_degree: usize,
}

pub fn classify(g: &OrientedMultigraph) -> GraphReport {
    let degrees = g.degrees();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let regular_degree = if degrees.windows(2).all(|w| w[0] == w[1]) {
        Some(max_degree)
    } else {
        None
    };
    let coloring = g.bipartition();
    let bipartite = coloring.is_some();
    let biregular_degrees = coloring.and_then(|color| {
        let mut side = [None::<usize>, None::<usize>];
        for v in 0..g.n() {
            let s = color[v] as usize;
            match side[s] {
                None => side[s] = Some(degrees[v]),
                Some(d) if d == degrees[v] => {}
                Some(_) => return None,
            }
        }
        let k = side[0]?;
        // single-sided bipartite graph (no edges): other side defaults to k
        let l = side[1].unwrap_or(k);
        Some((k, l))
    });
    GraphReport {
        connected: g.is_connected(),
        bipartite,
        regular_degree,
        biregular_degrees,
        has_loops: g.has_loops(),
        max_degree,
    }
}

/// Subdivide every edge: midpoint of edge j is vertex n+j, and the two new
/// edges both point from the midpoint toward the original endpoints
/// (edge 2j toward head(j), edge 2j+1 toward tail(j)).
pub fn subdivide(g: &OrientedMultigraph) -> OrientedMultigraph {
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for (j, e) in g.edges().iter().enumerate() {
        let mid = n + j;
        edges.push((e.head, mid));
        edges.push((e.tail, mid));
    }
    OrientedMultigraph::new(n + g.edge_count(), edges).expect("valid subdivision")
}

/// BFS spanning tree from vertex 0 with lowest-edge-index tie-breaking.
pub struct SpanningTree {
    /// For each edge index: is it a tree edge?
    pub in_tree: Vec<bool>,
    /// Vertices in BFS discovery order (after 0), with the oriented edge used
    /// to reach them (source is the already-discovered endpoint).
    pub discovery: Vec<(usize, OrientedEdge)>,
}

pub fn bfs_spanning_tree(g: &OrientedMultigraph) -> Result<SpanningTree, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let mut in_tree = vec![false; g.edge_count()];
    let mut seen = vec![false; g.n()];
    let mut discovery = vec![];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        // oriented_out returns forward edges before reverse per index order;
        // sort by index for the canonical lowest-index tie-break.
        let mut outs = g.oriented_out(v);
        outs.sort_by_key(|oe| (oe.index, !oe.forward));
        for oe in outs {
            let u = g.oriented_head(oe);
            if !seen[u] {
                seen[u] = true;
                in_tree[oe.index] = true;
                discovery.push((u, oe));
                queue.push_back(u);
            }
        }
    }
    Ok(SpanningTree { in_tree, discovery })
}

// ---------------------------------------------------------------------------
// Wire formats
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn to_json(g: &OrientedMultigraph) -> String {
    let j = GraphJson { n: g.n(), edges: g.edges().iter().map(|e| [e.head, e.tail]).collect() };
    serde_json::to_string(&j).expect("graph serializes")
}

/// Accepts the JSON form `{"n": .., "edges": [[head, tail], ..]}` or flat
/// text: a leading `n` line then one `head tail` pair per line.
pub fn parse(input: &str) -> Result<OrientedMultigraph, GraphError> {
    let trimmed = input.trim();
    if trimmed.starts_with('{') {
        let j: GraphJson =
            serde_json::from_str(trimmed).map_err(|e| GraphError::Parse(e.to_string()))?;
        return OrientedMultigraph::new(j.n, j.edges.iter().map(|e| (e[0], e[1])).collect());
    }
    let mut lines = trimmed.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| GraphError::Parse("empty input".into()))?
        .trim()
        .parse()
        .map_err(|_| GraphError::Parse("first line must be the vertex count".into()))?;
    let mut edges = vec![];
    for line in lines {
        let mut it = line.split_whitespace();
        let h: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::Parse(format!("bad edge line {line:?}")))?;
        let t: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::Parse(format!("bad edge line {line:?}")))?;
        edges.push((h, t));
    }
    OrientedMultigraph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn classify_examples() {
        // triangle C3: connected, non-bipartite, 2-regular
        let c3 = corpus::cycle(3);
        let r = classify(&c3);
        assert!(r.connected && !r.bipartite && !r.has_loops);
        assert_eq!(r.regular_degree, Some(2));
        assert_eq!(r.max_degree, 2);
        // two vertices, k parallel edges: bipartite, (k, k)-biregular, k-regular
        let theta = corpus::theta(3);
        let r = classify(&theta);
        assert!(r.bipartite);
        assert_eq!(r.regular_degree, Some(3));
        assert_eq!(r.biregular_degrees, Some((3, 3)));
        // single vertex with a loop: loop counts twice
        let b = corpus::bouquet(1);
        let r = classify(&b);
        assert!(r.has_loops && !r.bipartite);
        assert_eq!(r.regular_degree, Some(2));
    }

    #[test]
    fn subdivide_examples() {
        // K2 -> path on 3 vertices
        let k2 = corpus::k2();
        let p = subdivide(&k2);
        assert_eq!(p.n(), 3);
        assert_eq!(p.edge_count(), 2);
        let r = classify(&p);
        assert!(r.bipartite && !r.has_loops);
        assert_eq!(r.biregular_degrees, Some((1, 2)));
        // loop -> two parallel edges between vertex 0 and midpoint 1
        let b = corpus::bouquet(1);
        let s = subdivide(&b);
        assert_eq!(s.n(), 2);
        assert_eq!(s.edge_count(), 2);
        assert!(!s.has_loops());
        assert_eq!(s.edges()[0], Edge { head: 0, tail: 1 });
        assert_eq!(s.edges()[1], Edge { head: 0, tail: 1 });
        // C3 -> C6
        let s = subdivide(&corpus::cycle(3));
        let r = classify(&s);
        assert_eq!(s.n(), 6);
        assert!(r.bipartite);
        assert_eq!(r.regular_degree, Some(2));
        // k-regular base gives (k, 2)-biregular subdivision
        let s = subdivide(&corpus::theta(3));
        assert_eq!(classify(&s).biregular_degrees, Some((3, 2)));
    }

    #[test]
    fn spanning_tree_canonical() {
        let c3 = corpus::cycle(3);
        let t = bfs_spanning_tree(&c3).unwrap();
        assert_eq!(t.in_tree.iter().filter(|&&b| b).count(), 2);
        assert_eq!(t.discovery.len(), 2);
        // disconnected graph errors
        let g = OrientedMultigraph::new(2, vec![]).unwrap();
        assert!(bfs_spanning_tree(&g).is_err());
    }

    #[test]
    fn parse_both_formats() {
        let g = parse(r#"{"n": 3, "edges": [[0,1],[1,2],[2,0]]}"#).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        let g2 = parse("3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g, g2);
        let round: OrientedMultigraph = parse(&to_json(&g)).unwrap();
        assert_eq!(round, g);
        assert!(parse("").is_err());
    }
}
