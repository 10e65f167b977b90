//! Dart-based finite multigraphs.
//!
//! Edge i of the input yields darts 2i (tail = first endpoint) and 2i + 1
//! (tail = second endpoint); `opposite` is the xor-with-1 involution and
//! head(d) = tail(opposite(d)). Loops and parallel edges are allowed in
//! general mode; regular mode additionally requires two distinct endpoints
//! per edge and constant vertex degree q + 1.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphMode {
    Regular,
    General,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Multigraph {
    vertex_count: usize,
    mode: GraphMode,
    /// Tail vertex of each dart; length 2m.
    dart_tail: Vec<usize>,
    /// Out-darts per vertex, in increasing dart id order.
    out_darts: Vec<Vec<usize>>,
}

impl Multigraph {
    pub fn from_edge_list(
        vertex_count: usize,
        edges: &[(usize, usize)],
        mode: GraphMode,
    ) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (idx, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertices: vertex_count,
                    });
                }
            }
            if mode == GraphMode::Regular && u == v {
                return Err(Error::LoopEdge { edge: idx });
            }
        }
        let mut dart_tail = Vec::with_capacity(2 * edges.len());
        for &(u, v) in edges {
            dart_tail.push(u);
            dart_tail.push(v);
        }
        let mut out_darts = vec![Vec::new(); vertex_count];
        for (d, &t) in dart_tail.iter().enumerate() {
            out_darts[t].push(d);
        }
        let g = Self {
            vertex_count,
            mode,
            dart_tail,
            out_darts,
        };
        let reached = g.reachable_from(0);
        if reached != vertex_count {
            return Err(Error::Disconnected {
                reached,
                vertices: vertex_count,
            });
        }
        if mode == GraphMode::Regular {
            // Regular mode carries the constant-degree invariant from
            // construction on.
            g.check_regular()?;
        }
        Ok(g)
    }

    pub fn mode(&self) -> GraphMode {
        self.mode
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.dart_tail.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.dart_tail.len()
    }

    pub fn opposite(&self, dart: usize) -> usize {
        dart ^ 1
    }

    pub fn tail(&self, dart: usize) -> usize {
        self.dart_tail[dart]
    }

    pub fn head(&self, dart: usize) -> usize {
        self.dart_tail[dart ^ 1]
    }

    pub fn edge_of(&self, dart: usize) -> usize {
        dart / 2
    }

    /// The two endpoints of an edge, in dart order.
    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        (self.dart_tail[2 * edge], self.dart_tail[2 * edge + 1])
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        self.dart_tail[2 * edge] == self.dart_tail[2 * edge + 1]
    }

    pub fn has_loops(&self) -> bool {
        (0..self.edge_count()).any(|e| self.is_loop(e))
    }

    pub fn out_darts(&self, vertex: usize) -> &[usize] {
        &self.out_darts[vertex]
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.out_darts[vertex].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// First-Betti-number rank m - n + 1 of a connected graph.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        (0..self.edge_count()).map(|e| self.endpoints(e)).collect()
    }

    fn reachable_from(&self, start: usize) -> usize {
        if self.vertex_count == 0 {
            return 0;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &d in &self.out_darts[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count
    }

    /// Returns q when every vertex has degree q + 1 (and no edge is a
    /// loop); errors otherwise.
    pub fn check_regular(&self) -> Result<usize> {
        if self.has_loops() {
            return Err(Error::LoopInRegularCheck);
        }
        let min = self.min_degree();
        let max = (0..self.vertex_count)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0);
        if min != max {
            return Err(Error::NotRegular {
                min_degree: min,
                max_degree: max,
            });
        }
        if min < 2 {
            return Err(Error::ValencyTooSmall { valency: min });
        }
        Ok(min - 1)
    }

    /// (n - m) * r for a rank-r local system.
    pub fn euler_characteristic(&self, r: usize) -> i64 {
        let chi = self.vertex_count as i64 - self.edge_count() as i64;
        let out = chi * r as i64;
        if let Ok(q) = self.check_regular() {
            // For (q+1)-regular graphs this equals n (1 - q) / 2 * r.
            debug_assert_eq!(
                out * 2,
                self.vertex_count as i64 * (1 - q as i64) * r as i64
            );
        }
        out
    }

    /// Successor darts of d in the non-backtracking sense.
    pub fn nb_successors(&self, dart: usize) -> impl Iterator<Item = usize> + '_ {
        let opposite = self.opposite(dart);
        self.out_darts[self.head(dart)]
            .iter()
            .copied()
            .filter(move |&s| s != opposite)
    }

    /// Length of the shortest closed geodesic (shortest directed cycle in
    /// the non-backtracking dart digraph).
    pub fn girth(&self) -> Result<usize> {
        if self.rank() == 0 {
            return Err(Error::InfiniteGirth);
        }
        let darts = self.dart_count();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; darts];
        for start in 0..darts {
            dist.fill(usize::MAX);
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(d) = queue.pop_front() {
                if dist[d] + 1 >= best {
                    continue;
                }
                for s in self.nb_successors(d) {
                    if s == start {
                        best = best.min(dist[d] + 1);
                    } else if dist[s] == usize::MAX {
                        dist[s] = dist[d] + 1;
                        queue.push_back(s);
                    }
                }
            }
        }
        if best == usize::MAX {
            Err(Error::InfiniteGirth)
        } else {
            Ok(best)
        }
    }

    /// Deterministic spanning tree: BFS from vertex 0, darts taken in id
    /// order.
    pub fn spanning_tree(&self) -> SpanningTree {
        let n = self.vertex_count;
        let mut parent_dart = vec![None; n];
        let mut in_tree_edge = vec![false; self.edge_count()];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        seen[0] = true;
        order.push(0);
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &d in &self.out_darts[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    parent_dart[w] = Some(d);
                    in_tree_edge[self.edge_of(d)] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        SpanningTree {
            parent_dart,
            in_tree_edge,
            bfs_order: order,
            rank: self.rank(),
        }
    }

    /// BFS vertex distances from a source.
    pub fn vertex_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &d in &self.out_darts[v] {
                let w = self.head(d);
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS distances between edges, where two edges are at distance 1 when
    /// they share a vertex. This is the cell distance for 1-complexes.
    pub fn edge_distances(&self, source_edge: usize) -> Vec<usize> {
        let m = self.edge_count();
        let mut dist = vec![usize::MAX; m];
        dist[source_edge] = 0;
        let mut queue = VecDeque::from([source_edge]);
        while let Some(e) = queue.pop_front() {
            let (u, v) = self.endpoints(e);
            for w in [u, v] {
                for &d in &self.out_darts[w] {
                    let e2 = self.edge_of(d);
                    if dist[e2] == usize::MAX {
                        dist[e2] = dist[e] + 1;
                        queue.push_back(e2);
                    }
                }
            }
        }
        dist
    }

    /// Barycentric subdivision: original vertices keep their ids, edge e
    /// gains a midpoint vertex n + e, and each dart d becomes subdivision
    /// edge d joining tail(d) to the midpoint of its edge.
    pub fn barycentric_subdivide(&self) -> BarycentricGraph {
        let n = self.vertex_count;
        let edges: Vec<(usize, usize)> = (0..self.dart_count())
            .map(|d| (self.tail(d), n + self.edge_of(d)))
            .collect();
        let graph = Multigraph::from_edge_list(n + self.edge_count(), &edges, GraphMode::General)
            .expect("subdivision of a valid graph is valid");
        BarycentricGraph {
            graph,
            original_vertex_count: n,
        }
    }
}

/// Deterministic BFS spanning tree.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    /// Dart that first reached each vertex (None for the root).
    pub parent_dart: Vec<Option<usize>>,
    /// Per-edge membership flag.
    pub in_tree_edge: Vec<bool>,
    /// Vertices in BFS visit order.
    pub bfs_order: Vec<usize>,
    /// Number of non-tree edges, m - n + 1.
    pub rank: usize,
}

impl SpanningTree {
    pub fn non_tree_edges(&self) -> Vec<usize> {
        self.in_tree_edge
            .iter()
            .enumerate()
            .filter(|(_, &t)| !t)
            .map(|(e, _)| e)
            .collect()
    }
}

/// Barycentric subdivision of a multigraph.
///
/// V0 is the original vertex set (ids 0..n), V1 the edge midpoints
/// (ids n..n+m). Subdivision edge h corresponds to base dart h: it is the
/// half-edge of edge h/2 at the vertex tail(h).
#[derive(Debug, Clone)]
pub struct BarycentricGraph {
    pub graph: Multigraph,
    original_vertex_count: usize,
}

impl BarycentricGraph {
    pub fn v0_count(&self) -> usize {
        self.original_vertex_count
    }

    pub fn v1_count(&self) -> usize {
        self.graph.vertex_count() - self.original_vertex_count
    }

    pub fn is_midpoint(&self, vertex: usize) -> bool {
        vertex >= self.original_vertex_count
    }

    /// Base dart of a subdivision edge (identity by construction).
    pub fn dart_of_halfedge(&self, halfedge: usize) -> usize {
        halfedge
    }

    /// Subdivision edge of a base dart (identity by construction).
    pub fn halfedge_of_dart(&self, dart: usize) -> usize {
        dart
    }
}

#[cfg(test)]
pub(crate) mod testgraphs {
    use super::*;

    pub fn k4() -> Multigraph {
        Multigraph::from_edge_list(
            4,
            &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)],
            GraphMode::Regular,
        )
        .unwrap()
    }

    pub fn c4() -> Multigraph {
        Multigraph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], GraphMode::Regular)
            .unwrap()
    }

    pub fn k33() -> Multigraph {
        Multigraph::from_edge_list(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
            GraphMode::Regular,
        )
        .unwrap()
    }

    pub fn petersen() -> Multigraph {
        Multigraph::from_edge_list(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
            GraphMode::Regular,
        )
        .unwrap()
    }

    pub fn k4_minus_edge() -> Multigraph {
        Multigraph::from_edge_list(
            4,
            &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3)],
            GraphMode::General,
        )
        .unwrap()
    }

    pub fn path3() -> Multigraph {
        Multigraph::from_edge_list(3, &[(0, 1), (1, 2)], GraphMode::General).unwrap()
    }
}
