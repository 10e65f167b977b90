//! Unitary local systems as voltage assignments on darts, and the twisted
//! operators they induce: adjacency, Laplacian, the non-backtracking dart
//! operator, and the T0/T1 pair on the barycentric subdivision.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, SpanningTree};
use crate::matrix::{BlockMatrix, Mat};
use crate::scalar::{CoefficientKind, Scalar};

/// A unitary r x r voltage on every dart, with voltage(opposite d) equal to
/// the conjugate transpose of voltage(d). Built either in spanning-tree
/// gauge (identity on tree darts) or from a raw per-edge assignment.
#[derive(Clone, Debug)]
pub struct LocalSystem<S: Scalar> {
    graph: Arc<Multigraph>,
    dim: usize,
    voltages: Vec<Mat<S>>,
}

impl<S: Scalar> LocalSystem<S> {
    /// The trivial local system of the given stalk dimension.
    pub fn trivial(graph: Arc<Multigraph>, dim: usize) -> Self {
        let voltages = vec![Mat::identity(dim); graph.dart_count()];
        Self {
            graph,
            dim,
            voltages,
        }
    }

    /// Spanning-tree gauge: identity on tree darts, the given generator on
    /// dart 2e of each non-tree edge e (its conjugate transpose on 2e + 1).
    /// Missing non-tree edges default to the identity.
    pub fn from_generators(
        graph: Arc<Multigraph>,
        dim: usize,
        generators: &BTreeMap<usize, Mat<S>>,
    ) -> Result<Self> {
        let tree = graph.spanning_tree();
        let non_tree = tree.non_tree_edges();
        for (&edge, g) in generators {
            if edge >= graph.edge_count() {
                return Err(Error::UnknownEdge {
                    edge,
                    edges: graph.edge_count(),
                });
            }
            if tree.in_tree_edge[edge] {
                return Err(Error::TreeEdgeGenerator {
                    edge,
                    non_tree: non_tree.clone(),
                });
            }
            validate_generator(edge, g, dim)?;
        }
        let mut voltages = vec![Mat::identity(dim); graph.dart_count()];
        for (&edge, g) in generators {
            voltages[2 * edge] = g.clone();
            voltages[2 * edge + 1] = g.conj_transpose();
        }
        Ok(Self {
            graph,
            dim,
            voltages,
        })
    }

    /// Arbitrary gauge: a unitary voltage per edge, assigned to dart 2e.
    pub fn from_edge_voltages(
        graph: Arc<Multigraph>,
        dim: usize,
        edge_voltages: Vec<Mat<S>>,
    ) -> Result<Self> {
        if edge_voltages.len() != graph.edge_count() {
            return Err(Error::Parse(format!(
                "expected {} edge voltages, got {}",
                graph.edge_count(),
                edge_voltages.len()
            )));
        }
        let mut voltages = Vec::with_capacity(graph.dart_count());
        for (edge, g) in edge_voltages.iter().enumerate() {
            validate_generator(edge, g, dim)?;
            voltages.push(g.clone());
            voltages.push(g.conj_transpose());
        }
        Ok(Self {
            graph,
            dim,
            voltages,
        })
    }

    pub fn graph(&self) -> &Arc<Multigraph> {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficient_kind(&self) -> CoefficientKind {
        S::KIND
    }

    pub fn voltage(&self, dart: usize) -> &Mat<S> {
        &self.voltages[dart]
    }

    /// Checks the unitarity invariant on every dart pair.
    pub fn unitarity_holds(&self) -> bool {
        (0..self.graph.edge_count()).all(|e| {
            let g = &self.voltages[2 * e];
            let h = &self.voltages[2 * e + 1];
            g.is_unitary() && g.matmul(h).is_identity()
        })
    }

    /// Ordered product of voltages along a dart walk, applied first dart
    /// first: the result maps the stalk at the walk's start to the stalk at
    /// its end.
    pub fn walk_product(&self, darts: &[usize]) -> Result<Mat<S>> {
        let g = &self.graph;
        for pair in darts.windows(2) {
            if g.head(pair[0]) != g.tail(pair[1]) {
                return Err(Error::InvalidWalk {
                    reason: format!("darts {} and {} are not consecutive", pair[0], pair[1]),
                });
            }
        }
        let mut acc = Mat::identity(self.dim);
        for &d in darts {
            acc = self.voltages[d].matmul(&acc);
        }
        Ok(acc)
    }

    /// Monodromy of a closed dart walk (validated to be closed).
    pub fn monodromy(&self, darts: &[usize]) -> Result<Mat<S>> {
        if darts.is_empty() {
            return Err(Error::InvalidWalk {
                reason: "empty walk".into(),
            });
        }
        let g = &self.graph;
        if g.head(darts[darts.len() - 1]) != g.tail(darts[0]) {
            return Err(Error::InvalidWalk {
                reason: "walk is not closed".into(),
            });
        }
        self.walk_product(darts)
    }

    /// Gauge transformation making all darts of the given spanning tree
    /// carry the identity; monodromies are conjugated, so all spectral
    /// invariants are unchanged.
    pub fn regauged(&self, tree: &SpanningTree) -> Self {
        let g = &self.graph;
        let n = g.vertex_count();
        // Transport from the root along tree paths.
        let mut transport: Vec<Mat<S>> = vec![Mat::identity(self.dim); n];
        for &v in &tree.bfs_order {
            if let Some(d) = tree.parent_dart[v] {
                transport[v] = self.voltages[d].matmul(&transport[g.tail(d)]);
            }
        }
        let mut edge_voltages = Vec::with_capacity(g.edge_count());
        for e in 0..g.edge_count() {
            let d = 2 * e;
            let new_v = transport[g.head(d)]
                .conj_transpose()
                .matmul(&self.voltages[d])
                .matmul(&transport[g.tail(d)]);
            edge_voltages.push(new_v);
        }
        Self::from_edge_voltages(self.graph.clone(), self.dim, edge_voltages)
            .expect("regauging preserves unitarity")
    }

    /// Twisted adjacency operator on vertices: block (head d, tail d)
    /// accumulates voltage(d) over all darts.
    pub fn twisted_adjacency(&self) -> BlockMatrix<S> {
        let g = &self.graph;
        let mut a = BlockMatrix::zeros(g.vertex_count(), self.dim);
        for d in 0..g.dart_count() {
            a.add_block(g.head(d), g.tail(d), &self.voltages[d]);
        }
        a
    }

    /// Twisted Laplacian deg(x) - A. For (q+1)-regular graphs this is
    /// (q+1) - A.
    pub fn twisted_laplacian(&self) -> BlockMatrix<S> {
        let g = &self.graph;
        let mut l = self.twisted_adjacency();
        // Negate and add the degree diagonal.
        let neg = l.matrix().neg();
        l = BlockMatrix::from_matrix(g.vertex_count(), self.dim, neg);
        for v in 0..g.vertex_count() {
            let deg = Mat::scalar(self.dim, &S::from_i64(g.degree(v) as i64));
            l.add_block(v, v, &deg);
        }
        l
    }

    pub(crate) fn dart_blocks_unchecked(&self) -> BlockMatrix<S> {
        let g = &self.graph;
        let mut b = BlockMatrix::zeros(g.dart_count(), self.dim);
        for d in 0..g.dart_count() {
            for s in g.nb_successors(d) {
                b.add_block(s, d, &self.voltages[s]);
            }
        }
        b
    }

    /// The non-backtracking dart operator: block (d', d) = voltage(d') when
    /// head(d) = tail(d') and d' is not the reversal of d.
    pub fn dart_operator(&self) -> Result<BlockMatrix<S>> {
        self.require_min_degree_two()?;
        Ok(self.dart_blocks_unchecked())
    }

    /// The operators T0, T1 on half-edges of the barycentric subdivision
    /// (identified with darts). T1 carries a half-edge across its midpoint
    /// with the dart voltage as transport; T0 moves it to the other
    /// half-edges at the same original vertex with identity transport. A
    /// half-edge is never related to itself.
    pub fn t0_t1(&self) -> Result<(BlockMatrix<S>, BlockMatrix<S>)> {
        self.require_min_degree_two()?;
        let g = &self.graph;
        let darts = g.dart_count();
        let mut t0 = BlockMatrix::zeros(darts, self.dim);
        let mut t1 = BlockMatrix::zeros(darts, self.dim);
        let identity = Mat::identity(self.dim);
        for a in 0..darts {
            t1.add_block(g.opposite(a), a, &self.voltages[a]);
            for &b in g.out_darts(g.tail(a)) {
                if b != a {
                    t0.add_block(b, a, &identity);
                }
            }
        }
        Ok((t0, t1))
    }

    fn require_min_degree_two(&self) -> Result<()> {
        let g = &self.graph;
        for v in 0..g.vertex_count() {
            if g.degree(v) < 2 {
                return Err(Error::DegreeTooSmall {
                    vertex: v,
                    degree: g.degree(v),
                });
            }
        }
        Ok(())
    }
}

fn validate_generator<S: Scalar>(edge: usize, g: &Mat<S>, dim: usize) -> Result<()> {
    if g.rows() != dim || g.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    if !g.is_unitary() {
        return Err(Error::NotUnitary { edge });
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod testls {
    use super::*;
    use crate::graph::testgraphs::k4;
    use crate::scalar::Rational;

    /// Sign character on K4: all three non-tree generators are -1.
    pub(crate) fn k4_sign() -> LocalSystem<Rational> {
        let g = Arc::new(k4());
        let tree = g.spanning_tree();
        let gens: BTreeMap<usize, Mat<Rational>> = tree
            .non_tree_edges()
            .into_iter()
            .map(|e| {
                (
                    e,
                    Mat::from_rows(vec![vec![Rational::from_i64(-1)]]),
                )
            })
            .collect();
        LocalSystem::from_generators(g, 1, &gens).unwrap()
    }
}
