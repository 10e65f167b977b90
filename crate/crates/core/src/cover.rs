//! Finite covering graphs from voltage assignments, deck actions, lifting
//! of local systems, the fiber summation map, and pushdown of kernel
//! operators.
//!
//! Group-voltage covers are normal, carry a free fiber-transitive deck
//! action, and realize finite-index normal subgroups of the fundamental
//! group. Permutation-voltage covers (used for seeded random cover
//! sequences) are generally not normal; pushdown for them checks
//! lift-independence of the fiber sums directly.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::graph::{GraphMode, Multigraph};
use crate::local_system::LocalSystem;
use crate::matrix::{BlockMatrix, Mat};
use crate::scalar::Scalar;

/// A finite group given by its multiplication table; element 0 is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self {
            order: 1,
            mul: vec![0],
            inv: vec![0],
        }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = (a + b) % n;
            }
        }
        let inv = (0..n).map(|a| (n - a) % n).collect();
        Self { order: n, mul, inv }
    }

    /// (Z/p)^k with elements encoded in base p.
    pub fn elementary_abelian(p: usize, k: usize) -> Result<Self> {
        let order = p
            .checked_pow(k as u32)
            .ok_or_else(|| Error::GroupTable {
                reason: format!("{p}^{k} overflows"),
            })?;
        if order > 1 << 14 {
            return Err(Error::GroupTable {
                reason: format!("group of order {order} exceeds the table limit"),
            });
        }
        let digits = |mut x: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let undigits = |d: &[usize]| -> usize {
            d.iter().rev().fold(0, |acc, &v| acc * p + v)
        };
        let mut mul = vec![0; order * order];
        let mut inv = vec![0; order];
        for a in 0..order {
            let da = digits(a);
            for b in 0..order {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                mul[a * order + b] = undigits(&sum);
            }
            let neg: Vec<usize> = da.iter().map(|&x| (p - x) % p).collect();
            inv[a] = undigits(&neg);
        }
        Ok(Self { order, mul, inv })
    }

    /// Validates and wraps an explicit table.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::GroupTable {
                reason: "empty table".into(),
            });
        }
        for row in &table {
            if row.len() != order || row.iter().any(|&v| v >= order) {
                return Err(Error::GroupTable {
                    reason: "table is not square over 0..order".into(),
                });
            }
        }
        // Identity must be element 0.
        for a in 0..order {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::GroupTable {
                    reason: "element 0 is not an identity".into(),
                });
            }
        }
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a][b] == 0 {
                    inv[a] = b;
                }
            }
            if inv[a] == usize::MAX {
                return Err(Error::GroupTable {
                    reason: format!("element {a} has no inverse"),
                });
            }
        }
        if order <= 128 {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(Error::GroupTable {
                                reason: format!("associativity fails at ({a}, {b}, {c})"),
                            });
                        }
                    }
                }
            }
        }
        let mul = table.into_iter().flatten().collect();
        Ok(Self { order, mul, inv })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Order of the subgroup generated by the given elements.
    pub fn generated_subgroup_order(&self, generators: &[usize]) -> usize {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if !seen[y] {
                        seen[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        seen.iter().filter(|&&s| s).count()
    }
}

/// Per-edge sheet action of a cover.
#[derive(Debug, Clone)]
pub enum CoverKind {
    /// Voltages in a finite group; the cover is normal with deck group H
    /// acting on sheets by left multiplication.
    Group {
        group: FiniteGroup,
        /// Voltage of dart 2e for each edge e.
        edge_voltage: Vec<usize>,
    },
    /// A permutation per edge; generally not a normal cover.
    Permutation {
        degree: usize,
        /// Sheet permutation of dart 2e for each edge e.
        edge_perm: Vec<Vec<usize>>,
    },
}

/// A finite cover built from voltages. Total vertices are (v, sheet)
/// encoded as sheet * n + v; the lift of edge e at sheet s joins
/// (tail, s) to (head, sigma_e(s)) and becomes total edge e * deg + s.
#[derive(Debug, Clone)]
pub struct CoverGraph {
    base: Arc<Multigraph>,
    total: Arc<Multigraph>,
    kind: CoverKind,
    index: usize,
}

impl CoverGraph {
    pub fn base(&self) -> &Arc<Multigraph> {
        &self.base
    }

    pub fn total(&self) -> &Arc<Multigraph> {
        &self.total
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn kind(&self) -> &CoverKind {
        &self.kind
    }

    pub fn is_normal(&self) -> bool {
        matches!(self.kind, CoverKind::Group { .. })
    }

    pub fn project_vertex(&self, total_vertex: usize) -> usize {
        total_vertex % self.base.vertex_count()
    }

    pub fn sheet_of_vertex(&self, total_vertex: usize) -> usize {
        total_vertex / self.base.vertex_count()
    }

    pub fn lift_vertex(&self, base_vertex: usize, sheet: usize) -> usize {
        sheet * self.base.vertex_count() + base_vertex
    }

    pub fn project_dart(&self, total_dart: usize) -> usize {
        let total_edge = total_dart / 2;
        2 * (total_edge / self.index) + (total_dart & 1)
    }

    pub fn sheet_of_dart(&self, total_dart: usize) -> usize {
        (total_dart / 2) % self.index
    }

    /// The lift of a base dart whose tail lies on the given sheet.
    pub fn lift_dart(&self, base_dart: usize, sheet: usize) -> usize {
        let e = base_dart / 2;
        if base_dart & 1 == 0 {
            2 * (e * self.index + sheet)
        } else {
            // Dart 2e+1 has tail at the head side; its lift at (head, t)
            // belongs to the edge copy with sigma_e(s) = t.
            let s = self.sheet_preimage(e, sheet);
            2 * (e * self.index + s) + 1
        }
    }

    fn sheet_action(&self, edge: usize, sheet: usize) -> usize {
        match &self.kind {
            CoverKind::Group { group, edge_voltage } => group.mul(sheet, edge_voltage[edge]),
            CoverKind::Permutation { edge_perm, .. } => edge_perm[edge][sheet],
        }
    }

    fn sheet_preimage(&self, edge: usize, sheet: usize) -> usize {
        match &self.kind {
            CoverKind::Group { group, edge_voltage } => {
                group.mul(sheet, group.inv(edge_voltage[edge]))
            }
            CoverKind::Permutation { edge_perm, .. } => edge_perm[edge]
                .iter()
                .position(|&t| t == sheet)
                .expect("permutation is a bijection"),
        }
    }

    /// Deck action of a group element on total vertices (normal covers).
    pub fn deck_vertex(&self, element: usize, total_vertex: usize) -> Result<usize> {
        let group = self.deck_group()?;
        let v = self.project_vertex(total_vertex);
        let s = self.sheet_of_vertex(total_vertex);
        Ok(self.lift_vertex(v, group.mul(element, s)))
    }

    /// Deck action on total darts (normal covers).
    pub fn deck_dart(&self, element: usize, total_dart: usize) -> Result<usize> {
        let group = self.deck_group()?;
        let e = (total_dart / 2) / self.index;
        let s = self.sheet_of_dart(total_dart);
        Ok(2 * (e * self.index + group.mul(element, s)) + (total_dart & 1))
    }

    pub fn deck_group(&self) -> Result<&FiniteGroup> {
        match &self.kind {
            CoverKind::Group { group, .. } => Ok(group),
            CoverKind::Permutation { .. } => Err(Error::SupportMismatch {
                reason: "permutation covers carry no deck group".into(),
            }),
        }
    }
}

fn build_total(
    base: &Arc<Multigraph>,
    kind: &CoverKind,
    index: usize,
) -> Result<Multigraph> {
    let n = base.vertex_count();
    let mut edges = Vec::with_capacity(base.edge_count() * index);
    for e in 0..base.edge_count() {
        let (u, v) = base.endpoints(e);
        for s in 0..index {
            let t = match kind {
                CoverKind::Group { group, edge_voltage } => group.mul(s, edge_voltage[e]),
                CoverKind::Permutation { edge_perm, .. } => edge_perm[e][s],
            };
            edges.push((s * n + u, t * n + v));
        }
    }
    Multigraph::from_edge_list(n * index, &edges, GraphMode::General)
}

/// Builds the cover of `base` with voltages in `group` (one element per
/// edge, assigned to dart 2e and extended by inversion). The total graph
/// must be connected, i.e. the walk voltages must generate the group.
pub fn build_cover(
    base: Arc<Multigraph>,
    group: FiniteGroup,
    edge_voltage: Vec<usize>,
) -> Result<CoverGraph> {
    if edge_voltage.len() != base.edge_count() {
        return Err(Error::Parse(format!(
            "expected {} edge voltages, got {}",
            base.edge_count(),
            edge_voltage.len()
        )));
    }
    if edge_voltage.iter().any(|&v| v >= group.order()) {
        return Err(Error::GroupTable {
            reason: "voltage outside group".into(),
        });
    }
    let index = group.order();
    let kind = CoverKind::Group {
        group,
        edge_voltage,
    };
    match build_total(&base, &kind, index) {
        Ok(total) => Ok(CoverGraph {
            base,
            total: Arc::new(total),
            kind,
            index,
        }),
        Err(Error::Disconnected { .. }) => {
            let (group, edge_voltage) = match &kind {
                CoverKind::Group { group, edge_voltage } => (group, edge_voltage),
                _ => unreachable!(),
            };
            // Report the subgroup actually generated by the closed-walk
            // voltages (tree-gauge reduction of the non-tree edges).
            let tree = base.spanning_tree();
            let reduced = reduced_voltages(&base, group, edge_voltage, &tree);
            Err(Error::NonGeneratingVoltage {
                subgroup: group.generated_subgroup_order(&reduced),
                group: group.order(),
            })
        }
        Err(e) => Err(e),
    }
}

/// Gauge-reduces edge voltages against a spanning tree: the closed-walk
/// voltage of the fundamental cycle of each non-tree edge.
fn reduced_voltages(
    base: &Multigraph,
    group: &FiniteGroup,
    edge_voltage: &[usize],
    tree: &crate::graph::SpanningTree,
) -> Vec<usize> {
    let n = base.vertex_count();
    // Voltage of the tree path from the root to each vertex.
    let mut to_vertex = vec![0usize; n];
    for &v in &tree.bfs_order {
        if let Some(d) = tree.parent_dart[v] {
            let e = base.edge_of(d);
            let g = if d & 1 == 0 {
                edge_voltage[e]
            } else {
                group.inv(edge_voltage[e])
            };
            to_vertex[v] = group.mul(to_vertex[base.tail(d)], g);
        }
    }
    tree.non_tree_edges()
        .into_iter()
        .map(|e| {
            let (u, v) = base.endpoints(e);
            // path(root -> u) * voltage(e) * path(v -> root)
            let w = group.mul(to_vertex[u], edge_voltage[e]);
            group.mul(w, group.inv(to_vertex[v]))
        })
        .collect()
}

/// The trivial (index 1) cover.
pub fn trivial_cover(base: Arc<Multigraph>) -> CoverGraph {
    let m = base.edge_count();
    build_cover(base, FiniteGroup::trivial(), vec![0; m]).expect("trivial cover always exists")
}

/// Builds a permutation-voltage cover from explicit per-edge sheet
/// permutations.
pub fn permutation_cover(
    base: Arc<Multigraph>,
    degree: usize,
    edge_perm: Vec<Vec<usize>>,
) -> Result<CoverGraph> {
    if degree == 0 {
        return Err(Error::Parse("cover degree must be >= 1".into()));
    }
    if edge_perm.len() != base.edge_count() {
        return Err(Error::Parse(format!(
            "expected {} edge permutations, got {}",
            base.edge_count(),
            edge_perm.len()
        )));
    }
    for (e, p) in edge_perm.iter().enumerate() {
        let mut seen = vec![false; degree];
        if p.len() != degree || p.iter().any(|&v| v >= degree) {
            return Err(Error::Parse(format!("edge {e}: not a permutation of 0..{degree}")));
        }
        for &v in p {
            if seen[v] {
                return Err(Error::Parse(format!("edge {e}: not a permutation")));
            }
            seen[v] = true;
        }
    }
    let kind = CoverKind::Permutation { degree, edge_perm };
    let total = build_total(&base, &kind, degree)?;
    Ok(CoverGraph {
        base,
        total: Arc::new(total),
        kind,
        index: degree,
    })
}

/// Permutation-voltage cover with one seeded uniform permutation per edge.
/// Deterministic under a fixed seed; connectivity is retried with
/// incremented sub-seeds.
pub fn random_cover(base: Arc<Multigraph>, degree: usize, seed: u64) -> Result<CoverGraph> {
    const MAX_ATTEMPTS: usize = 100;
    if degree == 0 {
        return Err(Error::Parse("cover degree must be >= 1".into()));
    }
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha20Rng::seed_from_u64(
            seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        );
        let edge_perm: Vec<Vec<usize>> = (0..base.edge_count())
            .map(|_| {
                let mut p: Vec<usize> = (0..degree).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let kind = CoverKind::Permutation {
            degree,
            edge_perm,
        };
        match build_total(&base, &kind, degree) {
            Ok(total) => {
                return Ok(CoverGraph {
                    base,
                    total: Arc::new(total),
                    kind,
                    index: degree,
                })
            }
            Err(Error::Disconnected { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ConnectivityRetries {
        attempts: MAX_ATTEMPTS,
    })
}

/// Flattens a chain of covers (each level covering the previous one) into
/// a single permutation cover of the first base, by tracking the composed
/// projection on fibers. The resulting total graph is a relabeling of the
/// top level, so all isomorphism invariants (index, girth, spectra) are
/// those of the tower's top.
pub fn composite_permutation_cover(levels: &[CoverGraph]) -> Result<CoverGraph> {
    let first = levels.first().ok_or_else(|| Error::Parse("empty tower".into()))?;
    if levels.len() == 1 {
        // Already a cover of the base; rebuild as a permutation cover to
        // keep the return type uniform.
        return rebuild_as_permutation(first);
    }
    for pair in levels.windows(2) {
        if pair[1].base().vertex_count() != pair[0].total().vertex_count()
            || pair[1].base().edge_count() != pair[0].total().edge_count()
        {
            return Err(Error::SupportMismatch {
                reason: "tower levels do not chain".into(),
            });
        }
    }
    let base = first.base().clone();
    let top = levels.last().expect("nonempty").total().clone();
    let degree: usize = levels.iter().map(|c| c.index()).product();

    let project_vertex = |mut v: usize| -> usize {
        for level in levels.iter().rev() {
            v = level.project_vertex(v);
        }
        v
    };
    let project_dart = |mut d: usize| -> usize {
        for level in levels.iter().rev() {
            d = level.project_dart(d);
        }
        d
    };

    // Label each base-vertex fiber by ascending top-level vertex id.
    let n = base.vertex_count();
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); n];
    for w in 0..top.vertex_count() {
        fibers[project_vertex(w)].push(w);
    }
    let mut label = vec![usize::MAX; top.vertex_count()];
    for fiber in &fibers {
        for (i, &w) in fiber.iter().enumerate() {
            label[w] = i;
        }
    }
    let mut edge_perm: Vec<Vec<usize>> = vec![vec![usize::MAX; degree]; base.edge_count()];
    for d in 0..top.dart_count() {
        let bd = project_dart(d);
        if bd & 1 != 0 {
            continue;
        }
        let e = bd / 2;
        edge_perm[e][label[top.tail(d)]] = label[top.head(d)];
    }
    permutation_cover(base, degree, edge_perm)
}

fn rebuild_as_permutation(cover: &CoverGraph) -> Result<CoverGraph> {
    let degree = cover.index();
    let edge_perm: Vec<Vec<usize>> = (0..cover.base().edge_count())
        .map(|e| (0..degree).map(|s| cover.sheet_action(e, s)).collect())
        .collect();
    permutation_cover(cover.base().clone(), degree, edge_perm)
}

/// Iterated mod-p homology covers: each level covers the previous one with
/// H = (Z/p)^rank, the non-tree edges carrying the standard basis vectors
/// (their mod-p cycle-space coordinates).
pub fn homology_tower(
    base: Arc<Multigraph>,
    p: usize,
    levels: usize,
    index_cap: u64,
) -> Result<Vec<CoverGraph>> {
    let mut covers = Vec::new();
    let mut current = base;
    for level in 1..=levels {
        let tree = current.spanning_tree();
        let rank = tree.rank;
        let index = (p as u128)
            .checked_pow(rank as u32)
            .unwrap_or(u128::MAX);
        if index > index_cap as u128 {
            return Err(Error::IndexCapExceeded {
                level,
                index,
                cap: index_cap,
            });
        }
        let group = FiniteGroup::elementary_abelian(p, rank)?;
        let mut voltage = vec![0usize; current.edge_count()];
        for (i, e) in tree.non_tree_edges().into_iter().enumerate() {
            // Basis vector e_i in base-p encoding.
            voltage[e] = p.pow(i as u32);
        }
        let cover = build_cover(current.clone(), group, voltage)?;
        current = cover.total().clone();
        covers.push(cover);
    }
    Ok(covers)
}

/// Pullback of a local system along a cover: lifted darts carry the
/// voltage of their projection. Stalks of lifted points are canonically
/// the base stalks, so no transport enters.
pub fn lift_local_system<S: Scalar>(ls: &LocalSystem<S>, cover: &CoverGraph) -> LocalSystem<S> {
    let total = cover.total();
    let edge_voltages: Vec<Mat<S>> = (0..total.edge_count())
        .map(|e| {
            let base_edge = e / cover.index();
            ls.voltage(2 * base_edge).clone()
        })
        .collect();
    LocalSystem::from_edge_voltages(total.clone(), ls.dim(), edge_voltages)
        .expect("lift of a unitary system is unitary")
}

/// Which objects a kernel operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    Vertices,
    Darts,
}

impl Support {
    pub fn object_count(&self, g: &Multigraph) -> usize {
        match self {
            Support::Vertices => g.vertex_count(),
            Support::Darts => g.dart_count(),
        }
    }
}

/// A finitely supported section: one stalk vector per object.
#[derive(Debug, Clone, PartialEq)]
pub struct Section<S: Scalar> {
    pub support: Support,
    pub r: usize,
    pub values: Vec<Vec<S>>,
}

impl<S: Scalar> Section<S> {
    pub fn zero(g: &Multigraph, support: Support, r: usize) -> Self {
        Self {
            support,
            r,
            values: vec![vec![S::zero(); r]; support.object_count(g)],
        }
    }

    /// Delta section: the given stalk vector at one object.
    pub fn delta(g: &Multigraph, support: Support, object: usize, vector: Vec<S>) -> Self {
        let mut s = Self::zero(g, support, vector.len());
        s.values[object] = vector;
        s
    }
}

/// A sparse matrix-valued kernel <x|D|y> over the vertices or darts of a
/// graph. Finite propagation is automatic on finite graphs; the radius is
/// measured by [`check_propagation`].
#[derive(Debug, Clone)]
pub struct KernelOperator<S: Scalar> {
    graph: Arc<Multigraph>,
    support: Support,
    r: usize,
    entries: BTreeMap<(usize, usize), Mat<S>>,
}

impl<S: Scalar> KernelOperator<S> {
    pub fn new(graph: Arc<Multigraph>, support: Support, r: usize) -> Self {
        Self {
            graph,
            support,
            r,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_block_matrix(
        graph: Arc<Multigraph>,
        support: Support,
        op: &BlockMatrix<S>,
    ) -> Self {
        let objects = support.object_count(&graph);
        assert_eq!(op.objects, objects);
        let mut k = Self::new(graph, support, op.r);
        for x in 0..objects {
            for y in 0..objects {
                let b = op.block(x, y);
                if !b.is_zero() {
                    k.entries.insert((x, y), b);
                }
            }
        }
        k
    }

    pub fn to_block_matrix(&self) -> BlockMatrix<S> {
        let objects = self.support.object_count(&self.graph);
        let mut op = BlockMatrix::zeros(objects, self.r);
        for (&(x, y), b) in &self.entries {
            op.set_block(x, y, b);
        }
        op
    }

    pub fn graph(&self) -> &Arc<Multigraph> {
        &self.graph
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn kernel(&self, x: usize, y: usize) -> Mat<S> {
        self.entries
            .get(&(x, y))
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.r, self.r))
    }

    pub fn set_kernel(&mut self, x: usize, y: usize, block: Mat<S>) {
        if block.is_zero() {
            self.entries.remove(&(x, y));
        } else {
            self.entries.insert((x, y), block);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Mat<S>)> {
        self.entries.iter()
    }

    pub fn apply(&self, section: &Section<S>) -> Section<S> {
        assert_eq!(section.support, self.support);
        let mut out = Section::<S>::zero(&self.graph, self.support, self.r);
        for (&(x, y), block) in &self.entries {
            for a in 0..self.r {
                let mut acc = out.values[x][a].clone();
                for b in 0..self.r {
                    acc = acc + block.get(a, b).clone() * section.values[y][b].clone();
                }
                out.values[x][a] = acc;
            }
        }
        out
    }

    /// Operator composition; the radius of the result is at most the sum
    /// of the input radii.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.support, rhs.support);
        assert_eq!(self.r, rhs.r);
        let mut out = Self::new(self.graph.clone(), self.support, self.r);
        for (&(x, k), a) in &self.entries {
            for (&(k2, y), b) in &rhs.entries {
                if k != k2 {
                    continue;
                }
                let prod = a.matmul(b);
                if prod.is_zero() {
                    continue;
                }
                let cur = out.kernel(x, y);
                out.set_kernel(x, y, cur.add(&prod));
            }
        }
        out
    }
}

/// Per-point propagation distances and their maximum, the operator's
/// propagation radius. Vertex-supported kernels use graph distance,
/// dart-supported kernels the distance between underlying edges (edges at
/// distance 1 share a vertex).
#[derive(Debug, Clone)]
pub struct PropagationReport {
    pub radius: usize,
    pub per_point: Vec<(usize, usize)>,
}

pub fn check_propagation<S: Scalar>(op: &KernelOperator<S>) -> PropagationReport {
    let g = op.graph();
    let objects = op.support().object_count(g);
    let mut per_point: Vec<(usize, usize)> = Vec::new();
    let mut sources: Vec<Vec<usize>> = Vec::new();
    for x in 0..objects {
        let dist = match op.support() {
            Support::Vertices => g.vertex_distances(x),
            Support::Darts => {
                // Distance between darts x and y is the distance between
                // their edges.
                let edge_dist = g.edge_distances(g.edge_of(x));
                (0..g.dart_count()).map(|y| edge_dist[g.edge_of(y)]).collect()
            }
        };
        sources.push(dist);
    }
    for x in 0..objects {
        let mut max_d = 0usize;
        for (&(ex, ey), _) in op.entries() {
            if ex == x {
                max_d = max_d.max(sources[x][ey]);
            }
        }
        per_point.push((x, max_d));
    }
    let radius = per_point.iter().map(|&(_, d)| d).max().unwrap_or(0);
    PropagationReport { radius, per_point }
}

/// Summation over fibers: (S phi)(base object) = sum of phi over the
/// fiber, under the canonical identification of lifted stalks with base
/// stalks.
pub fn summation_map<S: Scalar>(cover: &CoverGraph, section: &Section<S>) -> Section<S> {
    let total = cover.total();
    let base = cover.base();
    assert_eq!(
        section.values.len(),
        section.support.object_count(total),
        "section lives on the total graph"
    );
    let mut out = Section::<S>::zero(base, section.support, section.r);
    for (obj, value) in section.values.iter().enumerate() {
        let base_obj = match section.support {
            Support::Vertices => cover.project_vertex(obj),
            Support::Darts => cover.project_dart(obj),
        };
        for a in 0..section.r {
            out.values[base_obj][a] = out.values[base_obj][a].clone() + value[a].clone();
        }
    }
    out
}

fn project_object(cover: &CoverGraph, support: Support, obj: usize) -> usize {
    match support {
        Support::Vertices => cover.project_vertex(obj),
        Support::Darts => cover.project_dart(obj),
    }
}

fn lift_object(cover: &CoverGraph, support: Support, obj: usize, sheet: usize) -> usize {
    match support {
        Support::Vertices => cover.lift_vertex(obj, sheet),
        Support::Darts => cover.lift_dart(obj, sheet),
    }
}

fn deck_object(cover: &CoverGraph, support: Support, element: usize, obj: usize) -> Result<usize> {
    match support {
        Support::Vertices => cover.deck_vertex(element, obj),
        Support::Darts => cover.deck_dart(element, obj),
    }
}

/// Pushdown by the kernel-sum formula: the base kernel at (x, y) is the
/// sum of <x'|D|y0> over the fiber of x, with y0 any fixed lift of y.
///
/// For normal covers, deck invariance kernel(g x, g y) = kernel(x, y) is
/// checked first. In all cases the result is checked to be independent of
/// the chosen lift y0; dependence means the operator does not descend.
pub fn pushdown<S: Scalar>(op: &KernelOperator<S>, cover: &CoverGraph) -> Result<KernelOperator<S>> {
    ensure_on_total(op, cover)?;
    if cover.is_normal() {
        check_deck_invariance(op, cover)?;
    }
    let support = op.support();
    let mut out = KernelOperator::new(cover.base().clone(), support, op.r());

    // Accumulate fiber sums for every lift of y, then require agreement.
    let mut sums: BTreeMap<(usize, usize), Vec<Mat<S>>> = BTreeMap::new();
    for (&(x, y), block) in op.entries() {
        let bx = project_object(cover, support, x);
        let by = project_object(cover, support, y);
        let sheet = match support {
            Support::Vertices => cover.sheet_of_vertex(y),
            Support::Darts => cover.sheet_of_dart(y),
        };
        let entry = sums
            .entry((bx, by))
            .or_insert_with(|| vec![Mat::zeros(op.r(), op.r()); cover.index()]);
        entry[sheet] = entry[sheet].add(block);
    }
    for ((bx, by), per_sheet) in sums {
        let first = per_sheet[0].clone();
        for other in per_sheet.iter().skip(1) {
            if !first.validation_eq(other) {
                return Err(Error::PushdownIllDefined { x: bx, y: by });
            }
        }
        out.set_kernel(bx, by, first);
    }
    Ok(out)
}

/// Pushdown through the summation-map diagram: since S is surjective, the
/// column of the pushdown at a base object equals S applied to D of a
/// delta section at the canonical (sheet 0) lift. The full diagram
/// S D = D_pushed S is then verified on every delta section of the cover.
pub fn pushdown_via_summation<S: Scalar>(
    op: &KernelOperator<S>,
    cover: &CoverGraph,
) -> Result<KernelOperator<S>> {
    ensure_on_total(op, cover)?;
    let support = op.support();
    let base_objects = support.object_count(cover.base());
    let r = op.r();
    let mut out = KernelOperator::new(cover.base().clone(), support, r);
    for y in 0..base_objects {
        let y_lift = lift_object(cover, support, y, 0);
        for b in 0..r {
            let mut vector = vec![S::zero(); r];
            vector[b] = S::one();
            let delta = Section::delta(cover.total(), support, y_lift, vector);
            let image = summation_map(cover, &op.apply(&delta));
            for (x, value) in image.values.iter().enumerate() {
                for a in 0..r {
                    if value[a].is_zero() {
                        continue;
                    }
                    let mut block = out.kernel(x, y);
                    block.set(a, b, value[a].clone());
                    out.set_kernel(x, y, block);
                }
            }
        }
    }
    // Verify the diagram on the whole delta basis of the total graph.
    let total_objects = support.object_count(cover.total());
    for y in 0..total_objects {
        for b in 0..r {
            let mut vector = vec![S::zero(); r];
            vector[b] = S::one();
            let delta = Section::delta(cover.total(), support, y, vector);
            let lhs = summation_map(cover, &op.apply(&delta));
            let rhs = out.apply(&summation_map(cover, &delta));
            if lhs != rhs {
                return Err(Error::PushdownIllDefined {
                    x: project_object(cover, support, y),
                    y: project_object(cover, support, y),
                });
            }
        }
    }
    Ok(out)
}

fn ensure_on_total<S: Scalar>(op: &KernelOperator<S>, cover: &CoverGraph) -> Result<()> {
    let expected = op.support().object_count(cover.total());
    let got = op.support().object_count(op.graph());
    if expected != got {
        return Err(Error::SupportMismatch {
            reason: format!(
                "operator lives on {got} objects, cover total has {expected}"
            ),
        });
    }
    Ok(())
}

fn check_deck_invariance<S: Scalar>(op: &KernelOperator<S>, cover: &CoverGraph) -> Result<()> {
    let group = cover.deck_group()?;
    let support = op.support();
    for element in 1..group.order() {
        for (&(x, y), block) in op.entries() {
            let gx = deck_object(cover, support, element, x)?;
            let gy = deck_object(cover, support, element, y)?;
            if !op.kernel(gx, gy).validation_eq(block) {
                return Err(Error::NotDeckInvariant { x, y });
            }
        }
    }
    Ok(())
}

/// Integer Laplacian deg - A of a graph (trivial rank-one system), used by
/// the exact heat-trace harness.
pub fn integer_laplacian(g: &Multigraph) -> Vec<Vec<BigInt>> {
    let n = g.vertex_count();
    let mut lap = vec![vec![BigInt::from(0); n]; n];
    for v in 0..n {
        lap[v][v] = BigInt::from(g.degree(v) as i64);
    }
    for d in 0..g.dart_count() {
        let (u, v) = (g.tail(d), g.head(d));
        lap[v][u] -= 1;
    }
    lap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::testgraphs::*;
    use crate::local_system::testls::k4_sign;
    use crate::scalar::Rational;
    use crate::zeta::bass_zeta;

    fn k4_arc() -> Arc<Multigraph> {
        Arc::new(k4())
    }

    fn c4_arc() -> Arc<Multigraph> {
        Arc::new(c4())
    }

    #[test]
    fn trivial_cover_is_base() {
        let base = k4_arc();
        let cover = build_cover(base.clone(), FiniteGroup::trivial(), vec![0; 6]).unwrap();
        assert_eq!(cover.index(), 1);
        assert_eq!(cover.total().vertex_count(), 4);
        assert_eq!(cover.total().edge_list(), base.edge_list());
    }

    #[test]
    fn c4_z2_cover_is_c8() {
        let base = c4_arc();
        let cover =
            build_cover(base, FiniteGroup::cyclic(2), vec![1, 0, 0, 0]).unwrap();
        let total = cover.total();
        assert_eq!(total.vertex_count(), 8);
        assert_eq!(total.edge_count(), 8);
        assert_eq!(total.check_regular().unwrap(), 1);
        assert_eq!(total.girth().unwrap(), 8);
    }

    #[test]
    fn k4_z2_cover_all_nontree() {
        // Nonzero voltage on all three non-tree edges of K4.
        let base = k4_arc();
        let mut voltage = vec![0usize; 6];
        for e in [1usize, 4, 5] {
            voltage[e] = 1;
        }
        let cover = build_cover(base, FiniteGroup::cyclic(2), voltage).unwrap();
        let total = cover.total();
        assert_eq!(total.vertex_count(), 8);
        assert_eq!(total.check_regular().unwrap(), 2);
        assert_eq!(total.girth().unwrap(), 4);
    }

    #[test]
    fn non_generating_voltage_reports_subgroup() {
        let base = k4_arc();
        // All voltages trivial in Z/2: the cover is two disjoint copies.
        let err = build_cover(base, FiniteGroup::cyclic(2), vec![0; 6]);
        assert!(matches!(
            err,
            Err(Error::NonGeneratingVoltage { subgroup: 1, group: 2 })
        ));
    }

    #[test]
    fn cover_projection_and_deck_action() {
        let base = k4_arc();
        let group = FiniteGroup::elementary_abelian(2, 2).unwrap();
        let mut voltage = vec![0usize; 6];
        voltage[1] = 1;
        voltage[4] = 2;
        voltage[5] = 3;
        let cover = build_cover(base, group, voltage).unwrap();
        let total = cover.total();
        assert_eq!(total.vertex_count(), 16);
        // Projection is a local bijection on darts: projected incidences
        // match.
        for d in 0..total.dart_count() {
            let pd = cover.project_dart(d);
            assert_eq!(cover.project_vertex(total.tail(d)), cover.base().tail(pd));
            assert_eq!(
                cover.project_dart(total.opposite(d)),
                cover.base().opposite(pd)
            );
        }
        // Deck action: free, transitive on fibers, commutes with
        // projection.
        let group = cover.deck_group().unwrap().clone();
        for element in 0..group.order() {
            for v in 0..total.vertex_count() {
                let gv = cover.deck_vertex(element, v).unwrap();
                assert_eq!(cover.project_vertex(gv), cover.project_vertex(v));
                if element != 0 {
                    assert_ne!(gv, v);
                }
            }
            for d in 0..total.dart_count() {
                let gd = cover.deck_dart(element, d).unwrap();
                assert_eq!(cover.project_dart(gd), cover.project_dart(d));
                // Action preserves incidence.
                assert_eq!(
                    total.tail(gd),
                    cover.deck_vertex(element, total.tail(d)).unwrap()
                );
            }
        }
        // Transitivity on a fiber.
        let fiber: Vec<usize> = (0..group.order())
            .map(|s| cover.lift_vertex(0, s))
            .collect();
        for &target in &fiber {
            assert!((0..group.order())
                .any(|g| cover.deck_vertex(g, fiber[0]).unwrap() == target));
        }
    }

    #[test]
    fn lift_dart_is_section_of_projection() {
        let base = k4_arc();
        let group = FiniteGroup::cyclic(4);
        let mut voltage = vec![0usize; 6];
        voltage[1] = 1;
        voltage[4] = 3;
        voltage[5] = 2;
        let cover = build_cover(base, group, voltage).unwrap();
        for d in 0..cover.base().dart_count() {
            for s in 0..cover.index() {
                let lift = cover.lift_dart(d, s);
                assert_eq!(cover.project_dart(lift), d);
                assert_eq!(
                    cover.total().tail(lift),
                    cover.lift_vertex(cover.base().tail(d), s)
                );
            }
        }
    }

    #[test]
    fn euler_characteristic_multiplies() {
        let base = k4_arc();
        let group = FiniteGroup::elementary_abelian(2, 3).unwrap();
        let mut voltage = vec![0usize; 6];
        voltage[1] = 1;
        voltage[4] = 2;
        voltage[5] = 4;
        let cover = build_cover(base.clone(), group, voltage).unwrap();
        assert_eq!(
            cover.total().euler_characteristic(1),
            8 * base.euler_characteristic(1)
        );
        assert_eq!(cover.total().check_regular().unwrap(), 2);
    }

    #[test]
    fn homology_tower_k4() {
        let covers = homology_tower(k4_arc(), 2, 1, 1_000).unwrap();
        assert_eq!(covers.len(), 1);
        let c = &covers[0];
        assert_eq!(c.index(), 8);
        assert_eq!(c.total().vertex_count(), 32);
        assert_eq!(c.total().check_regular().unwrap(), 2);
        // Girth strictly increased from 3.
        assert!(c.total().girth().unwrap() > 3);
    }

    #[test]
    fn homology_tower_c4_gives_c8() {
        let covers = homology_tower(c4_arc(), 2, 1, 1_000).unwrap();
        assert_eq!(covers[0].total().girth().unwrap(), 8);
        assert_eq!(covers[0].total().vertex_count(), 8);
    }

    #[test]
    fn homology_tower_cap() {
        // Level 2 of the K4 tower has rank 48 - 32 + 1 = 17, so index
        // 2^17 exceeds the cap of 100.
        let err = homology_tower(k4_arc(), 2, 2, 100);
        assert!(matches!(
            err,
            Err(Error::IndexCapExceeded { level: 2, index: 131072, .. })
        ));
    }

    #[test]
    fn random_cover_deterministic_and_connected() {
        let c1 = random_cover(k4_arc(), 4, 7).unwrap();
        let c2 = random_cover(k4_arc(), 4, 7).unwrap();
        assert_eq!(c1.total().edge_list(), c2.total().edge_list());
        assert_eq!(c1.total().vertex_count(), 16);
        assert_eq!(c1.total().check_regular().unwrap(), 2);
        assert!(c1.total().girth().unwrap() >= 3);
        // Degree 1 reproduces the base.
        let c4 = random_cover(k4_arc(), 1, 0).unwrap();
        assert_eq!(c4.total().edge_list(), c4.base().edge_list());
    }

    #[test]
    fn lifted_system_voltage_and_monodromy() {
        let sign = k4_sign();
        let base = sign.graph().clone();
        let mut voltage = vec![0usize; 6];
        for e in [1usize, 4, 5] {
            voltage[e] = 1;
        }
        let cover = build_cover(base, FiniteGroup::cyclic(2), voltage).unwrap();
        let lifted = lift_local_system(&sign, &cover);
        assert!(lifted.unitarity_holds());
        for d in 0..cover.total().dart_count() {
            assert_eq!(
                lifted.voltage(d).get(0, 0),
                sign.voltage(cover.project_dart(d)).get(0, 0)
            );
        }
        // The cover voltage equals the sign character here, so every
        // closed walk upstairs has monodromy +1.
        let budget = crate::geodesic::EnumerationBudget::default();
        let classes = crate::geodesic::enumerate_primitive(cover.total(), 6, &budget).unwrap();
        for class in classes {
            let m = lifted.monodromy(class.darts()).unwrap();
            assert!(m.is_identity(), "walk {:?}", class.darts());
        }
        // Zero-dimensional systems lift to zero-dimensional systems.
        let zero = LocalSystem::<Rational>::trivial(cover.base().clone(), 0);
        assert_eq!(lift_local_system(&zero, &cover).dim(), 0);
    }

    #[test]
    fn summation_map_examples() {
        let base = k4_arc();
        let cover = build_cover(base.clone(), FiniteGroup::trivial(), vec![0; 6]).unwrap();
        let ls_r = 1usize;
        let delta = Section::<Rational>::delta(
            cover.total(),
            Support::Vertices,
            2,
            vec![Rational::from_i64(5)],
        );
        let s = summation_map(&cover, &delta);
        assert_eq!(s.values[2][0], Rational::from_i64(5));

        let group = FiniteGroup::cyclic(2);
        let mut voltage = vec![0usize; 6];
        voltage[1] = 1;
        voltage[4] = 1;
        voltage[5] = 1;
        let cover = build_cover(base, group, voltage).unwrap();
        // Delta at one lift pushes to delta at the base point.
        let delta = Section::<Rational>::delta(
            cover.total(),
            Support::Vertices,
            cover.lift_vertex(3, 1),
            vec![Rational::from_i64(1)],
        );
        let s = summation_map(&cover, &delta);
        for v in 0..4 {
            let expect = if v == 3 { 1 } else { 0 };
            assert_eq!(s.values[v][0], Rational::from_i64(expect));
        }
        // Summing deltas over a whole fiber gives |H| at the base point.
        let mut section = Section::<Rational>::zero(cover.total(), Support::Vertices, ls_r);
        for sheet in 0..cover.index() {
            section.values[cover.lift_vertex(3, sheet)][0] = Rational::from_i64(1);
        }
        let s = summation_map(&cover, &section);
        assert_eq!(s.values[3][0], Rational::from_i64(2));
    }

    fn k4_z2_cover() -> CoverGraph {
        let mut voltage = vec![0usize; 6];
        for e in [1usize, 4, 5] {
            voltage[e] = 1;
        }
        build_cover(k4_arc(), FiniteGroup::cyclic(2), voltage).unwrap()
    }

    #[test]
    fn pushdown_of_lifted_laplacian_is_base_laplacian() {
        let base_ls = LocalSystem::<Rational>::trivial(k4_arc(), 1);
        let cover = k4_z2_cover();
        let lifted = lift_local_system(&base_ls, &cover);
        let lifted_lap = KernelOperator::from_block_matrix(
            cover.total().clone(),
            Support::Vertices,
            &lifted.twisted_laplacian(),
        );
        let pushed = pushdown(&lifted_lap, &cover).unwrap();
        let base_lap = KernelOperator::from_block_matrix(
            base_ls.graph().clone(),
            Support::Vertices,
            &base_ls.twisted_laplacian(),
        );
        assert!(pushed
            .to_block_matrix()
            .validation_eq(&base_lap.to_block_matrix()));
        // The summation-diagram route agrees exactly.
        let via_s = pushdown_via_summation(&lifted_lap, &cover).unwrap();
        assert!(via_s
            .to_block_matrix()
            .validation_eq(&pushed.to_block_matrix()));
    }

    #[test]
    fn pushdown_of_lifted_dart_operator() {
        let sign = k4_sign();
        let cover = k4_z2_cover();
        let lifted = lift_local_system(&sign, &cover);
        let lifted_b = KernelOperator::from_block_matrix(
            cover.total().clone(),
            Support::Darts,
            &lifted.dart_operator().unwrap(),
        );
        let pushed = pushdown(&lifted_b, &cover).unwrap();
        let base_b = sign.dart_operator().unwrap();
        assert!(pushed.to_block_matrix().validation_eq(&base_b));
        let via_s = pushdown_via_summation(&lifted_b, &cover).unwrap();
        assert!(via_s.to_block_matrix().validation_eq(&base_b));
    }

    #[test]
    fn pushdown_trivial_cover_is_identity_on_operators() {
        let ls = LocalSystem::<Rational>::trivial(k4_arc(), 1);
        let cover = build_cover(ls.graph().clone(), FiniteGroup::trivial(), vec![0; 6]).unwrap();
        let op = KernelOperator::from_block_matrix(
            cover.total().clone(),
            Support::Vertices,
            &ls.twisted_laplacian(),
        );
        let pushed = pushdown(&op, &cover).unwrap();
        assert!(pushed
            .to_block_matrix()
            .validation_eq(&ls.twisted_laplacian()));
    }

    #[test]
    fn pushdown_rejects_non_invariant_operator() {
        let cover = k4_z2_cover();
        let mut op = KernelOperator::<Rational>::new(
            cover.total().clone(),
            Support::Vertices,
            1,
        );
        // A kernel concentrated on a single fiber point is not deck
        // invariant.
        op.set_kernel(0, 0, Mat::from_rows(vec![vec![Rational::from_i64(1)]]));
        assert!(matches!(
            pushdown(&op, &cover),
            Err(Error::NotDeckInvariant { .. })
        ));
    }

    #[test]
    fn pushdown_on_random_cover() {
        // Permutation covers have no deck group; pushdown still descends
        // lifted operators and both routes agree.
        let ls = LocalSystem::<Rational>::trivial(k4_arc(), 1);
        let cover = random_cover(ls.graph().clone(), 3, 11).unwrap();
        let lifted = lift_local_system(&ls, &cover);
        let op = KernelOperator::from_block_matrix(
            cover.total().clone(),
            Support::Vertices,
            &lifted.twisted_laplacian(),
        );
        let pushed = pushdown(&op, &cover).unwrap();
        assert!(pushed
            .to_block_matrix()
            .validation_eq(&ls.twisted_laplacian()));
        let via_s = pushdown_via_summation(&op, &cover).unwrap();
        assert!(via_s
            .to_block_matrix()
            .validation_eq(&pushed.to_block_matrix()));
    }

    #[test]
    fn propagation_radii() {
        let ls = LocalSystem::<Rational>::trivial(k4_arc(), 1);
        let lap = KernelOperator::from_block_matrix(
            ls.graph().clone(),
            Support::Vertices,
            &ls.twisted_laplacian(),
        );
        assert_eq!(check_propagation(&lap).radius, 1);
        let dart = KernelOperator::from_block_matrix(
            ls.graph().clone(),
            Support::Darts,
            &ls.dart_operator().unwrap(),
        );
        assert_eq!(check_propagation(&dart).radius, 1);
        // K4 has diameter 1, so composition needs a wider graph to attain
        // radius 2.
        let c4_ls = LocalSystem::<Rational>::trivial(c4_arc(), 1);
        let c4_lap = KernelOperator::from_block_matrix(
            c4_ls.graph().clone(),
            Support::Vertices,
            &c4_ls.twisted_laplacian(),
        );
        assert_eq!(check_propagation(&c4_lap).radius, 1);
        let lap2 = c4_lap.compose(&c4_lap);
        let report = check_propagation(&lap2);
        assert_eq!(report.radius, 2);
        // Composition bound: radius(AB) <= radius(A) + radius(B).
        assert!(report.radius <= 2 * check_propagation(&c4_lap).radius);
        // Per-point distances are recorded for each object.
        assert_eq!(report.per_point.len(), 4);
    }

    #[test]
    fn zeta_divisibility_along_covers() {
        // bass_zeta of the total graph is divisible by bass_zeta of the
        // base, exactly.
        for cover in [
            k4_z2_cover(),
            build_cover(c4_arc(), FiniteGroup::cyclic(2), vec![1, 0, 0, 0]).unwrap(),
        ] {
            let base_ls = LocalSystem::<Rational>::trivial(cover.base().clone(), 1);
            let total_ls = lift_local_system(&base_ls, &cover);
            let zb = bass_zeta(&base_ls).unwrap();
            let zt = bass_zeta(&total_ls).unwrap();
            let quotient = zt.div_exact(&zb).unwrap();
            assert_eq!(quotient.clone() * zb, zt);
        }
    }

    #[test]
    fn composite_tower_cover() {
        // Two homology levels of C4 compose to an index-4 cover of C4,
        // the 16-cycle.
        let base = c4_arc();
        let level1 = homology_tower(base.clone(), 2, 1, 100).unwrap().remove(0);
        let level2 = homology_tower(level1.total().clone(), 2, 1, 100)
            .unwrap()
            .remove(0);
        let composite = composite_permutation_cover(&[level1, level2]).unwrap();
        assert_eq!(composite.index(), 4);
        assert_eq!(composite.base().vertex_count(), 4);
        assert_eq!(composite.total().vertex_count(), 16);
        assert_eq!(composite.total().girth().unwrap(), 16);
        // Single-level composition reproduces the cover up to relabeling.
        let single = composite_permutation_cover(&[homology_tower(base, 2, 1, 100)
            .unwrap()
            .remove(0)])
        .unwrap();
        assert_eq!(single.index(), 2);
        assert_eq!(single.total().girth().unwrap(), 8);
    }

    #[test]
    fn group_table_validation() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).is_ok());
        // Not associative / broken table.
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![0, 0]]).is_err());
        assert!(FiniteGroup::from_table(vec![]).is_err());
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(z6.generated_subgroup_order(&[2]), 3);
        assert_eq!(z6.generated_subgroup_order(&[1]), 6);
        assert_eq!(z6.generated_subgroup_order(&[]), 1);
    }
}
