//! Primitive closed geodesics and the Euler-product expansion of log Z.
//!
//! A closed geodesic is a cyclically non-backtracking closed dart walk,
//! stored as the lexicographically minimal rotation of its dart id
//! sequence. Classes are taken up to rotation only (not orientation
//! reversal), so each undirected primitive cycle appears once per
//! direction.

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::local_system::LocalSystem;
use crate::scalar::Scalar;
use crate::series::FormalSeries;

/// Default elementary-step budget for enumeration (q^L * m rule).
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy)]
pub struct EnumerationBudget {
    pub max_steps: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self {
            max_steps: DEFAULT_BUDGET,
        }
    }
}

/// A closed geodesic in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedGeodesic {
    darts: Vec<usize>,
    primitive: bool,
}

impl ClosedGeodesic {
    /// Validates a dart word (closed, non-backtracking, tailless) and
    /// stores its canonical rotation.
    pub fn from_darts(graph: &Multigraph, darts: &[usize]) -> Result<Self> {
        if darts.is_empty() {
            return Err(Error::InvalidWalk {
                reason: "empty walk".into(),
            });
        }
        let l = darts.len();
        for i in 0..l {
            let d = darts[i];
            let next = darts[(i + 1) % l];
            if d >= graph.dart_count() {
                return Err(Error::InvalidWalk {
                    reason: format!("dart {d} out of range"),
                });
            }
            if graph.head(d) != graph.tail(next) {
                return Err(Error::InvalidWalk {
                    reason: format!("darts {d} and {next} are not consecutive"),
                });
            }
            if next == graph.opposite(d) {
                return Err(Error::InvalidWalk {
                    reason: format!("backtracking step {d} -> {next}"),
                });
            }
        }
        Ok(Self {
            darts: canonical_rotation(darts),
            primitive: is_primitive_word(darts),
        })
    }

    pub fn darts(&self) -> &[usize] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }
}

/// Lexicographically minimal rotation of a word.
pub fn canonical_rotation(word: &[usize]) -> Vec<usize> {
    let l = word.len();
    let mut best = 0usize;
    for start in 1..l {
        for k in 0..l {
            let a = word[(start + k) % l];
            let b = word[(best + k) % l];
            if a < b {
                best = start;
                break;
            }
            if a > b {
                break;
            }
        }
    }
    (0..l).map(|k| word[(best + k) % l]).collect()
}

/// True when the cyclic word is not a proper power of a shorter word.
pub fn is_primitive_word(word: &[usize]) -> bool {
    let l = word.len();
    for period in 1..l {
        if l % period != 0 {
            continue;
        }
        if (period..l).all(|i| word[i] == word[i - period]) {
            return false;
        }
    }
    true
}

fn budget_estimate(graph: &Multigraph, max_len: usize) -> u128 {
    let q = (0..graph.vertex_count())
        .map(|v| graph.degree(v))
        .max()
        .unwrap_or(1)
        .saturating_sub(1)
        .max(1) as u128;
    let m = graph.edge_count() as u128;
    q.checked_pow(max_len as u32)
        .and_then(|p| p.checked_mul(m))
        .unwrap_or(u128::MAX)
}

fn check_budget(graph: &Multigraph, max_len: usize, budget: &EnumerationBudget) -> Result<()> {
    let estimate = budget_estimate(graph, max_len);
    if estimate > budget.max_steps as u128 {
        return Err(Error::BudgetExceeded {
            estimate,
            budget: budget.max_steps,
        });
    }
    Ok(())
}

/// All primitive closed geodesic classes of length <= max_len, each once in
/// canonical form, ordered by (length, dart word).
pub fn enumerate_primitive(
    graph: &Multigraph,
    max_len: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<ClosedGeodesic>> {
    Ok(enumerate_classes(graph, max_len, budget)?
        .into_iter()
        .filter(|g| g.primitive)
        .collect())
}

/// All closed geodesic classes (primitive or not) of length <= max_len.
pub fn enumerate_classes(
    graph: &Multigraph,
    max_len: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<ClosedGeodesic>> {
    check_budget(graph, max_len, budget)?;
    let mut found: Vec<ClosedGeodesic> = Vec::new();
    let mut word: Vec<usize> = Vec::with_capacity(max_len);
    // DFS anchored at each dart; the anchor must stay the minimal dart id
    // of the word, so larger anchors prune earlier branches.
    for anchor in 0..graph.dart_count() {
        word.clear();
        word.push(anchor);
        dfs_extend(graph, anchor, max_len, &mut word, &mut found);
    }
    found.sort_by(|a, b| (a.len(), a.darts()).cmp(&(b.len(), b.darts())));
    Ok(found)
}

fn dfs_extend(
    graph: &Multigraph,
    anchor: usize,
    max_len: usize,
    word: &mut Vec<usize>,
    found: &mut Vec<ClosedGeodesic>,
) {
    let last = *word.last().expect("word nonempty");
    // Close the word if the cyclic step back to the anchor is admissible.
    if graph.head(last) == graph.tail(anchor) && anchor != graph.opposite(last) {
        let canonical = canonical_rotation(word);
        if canonical == *word {
            found.push(ClosedGeodesic {
                darts: word.clone(),
                primitive: is_primitive_word(word),
            });
        }
    }
    if word.len() == max_len {
        return;
    }
    for next in graph.nb_successors(last) {
        if next < anchor {
            continue;
        }
        word.push(next);
        dfs_extend(graph, anchor, max_len, word, found);
        word.pop();
    }
}

/// Coefficients of log Z(u) through degree max_len, from the Euler product
/// over primitive classes: the u^{l k} coefficient accumulates
/// -tr(m^k) / k for each primitive class of length l.
pub fn euler_product_log_series<S: Scalar>(
    ls: &LocalSystem<S>,
    max_len: usize,
    budget: &EnumerationBudget,
) -> Result<FormalSeries<S>> {
    let classes = enumerate_primitive(ls.graph(), max_len, budget)?;
    let mut coeffs = vec![S::zero(); max_len + 1];
    for class in &classes {
        let l = class.len();
        let m = ls.monodromy(class.darts())?;
        let mut power = m.clone();
        let mut k = 1usize;
        while l * k <= max_len {
            let inv_k = S::from_i64(k as i64).inv().expect("k nonzero");
            coeffs[l * k] = coeffs[l * k].clone() - power.trace() * inv_k;
            power = power.matmul(&m);
            k += 1;
        }
    }
    Ok(FormalSeries::from_coeffs(max_len, coeffs))
}

/// N_k = tr(B^k) for k = 1..max_len, the closed non-backtracking tailless
/// walk counts weighted by monodromy trace. Independent cross-check for
/// the Euler product: log Z = -sum_k N_k u^k / k.
pub fn walk_trace_series<S: Scalar>(
    ls: &LocalSystem<S>,
    max_len: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<S>> {
    let dim = (ls.graph().dart_count() * ls.dim()) as u128;
    let estimate = dim.pow(3).saturating_mul(max_len as u128);
    if estimate > budget.max_steps as u128 {
        return Err(Error::BudgetExceeded {
            estimate,
            budget: budget.max_steps,
        });
    }
    let b = ls.dart_operator()?;
    let mut traces = Vec::with_capacity(max_len);
    let mut power = b.clone();
    for _ in 0..max_len {
        traces.push(power.trace());
        power = power.matmul(&b);
    }
    Ok(traces)
}
