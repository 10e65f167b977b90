use thiserror::Error;

/// Coarse classification used by the CLI to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Bad invocation or I/O trouble (exit 1).
    Usage,
    /// Input fails a precondition or domain rule (exit 2).
    Validation,
    /// A configured resource budget would be exceeded (exit 3).
    Budget,
    /// An identity that should hold exactly did not (exit 4).
    VerifyFailed,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty edge list")]
    EmptyInput,
    #[error("vertex index {vertex} out of range (graph has {vertices} vertices)")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("graph is disconnected ({reached} of {vertices} vertices reachable from vertex 0)")]
    Disconnected { reached: usize, vertices: usize },
    #[error("loop edge {edge} not allowed in regular mode")]
    LoopEdge { edge: usize },
    #[error("not regular: vertex degrees range from {min_degree} to {max_degree}")]
    NotRegular { min_degree: usize, max_degree: usize },
    #[error("not regular: valency {valency} is below 2")]
    ValencyTooSmall { valency: usize },
    #[error("graph contains a loop edge; regular graphs must have two distinct endpoints per edge")]
    LoopInRegularCheck,
    #[error("infinite girth: graph has no closed geodesic")]
    InfiniteGirth,
    #[error("vertex {vertex} has degree {degree}; operation requires every degree >= 2")]
    DegreeTooSmall { vertex: usize, degree: usize },
    #[error("generator for edge {edge} is not unitary")]
    NotUnitary { edge: usize },
    #[error("matrix dimension mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("edge {edge} lies on the spanning tree; generators are keyed by non-tree edges {non_tree:?}")]
    TreeEdgeGenerator { edge: usize, non_tree: Vec<usize> },
    #[error("unknown edge index {edge} (graph has {edges} edges)")]
    UnknownEdge { edge: usize, edges: usize },
    #[error("dart sequence is not a closed non-backtracking walk: {reason}")]
    InvalidWalk { reason: String },
    #[error("resource budget exceeded: estimated {estimate} elementary steps, budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u64 },
    #[error("q = {q} outside supported range: {reason}")]
    UnsupportedValency { q: usize, reason: String },
    #[error("u = {u} outside certified domain {domain}")]
    UOutsideDomain { u: String, domain: String },
    #[error("lambda = {lambda} must be positive")]
    LambdaNotPositive { lambda: String },
    #[error("result is irrational: discriminant {disc} is not a perfect rational square")]
    IrrationalResult { disc: String },
    #[error("matrix is not positive definite: eigenvalue {eigenvalue} below tolerance")]
    NotPositiveDefinite { eigenvalue: f64 },
    #[error("matrix is not self-adjoint (max asymmetry {asymmetry})")]
    NotSelfAdjoint { asymmetry: f64 },
    #[error("N-th root of zero requested")]
    RootOfZero,
    #[error("series log requires constant term 1, found {found}")]
    LogConstantTerm { found: String },
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("voltage on edge {edge} inconsistent with its opposite dart")]
    VoltageInconsistent { edge: usize },
    #[error("voltages generate a subgroup of order {subgroup} < {group}; cover is disconnected")]
    NonGeneratingVoltage { subgroup: usize, group: usize },
    #[error("group table invalid: {reason}")]
    GroupTable { reason: String },
    #[error("index cap {cap} exceeded at tower level {level}: next cover would have index {index}")]
    IndexCapExceeded { level: usize, index: u128, cap: u64 },
    #[error("no connected cover found after {attempts} seeded attempts")]
    ConnectivityRetries { attempts: usize },
    #[error("operator is not deck invariant at ({x}, {y})")]
    NotDeckInvariant { x: usize, y: usize },
    #[error("pushdown ill-defined: fiber sums at base pair ({x}, {y}) depend on the chosen lift")]
    PushdownIllDefined { x: usize, y: usize },
    #[error("operator support mismatch: {reason}")]
    SupportMismatch { reason: String },
    #[error("main identity failed at coefficient {index}: lhs {lhs}, rhs {rhs}")]
    IdentityFailed {
        index: usize,
        lhs: String,
        rhs: String,
    },
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            Io(_) => ErrorCategory::Usage,
            BudgetExceeded { .. } | IndexCapExceeded { .. } => ErrorCategory::Budget,
            IdentityFailed { .. } => ErrorCategory::VerifyFailed,
            _ => ErrorCategory::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
