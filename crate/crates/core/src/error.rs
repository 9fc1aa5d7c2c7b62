use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("operation undefined on the empty graph")]
    EmptyGraph,
    #[error("graph needs at least {required} vertices, got {order}")]
    TooFewVertices { required: usize, order: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("edge {0}-{1} is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("dense precondition 2*delta(H) > |H| fails (delta = {min_degree}, |H| = {order})")]
    PreconditionViolated { min_degree: usize, order: usize },
    #[error("not a minimum edge cut: {0}")]
    NotMinimumCut(String),
    #[error("minimum cut outside every class: {0}")]
    UnclassifiableCut(String),
    #[error("the pair G = K_2, n = 3 lies outside the criterion; brute force says super = {brute_force}")]
    ExcludedPair { brute_force: bool },
    #[error("enumeration needs {needed} subsets, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("infeasible degree constraint: {0}")]
    InfeasibleDegree(String),
    #[error("config: {0}")]
    Config(String),
    #[error("cut format: {0}")]
    CutFormat(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
