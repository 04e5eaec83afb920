use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while parsing inputs, building groups and
/// loops, or running the construction pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line}: relation for {lhs} references g{rhs}, which is not a higher generator")]
    Triangularity { line: usize, lhs: String, rhs: usize },

    #[error("line {line}: duplicate relation for {lhs}")]
    DuplicateRelation { line: usize, lhs: String },

    #[error("inconsistent presentation: ({a}*{b})*{c} != {a}*({b}*{c})")]
    Inconsistent { a: usize, b: usize, c: usize },

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("subgroup is not normal: conjugate of {element} by {by} leaves it")]
    NotNormal { element: usize, by: usize },

    #[error("group is not abelian: {a} and {b} do not commute")]
    NotAbelian { a: usize, b: usize },

    #[error("{0} is not a cyclic subgroup of the center")]
    NotCentralCyclic(String),

    #[error("cocycle table violates its invariant at ({x}, {y}): {msg}")]
    CocycleInvariant { x: usize, y: usize, msg: String },

    #[error("[{x},[{y},{z}]] does not lie in Z")]
    CommutatorOutsideZ { x: usize, y: usize, z: usize },

    #[error("expected a group of order {expected}, got {actual}")]
    WrongOrder { expected: usize, actual: usize },

    #[error("setup is trivial: g vanishes identically")]
    TrivialSetup,

    #[error("permutation degree {actual} does not match group degree {expected}")]
    DegreeMismatch { expected: usize, actual: usize },

    #[error("group of order {order} exceeds the materialization bound {bound}")]
    TooLarge { order: u128, bound: usize },

    #[error("no standard basis: {0}")]
    NoBasis(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(
        "seed extension is not well defined on M/R: {first} and {second} name the same coset \
         but prescribe different values"
    )]
    WellDefinedness { first: String, second: String },

    #[error("parameter set is not compatible: {0}")]
    Incompatible(String),

    #[error("not a loop: {0}")]
    NotALoop(String),

    #[error("subloop is not normal: {0}")]
    NotNormalSubloop(String),

    #[error("parameter space has {size} vectors, budget is {budget}")]
    BudgetExceeded { size: u128, budget: usize },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
