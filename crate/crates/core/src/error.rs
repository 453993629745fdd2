use thiserror::Error;

use crate::gauss::ValidationReport;

#[derive(Debug, Clone, Error)]
pub enum GaussError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid Gauss code: {0}")]
    Validation(ValidationReport),
}

impl GaussError {
    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        GaussError::Syntax {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum DiagramError {
    #[error(transparent)]
    Gauss(#[from] GaussError),
    #[error("vertex {0} has degree one after normalization")]
    DegreeOne(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WirtError {
    #[error("search budget of {budget} seed sets exhausted at k = {k}")]
    BudgetExceeded { budget: u64, k: usize },
    #[error("no seed set of size at most {max_k} colors the diagram")]
    NotFoundWithinBound { max_k: usize },
    #[error("result is not fully colored")]
    NotFullyColored,
    #[error("Euler identity failed: chi = {chi}, tau1 = {tau1}, tau2 = {tau2}, degree sum = {degree_sum}")]
    Consistency {
        chi: i64,
        tau1: usize,
        tau2: usize,
        degree_sum: usize,
    },
    #[error("crossing certificate violated: {0}")]
    LemmaViolation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    Shape { row: usize, len: usize, order: usize },
    #[error("table entry {value} at ({row}, {col}) is outside 0..{order}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: u32,
        order: usize,
    },
    #[error("table fails the quandle axioms: {0}")]
    Axioms(String),
    #[error("unknown quandle spec `{0}`")]
    UnknownSpec(String),
    #[error("malformed quandle table: {0}")]
    Malformed(String),
    #[error("{what} exceeded the budget of {budget}")]
    BudgetExceeded { what: &'static str, budget: u64 },
    #[error("diagram has no full coloring witness")]
    NoWitness,
    #[error(transparent)]
    Wirt(#[from] WirtError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("singularization needs a two-component link, got {0} components")]
    Arity(usize),
    #[error("({x}, {y}) is not a singularizable pair of this link")]
    NotSingularizable { x: u32, y: u32 },
}
