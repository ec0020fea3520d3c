use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("facet #{0} is empty")]
    EmptyFacet(usize),
    #[error("no facets given")]
    EmptyInput,
    #[error("vertex id {id} is outside the universe of {universe} vertices")]
    UnknownVertex { id: usize, universe: usize },
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("{0} is not a facet of the complex")]
    NotAFacet(String),
    #[error("facet {0} is not contained in the ambient vertex set")]
    FacetOutsideY(String),
    #[error("facets {0} and {1} intersect, so they do not form a matching")]
    NotAMatching(String, String),
    #[error("complex is not pure")]
    NotPure,
    #[error("complex is not connected in codimension 1")]
    NotCodim1Connected,
    #[error("operation is undefined on the zero ideal")]
    ZeroIdeal,
    #[error("ideals live over different universes ({0} vs {1} variables)")]
    UniverseMismatch(usize, usize),
    #[error("ideal is not generated in a single degree")]
    NotEquigenerated,
    #[error("{what} budget of {limit} exceeded")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("relation is not a strict partial order: {0}")]
    NotAPartialOrder(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("complex does not come from a broom graph: {0}")]
    NotABroomComplex(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("universe of {0} vertices exceeds the limit of {1}")]
    UniverseTooLarge(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
