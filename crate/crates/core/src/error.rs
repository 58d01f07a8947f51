use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported degree {0}: expected 3 <= degree <= 8")]
    DegreeOutOfRange(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("element is not in the group")]
    NotInGroup,
    #[error("base set does not generate the group: {reached} of {order} elements reached")]
    NotGenerated { reached: usize, order: usize },
    #[error("base set must contain a non-identity element")]
    TrivialBase,
    #[error("invalid braid word: {0}")]
    InvalidWord(String),
    #[error("braid word on {0} strands where 3 are required")]
    WrongStrandCount(usize),
    #[error("braid is not pure")]
    NotPure,
    #[error("sample count must be positive")]
    EmptySample,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("supports overlap: {0}")]
    OverlappingSupports(String),
    #[error("root finding failed: {0}")]
    RootFinding(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("strands collide (separation {separation:e})")]
    Collision { separation: f64 },
    #[error("unresolved crossing: {0}")]
    UnresolvedCrossing(String),
    #[error("rejection rate {rate:.4} exceeds the limit {limit}")]
    ExcessiveRejection { rate: f64, limit: f64 },
    #[error("scaling law inapplicable: quasi-morphism does not vanish on sigma_1")]
    ScalingInapplicable,
    #[error("support area is not available in closed form")]
    NoExactArea,
    #[error("quasi-morphism value is zero")]
    ZeroValue,
    #[error("map parse error at line {line}: {msg}")]
    MapParse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
