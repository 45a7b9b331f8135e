use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed cycle notation at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("point {point} exceeds degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("point {0} repeated within one cycle")]
    RepeatedPoint(usize),

    #[error("image array is not a bijection")]
    NotBijection,

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),

    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u128, cap: u128 },

    #[error("permutation is not an element of the group")]
    NotMember,

    #[error("invalid class index {0}")]
    InvalidClass(usize),

    #[error("unknown class name {0:?}")]
    UnknownClassName(String),

    #[error("class {0} does not consist of odd-order elements")]
    NotOddClass(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("not a subgroup of the given group")]
    NotSubgroup,

    #[error("search bound exceeded: {count} candidate classes, bound {bound}")]
    SearchBound { count: usize, bound: usize },

    #[error("conductor {0} exceeds bound {1}")]
    ConductorOverflow(u64, u64),

    #[error("character table schema violation: {0}")]
    Schema(String),

    #[error("orthogonality failure: {0}")]
    Orthogonality(String),

    #[error("table/group alignment failed: {0}")]
    Alignment(String),

    #[error("unsupported field order {p}^{k}")]
    UnsupportedField { p: u64, k: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unknown group name {0:?}")]
    UnknownGroup(String),

    #[error("order mismatch for {name}: expected {expected}, built {actual}")]
    OrderMismatch { name: String, expected: u128, actual: u128 },

    #[error("group spec error: {0}")]
    Spec(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
