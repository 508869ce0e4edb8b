use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("entry {value} at row {row}, column {col} is outside {{-1, 0, +1}}")]
    EntryOutOfRange { row: usize, col: usize, value: i64 },

    #[error("vector is not a member of the space")]
    NotInSpace,

    #[error("vector must be nonzero")]
    ZeroVector,

    #[error("vector must be integral")]
    NotIntegral,

    #[error("index {index} out of range for ground set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("{what} of size {size} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("not an r-path: {0}")]
    NotAPath(String),

    #[error("paths belong to different spaces or use different return elements")]
    MismatchedPaths,

    #[error("negative capacity {value} on element {index}")]
    NegativeCapacity { index: usize, value: String },

    #[error("path is not augmenting for the current flow")]
    NotAugmenting,

    #[error("graph: {0}")]
    Graph(String),

    #[error("oracle cannot be used with this instance: {0}")]
    OracleMismatch(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A normalized elementary vector left {-1, 0, +1}: the space is not
    /// regular (the generator was not totally unimodular).
    #[error(
        "space is not regular: elementary vector on support {support:?} normalizes to {entries:?}"
    )]
    NonRegular {
        support: Vec<usize>,
        entries: Vec<String>,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("augmentation count exceeded the bound {bound} (|E| = {ground_size})")]
    IterationGuard { bound: usize, ground_size: usize },
}

impl Error {
    /// True for errors that indicate a theory breach or an implementation
    /// fault rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::NonRegular { .. } | Error::Invariant(_) | Error::IterationGuard { .. }
        )
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
