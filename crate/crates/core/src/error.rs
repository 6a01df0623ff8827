use std::path::PathBuf;

/// Errors produced by the engine.
#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree {0} is outside the supported range 1..=255")]
    UnsupportedDegree(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported group parameter: {0}")]
    UnsupportedParameter(String),
    #[error("order check failed for {group}: expected {expected}, computed {computed}")]
    OrderMismatch {
        group: String,
        expected: u64,
        computed: u64,
    },
    #[error("element enumeration cap exceeded: more than {cap} elements")]
    CapExceeded { cap: u64 },
    #[error("socle is not normal in the ambient group")]
    SocleNotNormal,
    #[error("socle is not a nonabelian simple group")]
    SocleNotSimple,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element does not lie in the group")]
    NotAMember,
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("quotient is not 2-generated")]
    NotTwoGenerated,
    #[error("no generating coset pair found")]
    NoGeneratingPair,
    #[error("coset values disagree across generating pairs: {0}")]
    TauNotConstant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
