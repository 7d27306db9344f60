use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring parameters: {0}")]
    InvalidSpec(String),

    #[error("ring axiom violated: {axiom} (witness {witness:?})")]
    AxiomViolation { axiom: &'static str, witness: Vec<usize> },

    #[error("ring of size {size} exceeds the limit of {limit} elements")]
    TooLarge { size: usize, limit: usize },

    #[error("element index {index} out of range for a ring of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("ring has no unity")]
    NoUnity,

    #[error("element sets or maps belong to different rings")]
    RingMismatch,

    #[error("map table has length {got}, ring has {expected} elements")]
    TableLength { got: usize, expected: usize },

    #[error("map is not additive: f({x}+{y}) != f({x})+f({y})")]
    NotAdditive { x: usize, y: usize },

    #[error("map is not a derivation")]
    NotDerivation,

    #[error("map is not a Jordan derivation")]
    NotJordanDerivation,

    #[error("map is a derivation")]
    IsDerivation,

    #[error("cannot parse element {text:?}: {reason}")]
    ParseElement { text: String, reason: String },

    #[error("unknown checker {0:?}")]
    UnknownChecker(String),

    #[error("cannot resolve map descriptor {text:?}: {reason}")]
    MapDescriptor { text: String, reason: String },
}
