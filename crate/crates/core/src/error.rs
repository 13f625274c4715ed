use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{0} is not an odd prime power")]
    NotOddPrimePower(u64),

    #[error("extension degree must be positive, got {0}")]
    InvalidDegree(u32),

    #[error("field order {q} exceeds the table-driven bound {max}")]
    TooLarge { q: u64, max: u64 },

    #[error("element {value} does not belong to F_{q}")]
    ElementOutOfRange { value: u64, q: u64 },

    #[error("cyclotomic ring mismatch: conductor {left} vs {right}")]
    RingMismatch { left: u64, right: u64 },

    #[error("ring conductor {m} is incompatible with F_{q} (need m = q - 1)")]
    FieldRingMismatch { m: u64, q: u64 },

    #[error("{t} is not coprime to {m}")]
    NotCoprime { t: i64, m: u64 },

    #[error("the zero element has no Teichmuller lift")]
    ZeroElement,

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: i64,
        range: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inexact division in {0}")]
    InexactDivision(&'static str),

    /// A computed quantity contradicts a proven identity. Seeing this means
    /// an arithmetic bug, never a user error.
    #[error("identity violated: {0}")]
    Falsified(String),
}
