use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u64),
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("letter {letter} is outside the alphabet of size {alphabet}")]
    LetterOutOfRange { letter: u32, alphabet: u32 },
    #[error("the word must be non-empty")]
    EmptyWord,
    #[error("exponent {numer}/{denom} does not give an integral length for a word of length {len}")]
    NonIntegralPower { numer: u64, denom: u64, len: usize },
    #[error("the exponent must be finite")]
    InfiniteExponent,
    #[error("factor does not occur in the prefix of length {horizon}")]
    FactorNotFound { horizon: usize },
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("parameters b={b}, m={m} give a periodic word (m divides b-1)")]
    PeriodicParameters { b: u64, m: u32 },
    #[error("operation needs the overlap case (b > m), got b={b}, m={m}")]
    NotOverlapCase { b: u64, m: u32 },
    #[error("operation needs the square case (b <= m), got b={b}, m={m}")]
    NotSquareCase { b: u64, m: u32 },
    #[error("factor length {length} is not admissible: {reason}")]
    InadmissibleLength { length: u64, reason: &'static str },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}
