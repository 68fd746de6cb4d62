use crate::scalar::Ring;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{num}/{den} is not 2-local (even denominator)")]
    NotTwoLocal { num: i64, den: i64 },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("both operands carry the suspension coordinate")]
    DoubleSuspension,
    #[error("generator degree must be >= 1")]
    ZeroDegree,
    #[error("permutation size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("images do not form a bijection of 1..={0}")]
    NotBijective(usize),
    #[error("permutation on {perm} letters applied to a {word}-letter word")]
    ArityMismatch { perm: usize, word: usize },
    #[error("cycle entry {entry} out of range 1..={n}")]
    CycleOutOfRange { entry: usize, n: usize },
    #[error("repeated cycle entry {0}")]
    RepeatedCycleEntry(usize),
    #[error("{0} is not invertible in the 2-local integers")]
    NotInvertible(i64),
    #[error("empty bracket")]
    EmptyBracket,
    #[error("ad power must be >= 1, got {0}")]
    BadAdPower(i64),
    #[error("factor word must have exactly 3 letters, got {0}")]
    BadBlockArity(usize),
    #[error("letter {0} does not belong to this two-cell complex")]
    ForeignLetter(String),
    #[error("term shift {shift} does not match the expected block shift {expected}")]
    ShiftMismatch { shift: u32, expected: u32 },
    #[error("P^m(2) requires m >= 3, got {0}")]
    NotSimplyConnected(i64),
    #[error("invalid cell data: {0}")]
    InvalidCellData(String),
    #[error("projection basis is not independent at n = {0}")]
    DependentBasis(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
