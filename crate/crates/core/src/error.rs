use thiserror::Error;

use crate::model::Word;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(String),
    #[error("word {0} is shorter than 2 letters")]
    MinLength(Word),
    #[error("word set is not reduced: {factor} is a factor of {word}")]
    NotReduced { factor: Word, word: Word },
    #[error("word {0} appears twice")]
    Duplicate(Word),
    #[error("line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator is not invertible at z = 0")]
    SingularAtZero,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("no real root of D(z) found in ({lo}, {hi}]")]
    NoRealRoot { lo: f64, hi: f64 },
    #[error("enumeration of {texts} texts exceeds the budget of {budget}")]
    BudgetExceeded { texts: u128, budget: u128 },
    #[error("{0}")]
    Unsupported(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
