use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 1")]
    InvalidModulus(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("index {index} out of range 1..={arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("arity {got} too small (need at least {min})")]
    ArityTooSmall { got: usize, min: usize },

    #[error("enumeration of {} tuples exceeds budget {budget}{}", size_text(.size), prime_suffix(.prime))]
    BudgetExceeded {
        /// `None` when the size overflowed 128 bits.
        size: Option<u128>,
        budget: u64,
        prime: Option<u64>,
    },

    #[error("no closed form for this constraint system")]
    NoClosedForm,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A proven identity failed at runtime. Always an implementation bug.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

fn size_text(size: &Option<u128>) -> String {
    match size {
        Some(s) => s.to_string(),
        None => "more than 2^128".into(),
    }
}

fn prime_suffix(prime: &Option<u64>) -> String {
    match prime {
        Some(p) => format!(" at prime {p}"),
        None => String::new(),
    }
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }

    /// Tags a budget error with the prime whose local factor triggered it.
    pub(crate) fn at_prime(self, p: u64) -> Self {
        match self {
            Error::BudgetExceeded { size, budget, prime: None } => {
                Error::BudgetExceeded { size, budget, prime: Some(p) }
            }
            other => other,
        }
    }
}
