use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Regex or automaton file syntax error, with a character position.
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    /// A regex literal that is not a member of the alphabet.
    #[error("literal '{symbol}' at position {position} is not in the alphabet")]
    LiteralOutsideAlphabet { symbol: char, position: usize },

    /// Subset construction (or a product construction) exceeded the state cap.
    #[error("state budget exceeded: needed more than {cap} states during {during}")]
    StateBudget { cap: usize, during: &'static str },

    /// An enumeration exceeded its configured budget.
    #[error("budget exceeded: more than {cap} {what}")]
    BudgetExceeded { cap: usize, what: &'static str },

    /// An engine or tester was configured with an automaton that violates
    /// its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Invalid probabilistic counter parameters.
    #[error("invalid counter parameters: {0}")]
    CounterParams(String),

    /// The acceptance-length table failed to become periodic within its
    /// horizon. This signals an implementation bug, not bad input.
    #[error("periodicity not detected within horizon {horizon} (internal error)")]
    PeriodicityNotFound { horizon: u64 },

    /// Malformed automaton file.
    #[error("automaton format error on line {line}: {message}")]
    Format { line: usize, message: String },
}
