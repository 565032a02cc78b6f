use core::fmt;

/// Errors raised by numeric operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside an operation's domain.
    Domain(String),
    /// Dilogarithm argument on the branch cut [1, inf).
    Cut,
    /// Requested accuracy not reached within the iteration or precision budget.
    Precision(String),
    /// No saddle branch satisfies the selection criterion.
    Branch(String),
    /// Bracketed root search found no sign change.
    NoRoot(String),
    /// Parameter outside the validity window of an asymptotic formula.
    Window(String),
    /// A hypothesis of the saddle-point theorem fails at the given data.
    Hypothesis(String),
    /// Adaptive quadrature exhausted its subdivision budget.
    Quadrature(String),
    /// Invalid run configuration.
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Cut => write!(f, "dilogarithm argument on the cut [1, inf)"),
            Error::Precision(m) => write!(f, "precision error: {m}"),
            Error::Branch(m) => write!(f, "branch selection error: {m}"),
            Error::NoRoot(m) => write!(f, "no root: {m}"),
            Error::Window(m) => write!(f, "outside validity window: {m}"),
            Error::Hypothesis(m) => write!(f, "hypothesis violated: {m}"),
            Error::Quadrature(m) => write!(f, "quadrature error: {m}"),
            Error::Config(m) => write!(f, "config error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
