//! Error taxonomy shared by the library and the command line front end.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong, grouped by category. Each category maps to a
/// stable name (for machine-readable stderr output) and a process exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("{0}")]
    InvalidArgument(String),

    /// A value fell outside the mathematical domain of an operation.
    #[error("{0}")]
    DomainError(String),

    /// The potential evaluated non-finite while assembling an operator.
    /// `node` is the 0-based position of the offending interior node.
    #[error("potential '{potential}' not finite at interior node {node} (x = {x:e})")]
    AssemblyError {
        potential: String,
        node: usize,
        x: f64,
    },

    /// An input broke a structural contract (unsorted list, non-symmetric
    /// matrix, non-normalized columns, ...).
    #[error("{0}")]
    ContractViolation(String),

    /// The eigenvalue iteration stalled on one eigenvalue.
    #[error("eigenvalue index {index} not settled after {iterations} iterations")]
    ConvergenceError { index: usize, iterations: usize },

    /// Capability deliberately not provided.
    #[error("{0}")]
    Unsupported(String),

    /// A denominator the caller must keep nonzero was zero.
    #[error("reference eigenvalue at index {index} is zero")]
    DivisionGuard { index: usize },

    /// Malformed run configuration or command line.
    #[error("{0}")]
    Usage(String),

    /// Filesystem failure while reading configs or writing result tables.
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-parsable category name.
    pub fn category(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::DomainError(_) => "domain-error",
            Error::AssemblyError { .. } => "assembly-error",
            Error::ContractViolation(_) => "contract-violation",
            Error::ConvergenceError { .. } => "convergence-error",
            Error::Unsupported(_) => "unsupported",
            Error::DivisionGuard { .. } => "division-guard",
            Error::Usage(_) => "usage",
            Error::Io(_) => "io",
        }
    }

    /// Process exit code for the category; 0 is reserved for success.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::InvalidArgument(_) => 3,
            Error::DomainError(_) => 4,
            Error::AssemblyError { .. } => 5,
            Error::ContractViolation(_) => 6,
            Error::ConvergenceError { .. } => 7,
            Error::Unsupported(_) => 8,
            Error::DivisionGuard { .. } => 9,
            Error::Io(_) => 10,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn categories_and_exit_codes_are_distinct() {
        let errs = [
            Error::InvalidArgument("x".into()),
            Error::DomainError("x".into()),
            Error::AssemblyError {
                potential: "p".into(),
                node: 3,
                x: 1.0,
            },
            Error::ContractViolation("x".into()),
            Error::ConvergenceError {
                index: 2,
                iterations: 50,
            },
            Error::Unsupported("x".into()),
            Error::DivisionGuard { index: 0 },
            Error::Usage("x".into()),
            Error::Io(std::io::Error::other("x")),
        ];
        let mut cats: Vec<&str> = errs.iter().map(|e| e.category()).collect();
        let mut codes: Vec<i32> = errs.iter().map(|e| e.exit_code()).collect();
        cats.sort_unstable();
        cats.dedup();
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(cats.len(), errs.len());
        assert_eq!(codes.len(), errs.len());
        assert!(codes.iter().all(|&c| c != 0));
    }

    #[test]
    fn messages_name_the_failing_index() {
        let e = Error::DivisionGuard { index: 7 };
        assert!(e.to_string().contains("index 7"));
        let e = Error::ConvergenceError {
            index: 12,
            iterations: 50,
        };
        assert!(e.to_string().contains("12"));
        let e = Error::AssemblyError {
            potential: "hydrogen".into(),
            node: 4,
            x: 0.0,
        };
        assert!(e.to_string().contains("node 4"));
    }
}
