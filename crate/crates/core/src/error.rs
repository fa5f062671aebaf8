use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// A series exhausted its term budget before meeting the tolerance.
    #[error("{}", non_convergence_message(*terms))]
    NonConvergence { terms: usize },

    /// A series converged but the partial sums cancelled so badly that the
    /// result carries too few significant digits to be trusted.
    #[error("series lost precision to cancellation (largest term {max_term:e}, sum {sum:e})")]
    Cancellation { max_term: f64, sum: f64 },

    #[error("unsatisfiable: {0}")]
    Unsatisfiable(String),

    #[error("degenerate: {0}")]
    Degenerate(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("{path}: row {row}, column {column}: {message}")]
    Schema {
        path: String,
        row: usize,
        column: String,
        message: String,
    },

    #[error("{path}: {message}")]
    EmptyTable { path: String, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn non_convergence_message(terms: usize) -> String {
    if terms == 0 {
        "series argument lies on or too near the convergence boundary".into()
    } else {
        format!("series did not converge within {terms} terms")
    }
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors raised by a closed-form series that the caller may
    /// recover from by switching to quadrature.
    pub fn is_series_failure(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::Cancellation { .. }
        )
    }
}
