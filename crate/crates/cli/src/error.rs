use ultrauniform_core::ValidationReport;

/// Everything that makes an invocation exit with status 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{field}: {message}")]
    Input { field: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// The input parsed but violates the axioms the command requires.
    #[error("input {what} is not valid ({} violation(s))", report.violations.len())]
    Precondition {
        what: &'static str,
        report: ValidationReport,
    },

    #[error(transparent)]
    Core(#[from] ultrauniform_core::Error),
}
