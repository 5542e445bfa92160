use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the numerical layers (special functions, link budget,
/// fading laws and capacity engines).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of a function (poles, negative
    /// arguments, non-finite input).
    #[error("{function}: domain error: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    /// Result not representable as a finite `f64`.
    #[error("{function}: result overflows at argument {argument}")]
    Range {
        function: &'static str,
        argument: f64,
    },

    #[error("marcum fit failed at a = {a}: {detail}")]
    FitFailure { a: f64, detail: String },

    #[error("degenerate link budget: {0}")]
    DegenerateBudget(String),

    /// The requested engine cannot evaluate this scenario. `code` is a stable
    /// machine-readable reason used in sweep output.
    #[error("unsupported ({code}): {detail}")]
    Unsupported { code: &'static str, detail: String },

    #[error("invalid argument `{name}`: {detail}")]
    InvalidArgument { name: &'static str, detail: String },
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(name: &'static str, detail: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            detail: detail.into(),
        }
    }

    pub(crate) fn unsupported(code: &'static str, detail: impl Into<String>) -> Self {
        Error::Unsupported {
            code,
            detail: detail.into(),
        }
    }

    /// Short machine-readable code, used as the `reason` column of result tables.
    pub fn reason_code(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain_error",
            Error::Range { .. } => "range_error",
            Error::FitFailure { .. } => "fit_failure",
            Error::DegenerateBudget(_) => "degenerate_budget",
            Error::Unsupported { code, .. } => code,
            Error::InvalidArgument { .. } => "invalid_argument",
        }
    }
}
