use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("singular parameters: {0}")]
    SingularParameter(String),

    /// Parameters lie in a phase where the requested quantity is not defined
    /// (e.g. ferromagnetic dot with an extensive spin).
    #[error("outside supported regime: {0}")]
    Regime(String),

    #[error("{0}: argument outside the function domain")]
    Domain(String),

    #[error(
        "quadrature did not converge after {evaluations} evaluations \
         (partial value {value:e}, error estimate {abs_error:e})"
    )]
    Quadrature {
        value: f64,
        abs_error: f64,
        evaluations: usize,
    },

    #[error("ladder series diverged after {terms} terms starting at m = {start} ({context})")]
    LadderDiverged {
        start: f64,
        terms: usize,
        context: String,
    },

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("particle-number window exhausted at half-width {half_width}; raise n_cut")]
    Window { half_width: usize },

    #[error("curve has no positive maximum")]
    NoPeak,

    #[error(
        "spectral tail beyond omega_max = {omega_max} contributes {tail:e} of {total:e}; \
         increase omega_max"
    )]
    TailTooLarge {
        omega_max: f64,
        tail: f64,
        total: f64,
    },

    #[error("non-physical comb: weight {weight:e} at positive frequency {omega}")]
    NonPhysicalComb { omega: f64, weight: f64 },

    #[error("eigensolver failed in sector N = {n}, 2Sz = {two_sz}")]
    Eigen { n: u32, two_sz: i32 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("at {param} = {value}: {source}")]
    AtPoint {
        param: String,
        value: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Errors caused by the request itself rather than by a failed computation.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::InvalidParameter { .. }
            | Error::SingularParameter(_)
            | Error::Regime(_)
            | Error::Domain(_)
            | Error::Parse { .. }
            | Error::Json(_) => true,
            Error::AtPoint { source, .. } => source.is_usage(),
            _ => false,
        }
    }

    pub fn at(self, param: &str, value: f64) -> Self {
        Error::AtPoint {
            param: param.to_string(),
            value,
            source: Box::new(self),
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
