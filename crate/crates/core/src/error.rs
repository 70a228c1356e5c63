use thiserror::Error;

/// Errors raised by mean evaluation and the verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter {name} = {value} is outside the admissible range |{name}| <= {limit}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        limit: f64,
    },

    #[error("no closed form registered for {0}")]
    Unsupported(String),

    #[error("bracket [{lo}, {hi}] does not straddle the inequality (both ends {verdict})")]
    Bracketing { lo: f64, hi: f64, verdict: String },

    #[error("evaluation failed at t = {t}: {source}")]
    EvaluationAt {
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn at(self, t: f64) -> Self {
        Error::EvaluationAt {
            t,
            source: Box::new(self),
        }
    }
}
