use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("rotation system is not a plane embedding: V - E + F = {0}")]
    NotPlanar(i64),

    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),

    #[error("not a simple cycle: {0}")]
    NotACycle(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid operator site: {0}")]
    InvalidSite(String),

    /// A step that a theorem guarantees to succeed did not. Either a bug or a
    /// counterexample; callers must surface it distinctly.
    #[error("theorem violation: {0}")]
    Alarm(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_alarm(&self) -> bool {
        matches!(self, Error::Alarm(_))
    }

    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Loop(_)
                | Error::Disconnected
                | Error::NotPlanar(_)
                | Error::InvalidRotation(_)
                | Error::NotACycle(_)
                | Error::Precondition(_)
                | Error::InvalidSite(_)
        )
    }
}
