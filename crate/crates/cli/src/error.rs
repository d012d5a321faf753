use serde::Serialize;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NUMERIC: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(rectpole_core::Error),
    #[error("{0}")]
    Sampling(&'static str),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Numeric(_) | CliError::Sampling(_) => exit::NUMERIC,
        }
    }

    /// One-line JSON object for standard error.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            kind: &'a str,
            exit_code: i32,
            message: String,
        }
        #[derive(Serialize)]
        struct Wrapper<'a> {
            error: Body<'a>,
        }
        let kind = match self {
            CliError::Usage(_) => "usage",
            CliError::Numeric(_) | CliError::Sampling(_) => "numeric",
        };
        let w = Wrapper {
            error: Body {
                kind,
                exit_code: self.exit_code(),
                message: self.to_string(),
            },
        };
        serde_json::to_string(&w).expect("error objects serialise")
    }
}

impl From<rectpole_core::Error> for CliError {
    fn from(e: rectpole_core::Error) -> Self {
        use rectpole_core::Error as E;
        match e {
            // bad parameters are the caller's fault, not a numerical failure
            E::InvalidSpec(_) | E::InvalidArgument(_) => CliError::Usage(e.to_string()),
            e => CliError::Numeric(e),
        }
    }
}
