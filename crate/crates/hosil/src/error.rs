//! Process-level error type carrying the exit code contract: 2 usage,
//! 3 data, 4 numeric.

use std::fmt;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug)]
pub struct AppError {
    pub code: i32,
    pub message: String,
}

impl AppError {
    pub fn usage(message: impl Into<String>) -> Self {
        AppError { code: EXIT_USAGE, message: message.into() }
    }

    pub fn data(message: impl Into<String>) -> Self {
        AppError { code: EXIT_DATA, message: message.into() }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        AppError { code: EXIT_NUMERIC, message: message.into() }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for AppError {}

impl From<hosil_core::error::Error> for AppError {
    fn from(e: hosil_core::error::Error) -> Self {
        use hosil_core::error::Error as E;
        let code = match e {
            // Algorithmic failures on otherwise well-formed input.
            E::DegenerateDistances => EXIT_NUMERIC,
            // Caller asked for something the input cannot support.
            E::InvalidK { .. } | E::NeedsCoordinates | E::InvalidParameter(_) => EXIT_USAGE,
            // Everything else is malformed input data.
            _ => EXIT_DATA,
        };
        AppError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::data(e.to_string())
    }
}

impl From<serde_json::Error> for AppError {
    fn from(e: serde_json::Error) -> Self {
        AppError::data(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, AppError>;
