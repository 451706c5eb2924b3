use std::fmt;

use bunkbed_core::Error;

/// Process exit codes.
pub mod code {
    pub const OK: u8 = 0;
    pub const VIOLATION: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const CAPACITY: u8 = 3;
    pub const PRECONDITION: u8 = 4;
    /// Two computations of the same quantity disagreed.
    pub const INCONSISTENT: u8 = 5;
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Failure::new(code::PRECONDITION, message)
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Failure::new(code::PARSE, message)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn code_of(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Io(_)
        | Error::Json(_)
        | Error::InvalidGraph(_)
        | Error::InvalidWeight(_) => code::PARSE,
        Error::CapExceeded { .. } | Error::FrontierTooWide { .. } | Error::BoundExceeded { .. } => {
            code::CAPACITY
        }
        Error::NotCutVertex(_) | Error::DegenerateSplit(_) | Error::VertexOutOfRange { .. } => {
            code::PRECONDITION
        }
        Error::Inconsistent(_) => code::INCONSISTENT,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(code_of(&e), e.to_string())
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;

/// Attaches the file name to read and parse errors.
pub trait Context<T> {
    fn context(self, what: &str) -> Outcome<T>;
}

impl<T> Context<T> for Result<T, Error> {
    fn context(self, what: &str) -> Outcome<T> {
        self.map_err(|e| Failure::new(code_of(&e), format!("{what}: {e}")))
    }
}

/// Vertex lookups failing are precondition errors whatever the core error.
pub fn vertex<T>(result: Result<T, Error>, token: &str) -> Outcome<T> {
    result.map_err(|e| Failure::precondition(format!("vertex `{token}`: {e}")))
}
