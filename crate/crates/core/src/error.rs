//! Top-level error type with the CLI exit code of each failure class.

use thiserror::Error;

use crate::dsl::DslError;
use crate::families::FamilyError;
use crate::field::FieldError;
use crate::hochschild::HochschildError;
use crate::presentation::PresentationError;
use crate::rewrite::RewriteError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("reduction system is not confluent: {0}")]
    NonConfluent(String),
    #[error("{0}")]
    InfiniteDimensional(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl EngineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            EngineError::Parse(_) => 2,
            EngineError::NonConfluent(_) => 3,
            EngineError::InfiniteDimensional(_) => 4,
            EngineError::Consistency(_) => 5,
        }
    }
}

impl From<DslError> for EngineError {
    fn from(e: DslError) -> Self {
        EngineError::Parse(e.to_string())
    }
}

impl From<FieldError> for EngineError {
    fn from(e: FieldError) -> Self {
        EngineError::Parse(e.to_string())
    }
}

impl From<PresentationError> for EngineError {
    fn from(e: PresentationError) -> Self {
        EngineError::Parse(e.to_string())
    }
}

impl From<RewriteError> for EngineError {
    fn from(e: RewriteError) -> Self {
        match e {
            RewriteError::InfiniteDimensional(_) => EngineError::InfiniteDimensional(e.to_string()),
            _ => EngineError::NonConfluent(e.to_string()),
        }
    }
}

impl From<HochschildError> for EngineError {
    fn from(e: HochschildError) -> Self {
        EngineError::Consistency(e.to_string())
    }
}

impl From<FamilyError> for EngineError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Rewrite(r) => r.into(),
            FamilyError::KernelModelMismatch { .. } | FamilyError::NoLabelling => {
                EngineError::Consistency(e.to_string())
            }
            _ => EngineError::Parse(e.to_string()),
        }
    }
}
