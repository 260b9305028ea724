use rydberg_ions::crystal::CrystalError;
use rydberg_ions::dressing::DressingError;
use rydberg_ions::dynamics::DynamicsError;
use rydberg_ions::gate::GateError;
use rydberg_ions::physcore::PhyscoreError;
use rydberg_ions::spinchain::SpinChainError;
use rydberg_ions::trap::TrapError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    NonConvergence(String),
    #[error("{0}")]
    Io(String),
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorDocument<'a> {
    error: ErrorBody<'a>,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::NonConvergence(_) => 2,
            CliError::Validation(_) | CliError::Io(_) => 1,
        }
    }

    pub fn to_json(&self) -> String {
        let kind = match self {
            CliError::Validation(_) => "validation",
            CliError::NonConvergence(_) => "non_convergence",
            CliError::Io(_) => "io",
        };
        serde_json::to_string(&ErrorDocument {
            error: ErrorBody {
                kind,
                message: self.to_string(),
            },
        })
        .unwrap_or_else(|_| {
            String::from("{\"error\":{\"kind\":\"io\",\"message\":\"unprintable error\"}}")
        })
    }
}

macro_rules! validation_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Validation(e.to_string())
            }
        }
    )*};
}

validation_from!(PhyscoreError, TrapError, DressingError, SpinChainError);

impl From<CrystalError> for CliError {
    fn from(e: CrystalError) -> Self {
        match e {
            CrystalError::NoConvergence { .. } => CliError::NonConvergence(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::ToleranceFailure { .. } => CliError::NonConvergence(e.to_string()),
            DynamicsError::Crystal(c) => c.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<GateError> for CliError {
    fn from(e: GateError) -> Self {
        match e {
            GateError::TrackingLost { .. } => CliError::NonConvergence(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}
