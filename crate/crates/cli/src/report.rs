//! Report assembly, rendering and the exit-code contract.
//!
//! Every subcommand produces one [`Report`]; the process exit code is a
//! function of its status alone: 0 for ok, 1 when a checked or queried
//! property fails (always with a concrete counterexample), 2 for usage
//! problems, 3 for caps and runtime errors.

use serde_json::{json, Value};

use duality_core::functors::FunctorError;
use duality_core::gamma::GammaError;
use duality_core::layers::LayerError;
use duality_core::modal::ModalError;
use duality_core::order::OrderError;
use duality_core::presented::PresentError;
use duality_core::fo::FoError;

pub const SCHEMA: &str = "duality-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    PropertyViolated,
    CapExceeded,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::PropertyViolated => "property-violated",
            Status::CapExceeded => "cap-exceeded",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::PropertyViolated => 1,
            Status::CapExceeded => 3,
            Status::Error => 3,
        }
    }
}

pub struct Report {
    pub command: &'static str,
    pub status: Status,
    /// For verify subcommands: the checked property, in plain words.
    pub verifies: Option<&'static str>,
    pub payload: Value,
    pub counterexample: Option<Value>,
}

impl Report {
    pub fn ok(command: &'static str, payload: Value) -> Report {
        Report {
            command,
            status: Status::Ok,
            verifies: None,
            payload,
            counterexample: None,
        }
    }

    pub fn verdict(
        command: &'static str,
        verifies: &'static str,
        payload: Value,
        counterexample: Option<Value>,
    ) -> Report {
        Report {
            command,
            status: if counterexample.is_none() {
                Status::Ok
            } else {
                Status::PropertyViolated
            },
            verifies: Some(verifies),
            payload,
            counterexample,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "status": self.status.label(),
            "verifies": self.verifies,
            "payload": self.payload,
            "counterexample": self.counterexample,
        })
    }
}

/// A report plus its format-specific renderings.
pub struct Rendered {
    pub report: Report,
    /// Human-oriented lines for `--format table`.
    pub table: Vec<String>,
    /// DOT text, present only for poset and space payloads.
    pub dot: Option<String>,
}

impl Rendered {
    pub fn new(report: Report, table: Vec<String>) -> Rendered {
        Rendered {
            report,
            table,
            dot: None,
        }
    }

    pub fn with_dot(mut self, dot: String) -> Rendered {
        self.dot = Some(dot);
        self
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Cap(String),
    Fail(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Fail(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Cap(m) | CliError::Fail(m) => m,
        }
    }

    pub fn status(&self) -> Status {
        match self {
            CliError::Usage(_) => Status::Error,
            CliError::Cap(_) => Status::CapExceeded,
            CliError::Fail(_) => Status::Error,
        }
    }
}

impl From<OrderError> for CliError {
    fn from(e: OrderError) -> CliError {
        CliError::Fail(e.to_string())
    }
}

impl From<FunctorError> for CliError {
    fn from(e: FunctorError) -> CliError {
        match &e {
            FunctorError::TooLarge { .. } => CliError::Cap(e.to_string()),
            FunctorError::Present(PresentError::CapExceeded { .. }) => CliError::Cap(e.to_string()),
            _ => CliError::Fail(e.to_string()),
        }
    }
}

impl From<PresentError> for CliError {
    fn from(e: PresentError) -> CliError {
        match &e {
            PresentError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Fail(e.to_string()),
        }
    }
}

impl From<ModalError> for CliError {
    fn from(e: ModalError) -> CliError {
        match &e {
            ModalError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Fail(e.to_string()),
        }
    }
}

impl From<FoError> for CliError {
    fn from(e: FoError) -> CliError {
        match &e {
            FoError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Fail(e.to_string()),
        }
    }
}

impl From<LayerError> for CliError {
    fn from(e: LayerError) -> CliError {
        match &e {
            LayerError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            LayerError::Fo(FoError::CapExceeded { .. }) => CliError::Cap(e.to_string()),
            LayerError::Functor(FunctorError::TooLarge { .. }) => CliError::Cap(e.to_string()),
            _ => CliError::Fail(e.to_string()),
        }
    }
}

impl From<GammaError> for CliError {
    fn from(e: GammaError) -> CliError {
        match &e {
            GammaError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            GammaError::Fo(FoError::CapExceeded { .. }) => CliError::Cap(e.to_string()),
            _ => CliError::Fail(e.to_string()),
        }
    }
}
