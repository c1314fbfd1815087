use graphlet_core::analytics::AnalyticsError;
use graphlet_core::census::CensusError;
use graphlet_core::GraphError;
use serde_json::{json, Value};

/// Failure of a subcommand, mapped to an exit status and a JSON report on
/// stderr.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or values. Exit 2.
    Usage(String),
    /// Unreadable input or unwritable output. Exit 1.
    Io(String),
    /// Malformed edge list. Exit 1.
    Parse { line: Option<usize>, message: String },
    /// The census contradicted itself; indicates a bug. Exit 3.
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Parse { .. } => 1,
            CliError::Consistency(_) => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        let (code, message, detail) = match self {
            CliError::Usage(m) => ("usage", m, Value::Null),
            CliError::Io(m) => ("io", m, Value::Null),
            CliError::Parse { line, message } => ("parse_error", message, json!({ "line": line })),
            CliError::Consistency(m) => ("consistency", m, Value::Null),
        };
        json!({ "code": code, "message": message, "detail": detail, "exit_code": self.exit_code() })
    }

    pub fn io(context: impl std::fmt::Display, e: std::io::Error) -> Self {
        CliError::Io(format!("{context}: {e}"))
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Io(e) => CliError::Io(e.to_string()),
            GraphError::Parse { line, .. } => CliError::Parse { line: Some(line), message: e.to_string() },
            other => CliError::Parse { line: None, message: other.to_string() },
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::Config(m) => CliError::Usage(m),
            other => CliError::Consistency(other.to_string()),
        }
    }
}

impl From<AnalyticsError> for CliError {
    fn from(e: AnalyticsError) -> Self {
        match e {
            AnalyticsError::Census(c) => c.into(),
            AnalyticsError::Graph(g) => g.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}
