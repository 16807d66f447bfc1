use pfaffamp::integrate::{ConstantEstimate, FeynmanTrickCheck};
use pfaffamp::{Error, IntegrationConfig, IntegrationResult};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: CommandRecord,
    pub input: Option<InputRecord>,
    pub seed: Option<u64>,
    pub graph: Option<GraphSummary>,
    pub config: Option<IntegrationConfig>,
    pub results: Vec<IntegrationResult>,
    pub errors: Vec<ReportError>,
    pub symbolic: Option<SymbolicChecks>,
    pub constants: Option<Constants>,
    pub feynman: Option<FeynmanTrickCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandRecord {
    pub name: String,
    pub args: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

impl InputRecord {
    pub fn new(path: &str, bytes: &[u8]) -> Self {
        InputRecord {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub loops: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportError {
    /// Method or check that failed.
    pub context: String,
    pub kind: String,
    pub message: String,
}

impl ReportError {
    pub fn new(context: &str, err: &Error) -> Self {
        ReportError {
            context: context.to_string(),
            kind: error_kind(err).to_string(),
            message: err.to_string(),
        }
    }
}

pub fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Structural(_) => "structural",
        Error::Validation(_) => "validation",
        Error::UnsupportedTopology { .. } => "unsupported-topology",
        Error::ConvergenceRisk(_) => "convergence-risk",
        Error::InvariantViolation(_) => "invariant-violation",
        Error::Degenerate(_) => "degenerate",
        Error::InsufficientPrecision { .. } => "insufficient-precision",
        Error::Parse(_) => "parse",
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SymbolicChecks {
    pub s1: Option<String>,
    pub s2: Option<String>,
    /// `det(Σ a M)` equals the spanning tree sum.
    pub s1_oracle_match: Option<bool>,
    pub pfaffian: Option<PfaffianCheck>,
    pub ranks: Vec<EdgeRank>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PfaffianCheck {
    pub lambda_sq: String,
    pub identity_holds: bool,
    pub max_point_residual: f64,
    pub points_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRank {
    pub edge: String,
    pub form_rank: usize,
    pub hessian_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub c_hat: ConstantEstimate,
    #[serde(rename = "C_hat")]
    pub big_c_hat: ConstantEstimate,
}

impl RunReport {
    pub fn new(name: &str, args: Vec<String>) -> Self {
        RunReport {
            tool: "pfaffamp".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: CommandRecord {
                name: name.into(),
                args,
            },
            input: None,
            seed: None,
            graph: None,
            config: None,
            results: Vec::new(),
            errors: Vec::new(),
            symbolic: None,
            constants: None,
            feynman: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Copy with timing fields zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for result in &mut r.results {
            result.wall_time_s = 0.0;
        }
        r
    }
}
