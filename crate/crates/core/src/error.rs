use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("elements belong to different groups")]
    MixedGroups,
    #[error("matrix is numerically singular (|det| = {0:e})")]
    SingularMatrix(f64),
    #[error("group {0} is not finitely generated")]
    NotFinitelyGenerated(String),
    #[error("breadth-first search exceeded the node cap of {0}")]
    SearchBudgetExceeded(usize),
    #[error("group {0} is not discrete")]
    NotDiscrete(String),
    #[error("no metric available on {0}")]
    NoMetricAvailable(String),
    #[error("translation element has zero image on the line")]
    ZeroTranslation,
    #[error("eigenvalue modulus {0} is within tolerance of the unit circle")]
    UnitModulus(f64),
    #[error("minimal-norm search did not stabilize within {0} steps")]
    WindowExhausted(usize),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("p must satisfy p >= 1, got {0}")]
    BadP(f64),
    #[error("norm sequence fails the geometric bound at n = {n}")]
    NoDecay { n: usize },
    #[error("support does not escape itself within the horizon")]
    NoEscape,
    #[error("element is not torsion")]
    NotTorsion,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("empty compact set")]
    EmptyCompact,
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// Stable machine-readable name used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MixedGroups => "MixedGroups",
            Error::SingularMatrix(_) => "SingularMatrix",
            Error::NotFinitelyGenerated(_) => "NotFinitelyGenerated",
            Error::SearchBudgetExceeded(_) => "SearchBudgetExceeded",
            Error::NotDiscrete(_) => "NotDiscrete",
            Error::NoMetricAvailable(_) => "NoMetricAvailable",
            Error::ZeroTranslation => "ZeroTranslation",
            Error::UnitModulus(_) => "UnitModulus",
            Error::WindowExhausted(_) => "WindowExhausted",
            Error::BadParameters(_) => "BadParameters",
            Error::BadP(_) => "BadP",
            Error::NoDecay { .. } => "NoDecay",
            Error::NoEscape => "NoEscape",
            Error::NotTorsion => "NotTorsion",
            Error::InvalidElement(_) => "InvalidElement",
            Error::EmptyCompact => "EmptyCompact",
            Error::Config(_) => "Config",
        }
    }

    /// `{"error": kind, "message": text}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut out = serde_json::json!({ "error": self.kind(), "message": self.to_string() });
        if let Error::NoDecay { n } = self {
            out["n"] = serde_json::json!(n);
        }
        out
    }
}
