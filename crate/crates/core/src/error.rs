use thiserror::Error;

/// Errors raised anywhere in the knot pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("every term has zero frequency; the curve is a single point")]
    AllConstant,
    #[error("Lissajous frequencies must be nonzero")]
    ZeroFrequency,
    #[error("torus knot parameters ({p}, {q}) must be coprime and positive")]
    NotCoprime { p: u32, q: u32 },
    #[error("fibonacci knot index must be at least 1")]
    BadIndex,
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("polyline is not closed: closing gap {gap} exceeds {limit}")]
    NotClosed { gap: f64, limit: f64 },
    #[error("invalid sampled curve: {0}")]
    InvalidCurve(String),
    #[error("target chord must be positive and finite")]
    BadChord,
    #[error("curve is not certifiably embedded (clearance {clearance}, chord {chord})")]
    NotEmbedded { clearance: f64, chord: f64 },
    #[error("projection is not generic: {0}")]
    NonGenericProjection(String),
    #[error("no generic projection found after {attempts} attempts")]
    NoGenericProjection { attempts: usize },
    #[error("no crossing with id {0}")]
    UnknownCrossing(usize),
    #[error("operation needs a one-component diagram, got {0} components")]
    NotAKnot(usize),
    #[error("operation needs a two-component diagram, got {0} components")]
    NotTwoComponents(usize),
    #[error("inter-component sign sum {0} is odd")]
    OddSignSum(i64),
    #[error("malformed PD code: {0}")]
    MalformedPd(String),
    #[error("inconsistent PD arc labels: {0}")]
    InconsistentArcs(String),
    #[error("malformed Gauss code: {0}")]
    MalformedGauss(String),
    #[error("Alexander determinant is degenerate: {0}")]
    DegenerateAlexander(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("csv: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, Error>;
