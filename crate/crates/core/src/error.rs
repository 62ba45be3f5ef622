use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("negative time: {0}")]
    NegativeTime(f64),

    #[error("invalid cutoff: N_c = {cutoff} must lie in [1, {max}]")]
    InvalidCutoff { cutoff: usize, max: usize },

    #[error("approximation singular: |{which}| = {value:e} below floor {floor:e}")]
    ApproximationSingular {
        which: &'static str,
        value: f64,
        floor: f64,
    },

    #[error("dense oracle size cap: N = {0} outside [2, 12]")]
    OracleSizeCap(usize),

    #[error("frame check size cap: N = {0} outside [1, 4]")]
    FrameSizeCap(usize),

    #[error("frame check needs at least 10 steps, got {0}")]
    TooFewSteps(usize),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("valley too shallow: minimum echo {min_echo} exceeds 1/2")]
    ValleyTooShallow { min_echo: f64 },

    #[error("crossing not bracketed on the {side} flank within |eps| <= {window}")]
    CrossingNotBracketed { side: &'static str, window: f64 },

    #[error("fit needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("invalid fit input: {0}")]
    InvalidFitInput(String),

    #[error("collapse precondition violated: delta*sqrt(N) spread {spread:.4} exceeds {limit}")]
    CollapsePrecondition { spread: f64, limit: f64 },

    #[error("flat scan: echo range {range:e} below 1e-6")]
    FlatScan { range: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no trial succeeded")]
    NoSuccessfulTrials,
}

pub type Result<T> = std::result::Result<T, Error>;
