use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Surface-validity conditions a reconstructed state must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// `v(x) > 0`, equivalently `w(x) > -h`.
    Positive,
    /// Injectivity of the surface parametrization.
    Injective,
    /// `v'² + G(v)² ≠ 0`.
    Regular,
    /// `Q - 2 g v(x) > 0`, no stagnation on the surface.
    SurfaceSpeed,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::Positive => "pos",
            Condition::Injective => "m2",
            Condition::Regular => "m3",
            Condition::SurfaceSpeed => "sm",
        }
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let what = match self {
            Condition::Positive => "surface above the bed",
            Condition::Injective => "non-self-intersecting surface",
            Condition::Regular => "nondegenerate surface parametrization",
            Condition::SurfaceSpeed => "no stagnation on the surface",
        };
        write!(f, "({}) {}", self.label(), what)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("operator requires a zero-mean argument, got mean {mean:e}")]
    NonZeroMean { mean: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("Newton iteration diverged after {iterations} iterations (residual history {history:?})")]
    Divergence { iterations: usize, history: Vec<f64> },

    #[error("branch truncated after {points} points: {reason}")]
    BranchTruncated { points: usize, reason: String },

    #[error("singular Jacobian (smallest singular value {sigma_min:e})")]
    Singular { sigma_min: f64 },

    #[error("state rejected: {condition} violated{}", detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default())]
    Rejected { condition: Condition, detail: Option<String> },

    #[error("surface self-intersects near x = {x}")]
    SelfIntersection { x: f64 },

    #[error("stagnation on the surface near x = {x}: Q - 2gv = {value:e}")]
    SurfaceStagnation { x: f64, value: f64 },

    #[error("degenerate conformal factor {factor:e} at grid point ({i}, {j})")]
    SingularMap { i: usize, j: usize, factor: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("malformed record: {0}")]
    Json(#[from] serde_json::Error),
}
