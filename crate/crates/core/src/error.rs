use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("matrix ({a} {b}; {c} {d}) is not unimodular")]
    NotUnimodular { a: i64, b: i64, c: i64, d: i64 },

    #[error("Maslov covector must be nonzero")]
    ZeroCovector,

    #[error("zero vector has no primitive part")]
    ZeroVector,

    #[error("matrix ({a} {b}; {c} {d}) is not in G_mu")]
    NotInGmu { a: i64, b: i64, c: i64, d: i64 },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("element is not an involution")]
    NotInvolution,

    #[error("invalid sigma ({p}, {q}): must be primitive with mu(sigma) = 0")]
    InvalidSigma { p: i64, q: i64 },

    /// m_f outside {1, 2}. Signals a bug, never a domain case.
    #[error("internal consistency failure: m_f = {0}")]
    MfOutOfRange(i64),

    #[error("closure word-length bound {0} exceeds guard 16")]
    ClosureBound(usize),

    #[error("chart domain violation: {0}")]
    Domain(String),

    #[error("invalid loop: {0}")]
    InvalidLoop(String),

    #[error("Lagrangian frame degenerate: |det W| = {0:e}")]
    FrameDegenerate(f64),

    #[error("loop undersampled: phase step {0:.4} exceeds pi/2")]
    Undersampled(f64),

    #[error("not monotone: {0}")]
    NotMonotone(String),

    #[error("winding drift {0:.4} exceeds 0.01")]
    WindingDrift(f64),

    #[error("twist exclusion guard violated: epsilon {eps} >= {bound}")]
    EpsilonGuard { eps: f64, bound: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
