use thiserror::Error;

/// Errors raised anywhere in the volume / bound pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix [[{a},{b}],[{c},{d}]] has determinant {det}, expected 1")]
    InvalidMatrix {
        a: i128,
        b: i128,
        c: i128,
        d: i128,
        det: i128,
    },
    #[error("mapping class is not pseudo-Anosov (|trace| = {trace} <= 2)")]
    NotPseudoAnosov { trace: i128 },
    #[error("word `{0}` is not pseudo-Anosov: it must contain both L and R")]
    WordNotPseudoAnosov(String),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("word length {len} exceeds the supported maximum of {max}")]
    WordTooLong { len: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("surface (g={g}, n={n}) has non-negative Euler characteristic")]
    InvalidSurface { g: u32, n: u32 },
    #[error("surface (g={g}, n={n}) is not covered by the diameter estimate")]
    UnsupportedSurface { g: u32, n: u32 },
    #[error("bloch-wigner dilogarithm is undefined at z = {0}")]
    Domain(String),
    #[error("newton iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("shape solution is not geometric (a tetrahedron has Im z <= 0)")]
    NonGeometric,
    #[error("triangulation is malformed: {0}")]
    Triangulation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
