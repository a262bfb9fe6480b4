use thiserror::Error;

/// Errors raised by the numerical kernels and the search-path models.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid bracket: f({lo}) and f({hi}) have the same sign")]
    InvalidBracket { lo: f64, hi: f64 },
    #[error("degenerate bracket [{lo}, {hi}]")]
    DegenerateBracket { lo: f64, hi: f64 },
    #[error("non-finite evaluation at x = {at}")]
    NonFiniteEvaluation { at: f64 },
    #[error("singular Jacobian at ({x}, {y})")]
    SingularJacobian { x: f64, y: f64 },
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate line: A and B are both zero")]
    DegenerateLine,
    #[error("angle outside line's half-plane: cos({0}) <= 0")]
    OutsideHalfPlane(f64),
    #[error("vertical tangent at theta = {0}")]
    VerticalTangent(f64),
    #[error("target at origin")]
    TargetAtOrigin,
    #[error("no contact found before theta = {0}")]
    NoContact(f64),
    #[error("overflow: coil turning point not representable")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
