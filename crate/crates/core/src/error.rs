use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("square root of a negative number")]
    NegativeSqrt,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid rational literal {0:?}")]
    Parse(String),
    #[error("point ({x}, {y}) is not on y^2 = x^3 - {d}^2 x")]
    NotOnCurve { x: String, y: String, d: String },
    #[error("curve parameter must be positive, got {0}")]
    BadCurveParam(String),
    #[error("point has y = 0 (2-torsion)")]
    TwoTorsion,
    #[error("degenerate progression (a = b)")]
    DegenerateProgression,
    #[error("squares {0} do not form a progression with the given difference")]
    NotProgression(String),
    #[error("empty set")]
    EmptySet,
    #[error("scale factor is zero")]
    ZeroScale,
    #[error("{0} is not the square of a rational")]
    NotSquare(String),
    #[error("duplicate element {0}")]
    Duplicate(String),
    #[error("sumset size {size} outside [{lower}, {upper}]")]
    BoundViolation { size: usize, lower: usize, upper: usize },
    #[error("construction collapsed: expected {expected} distinct elements, got {got}")]
    Collision { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large for the search")]
    ModulusTooLarge(u64),
    #[error("node budget exhausted after {nodes} nodes before any complete set")]
    BudgetExhausted { nodes: u64 },
    #[error("n = {n} exceeds the {available} squares modulo {p}")]
    Infeasible { n: usize, p: u64, available: usize },
}
