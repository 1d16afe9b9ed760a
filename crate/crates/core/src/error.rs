use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not allowed (must be a prime other than 2 and 3)")]
    BadCharacteristic(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no embedding of F_p^{from} into F_p^{to}")]
    NoEmbedding { from: usize, to: usize },
    #[error("operands live in different rings or fields")]
    CtxMismatch,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("resultant of a zero or constant input")]
    ZeroInput,
    #[error("degree {degree} is not below the characteristic {p}")]
    DegreeVsCharacteristic { degree: usize, p: u64 },
    #[error("the quartic does not vanish on the given line")]
    LineNotOnSurface,
    #[error("the two linear forms defining the line are dependent")]
    DegenerateLine,
    #[error("every fiber of the pencil is singular")]
    IdenticallyZero,
    #[error("input is not a ternary cubic")]
    NotCubic,
    #[error("the Wronskian of the line restriction vanishes identically")]
    WronskianZero,
    #[error("unexpected ramification pattern: {0}")]
    UnexpectedPattern(String),
    #[error("the surface is singular")]
    SingularSurface,
    #[error("only {found} smooth fibers available, {wanted} requested")]
    TooFewSmoothFibers { found: usize, wanted: usize },
    #[error("no generic pencil coordinates found for the flex-surface elimination")]
    EliminationDegenerate,
    #[error("tangent plane is not a component of the flex surface")]
    PlaneNotComponent,
    #[error("plane does not contain the line")]
    PlaneMissesLine,
    #[error("planes are not pairwise independent")]
    CoincidentPlanes,
    #[error("ruled quartic is singular along the line")]
    RuledSingularOnLine,
    #[error("the line is not of the second kind")]
    NotSecondKind,
    #[error("the quartic is not a Segre decomposition")]
    NotDecomposable,
    #[error("residual surface has degree {0}, expected 4")]
    ResidualNotQuartic(usize),
    #[error("decomposition identity failed to verify")]
    IdentityFailed,
    #[error("family parameter c must be nonzero")]
    CZero,
    #[error("parse error at {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}
