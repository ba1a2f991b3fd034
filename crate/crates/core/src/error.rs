use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined on the zero element")]
    ZeroElement,
    #[error("input is a root of unity")]
    RootOfUnityInput,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("the minimal polynomial is reducible: {0}")]
    ReducibleModulus(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("eigenvalues of the linear part lie outside the field; characteristic polynomial {char_poly}")]
    EigenvalueOutsideField { char_poly: String },
    #[error("equivariant map is constant")]
    ConstantPi,
    #[error("projective pair is degenerate")]
    DegeneratePair,
    #[error("descriptor kinds do not match: {0}")]
    KindMismatch(String),
    #[error("point does not lie on the given curves")]
    PointOffVariety,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("internal verification failed: {0}")]
    InternalVerificationFailure(String),
    #[error("{step}: {source}")]
    AtStep {
        step: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at(self, step: &str) -> Error {
        match self {
            e @ Error::AtStep { .. } => e,
            e => Error::AtStep { step: step.to_string(), source: Box::new(e) },
        }
    }

    /// The innermost error, with step context stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtStep { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
