use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable `{name}` is graded {left} on one side and {right} on the other")]
    GradingMismatch { name: String, left: u32, right: u32 },

    #[error("variable `{name}` has degree {degree}; degrees must be positive and even")]
    InvalidGrading { name: String, degree: u32 },

    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{0}` has no assigned image")]
    Unassigned(String),

    #[error("image of `{name}` is not homogeneous of degree {degree}")]
    InhomogeneousAssignment { name: String, degree: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("not divisible: nonzero remainder in degree {degree}")]
    NotDivisible { degree: u32 },

    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("series has a zero constant term and is not invertible")]
    ZeroConstantTerm,

    #[error("index {k} out of range 0..={n}")]
    IndexOutOfRange { k: usize, n: usize },

    #[error("not expressible in the generators: residue with leading monomial {0}")]
    NotExpressible(String),

    #[error("generator basis is not triangular: leading monomial {0} has several preimages")]
    AmbiguousBasis(String),

    #[error("generator `{name}` has degree {declared} but its definition is not homogeneous of that degree")]
    GeneratorDegree { name: String, declared: u32 },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("coordinate mismatch: {0}")]
    CoordinateMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("missing characteristic number for monomial {0}")]
    MissingValue(String),

    #[error("unknown output format `{0}`")]
    UnknownFormat(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures of the symbolic pipeline itself, as opposed to bad
    /// user input.
    pub fn is_computation_error(&self) -> bool {
        matches!(
            self,
            Error::NotDivisible { .. }
                | Error::NotExpressible(_)
                | Error::AmbiguousBasis(_)
                | Error::DivisionByZero
                | Error::GradingMismatch { .. }
                | Error::NonzeroConstantTerm
                | Error::ZeroConstantTerm
                | Error::InhomogeneousAssignment { .. }
                | Error::Unassigned(_)
                | Error::NotDominant(_)
                | Error::GeneratorDegree { .. }
        )
    }
}
