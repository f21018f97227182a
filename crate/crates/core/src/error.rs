use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The CLI maps [`Error::Budget`] to exit code 3 and everything else to
/// exit code 2; verdict failures are not errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {degree} outside 1..={max}")]
    DegreeOutOfRange { degree: u32, max: u32 },
    #[error("prime {0} exceeds the supported word size (p < 2^32)")]
    PrimeTooLarge(u64),
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("arity mismatch: expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("budget exceeded: {required} evaluations required, budget is {budget}")]
    Budget { required: u128, budget: u64 },
    #[error("field of order {order} is too large for the counting kernel (limit {limit})")]
    FieldTooLarge { order: u128, limit: u64 },
    #[error("precision {k} exceeds the cap {cap} (or p^k overflows 63 bits)")]
    Precision { k: u32, cap: u32 },
    #[error("singular residue class {class:?}: no unit partial derivative")]
    SingularClass { class: Vec<u64> },
    #[error("zeta series coefficient c_{index} = {value} is not an integer")]
    NonIntegralSeries { index: usize, value: String },
    #[error("reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("weight split failed: {0}")]
    WeightSplit(String),
    #[error("inconsistent count data: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("unknown gallery entry `{0}`")]
    UnknownGallery(String),
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::FieldTooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
