use thiserror::Error;

/// Errors raised by field, polynomial, coset and code operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("even characteristic is not supported (p = 2)")]
    EvenCharacteristic,
    #[error("x^n + 1 over an even-characteristic field equals x^n - 1; not supported")]
    EvenCharacteristicTarget,
    #[error("capability exceeded: {0}")]
    CapabilityExceeded(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{n} does not divide the order of the unit group")]
    OrderNotDivisible { n: u64 },
    #[error("no embedding of GF({p}^{sub}) into GF({p}^{sup})")]
    NoEmbedding { p: u64, sub: usize, sup: usize },
    #[error("modulus of the subfield has no root in the extension")]
    RootNotFound,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("gcd({a}, {b}) != 1")]
    NotCoprime { a: u64, b: u64 },
    #[error("coset transition for q={q}, n'={n_prime}, i={i}: {detail}")]
    MixedStructure {
        q: u64,
        n_prime: u64,
        i: u32,
        detail: String,
    },
    #[error("coefficient lies outside the embedded subfield")]
    SubfieldProjectionFailure,
    #[error("internal verification failed: {0}")]
    InternalVerificationFailure(String),
    #[error("2-adic exponent i={i} is below the stability constant k={k}")]
    BelowThreshold { i: u32, k: u32 },
    #[error("polynomial does not divide x^{n} + 1")]
    NotADivisor { n: u64 },
    #[error("lengths {from} and {to} are not of the form p^s 2^k n' and p^s 2^i n' with i >= k")]
    IncompatibleLengths { from: u64, to: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable snake_case identifier used in machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::EvenCharacteristic => "even_characteristic",
            Error::EvenCharacteristicTarget => "even_characteristic_target",
            Error::CapabilityExceeded(_) => "capability_exceeded",
            Error::DivisionByZero => "division_by_zero",
            Error::FieldMismatch => "field_mismatch",
            Error::OrderNotDivisible { .. } => "order_not_divisible",
            Error::NoEmbedding { .. } => "no_embedding",
            Error::RootNotFound => "root_not_found",
            Error::ZeroElement => "zero_element",
            Error::NotCoprime { .. } => "not_coprime",
            Error::MixedStructure { .. } => "mixed_structure",
            Error::SubfieldProjectionFailure => "subfield_projection_failure",
            Error::InternalVerificationFailure(_) => "internal_verification_failure",
            Error::BelowThreshold { .. } => "below_threshold",
            Error::NotADivisor { .. } => "not_a_divisor",
            Error::IncompatibleLengths { .. } => "incompatible_lengths",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
