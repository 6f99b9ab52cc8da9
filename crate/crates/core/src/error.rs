use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("extension degree {0} outside the supported range 2..=24")]
    DegreeOutOfRange(u32),
    #[error("polynomial {poly:#x} is not monic of degree {n}")]
    NotMonic { n: u32, poly: u64 },
    #[error("polynomial {0:#x} is reducible over GF(2)")]
    RejectsReducible(u64),
    #[error("generator {0} does not have full multiplicative order")]
    RejectsNonPrimitive(String),
    #[error("{k} does not divide the extension degree {n}")]
    KNotDivisor { k: u32, n: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse field element {0:?}")]
    ElementParse(String),
    #[error("element {bits:#x} does not fit in GF(2^{n})")]
    ElementOutOfRange { bits: u64, n: u32 },
    #[error("discrete logarithms are unavailable without log tables")]
    NoLogTables,
    #[error("trace argument does not lie in GF(2^{k})")]
    SubfieldViolation { k: u32 },
    #[error("shape mismatch: {left} vs {right} variables")]
    ShapeMismatch { left: u32, right: u32 },
    #[error("indices ({0}, {1}, {2}) are not pairwise distinct elements of [0, n)")]
    IndicesNotDistinct(u32, u32, u32),
    #[error("{0} variables exceed the transform limit")]
    TooLarge(u32),
    #[error("spectrum is not bent")]
    NotBent,
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("Walsh combination at point {point} is not integral")]
    NonIntegralResult { point: usize },
    #[error("lambda must be a nonzero element of the half-degree subfield")]
    LambdaNotInSubfield,
    #[error("bad field degree: {0}")]
    BadFieldDegree(String),
    #[error("lambda does not satisfy lambda + lambda^(2^(3k)) = 1")]
    InvalidLambda,
    #[error("gcd({k}, {m}) != 1")]
    GcdViolation { k: u32, m: u32 },
    #[error("no alpha with alpha + alpha^(2^m) = 1")]
    NoAlphaFound,
    #[error("{0} is not in the required subfield")]
    NotInSubfield(&'static str),
    #[error("{0} is not in GF(2^s) x GF(2^s)")]
    NotInSubfieldPair(&'static str),
    #[error("table is not a permutation of the field")]
    NotAPermutation,
    #[error("permutation is not additive")]
    NotLinearized,
    #[error("s = {s} must divide m = {m} with m/s odd")]
    BadDivisor { s: u32, m: u32 },
    #[error("u1*v2 + v1*u2 != 0")]
    CrossConditionViolated,
    #[error("2^{s}+1 is not invertible modulo 2^{m}-1")]
    NoDInverse { s: u32, m: u32 },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
