use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("field of size {size} exceeds the cap of {cap} elements")]
    SizeCapExceeded { size: u128, cap: u64 },
    #[error("no primitive polynomial of degree {degree} over GF({p})")]
    NoPrimitivePolynomial { p: u64, degree: u32 },
    #[error("the zero element has no norm")]
    ZeroInput,
    #[error("{s} does not divide the extension degree {n}")]
    SNotDividingN { s: u64, n: u32 },
    #[error("element does not belong to this field context: {0}")]
    ContextMismatch(String),
    #[error("element is not in the norm-one subgroup")]
    NotInN,
    #[error("element set is not closed under composition")]
    NotASubgroup,
    #[error("element is not in G(q^n): {0}")]
    NotInGqn(String),
    #[error("the group has a regular orbit")]
    HasRegularOrbit,
    #[error("closure exceeded the element cap of {cap}")]
    ElementCapExceeded { cap: usize },
    #[error("{points} points exceed the point cap of {cap}")]
    PointCapExceeded { points: u64, cap: u64 },
    #[error("top group is not transitive on {m} blocks")]
    IntransitiveTop { m: usize },
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("gcd(q^n - 1, m) = {gcd} is not 1")]
    GcdViolation { gcd: u64 },
    #[error("field with q^n = {size} is too small")]
    DegenerateField { size: u64 },
    #[error("group order {0} is even")]
    EvenOrder(u64),
    #[error("characteristic 2")]
    EvenCharacteristic,
    #[error("the base core stabilizer of the vector is nontrivial")]
    BaseStabilizerNontrivial,
    #[error("the partition block has a nontrivial set-stabilizer")]
    PartitionStabilized,
    #[error("no subset with trivial set-stabilizer exists")]
    NoPartitionFound,
    #[error("permutation degree {degree} exceeds the subset-scan cap of {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
