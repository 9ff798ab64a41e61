use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad classes of failure, used by frontends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// A mathematical hypothesis or operation precondition does not hold.
    Hypothesis,
    /// A configured effort bound (factoring, precision, search) ran out.
    Budget,
    /// Bad input: malformed values, mismatched fields.
    Input,
    /// Something that should be impossible; indicates a bug.
    Internal,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("factorization budget exceeded; unfactored cofactor {cofactor}")]
    FactorBudgetExceeded { cofactor: BigInt },
    #[error("{a} is not coprime to {n}")]
    NotCoprime { a: BigInt, n: u64 },
    #[error("field size {p}^{degree} exceeds the supported bound 2^63")]
    SizeBound { p: u64, degree: u32 },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial degree {degree} is below the required minimum {min}")]
    DegreeTooSmall { degree: usize, min: usize },
    #[error("polynomial degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("defining polynomial is reducible over Q")]
    NotIrreducible,
    #[error("Z[theta] is not the maximal order: {prime} divides the index")]
    BaseOrderNotMaximal { prime: u64 },
    #[error("bad cyclotomic conductor {n}: need n >= 3 and n != 2 mod 4")]
    BadConductor { n: u64 },
    #[error("generators do not span a full-rank lattice")]
    NotFullRank,
    #[error("element must be nonzero")]
    ZeroElement,
    #[error("element does not lie in the ideal")]
    NotInIdeal,
    #[error("numeric root search could not decide within {digits} reliable digits")]
    PrecisionExhausted { digits: u32 },
    #[error("prime {prime} divides the index; Dedekind splitting does not apply")]
    IndexDivides { prime: u64 },
    #[error("internal consistency failure: coefficient of f - prod f_i^e_i not in the prime")]
    CoefficientNotInIdeal,
    #[error("prime {p} does not divide n = {n}")]
    PrimeNotDividingN { p: u64, n: u64 },
    #[error("alpha is not coprime to l = {l}")]
    NotCoprimeToL { l: u64 },
    #[error("splitting hypothesis fails: the prime divides n and the congruence does not hold")]
    SplittingHypothesisFails,
    #[error("prime {p} ramifies in the cyclotomic field of conductor {n}")]
    Ramified { p: u64, n: u64 },
    #[error("prime divides n*alpha; Kummer residue degree undefined")]
    RamifiedOrDividesAlpha,
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
    #[error("x^{n} - alpha is reducible over the base field")]
    ReducibleRadical { n: u64 },
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            FactorBudgetExceeded { .. } | PrecisionExhausted { .. } | SizeBound { .. } => ErrorClass::Budget,
            NotCoprime { .. }
            | NotIrreducible
            | BaseOrderNotMaximal { .. }
            | BadConductor { .. }
            | IndexDivides { .. }
            | PrimeNotDividingN { .. }
            | NotCoprimeToL { .. }
            | SplittingHypothesisFails
            | Ramified { .. }
            | RamifiedOrDividesAlpha
            | HypothesisFails(_)
            | ReducibleRadical { .. }
            | NotFullRank
            | ZeroElement
            | ZeroInput
            | NotInIdeal => ErrorClass::Hypothesis,
            CoefficientNotInIdeal => ErrorClass::Internal,
            FieldMismatch
            | ZeroPolynomial
            | NotMonic
            | DegreeTooSmall { .. }
            | DegreeCap { .. }
            | NotPrime(_)
            | Invalid(_) => ErrorClass::Input,
        }
    }
}
