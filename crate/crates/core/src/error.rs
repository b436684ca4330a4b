use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree {0} is too small (need m >= 2)")]
    DegreeTooSmall(u32),
    #[error("theta = x^(p^{l}) is trivial on GF(p^{m}) (order f = 1)")]
    TrivialTheta { m: u32, l: u32 },
    #[error("field of order {0} exceeds the supported size")]
    FieldTooLarge(u64),
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    NotIrreducible(u32),
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("no admissible z (nonzero square with zero absolute trace) exists in GF(p^e)")]
    NoValidZ,
    #[error("some coset of GF(p)^* contains no nonzero square (m is even)")]
    NoSquareRepresentative,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("element does not belong to this group context")]
    ContextMismatch,
    #[error("cyclotomic conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("value is not a rational integer")]
    NotRationalInteger,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("inexact division by {0} (character table bug)")]
    InexactDivision(i64),
    #[error("character {0} belongs to the omitted family and has no value formula")]
    OmittedCharacter(String),
    #[error("no character table is available for this group: {0}")]
    UnsupportedFamily(String),
    #[error("z and z' must be distinct")]
    EqualZ,
    #[error("degenerate linking system (family of size {0})")]
    DegenerateSystem(usize),
    #[error("J0 and J1 do not partition the required index set: {0}")]
    BadPartition(String),
    #[error("set is not of Dillon form: {0}")]
    NotDillonForm(String),
    #[error("input too large for the group-ring engine: {0}")]
    TooLarge(String),
    #[error("search space too large: {0} classes")]
    SearchSpaceTooLarge(usize),
    #[error("character method requires a central set")]
    NonCentralSetForCharacterMethod,
    #[error("family members do not share parameters: {0}")]
    ParameterMismatch(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
}
