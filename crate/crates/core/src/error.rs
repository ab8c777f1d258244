use thiserror::Error;

use crate::ramification::ShapeViolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("indeterminate form: {0}")]
    IndeterminateForm(&'static str),
    #[error("operation requires a finite value, got infinity")]
    InfiniteOperand,
    #[error("denominator vanishes at L = {0}")]
    DenominatorVanishes(String),
    #[error("{value} has no rational {root}-th root")]
    IrrationalRoot { value: String, root: u32 },
    #[error("finite summation over a term with slope 0 is not supported")]
    ZeroSlopeUnsupported,
    #[error("index mismatch: expected `{expected}`, found `{found}`")]
    IndexMismatch { expected: String, found: String },
    #[error("unsupported residue characteristic {0}")]
    UnsupportedCharacteristic(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid shape: {0}")]
    InvalidShape(ShapeViolation),
    #[error("every hyperplane coefficient has infinite valuation")]
    AllCoefficientsVanish,
    #[error("group order {order} is not divisible by orbit size {orbit}")]
    InconsistentGroupOrder { order: u64, orbit: u64 },
    #[error("hyperplane datum has {fvals} coefficient valuations for {components} orbits")]
    FvalCountMismatch { fvals: usize, components: usize },
    #[error("coefficient valuation must be non-negative, got {0}")]
    NegativeValuation(String),
    #[error("ramification jump {jump} is divisible by p = {p}")]
    JumpDivisibleByP { p: u64, jump: u64 },
    #[error("weight is not affine along the family: {0}")]
    NonAffineWeight(String),
    #[error("independent routes disagree: {0}")]
    RouteMismatch(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("fixture: {0}")]
    Fixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
