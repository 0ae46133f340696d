use alloc::string::String;

use crate::opcore::PrimOp;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong across the algorithm modules.
///
/// Precondition failures carry the violated bound so callers (and the CLI)
/// can name it in diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operation {0} is not in the enabled instruction set")]
    ForbiddenOp(PrimOp),
    #[error("division by zero")]
    ZeroDivisor,
    #[error("natural subtraction would be negative")]
    Underflow,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("radix too small: need Z > {required}, got {got}")]
    RadixTooSmall { required: String, got: String },
    #[error("digit {digit} is not below the radix {radix}")]
    DigitOverflow { digit: String, radix: String },
    #[error("slot value {value} does not fit below 2^{limit_log2} (slot width {width})")]
    SlotOverflow {
        value: String,
        width: u32,
        limit_log2: u32,
    },
    #[error("argument {value} outside the prepared domain (|x| <= {bound})")]
    DomainExceeded { value: String, bound: String },
    #[error("coefficient {value} outside [0, {bound})")]
    CoefficientOutOfRange { value: String, bound: String },
    #[error("witness too small: remainder step {step} produced an inconsistent value")]
    WitnessTooSmall { step: usize },
    #[error("witness insufficient at step {step}: gcd bound {gcd} does not exceed entry {entry}")]
    WitnessInsufficient {
        step: usize,
        gcd: String,
        entry: String,
    },
    #[error("matrix dimensions do not match: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("input too large for this operation: {what} limited to {limit}")]
    TooLarge { what: &'static str, limit: u64 },
    #[error("negative entry {value} not allowed here")]
    NegativeEntry { value: String },
    #[error("all entries are zero, so the matrix modulus is undefined")]
    ZeroModulus,
    #[error("moduli {left} and {right} share a factor {common}")]
    NotCoprime {
        left: String,
        right: String,
        common: String,
    },
    #[error("modulus {0} must be at least 2")]
    InvalidModulus(String),
    #[error("scale exceeded: {what} limited to {limit}")]
    ScaleExceeded { what: &'static str, limit: u64 },
    #[error("no prime found within {attempts} attempts")]
    AttemptsExhausted { attempts: u64 },
    #[error("Newton iteration did not converge from the given seed bracket")]
    NoConvergence,
    #[error("stored precision insufficient: the interval straddles an integer")]
    PrecisionInsufficient,
    #[error("term index {index} out of range (stored terms: 0..={max})")]
    IndexOutOfRange { index: u64, max: u64 },
    #[error("polynomial does not fit the range class: {reason}")]
    ClassViolation { reason: String },
}
