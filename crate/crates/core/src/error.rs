use thiserror::Error;

/// Failures raised by the transseries engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivision,
    #[error("the value is zero")]
    ZeroValue,
    #[error("leading term is hidden by the remainder marker")]
    IndeterminateLeading,
    #[error("decomposition is hidden by a remainder marker at or above 1")]
    IndeterminateSplit,
    #[error("comparison is hidden by a remainder marker")]
    Indeterminate,
    #[error("argument is not positive infinite")]
    NotPositiveInfinite,
    #[error("exp of a value with nonzero real part leaves the rational field")]
    RealPartNotZero,
    #[error("log of a nonpositive value")]
    NonpositiveArgument,
    #[error("log of a value whose leading coefficient is not 1")]
    NonunitalLeadingCoefficient,
    #[error("monomial is not log-atomic")]
    NotLogAtomic,
    #[error("operation does not support tail families")]
    UnsupportedTails,
    #[error("operation requires an exact value (no remainder marker)")]
    Inexact,
    #[error("path ends in an unexplored tail branch")]
    TruncatedPath,
    #[error("value is a rational constant")]
    ConstantValue,
    #[error("no kappa number up to depth {0} yields an asymptotic integral")]
    NeedsDeeperKappa(u32),
    #[error("exponent is not purely infinite")]
    NotPurelyInfinite,
    #[error("kappa index {0} is out of range")]
    KappaIndex(i64),
}

impl Error {
    /// True for failures caused by finite precision rather than by the input's domain.
    pub fn is_indeterminate(&self) -> bool {
        matches!(
            self,
            Error::IndeterminateLeading | Error::IndeterminateSplit | Error::Indeterminate
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
