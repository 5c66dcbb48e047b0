use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("the zero polynomial is not allowed")]
    ZeroPolynomial,

    #[error("coefficient is not finite")]
    NonFinite,

    #[error("(0, 0) is not a direction")]
    ZeroDirection,

    #[error("({u}, {v}) is not primitive: gcd is {gcd}")]
    NotPrimitive { u: i64, v: i64, gcd: i64 },

    #[error("cannot raise zero to the negative power {exponent}")]
    ZeroToNegativePower { exponent: i64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("both univariate forms are constant")]
    ConstantForms,

    #[error("polynomial has zero degree in y; swap the variables")]
    ZeroYDegree,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
