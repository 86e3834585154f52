//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by the construction, curve and height machinery.
#[derive(Debug, Clone, PartialEq,Eq, Error)]
pub enum Error {
    /// Square root of a negative rational requested.
    #[error("domain error: square root of negative value")]
    Domain,

    /// The 3x3 linear system is singular.
    #[error("singular linear system")]
    SingularSystem,

    /// Interpolation data is inconsistent (extra point off the fitted
    /// polynomial, or a cross-check value disagreed).
    #[error("inconsistent data: {0}")]
    InconsistentData(String),

    /// Duplicate abscissae passed to interpolation.
    #[error("duplicate abscissa in interpolation data")]
    DuplicateAbscissa,

    /// A family curve with `a = 0` cannot be mapped to a Weierstrass model.
    #[error("degenerate model: leading coefficient a = 0")]
    DegenerateModel,

    /// The parameter `t` lies in the degeneracy set (a construction
    /// denominator vanishes or two of the five squares collide).
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    /// The short Weierstrass model is singular (discriminant zero).
    #[error("singular curve: discriminant is zero")]
    SingularCurve,

    /// The quartic's Jacobian is singular (`4 I^3 = J^2`).
    #[error("singular jacobian: 4I^3 - J^2 = 0")]
    SingularJacobian,

    /// The quartic's leading coefficient is not a rational square.
    #[error("leading coefficient is not a rational square")]
    NotASquare,

    /// A point given to a curve operation does not lie on the curve.
    #[error("point is not on the curve")]
    OffCurve,

    /// The birational map is undefined at this point.
    #[error("exceptional point of the birational map{}", match .m { Some(m) => format!(" (multiple m = {m} is retryable)"), None => String::new() })]
    ExceptionalPoint {
        /// The multiple `m` whose image hit the exceptional set, when the
        /// failure happened inside family generation.
        m: Option<i64>,
    },

    /// The seed's image on the Jacobian is a torsion point, so its multiples
    /// do not generate new family members.
    #[error("torsion seed: the seed maps to a torsion point on the Jacobian")]
    TorsionSeed,

    /// A torsion point was passed where a point of infinite order is needed.
    #[error("torsion input: point {index} is torsion")]
    TorsionInput {
        /// Index of the offending point in the input list.
        index: usize,
    },

    /// A coordinate exceeded the configured digit guard.
    #[error("size limit exceeded: {digits} digits > guard {guard}")]
    SizeLimit {
        /// Decimal digit count that tripped the guard.
        digits: usize,
        /// The configured guard.
        guard: usize,
    },

    /// The multiple `m` must be a nonzero integer.
    #[error("m must be a nonzero integer")]
    ZeroMultiple,

    /// A record failed verification where a verified record is required.
    #[error("record failed verification")]
    VerificationFailed,

    /// Malformed input (unparseable rational, bad record file, ...).
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
