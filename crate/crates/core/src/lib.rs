//! Exact-rational construction of elliptic curves `y^2 = a x^3 + b x + c`
//! carrying five rational points whose x-coordinates are consecutive squares
//! `t^2, (t+1)^2, ..., (t+4)^2`, plus the machinery around them:
//!
//! - [`scalar`]: the scalar abstraction (arbitrary-precision rationals) with
//!   exact square roots.
//! - [`poly`] / [`linalg`]: dense univariate polynomials, Lagrange
//!   interpolation and small exact linear solves.
//! - [`curves`]: curve models (family cubic, short Weierstrass, quartic),
//!   exact group law, scalar multiples and torsion testing.
//! - [`construction`]: recovery of `(a, b, c)` from three points, the
//!   four-term condition, the `(d, e, f, g)` parametrization and the quartic
//!   surface `h^2 = A p^4 + B p^3 + C p^2 + D p + E`.
//! - [`two_cover`]: invariants I, J of the quartic, its Jacobian
//!   `y^2 = x^3 - 27 I x - 27 J`, the distinguished rational point and the
//!   birational maps between quartic and cubic.
//! - [`pipeline`]: end-to-end generation of family members `E_m`, sequence
//!   verification and the genus-2 hyperelliptic lift.
//! - [`heights`]: naive and canonical (Neron-Tate) heights with certified
//!   error bounds, the height-pairing Gram matrix and a positive-regulator
//!   independence certificate.
//! - [`records`]: the JSON interchange format (all rationals as exact "n/d"
//!   strings).
//! - [`fixture`]: the built-in specialization `t = 1, q = 81/40, w = 1,
//!   p = 2201/2320` with its known curve and points, used for self-tests.

pub mod construction;
pub mod curves;
pub mod error;
pub mod fixture;
pub mod heights;
pub mod linalg;
pub mod pipeline;
pub mod poly;
pub mod records;
pub mod scalar;
pub mod two_cover;

pub use error::Error;
pub use scalar::Scalar;

/// The universal exact scalar: an arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer underlying [`Rat`].
pub type Int = num_bigint::BigInt;

/// A point on a curve with [`Rat`] coordinates.
pub type RatPoint = curves::CurvePoint<Rat>;
/// Family cubic `y^2 = a x^3 + b x + c` over the rationals.
pub type RatFamilyCurve = curves::FamilyCurve<Rat>;
/// Short Weierstrass curve `y^2 = x^3 + alpha x + beta` over the rationals.
pub type RatWeierstrassCurve = curves::WeierstrassCurve<Rat>;
/// Quartic model `h^2 = A p^4 + B p^3 + C p^2 + D p + E` over the rationals.
pub type RatQuarticCurve = curves::QuarticCurve<Rat>;
/// Dense univariate polynomial with [`Rat`] coefficients.
pub type RatPoly = poly::Polynomial<Rat>;

/// Shorthand for building a `Rat` from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from(Int::from(n))
}

/// Shorthand for building a `Rat` from a numerator/denominator pair.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}
