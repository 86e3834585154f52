//! Curve models and exact point arithmetic.
//!
//! Three affine models appear in the construction:
//!
//! - [`FamilyCurve`]: `y^2 = a x^3 + b x + c`, the family the sequences live
//!   on;
//! - [`WeierstrassCurve`]: `y^2 = x^3 + alpha x + beta`, the only model with
//!   group arithmetic (the family model routes through
//!   [`family_to_weierstrass`]);
//! - [`QuarticCurve`]: `h^2 = A p^4 + B p^3 + C p^2 + D p + E`, the two-cover
//!   parametrizing valid `p` values.
//!
//! Points carry no curve reference; every operation takes the curve
//! explicitly.


use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of an elliptic-curve model: affine or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePoint<T> {
    /// The point at infinity (group identity on cubic models).
    Infinity,
    /// An affine point `(x, y)`.
    Affine(T, T),
}

impl<T: Scalar> CurvePoint<T> {
    /// Affine constructor.
    pub fn affine(x: T, y: T) -> Self {
        CurvePoint::Affine(x, y)
    }

    /// The negation `(x, -y)`; infinity is its own negative.
    pub fn neg(&self) -> Self {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x.clone(), T::zero() - y.clone()),
        }
    }

    /// x-coordinate of an affine point.
    pub fn x(&self) -> Option<&T> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(x, _) => Some(x),
        }
    }

    /// y-coordinate of an affine point.
    pub fn y(&self) -> Option<&T> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(_, y) => Some(y),
        }
    }

    /// Is this the point at infinity?
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

/// The family model `y^2 = a x^3 + b x + c`.
///
/// `a` may be zero for degenerate members (for example the constant curve
/// `y^2 = 1` arising from the all-ones sequence); such members cannot be
/// mapped to a Weierstrass model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCurve<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> FamilyCurve<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        FamilyCurve { a, b, c }
    }

    /// Right-hand side `a x^3 + b x + c`.
    pub fn rhs(&self, x: &T) -> T {
        ((self.a.clone() * x.clone() * x.clone()) + self.b.clone()) * x.clone() + self.c.clone()
    }

    /// Exact membership test. Infinity counts as on the curve (projective
    /// cubic model).
    pub fn contains(&self, p: &CurvePoint<T>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => y.clone() * y.clone() == self.rhs(x),
        }
    }
}

/// Short Weierstrass model `y^2 = x^3 + alpha x + beta`.
///
/// Constructed through [`WeierstrassCurve::new`], which rejects singular
/// models (discriminant `-16 (4 alpha^3 + 27 beta^2) = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve<T> {
    alpha: T,
    beta: T,
}

impl<T: Scalar> WeierstrassCurve<T> {
    /// Build the curve, checking nonsingularity.
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        let c = WeierstrassCurve { alpha, beta };
        if c.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn beta(&self) -> &T {
        &self.beta
    }

    /// `-16 (4 alpha^3 + 27 beta^2)`.
    pub fn discriminant(&self) -> T {
        let four = T::from_int(4);
        let a3 = self.alpha.clone() * self.alpha.clone() * self.alpha.clone();
        let b2 = self.beta.clone() * self.beta.clone();
        T::from_int(-16) * (four * a3 + T::from_int(27) * b2)
    }

    /// Right-hand side `x^3 + alpha x + beta`.
    pub fn rhs(&self, x: &T) -> T {
        (x.clone() * x.clone() + self.alpha.clone()) * x.clone() + self.beta.clone()
    }

    /// Exact membership test; infinity is the identity and is on the curve.
    pub fn contains(&self, p: &CurvePoint<T>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => y.clone() * y.clone() == self.rhs(x),
        }
    }

    /// Chord-tangent addition. Errors if either input is off the curve.
    pub fn add(&self, p: &CurvePoint<T>, q: &CurvePoint<T>) -> Result<CurvePoint<T>> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::OffCurve);
        }
        Ok(self.add_unchecked(p, q))
    }

    /// Addition without the membership precondition check; used internally
    /// on points already known to be on the curve.
    pub(crate) fn add_unchecked(&self, p: &CurvePoint<T>, q: &CurvePoint<T>) -> CurvePoint<T> {
        let (x1, y1) = match p {
            CurvePoint::Infinity => return q.clone(),
            CurvePoint::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            CurvePoint::Infinity => return p.clone(),
            CurvePoint::Affine(x, y) => (x, y),
        };
        let slope = if x1 == x2 {
            if y1.clone() + y2.clone() == T::zero() {
                return CurvePoint::Infinity;
            }
            // tangent
            let num = T::from_int(3) * x1.clone() * x1.clone() + self.alpha.clone();
            num / (T::from_int(2) * y1.clone())
        } else {
            (y2.clone() - y1.clone()) / (x2.clone() - x1.clone())
        };
        let x3 = slope.clone() * slope.clone() - x1.clone() - x2.clone();
        let y3 = slope * (x1.clone() - x3.clone()) - y1.clone();
        CurvePoint::Affine(x3, y3)
    }

    /// `m`-th multiple by double-and-add; negative `m` negates.
    pub fn scalar_mul(&self, m: i64, p: &CurvePoint<T>) -> Result<CurvePoint<T>> {
        if !self.contains(p) {
            return Err(Error::OffCurve);
        }
        Ok(self.scalar_mul_unchecked(m, p))
    }

    pub(crate) fn scalar_mul_unchecked(&self, m: i64, p: &CurvePoint<T>) -> CurvePoint<T> {
        let (mut k, base) = if m < 0 {
            (m.unsigned_abs(), p.neg())
        } else {
            (m as u64, p.clone())
        };
        let mut acc = CurvePoint::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.add_unchecked(&pow, &pow);
            }
        }
        acc
    }

    /// Torsion test via Mazur's bound: rational torsion has order at most 12.
    pub fn is_torsion(&self, p: &CurvePoint<T>) -> Result<bool> {
        if !self.contains(p) {
            return Err(Error::OffCurve);
        }
        let mut acc = p.clone();
        for _ in 1..=12 {
            if acc.is_infinity() {
                return Ok(true);
            }
            acc = self.add_unchecked(&acc, p);
        }
        Ok(false)
    }
}

/// Quartic two-cover `h^2 = A p^4 + B p^3 + C p^2 + D p + E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticCurve<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
}

impl<T: Scalar> QuarticCurve<T> {
    /// Build the quartic; the leading coefficient must be nonzero.
    pub fn new(a: T, b: T, c: T, d: T, e: T) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::DegenerateModel);
        }
        Ok(QuarticCurve { a, b, c, d, e })
    }

    /// Evaluate the quartic at `p`.
    pub fn eval(&self, p: &T) -> T {
        let mut acc = self.a.clone();
        for coeff in [&self.b, &self.c, &self.d, &self.e] {
            acc = acc * p.clone() + coeff.clone();
        }
        acc
    }

    /// Exact membership test for the affine model; the point at infinity is
    /// not part of this chart.
    pub fn contains(&self, pt: &CurvePoint<T>) -> bool {
        match pt {
            CurvePoint::Infinity => false,
            CurvePoint::Affine(p, h) => h.clone() * h.clone() == self.eval(p),
        }
    }

    /// Rescale the model: `h -> s h` sends the quartic to `s^2 * Q`.
    pub fn scaled(&self, s2: &T) -> Result<Self> {
        QuarticCurve::new(
            self.a.clone() * s2.clone(),
            self.b.clone() * s2.clone(),
            self.c.clone() * s2.clone(),
            self.d.clone() * s2.clone(),
            self.e.clone() * s2.clone(),
        )
    }
}

/// The isomorphism from a family cubic to its short Weierstrass model.
///
/// `(x, y) -> (a x, a y)` carries `y^2 = a x^3 + b x + c` to
/// `Y^2 = X^3 + (a b) X + (a^2 c)`; both directions are exact bijections on
/// affine points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyIsomorphism<T> {
    curve: WeierstrassCurve<T>,
    scale: T,
}

impl<T: Scalar> FamilyIsomorphism<T> {
    /// The target Weierstrass model.
    pub fn weierstrass(&self) -> &WeierstrassCurve<T> {
        &self.curve
    }

    /// Forward map, family model to Weierstrass model.
    pub fn to_weierstrass(&self, p: &CurvePoint<T>) -> CurvePoint<T> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                CurvePoint::Affine(self.scale.clone() * x.clone(), self.scale.clone() * y.clone())
            }
        }
    }

    /// Backward map, Weierstrass model to family model.
    pub fn to_family(&self, p: &CurvePoint<T>) -> CurvePoint<T> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(
                x.clone() / self.scale.clone(),
                y.clone() / self.scale.clone(),
            ),
        }
    }
}

/// Map a family cubic to short Weierstrass form.
///
/// Errors with [`Error::DegenerateModel`] when `a = 0` and with
/// [`Error::SingularCurve`] when the resulting model is singular.
pub fn family_to_weierstrass<T: Scalar>(curve: &FamilyCurve<T>) -> Result<FamilyIsomorphism<T>> {
    if curve.a.is_zero() {
        return Err(Error::DegenerateModel);
    }
    let alpha = curve.a.clone() * curve.b.clone();
    let beta = curve.a.clone() * curve.a.clone() * curve.c.clone();
    Ok(FamilyIsomorphism {
        curve: WeierstrassCurve::new(alpha, beta)?,
        scale: curve.a.clone(),
    })
}
