//! The quartic as a two-cover of its Jacobian.
//!
//! For `Q: h^2 = A p^4 + B p^3 + C p^2 + D p + E` with invariants
//! `I = 12AE - 3BD + C^2` and
//! `J = 72ACE + 9BCD - 27AD^2 - 27B^2E - 2C^3`, the Jacobian is the cubic
//! `y^2 = x^3 - 27 I x - 27 J`. When `A` is a rational square the quartic
//! has rational points at infinity and carries the distinguished point
//! `P = (3(3B^2 - 8AC)/(4A), 27(B^3 + 8A^2D - 4ABC)/(8A^{3/2}))` on the
//! Jacobian, and an explicit birational map between the two models.
//!
//! The map used here completes the square with `S = sqrt(A)`: writing
//! `C1 = C - B^2/(4A)`, `D1 = D - B C1 / (2A)`, `E1 = E - C1^2/(4A)`, the
//! substitution `X_w = 2A p^2 + B p + C1 - 2 S h`, `Y_w = -2 S p X_w` lands
//! on the long Weierstrass model
//! `Y^2 + a1 XY + a3 Y = X^3 + a2 X^2 + a4 X` with `a1 = -B/S`,
//! `a2 = -2 C1`, `a3 = -2 S D1`, `a4 = -4 A E1`, whose short form (complete
//! the square, depress, scale by (9, 27)) is exactly the Jacobian above:
//! its invariants satisfy `c4 = 16 I` and `c6 = 32 J`. The inverse breaks
//! precisely at `X_w = 0` and at infinity.



use crate::curves::{CurvePoint, QuarticCurve, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The classical invariants of a binary quartic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticInvariants<T> {
    pub i: T,
    pub j: T,
}

impl<T: Scalar> QuarticInvariants<T> {
    /// `4 I^3 - J^2`; the Jacobian is nonsingular iff this is nonzero.
    pub fn degeneracy(&self) -> T {
        let i3 = self.i.clone() * self.i.clone() * self.i.clone();
        T::from_int(4) * i3 - self.j.clone() * self.j.clone()
    }
}

/// Exact `I` and `J` of the quartic.
pub fn invariants<T: Scalar>(q: &QuarticCurve<T>) -> QuarticInvariants<T> {
    let (a, b, c, d, e) = (&q.a, &q.b, &q.c, &q.d, &q.e);
    let i = T::from_int(12) * a.clone() * e.clone() - T::from_int(3) * b.clone() * d.clone()
        + c.clone() * c.clone();
    let j = T::from_int(72) * a.clone() * c.clone() * e.clone()
        + T::from_int(9) * b.clone() * c.clone() * d.clone()
        - T::from_int(27) * a.clone() * d.clone() * d.clone()
        - T::from_int(27) * b.clone() * b.clone() * e.clone()
        - T::from_int(2) * c.clone() * c.clone() * c.clone();
    QuarticInvariants { i, j }
}

/// The Jacobian `y^2 = x^3 - 27 I x - 27 J`.
pub fn jacobian<T: Scalar>(q: &QuarticCurve<T>) -> Result<WeierstrassCurve<T>> {
    let inv = invariants(q);
    if inv.degeneracy().is_zero() {
        return Err(Error::SingularJacobian);
    }
    let m27 = T::from_int(-27);
    WeierstrassCurve::new(m27.clone() * inv.i, m27 * inv.j)
}

/// The distinguished rational point on the Jacobian, available when `A` is
/// a rational square. The square root is taken non-negative; the point is
/// determined up to `y`-negation by that convention.
pub fn distinguished_point<T: Scalar>(q: &QuarticCurve<T>) -> Result<CurvePoint<T>> {
    let s = sqrt_of_leading(q)?;
    let (a, b, c, d) = (&q.a, &q.b, &q.c, &q.d);
    let four = T::from_int(4);
    let eight = T::from_int(8);
    let x = T::from_int(3)
        * (T::from_int(3) * b.clone() * b.clone() - eight.clone() * a.clone() * c.clone())
        / (four.clone() * a.clone());
    let s3 = s.clone() * s.clone() * s;
    let y = T::from_int(27)
        * (b.clone() * b.clone() * b.clone() + eight.clone() * a.clone() * a.clone() * d.clone()
            - four * a.clone() * b.clone() * c.clone())
        / (eight * s3);
    Ok(CurvePoint::Affine(x, y))
}

fn sqrt_of_leading<T: Scalar>(q: &QuarticCurve<T>) -> Result<T> {
    if q.a.is_zero() {
        return Err(Error::DegenerateModel);
    }
    q.a.exact_sqrt().ok_or(Error::NotASquare)
}

/// Precomputed data for the quartic <-> cubic maps.
struct CoverData<T> {
    s: T,
    c1: T,
    a1: T,
    a3: T,
    b2: T,
}

fn cover_data<T: Scalar>(q: &QuarticCurve<T>) -> Result<CoverData<T>> {
    let s = sqrt_of_leading(q)?;
    let four_a = T::from_int(4) * q.a.clone();
    let c1 = q.c.clone() - q.b.clone() * q.b.clone() / four_a;
    let d1 = q.d.clone() - q.b.clone() * c1.clone() / (T::from_int(2) * q.a.clone());
    let a1 = T::zero() - q.b.clone() / s.clone();
    let a2 = T::from_int(-2) * c1.clone();
    let a3 = T::from_int(-2) * s.clone() * d1;
    let b2 = a1.clone() * a1.clone() + T::from_int(4) * a2;
    Ok(CoverData { s, c1, a1, a3, b2 })
}

/// Map a point of the quartic to the Jacobian.
///
/// Defined on every affine point of `Q`; the point at infinity of the
/// quartic model is not representable here and reports as exceptional.
pub fn quartic_to_cubic<T: Scalar>(
    pt: &CurvePoint<T>,
    q: &QuarticCurve<T>,
) -> Result<CurvePoint<T>> {
    let (p, h) = match pt {
        CurvePoint::Infinity => return Err(Error::ExceptionalPoint { m: None }),
        CurvePoint::Affine(p, h) => (p, h),
    };
    if !q.contains(pt) {
        return Err(Error::OffCurve);
    }
    let cd = cover_data(q)?;
    let xw = T::from_int(2) * q.a.clone() * p.clone() * p.clone()
        + q.b.clone() * p.clone()
        + cd.c1.clone()
        - T::from_int(2) * cd.s.clone() * h.clone();
    let yw = T::from_int(-2) * cd.s.clone() * p.clone() * xw.clone();
    // short form: x = 9 Xw + (3/4) b2, y = 27 (Yw + (a1 Xw + a3)/2)
    let x = T::from_int(9) * xw.clone() + T::from_int(3) * cd.b2 / T::from_int(4);
    let y = T::from_int(27) * (yw + (cd.a1 * xw + cd.a3) / T::from_int(2));
    Ok(CurvePoint::Affine(x, y))
}

/// Pull a point of the Jacobian back to the quartic.
///
/// Exceptional at infinity and on the fiber `X_w = 0` (equivalently at
/// `x = (3/4) b2` in short coordinates, the image of the distinguished
/// point's fiber), where `p` cannot be recovered.
pub fn cubic_to_quartic<T: Scalar>(
    pt: &CurvePoint<T>,
    q: &QuarticCurve<T>,
) -> Result<CurvePoint<T>> {
    let (x, y) = match pt {
        CurvePoint::Infinity => return Err(Error::ExceptionalPoint { m: None }),
        CurvePoint::Affine(x, y) => (x, y),
    };
    if !jacobian(q)?.contains(pt) {
        return Err(Error::OffCurve);
    }
    let cd = cover_data(q)?;
    let xw = x.clone() / T::from_int(9) - cd.b2.clone() / T::from_int(12);
    if xw.is_zero() {
        return Err(Error::ExceptionalPoint { m: None });
    }
    let yw =
        y.clone() / T::from_int(27) - (cd.a1.clone() * xw.clone() + cd.a3.clone()) / T::from_int(2);
    let p = (T::zero() - yw) / (T::from_int(2) * cd.s.clone() * xw.clone());
    let h = (T::from_int(2) * q.a.clone() * p.clone() * p.clone() + q.b.clone() * p.clone()
        + cd.c1.clone()
        - xw)
        / (T::from_int(2) * cd.s);
    Ok(CurvePoint::Affine(p, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::quartic_from_params;
    use crate::scalar::parse_rat;
    use crate::{rat, ratio, Rat, RatPoint, RatQuarticCurve};
    use proptest::prelude::*;

    fn fixture_quartic() -> RatQuarticCurve {
        quartic_from_params(&rat(1), &ratio(81, 40), &rat(1)).unwrap()
    }

    #[test]
    fn invariants_of_simple_quartics() {
        let q = RatQuarticCurve::new(rat(1), rat(0), rat(0), rat(0), rat(1)).unwrap();
        let inv = invariants(&q);
        assert_eq!((inv.i, inv.j), (rat(12), rat(0)));

        let degenerate = RatQuarticCurve::new(rat(1), rat(0), rat(0), rat(0), rat(0)).unwrap();
        let inv = invariants(&degenerate);
        assert_eq!((inv.i.clone(), inv.j.clone()), (rat(0), rat(0)));
        assert_eq!(jacobian(&degenerate), Err(Error::SingularJacobian));
    }

    #[test]
    fn jacobian_of_simple_quartic() {
        let q = RatQuarticCurve::new(rat(1), rat(0), rat(0), rat(0), rat(1)).unwrap();
        let e = jacobian(&q).unwrap();
        assert_eq!((e.alpha().clone(), e.beta().clone()), (rat(-324), rat(0)));
    }

    #[test]
    fn fixture_jacobian_matches_known_specialization() {
        let e = jacobian(&fixture_quartic()).unwrap();
        assert_eq!(
            e.alpha(),
            &parse_rat("-147183268996968521373/10000").unwrap()
        );
        assert_eq!(
            e.beta(),
            &parse_rat("171278570868444028577352480093/250000").unwrap()
        );
    }

    #[test]
    fn fixture_distinguished_point() {
        let q = fixture_quartic();
        let p = distinguished_point(&q).unwrap();
        assert_eq!(
            p,
            RatPoint::affine(
                parse_rat("-4786935489/100").unwrap(),
                parse_rat("-56568093052527/50").unwrap()
            )
        );
        assert!(jacobian(&q).unwrap().contains(&p));
        // and it has infinite order
        assert!(!jacobian(&q).unwrap().is_torsion(&p).unwrap());
    }

    #[test]
    fn distinguished_point_simple_cases() {
        // B = C = D = 0 gives the 2-torsion point (0, 0)
        let q = RatQuarticCurve::new(rat(1), rat(0), rat(0), rat(0), rat(1)).unwrap();
        let p = distinguished_point(&q).unwrap();
        assert_eq!(p, RatPoint::affine(rat(0), rat(0)));
        assert!(jacobian(&q).unwrap().contains(&p));

        let not_square = RatQuarticCurve::new(rat(2), rat(0), rat(0), rat(0), rat(1)).unwrap();
        assert_eq!(distinguished_point(&not_square), Err(Error::NotASquare));
    }

    #[test]
    fn seed_maps_onto_the_jacobian_and_back() {
        let q = fixture_quartic();
        let e = jacobian(&q).unwrap();
        let h = parse_rat("1317462069/185600").unwrap();

        // the negative-h seed round-trips cleanly
        let seed = RatPoint::affine(ratio(2201, 2320), -&h);
        assert!(q.contains(&seed));
        let img = quartic_to_cubic(&seed, &q).unwrap();
        assert!(e.contains(&img));
        assert_eq!(cubic_to_quartic(&img, &q).unwrap(), seed);

        // the positive-h seed sits exactly on the X_w = 0 fiber: its image
        // is the distinguished point's negative and cannot be pulled back
        let seed_plus = RatPoint::affine(ratio(2201, 2320), h);
        let img_plus = quartic_to_cubic(&seed_plus, &q).unwrap();
        assert!(e.contains(&img_plus));
        assert_eq!(img_plus, distinguished_point(&q).unwrap().neg());
        assert!(matches!(
            cubic_to_quartic(&img_plus, &q),
            Err(Error::ExceptionalPoint { .. })
        ));
    }

    #[test]
    fn exceptional_points_are_reported() {
        let q = fixture_quartic();
        assert!(matches!(
            quartic_to_cubic(&RatPoint::Infinity, &q),
            Err(Error::ExceptionalPoint { .. })
        ));
        assert!(matches!(
            cubic_to_quartic(&RatPoint::Infinity, &q),
            Err(Error::ExceptionalPoint { .. })
        ));
        // off-curve points are rejected, not mapped
        assert_eq!(
            quartic_to_cubic(&RatPoint::affine(rat(0), rat(1)), &q),
            Err(Error::OffCurve)
        );
    }

    /// Build a quartic with square leading coefficient and a known rational
    /// point: pick (A = s^2, B, C, D) and a point (p0, h0), then solve for E.
    fn quartic_with_point(
        s: i64,
        b: i64,
        c: i64,
        d: i64,
        p0: Rat,
        h0: Rat,
    ) -> (RatQuarticCurve, RatPoint) {
        let (a, b, c, d) = (rat(s * s), rat(b), rat(c), rat(d));
        let partial = ((a.clone() * &p0 + &b) * &p0 + &c) * &p0 * &p0 + d.clone() * &p0;
        let e = &h0 * &h0 - partial;
        let q = RatQuarticCurve::new(a, b, c, d, e).unwrap();
        let pt = RatPoint::affine(p0, h0);
        assert!(q.contains(&pt));
        (q, pt)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        // distinguished point lies on the Jacobian for random square-A quartics
        #[test]
        fn distinguished_point_on_jacobian(s in 1i64..8, b in -6i64..6, c in -6i64..6, d in -6i64..6, e in -6i64..6) {
            let q = RatQuarticCurve::new(rat(s * s), rat(b), rat(c), rat(d), rat(e)).unwrap();
            if invariants(&q).degeneracy() != rat(0) {
                let p = distinguished_point(&q).unwrap();
                prop_assert!(jacobian(&q).unwrap().contains(&p));
            }
        }

        // round trip on random quartic points
        #[test]
        fn round_trip_is_identity(
            s in 1i64..6, b in -5i64..5, c in -5i64..5, d in -5i64..5,
            p0n in -6i64..6, p0d in 1i64..4, h0n in 1i64..8
        ) {
            let (q, pt) = quartic_with_point(s, b, c, d, ratio(p0n, p0d), ratio(h0n, 2));
            if invariants(&q).degeneracy() == rat(0) { return Ok(()); }
            let e = jacobian(&q).unwrap();
            match quartic_to_cubic(&pt, &q) {
                Ok(img) => {
                    prop_assert!(e.contains(&img));
                    match cubic_to_quartic(&img, &q) {
                        Ok(back) => prop_assert_eq!(back, pt),
                        Err(Error::ExceptionalPoint { .. }) => {}
                        Err(other) => prop_assert!(false, "unexpected {other:?}"),
                    }
                }
                Err(Error::ExceptionalPoint { .. }) => {}
                Err(other) => prop_assert!(false, "unexpected {other:?}"),
            }
        }

        // discriminant proportionality: disc(jacobian) = 2^4 3^9 (4I^3 - J^2)
        #[test]
        fn discriminant_proportionality(i in -20i64..20, j in -20i64..20) {
            let inv = QuarticInvariants { i: rat(i), j: rat(j) };
            let deg = inv.degeneracy();
            if deg != rat(0) {
                let e = WeierstrassCurve::new(rat(-27) * rat(i), rat(-27) * rat(j)).unwrap();
                prop_assert_eq!(e.discriminant(), rat(16) * rat(19683) * deg);
            }
        }
    }
}
