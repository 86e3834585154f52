//! Recovery of the family curve from sequence data.
//!
//! Given `t` and y-values `d, e, f` at the abscissae `t^2, (t+1)^2, (t+2)^2`,
//! a 3x3 linear solve produces the unique `(a, b, c)` with all three points
//! on `y^2 = a x^3 + b x + c`. A fourth point at `(t+3)^2` forces a quadric
//! condition on `(d, e, f, g)`, solved by an explicit parametrization in
//! `(p, q, w)`; a fifth point at `(t+4)^2` then traces a quartic in `p`,
//! recovered here by exact interpolation rather than transcription (the
//! printed leading coefficient serves as an independent cross-check).


use crate::curves::{FamilyCurve, QuarticCurve};
use crate::error::{Error, Result};
use crate::linalg::solve_linear_3;
use crate::poly::interpolate;
use crate::scalar::Scalar;

/// The parameters selecting a family member: the base abscissa `t` and the
/// parametrization values `q`, `w` (and, once a member is chosen, `p`).
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceParams<T> {
    pub t: T,
    pub q: T,
    pub w: T,
    pub p: Option<T>,
}

/// The y-values of a (partial) sequence; `h` stays empty until a point of
/// the quartic has been chosen.
#[derive(Debug, Clone, PartialEq)]
pub struct YValues<T> {
    pub d: T,
    pub e: T,
    pub f: T,
    pub g: T,
    pub h: Option<T>,
}

/// The three quartic polynomials in `t` underlying the parametrization.
///
/// `F1` is also the square root of the quartic surface's leading coefficient.
const F1: [i64; 5] = [140, 246, 166, 51, 6];
const F2: [i64; 5] = [65, 141, 111, 41, 6];
const F3: [i64; 5] = [20, 66, 66, 31, 6];

fn poly_val<T: Scalar>(coeffs: &[i64], x: &T) -> T {
    let mut acc = T::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x.clone() + T::from_int(*c);
    }
    acc
}

fn pow_u<T: Scalar>(x: &T, e: u32) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

/// Reject `t` in the degeneracy set.
///
/// Two of the five squares `(t+i)^2`, `0 <= i <= 4`, collide exactly when
/// `2t + (i+j) = 0` for some `0 <= i < j <= 4`; these seven half-integers
/// also absorb every root of the construction denominators `(1+t)`,
/// `(1+2t)`, `(3+2t)`, `(5+2t)` (the factor `5 + 6t + 3t^2` has no rational
/// root).
pub fn check_parameter<T: Scalar>(t: &T) -> Result<()> {
    for k in 1..=7i64 {
        if T::from_int(2) * t.clone() + T::from_int(k) == T::zero() {
            return Err(Error::DegenerateParameter(format!(
                "t = -{k}/2 is degenerate (square collision or vanishing denominator)"
            )));
        }
    }
    Ok(())
}

/// Solve for the unique `(a, b, c)` putting `(t^2, d)`, `((t+1)^2, e)`,
/// `((t+2)^2, f)` on `y^2 = a x^3 + b x + c`.
pub fn solve_abc<T: Scalar>(t: &T, d: &T, e: &T, f: &T) -> Result<FamilyCurve<T>> {
    let row = |s: i64| -> [T; 3] {
        let u = t.clone() + T::from_int(s);
        [pow_u(&u, 6), pow_u(&u, 2), T::one()]
    };
    let matrix = [row(0), row(1), row(2)];
    let rhs = [
        d.clone() * d.clone(),
        e.clone() * e.clone(),
        f.clone() * f.clone(),
    ];
    let [a, b, c] = solve_linear_3(&matrix, &rhs).map_err(|_| {
        Error::DegenerateParameter("the three-point linear system is singular".into())
    })?;
    Ok(FamilyCurve::new(a, b, c))
}

/// The value `g^2 = a (t+3)^6 + b (t+3)^2 + c` forced on a fourth point,
/// computed through the linear solve.
pub fn g_squared<T: Scalar>(t: &T, d: &T, e: &T, f: &T) -> Result<T> {
    let curve = solve_abc(t, d, e, f)?;
    let x = t.clone() + T::from_int(3);
    Ok(curve.rhs(&(x.clone() * x)))
}

/// The explicit solution `(d, e, f, g)` of the four-term condition, as
/// quadratic forms in `(p, q, w)` with coefficients in `t`.
pub fn defg_parametrization<T: Scalar>(t: &T, p: &T, q: &T, w: &T) -> Result<YValues<T>> {
    check_parameter(t)?;
    let f1 = poly_val::<T>(&F1, t);
    let f2 = poly_val::<T>(&F2, t);
    let f3 = poly_val::<T>(&F3, t);
    let three = T::from_int(3);
    let six = T::from_int(6);
    let two = T::from_int(2);

    let pp = p.clone() * p.clone();
    let qq = q.clone() * q.clone();
    let ww = w.clone() * w.clone();
    let pq = p.clone() * q.clone();
    let pw = p.clone() * w.clone();
    let qw = q.clone() * w.clone();

    let d = f1.clone() * pp.clone() + three.clone() * f2.clone() * qq.clone()
        - three.clone() * f3.clone() * ww.clone()
        - six.clone() * f2.clone() * pq.clone()
        + six.clone() * f3.clone() * pw.clone();
    let e = T::zero() - f1.clone() * pp.clone() - three.clone() * f2.clone() * qq.clone()
        - three.clone() * f3.clone() * ww.clone()
        + two.clone() * f1.clone() * pq
        + six.clone() * f3.clone() * qw.clone();
    let f = T::zero() - f1.clone() * pp.clone()
        + three.clone() * f2.clone() * qq.clone()
        + three.clone() * f3.clone() * ww.clone()
        - six * f2.clone() * qw
        + two * f1.clone() * pw;
    let g = T::zero() - f1 * pp + three.clone() * f2 * qq - three * f3 * ww;

    Ok(YValues {
        d,
        e,
        f,
        g,
        h: None,
    })
}

/// The value `h^2(t, p, q, w) = a (t+4)^6 + b (t+4)^2 + c` along the chain.
fn h_squared_direct<T: Scalar>(t: &T, p: &T, q: &T, w: &T) -> Result<T> {
    let ys = defg_parametrization(t, p, q, w)?;
    let curve = solve_abc(t, &ys.d, &ys.e, &ys.f)?;
    let x = t.clone() + T::from_int(4);
    Ok(curve.rhs(&(x.clone() * x)))
}

/// Derive the quartic `h^2 = A p^4 + B p^3 + C p^2 + D p + E` for fixed
/// `(t, q, w)` by exact interpolation of `h^2(p)` at five sample values,
/// with a sixth sample as an overdetermination check and the known leading
/// coefficient `(140 + 246t + 166t^2 + 51t^3 + 6t^4)^2` as a cross-check.
pub fn quartic_from_params<T: Scalar>(t: &T, q: &T, w: &T) -> Result<QuarticCurve<T>> {
    check_parameter(t)?;
    let samples: Vec<T> = [0i64, 1, -1, 2, -2, 3]
        .iter()
        .map(|s| T::from_int(*s))
        .collect();
    let mut pts = Vec::with_capacity(samples.len());
    for s in &samples {
        pts.push((s.clone(), h_squared_direct(t, s, q, w)?));
    }
    let quartic = interpolate(&pts, 4)?;

    let lead = quartic.coeff(4);
    let f1 = poly_val::<T>(&F1, t);
    if lead != f1.clone() * f1 {
        return Err(Error::InconsistentData(
            "quartic leading coefficient does not match its closed form".into(),
        ));
    }
    QuarticCurve::new(
        quartic.coeff(4),
        quartic.coeff(3),
        quartic.coeff(2),
        quartic.coeff(1),
        quartic.coeff(0),
    )
}

/// Non-negative `h` with `h^2 = Q(p)`, when the quartic's value at `p` is a
/// square; `None` for negative or non-square values.
pub fn h_from_quartic<T: Scalar>(quartic: &QuarticCurve<T>, p: &T) -> Option<T> {
    let v = quartic.eval(p);
    if v.is_negative() {
        return None;
    }
    v.exact_sqrt()
}
