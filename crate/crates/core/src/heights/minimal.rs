//! Integral and globally minimal Weierstrass models.
//!
//! A rational short model `y^2 = x^3 + alpha x + beta` is first cleared to
//! an integral one, then reduced prime by prime: a power `p^k` can be
//! removed exactly when `(c4 / u^4, c6 / u^6)` still arises from an integral
//! model. Existence is decided constructively: any integral model can be
//! shifted by `[1, r, s, t]` into one with `a1, a3 in {0, 1}` and
//! `a2 in {-1, 0, 1}`, so searching those twelve shapes for integral
//! `b4 = (b2^2 - c4)/24`, `b6 = (-b2^3 + 36 b2 b4 - c6)/216`, `a4`, `a6`
//! is a complete test (it subsumes the Kraus conditions at 2 and 3; for
//! p >= 5 removal never affects them since p is a 2- and 3-adic unit).
//!
//! The composite transformation back to the input model is kept so points
//! can be moved exactly; local heights are computed on the minimal model.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::{factorize, ord_p_int};
use crate::error::{Error, Result};
use crate::{Rat, RatPoint, RatWeierstrassCurve};

/// A general integral Weierstrass model `[a1, a2, a3, a4, a6]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntModel {
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
    pub a4: BigInt,
    pub a6: BigInt,
}

impl IntModel {
    pub fn b2(&self) -> BigInt {
        &self.a1 * &self.a1 + 4 * &self.a2
    }
    pub fn b4(&self) -> BigInt {
        2 * &self.a4 + &self.a1 * &self.a3
    }
    pub fn b6(&self) -> BigInt {
        &self.a3 * &self.a3 + 4 * &self.a6
    }
    pub fn b8(&self) -> BigInt {
        &self.a1 * &self.a1 * &self.a6 + 4 * &self.a2 * &self.a6 - &self.a1 * &self.a3 * &self.a4
            + &self.a2 * &self.a3 * &self.a3
            - &self.a4 * &self.a4
    }
    pub fn c4(&self) -> BigInt {
        let b2 = self.b2();
        &b2 * &b2 - 24 * self.b4()
    }
    pub fn c6(&self) -> BigInt {
        let b2 = self.b2();
        -(&b2 * &b2 * &b2) + 36 * &b2 * self.b4() - 216 * self.b6()
    }
    pub fn discriminant(&self) -> BigInt {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    /// Exact membership for rational points.
    pub fn contains(&self, x: &Rat, y: &Rat) -> bool {
        let lhs = y * y + Rat::from(self.a1.clone()) * x * y + Rat::from(self.a3.clone()) * y;
        let rhs = x * x * x
            + Rat::from(self.a2.clone()) * x * x
            + Rat::from(self.a4.clone()) * x
            + Rat::from(self.a6.clone());
        lhs == rhs
    }
}

/// Reconstruct an integral model with the given invariants, if one exists.
fn model_from_c4_c6(c4: &BigInt, c6: &BigInt) -> Option<IntModel> {
    for a1 in 0..=1i64 {
        for a2 in -1..=1i64 {
            for a3 in 0..=1i64 {
                let a1b = BigInt::from(a1);
                let a2b = BigInt::from(a2);
                let a3b = BigInt::from(a3);
                let b2 = &a1b * &a1b + 4 * &a2b;
                let num_b4: BigInt = &b2 * &b2 - c4;
                let (b4, rem) = num_b4.div_rem(&BigInt::from(24));
                if !rem.is_zero() {
                    continue;
                }
                let b2cubed: BigInt = &b2 * &b2 * &b2;
                let num_b6: BigInt = -b2cubed + 36 * &b2 * &b4 - c6;
                let (b6, rem) = num_b6.div_rem(&BigInt::from(216));
                if !rem.is_zero() {
                    continue;
                }
                let num_a4 = &b4 - &a1b * &a3b;
                let (a4, rem) = num_a4.div_rem(&BigInt::from(2));
                if !rem.is_zero() {
                    continue;
                }
                let num_a6 = &b6 - &a3b * &a3b;
                let (a6, rem) = num_a6.div_rem(&BigInt::from(4));
                if !rem.is_zero() {
                    continue;
                }
                let model = IntModel {
                    a1: a1b,
                    a2: a2b,
                    a3: a3b,
                    a4,
                    a6,
                };
                if &model.c4() == c4 && &model.c6() == c6 {
                    return Some(model);
                }
            }
        }
    }
    None
}

/// The minimal model of a curve together with the exact transformation from
/// the original rational short model and the factored bad primes.
#[derive(Debug, Clone)]
pub struct MinimalData {
    pub model: IntModel,
    /// Point map: `x' = (v^2 x - r)/u^2`, `y' = (v^3 y - s(v^2 x - r) - t)/u^3`.
    v: BigInt,
    u: BigInt,
    r: Rat,
    s: Rat,
    t: Rat,
    /// Primes dividing the minimal discriminant, with multiplicities.
    pub bad_primes: Vec<(BigUint, u32)>,
    pub disc: BigInt,
    pub c4: BigInt,
}

impl MinimalData {
    /// Move a point of the original model onto the minimal model.
    pub fn to_minimal(&self, p: &RatPoint) -> RatPoint {
        match p {
            RatPoint::Infinity => RatPoint::Infinity,
            RatPoint::Affine(x, y) => {
                let v2 = Rat::from(&self.v * &self.v);
                let v3 = Rat::from(&self.v * &self.v * &self.v);
                let u2 = Rat::from(&self.u * &self.u);
                let u3 = Rat::from(&self.u * &self.u * &self.u);
                let shifted = v2 * x - &self.r;
                let xm = &shifted / &u2;
                let ym = (v3 * y - &self.s * &shifted - &self.t) / u3;
                RatPoint::Affine(xm, ym)
            }
        }
    }
}

/// Clear denominators: the smallest `v` with `v^4 alpha` and `v^6 beta`
/// integral.
fn integral_scale(alpha: &Rat, beta: &Rat) -> Result<BigInt> {
    let mut v = BigInt::one();
    let mut dens = BigInt::from(alpha.denom() * beta.denom());
    if dens.is_negative() {
        dens = -dens;
    }
    if dens.is_one() {
        return Ok(v);
    }
    let factors = factorize(dens.magnitude())?;
    for (p, _) in factors {
        let pb = BigInt::from(p.clone());
        let ea = ord_p_int(alpha.denom(), &p);
        let eb = ord_p_int(beta.denom(), &p);
        let k = ((ea + 3) / 4).max((eb + 5) / 6);
        for _ in 0..k {
            v *= &pb;
        }
    }
    Ok(v)
}

/// Compute the global minimal model of a rational short Weierstrass curve.
pub fn minimal_model(curve: &RatWeierstrassCurve) -> Result<MinimalData> {
    let v = integral_scale(curve.alpha(), curve.beta())?;
    let v4 = Rat::from(&v * &v * &v * &v);
    let v6 = &v4 * Rat::from(&v * &v);
    let a_int = (curve.alpha() * v4).to_integer();
    let b_int = (curve.beta() * v6).to_integer();
    let start = IntModel {
        a1: BigInt::zero(),
        a2: BigInt::zero(),
        a3: BigInt::zero(),
        a4: a_int.clone(),
        a6: b_int.clone(),
    };
    let c4_0 = start.c4();
    let c6_0 = start.c6();
    let disc_0 = start.discriminant();
    debug_assert_eq!(
        BigInt::from(1728) * &disc_0,
        &c4_0 * &c4_0 * &c4_0 - &c6_0 * &c6_0
    );
    if disc_0.is_zero() {
        return Err(Error::SingularCurve);
    }

    let factored = factorize(disc_0.magnitude())?;
    let mut u = BigInt::one();
    for (p, e_disc) in &factored {
        if *e_disc < 12 {
            continue;
        }
        let pb = BigInt::from(p.clone());
        let kc4 = if c4_0.is_zero() {
            u32::MAX
        } else {
            ord_p_int(&c4_0, p) / 4
        };
        let kc6 = if c6_0.is_zero() {
            u32::MAX
        } else {
            ord_p_int(&c6_0, p) / 6
        };
        let kmax = (e_disc / 12).min(kc4).min(kc6);
        for k in (1..=kmax).rev() {
            let mut cand = u.clone();
            for _ in 0..k {
                cand *= &pb;
            }
            let u4 = &cand * &cand * &cand * &cand;
            let u6 = &u4 * &cand * &cand;
            let c4_c = &c4_0 / &u4;
            let c6_c = &c6_0 / &u6;
            if model_from_c4_c6(&c4_c, &c6_c).is_some() {
                u = cand;
                break;
            }
        }
    }

    let u4 = &u * &u * &u * &u;
    let u6 = &u4 * &u * &u;
    let c4_min = &c4_0 / &u4;
    let c6_min = &c6_0 / &u6;
    let model = model_from_c4_c6(&c4_min, &c6_min)
        .ok_or_else(|| Error::InconsistentData("no integral model for (c4, c6)".into()))?;

    // transformation [u, r, s, t] from [0,0,0,A,B] to the minimal model
    let ur = Rat::from(u.clone());
    let s = &ur * Rat::from(model.a1.clone()) / crate::rat(2);
    let r = (&ur * &ur * Rat::from(model.a2.clone()) + &s * &s) / crate::rat(3);
    let t = &ur * &ur * &ur * Rat::from(model.a3.clone()) / crate::rat(2);

    // the remaining two transformation identities must hold exactly
    let au = Rat::from(a_int.clone());
    let bu = Rat::from(b_int.clone());
    let lhs4 = &ur * &ur * &ur * &ur * Rat::from(model.a4.clone());
    let rhs4 = &au + crate::rat(3) * &r * &r - crate::rat(2) * &s * &t;
    let lhs6 = &ur * &ur * &ur * &ur * &ur * &ur * Rat::from(model.a6.clone());
    let rhs6 = &bu + &r * &au + &r * &r * &r - &t * &t;
    if lhs4 != rhs4 || lhs6 != rhs6 {
        return Err(Error::InconsistentData(
            "minimal-model transformation failed its consistency check".into(),
        ));
    }

    let disc_min = model.discriminant();
    let mut bad = Vec::new();
    for (p, e) in &factored {
        let k = ord_p_int(&u, p);
        let rem = *e as i64 - 12 * k as i64;
        debug_assert!(rem >= 0);
        if rem > 0 {
            bad.push((p.clone(), rem as u32));
        }
    }
    debug_assert_eq!(disc_min, {
        let u12 = &u6 * &u6;
        &disc_0 / u12
    });

    Ok(MinimalData {
        model,
        v,
        u,
        r,
        s,
        t,
        bad_primes: bad,
        disc: disc_min,
        c4: c4_min,
    })
}
