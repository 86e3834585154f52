//! Heights and the independence certificate.
//!
//! Submodules:
//! - [`interval`]: certified midpoint-radius arithmetic;
//! - [`factor`]: integer factorization for the bad-prime set;
//! - [`minimal`]: integral and globally minimal Weierstrass models;
//! - [`local`]: archimedean and non-archimedean local heights.

pub mod factor;
pub mod interval;
pub mod local;
pub mod minimal;

pub use interval::{BoundedReal, RealCtx};

use crate::error::{Error, Result};
use crate::{Rat, RatPoint, RatWeierstrassCurve};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

/// Outcome of the positive-regulator test.
///
/// `Independent` is asserted only when the Gram determinant's interval is
/// strictly positive; the certificate is numerical evidence for rank >= n,
/// not a proof of rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "independent")]
    Independent,
    #[serde(rename = "inconclusive")]
    Inconclusive,
    #[serde(rename = "dependent-suspected")]
    DependentSuspected,
}

/// Gram matrix, determinant and verdict for a set of points.
#[derive(Debug, Clone)]
pub struct IndependenceCertificate {
    pub gram: Vec<Vec<BoundedReal>>,
    pub determinant: BoundedReal,
    pub verdict: Verdict,
    /// An exact relation `sum c_i P_i = O` found by the small-coefficient
    /// search, if any (indices into the input list with their coefficients).
    pub relation: Option<Vec<(usize, i64)>>,
}

/// Naive (Weil) height of a point: `log max(|num x|, den x)`, and `0` at
/// infinity by convention.
pub fn naive_height(p: &RatPoint) -> BoundedReal {
    let mut ctx = RealCtx::new(interval::default_precision());
    naive_height_in(&mut ctx, p)
}

fn naive_height_in(ctx: &mut RealCtx, p: &RatPoint) -> BoundedReal {
    match p.x() {
        None => ctx.zero(),
        Some(x) => {
            let n = x.numer().abs();
            let d = x.denom().clone();
            let m = if n >= d { n } else { d };
            if m == num_bigint::BigInt::from(1) {
                ctx.zero()
            } else {
                ctx.ln_bigint(m.magnitude())
            }
        }
    }
}

/// Canonical (Neron-Tate) height `lim 4^{-n} h(x(2^n P))`, certified to lie
/// in an interval of width at most `2 * target_error`.
pub fn canonical_height(
    p: &RatPoint,
    curve: &RatWeierstrassCurve,
    target_error: f64,
) -> Result<BoundedReal> {
    let mut machine = local::HeightMachine::new(curve)?;
    machine.canonical_height(p, target_error)
}

/// Height pairing Gram matrix `<P_i, P_j> = (h(P_i+P_j) - h(P_i) - h(P_j))/2`
/// with propagated error bounds.
pub fn gram_matrix(
    points: &[RatPoint],
    curve: &RatWeierstrassCurve,
    target_error: f64,
) -> Result<Vec<Vec<BoundedReal>>> {
    let mut machine = local::HeightMachine::new(curve)?;
    gram_with(&mut machine, points, curve, target_error)
}

fn gram_with(
    machine: &mut local::HeightMachine,
    points: &[RatPoint],
    curve: &RatWeierstrassCurve,
    target_error: f64,
) -> Result<Vec<Vec<BoundedReal>>> {
    let n = points.len();
    let each = target_error / 2.0;
    let mut single = Vec::with_capacity(n);
    for p in points {
        single.push(machine.canonical_height(p, each)?);
    }
    let mut gram = vec![vec![machine.ctx().zero(); n]; n];
    for i in 0..n {
        gram[i][i] = single[i].clone();
        for j in (i + 1)..n {
            let sum = curve.add(&points[i], &points[j])?;
            let h_sum = machine.canonical_height(&sum, each)?;
            let ctx = machine.ctx();
            let t = ctx.sub(&h_sum, &single[i]);
            let t = ctx.sub(&t, &single[j]);
            let pairing = ctx.scale_exp2(&t, -1);
            gram[i][j] = pairing.clone();
            gram[j][i] = pairing;
        }
    }
    Ok(gram)
}

/// Interval determinant by cofactor expansion (n <= 6 in practice).
fn det_interval(ctx: &RealCtx, m: &[Vec<BoundedReal>]) -> BoundedReal {
    let n = m.len();
    if n == 0 {
        return ctx.from_i64(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = ctx.zero();
    for k in 0..n {
        let minor: Vec<Vec<BoundedReal>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let sub = det_interval(ctx, &minor);
        let term = ctx.mul(&m[0][k], &sub);
        acc = if k % 2 == 0 {
            ctx.add(&acc, &term)
        } else {
            ctx.sub(&acc, &term)
        };
    }
    acc
}

/// Exhaustive small-relation search: `sum c_i P_i = O` over subsets of at
/// most three points with coefficients in [-5, 5].
fn small_relation(
    points: &[RatPoint],
    curve: &RatWeierstrassCurve,
) -> Result<Option<Vec<(usize, i64)>>> {
    let n = points.len();
    // precompute multiples -5..=5 of each point
    let mut multiples: Vec<Vec<RatPoint>> = Vec::with_capacity(n);
    for p in points {
        let mut row = Vec::with_capacity(11);
        for c in -5..=5i64 {
            row.push(curve.scalar_mul(c, p)?);
        }
        multiples.push(row);
    }
    let at = |i: usize, c: i64| &multiples[i][(c + 5) as usize];

    for i in 0..n {
        for ci in 1..=5i64 {
            if at(i, ci).is_infinity() {
                return Ok(Some(vec![(i, ci)]));
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for ci in -5..=5i64 {
                for cj in -5..=5i64 {
                    if (ci, cj) == (0, 0) || ci < 0 {
                        continue;
                    }
                    if ci == 0 && cj <= 0 {
                        continue;
                    }
                    let s = curve.add(at(i, ci), at(j, cj))?;
                    if s.is_infinity() {
                        return Ok(Some(vec![(i, ci), (j, cj)]));
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for ci in 0..=5i64 {
                    for cj in -5..=5i64 {
                        for ck in -5..=5i64 {
                            if (ci, cj, ck) == (0, 0, 0) {
                                continue;
                            }
                            if ci == 0 && (cj < 0 || (cj == 0 && ck <= 0)) {
                                continue;
                            }
                            let s = curve.add(at(i, ci), at(j, cj))?;
                            let s = curve.add(&s, at(k, ck))?;
                            if s.is_infinity() {
                                return Ok(Some(vec![(i, ci), (j, cj), (k, ck)]));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Build the independence certificate for a set of points.
///
/// The verdict is `Independent` exactly when the Gram determinant's interval
/// is strictly positive; strictly negative determinants and exact small
/// relations yield `DependentSuspected`; anything else is `Inconclusive`.
pub fn independence_certificate(
    points: &[RatPoint],
    curve: &RatWeierstrassCurve,
    target_error: f64,
) -> Result<IndependenceCertificate> {
    for (index, p) in points.iter().enumerate() {
        if curve.is_torsion(p)? {
            return Err(Error::TorsionInput { index });
        }
    }
    let mut machine = local::HeightMachine::new(curve)?;
    let gram = gram_with(&mut machine, points, curve, target_error)?;
    let determinant = det_interval(machine.ctx(), &gram);

    let ctx = machine.ctx();
    let verdict;
    let mut relation = None;
    if ctx.is_strictly_positive(&determinant) {
        verdict = Verdict::Independent;
    } else {
        relation = small_relation(points, curve)?;
        if ctx.is_strictly_negative(&determinant) || relation.is_some() {
            verdict = Verdict::DependentSuspected;
        } else {
            verdict = Verdict::Inconclusive;
        }
    }
    Ok(IndependenceCertificate {
        gram,
        determinant,
        verdict,
        relation,
    })
}

/// JSON form of a certificate (all numerics as decimal strings: midpoints
/// with 40 significant digits, radii rounded up).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: String,
    pub gram: Vec<Vec<BoundedRealJson>>,
    pub determinant: BoundedRealJson,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<Vec<(usize, i64)>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundedRealJson {
    pub mid: String,
    pub rad: String,
}

/// Render a certificate as canonical JSON.
pub fn certificate_to_json(cert: &IndependenceCertificate) -> Result<String> {
    let mut ctx = RealCtx::new(interval::default_precision());
    let conv = |b: &BoundedReal, ctx: &mut RealCtx| -> BoundedRealJson {
        let (mid, rad) = ctx.to_decimal_strings(b);
        BoundedRealJson { mid, rad }
    };
    let doc = CertificateJson {
        kind: "independence_certificate".into(),
        gram: cert
            .gram
            .iter()
            .map(|row| row.iter().map(|b| conv(b, &mut ctx)).collect())
            .collect(),
        determinant: conv(&cert.determinant, &mut ctx),
        verdict: cert.verdict,
        relation: cert.relation.clone(),
    };
    serde_json::to_string(&doc).map_err(|e| Error::Malformed(e.to_string()))
}

/// Parse a certificate document (string fields are kept as emitted).
pub fn certificate_from_json(s: &str) -> Result<CertificateJson> {
    let doc: CertificateJson =
        serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
    if doc.kind != "independence_certificate" {
        return Err(Error::Malformed(format!("unexpected kind {:?}", doc.kind)));
    }
    Ok(doc)
}

/// Serialize a parsed certificate back to its canonical form.
pub fn certificate_json_to_string(doc: &CertificateJson) -> Result<String> {
    serde_json::to_string(doc).map_err(|e| Error::Malformed(e.to_string()))
}

/// The rationals whose logs bound the archimedean development; exposed for
/// the difference bound used by tests as an independent oracle.
pub fn naive_minus_canonical_bound(curve: &RatWeierstrassCurve) -> Result<f64> {
    // Silverman-style: |h(x)/1 - h_hat| <= h(j)/4 + h(Delta)/6 + 4 on an
    // integral model (doubled normalization, generous constant). Used only
    // as a sanity envelope by tests, never in the certified path.
    let mut ctx = RealCtx::new(128);
    let disc = curve.discriminant();
    let c4 = {
        // c4 = -48 alpha for y^2 = x^3 + alpha x + beta
        crate::rat(-48) * curve.alpha()
    };
    let j_num = &c4 * &c4 * &c4;
    let j = j_num / disc.clone();
    let h = |r: &Rat, ctx: &mut RealCtx| -> f64 {
        let n = r.numer().abs();
        let d = r.denom().clone();
        let m = if n >= d { n } else { d };
        if m <= num_bigint::BigInt::from(1) {
            0.0
        } else {
            let v = ctx.ln_bigint(m.magnitude());
            ctx.mid_f64(&v)
        }
    };
    let hj = h(&j, &mut ctx);
    let hd = h(&disc, &mut ctx);
    Ok(hj / 4.0 + hd / 6.0 + 4.0)
}
