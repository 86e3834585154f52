//! Local height computation and assembly.
//!
//! The canonical height is assembled place by place on the global minimal
//! model:
//!
//! - archimedean part: Tate's telescoping series. With `t = 1/x` (or
//!   `1/(x+1)` when `x` is small) and the duplication data
//!   `w(t) = 4t + b2 t^2 + 2 b4 t^3 + b6 t^4`,
//!   `z(t) = 1 - b4 t^2 - 2 b6 t^3 - b8 t^4`, one has `1/x(2Q) = w/z`, and
//!   `lambda(P) = (1/2) ln|x(P)| + (1/2) sum 4^{-(n+1)} ln|z_n|` satisfies
//!   the duplication relation exactly. Switching between the `1/x` and
//!   `1/(x+1)` charts (the shifted curve's invariants replace `b_i`) keeps
//!   `|t| <= 2` and the accumulated logs uniformly bounded, giving a
//!   geometric, fully certified tail.
//! - non-archimedean parts: at good primes the local height is
//!   `max(0, -ord_p x)/2 * ln p`, summed as one `ln` of the prime-to-bad
//!   part of the denominator; at bad primes the standard case analysis on
//!   `ord_p` of `psi_2 = 2y + a1 x + a3`, of `3x^2 + 2 a2 x + a4 - a1 y`,
//!   and of `psi_3` distinguishes nonsingular reduction, multiplicative
//!   reduction (parabola correction `-i(N-i)/(2N) ln p`) and the two
//!   additive shapes.
//!
//! Every formula here is pinned by the test battery: exact quadraticity
//! `h(mP) = m^2 h(P)`, the parallelogram law, model invariance, and
//! doubling-limit brackets on small curves, plus two published regulator
//! anchors.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::factor::{ord_p_int, ord_p_rat};
use super::interval::{default_precision, BoundedReal, RealCtx};
use super::minimal::{minimal_model, IntModel, MinimalData};
use crate::error::{Error, Result};
use crate::{rat, Rat, RatPoint, RatWeierstrassCurve};

/// Reusable per-curve machinery: minimal model, factored bad primes, branch
/// polynomials and tail constants for the archimedean series.
pub struct HeightMachine {
    ctx: RealCtx,
    data: MinimalData,
    branches: [Branch; 2],
    /// Uniform bound on |ln| of an accumulated series term.
    tail_log_bound: f64,
}

/// Duplication polynomials of one chart, with exact coefficients.
struct Branch {
    /// w(t) coefficients, ascending: [0, 4, b2, 2 b4, b6]
    w: Vec<Rat>,
    /// z(t) coefficients, ascending: [1, 0, -b4, -2 b6, -b8]
    z: Vec<Rat>,
}

impl Branch {
    fn from_b(b2: &BigInt, b4: &BigInt, b6: &BigInt, b8: &BigInt) -> Branch {
        let r = |x: &BigInt| Rat::from(x.clone());
        Branch {
            w: vec![
                Rat::zero(),
                rat(4),
                r(b2),
                rat(2) * r(b4),
                r(b6),
            ],
            z: vec![
                Rat::one(),
                Rat::zero(),
                -r(b4),
                rat(-2) * r(b6),
                -r(b8),
            ],
        }
    }
}

/// Shift invariants for x -> x + r (the chart x~ = x + 1 uses r = -1 on the
/// model side, i.e. the substituted curve y^2 + ... in x~ - 1).
fn shifted_b(model: &IntModel) -> (BigInt, BigInt, BigInt, BigInt) {
    let (b2, b4, b6, b8) = (model.b2(), model.b4(), model.b6(), model.b8());
    let r = BigInt::from(-1);
    let b2s = &b2 + 12 * &r;
    let b4s = &b4 + &r * &b2 + 6 * &r * &r;
    let b6s = &b6 + 2 * &r * &b4 + &r * &r * &b2 + 4 * &r * &r * &r;
    let b8s = &b8 + 3 * &r * &b6 + 3 * &r * &r * &b4 + &r * &r * &r * &b2 + 3 * &r * &r * &r * &r;
    (b2s, b4s, b6s, b8s)
}

/// Exact interval bound of a polynomial over [lo, hi] by rational interval
/// Horner evaluation.
fn poly_range(coeffs: &[Rat], lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut rlo = Rat::zero();
    let mut rhi = Rat::zero();
    for c in coeffs.iter().rev() {
        // [rlo, rhi] * [lo, hi]
        let candidates = [&rlo * lo, &rlo * hi, &rhi * lo, &rhi * hi];
        let mut nlo = candidates[0].clone();
        let mut nhi = candidates[0].clone();
        for v in &candidates[1..] {
            if *v < nlo {
                nlo = v.clone();
            }
            if *v > nhi {
                nhi = v.clone();
            }
        }
        rlo = nlo + c;
        rhi = nhi + c;
    }
    (rlo, rhi)
}

/// Rigorous positive lower bound for max(|z(t)|, |w(t)|) on [-5/2, 5/2].
fn gap_bound(branch: &Branch) -> Result<Rat> {
    fn lower_abs(range: &(Rat, Rat)) -> Rat {
        if range.0.is_positive() {
            range.0.clone()
        } else if range.1.is_negative() {
            -range.1.clone()
        } else {
            Rat::zero()
        }
    }
    let mut best: Option<Rat> = None;
    let mut stack = vec![(crate::ratio(-5, 2), crate::ratio(5, 2), 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let zr = poly_range(&branch.z, &lo, &hi);
        let wr = poly_range(&branch.w, &lo, &hi);
        let bound = lower_abs(&zr).max(lower_abs(&wr));
        if bound.is_positive() {
            best = Some(match best {
                None => bound,
                Some(b) => b.min(bound),
            });
            continue;
        }
        if depth >= 48 {
            return Err(Error::InconsistentData(
                "no positive gap for the duplication polynomials".into(),
            ));
        }
        let mid = (&lo + &hi) / rat(2);
        stack.push((lo, mid.clone(), depth + 1));
        stack.push((mid, hi, depth + 1));
    }
    best.ok_or_else(|| Error::InconsistentData("empty gap subdivision".into()))
}

/// Crude upper bound for |z| + |w| over |t| <= 5/2.
fn mag_bound(branch: &Branch) -> f64 {
    let mut acc = 0.0f64;
    for (i, c) in branch.z.iter().chain(branch.w.iter()).enumerate() {
        let deg = (i % 5) as i32;
        let cf = c.numer().to_string().parse::<f64>().unwrap_or(f64::MAX)
            / c.denom().to_string().parse::<f64>().unwrap_or(1.0);
        acc += cf.abs() * 2.5f64.powi(deg);
    }
    acc.max(4.0)
}

impl HeightMachine {
    pub fn new(curve: &RatWeierstrassCurve) -> Result<Self> {
        let data = minimal_model(curve)?;
        let m = &data.model;
        let main = Branch::from_b(&m.b2(), &m.b4(), &m.b6(), &m.b8());
        let (b2s, b4s, b6s, b8s) = shifted_b(m);
        let shifted = Branch::from_b(&b2s, &b4s, &b6s, &b8s);

        let mut tail = 0.0f64;
        for br in [&main, &shifted] {
            let g = gap_bound(br)?;
            let g_f = g.numer().to_string().parse::<f64>().unwrap_or(1.0)
                / g.denom().to_string().parse::<f64>().unwrap_or(1.0);
            let lo = (g_f / 2.0).abs().ln().abs();
            let hi = mag_bound(br).ln().abs();
            tail = tail.max(lo).max(hi);
        }
        // slack for f64 conversions
        let tail_log_bound = tail * 1.5 + 1.0;

        Ok(HeightMachine {
            ctx: RealCtx::new(default_precision()),
            data,
            branches: [main, shifted],
            tail_log_bound,
        })
    }

    pub fn ctx(&mut self) -> &mut RealCtx {
        &mut self.ctx
    }

    /// Canonical height in the `lim 4^{-n} h(x(2^n P))` normalization, with
    /// certified radius at most `target_error`.
    pub fn canonical_height(&mut self, p: &RatPoint, target_error: f64) -> Result<BoundedReal> {
        if target_error <= 0.0 {
            return Err(Error::Malformed("target error must be positive".into()));
        }
        let pm = self.data.to_minimal(p);
        let (x, y) = match &pm {
            RatPoint::Infinity => return Ok(self.ctx.zero()),
            RatPoint::Affine(x, y) => (x.clone(), y.clone()),
        };
        debug_assert!(self.data.model.contains(&x, &y));

        let mut prec = self.ctx.prec();
        for _attempt in 0..6 {
            self.ctx = RealCtx::new(prec);
            // half-normalized target with assembly headroom
            let half_target = target_error / 4.0;
            match self.try_height(&x, &y, half_target) {
                Ok(total_half) => {
                    let doubled = self.ctx.scale_exp2(&total_half, 1);
                    if self.ctx.rad_at_most(&doubled, target_error) {
                        return Ok(doubled);
                    }
                }
                Err(Error::Malformed(_)) => {}
                Err(e) => return Err(e),
            }
            prec *= 2;
        }
        Err(Error::SizeLimit {
            digits: prec,
            guard: 0,
        })
    }

    fn try_height(&mut self, x: &Rat, y: &Rat, half_target: f64) -> Result<BoundedReal> {
        let arch = self.archimedean(x, half_target / 2.0)?;
        let nonarch = self.non_archimedean(x, y)?;
        Ok(self.ctx.add(&arch, &nonarch))
    }

    /// Archimedean local height (half normalization) of the point with
    /// minimal-model abscissa `x`.
    fn archimedean(&mut self, x: &Rat, tail_target: f64) -> Result<BoundedReal> {
        // terms needed: 4^{-N} * L / 3 <= tail_target / 2
        let l = self.tail_log_bound;
        let mut n_terms = 10usize;
        while 0.25f64.powi(n_terms as i32) * l / 3.0 > tail_target / 2.0 && n_terms < 64 {
            n_terms += 1;
        }

        // chart choice: t = 1/x or 1/(x+1), whichever is smaller
        let x1 = x + Rat::one();
        let mut beta = x.abs() >= x1.abs();
        let t0 = if beta {
            x.recip()
        } else {
            if x1.is_zero() {
                // x = -1: |x| = 1 >= |x+1| = 0 so beta is true; unreachable
                return Err(Error::Malformed("chart selection failed".into()));
            }
            x1.recip()
        };
        let lead = if beta { x.clone() } else { x1.clone() };

        let coeffs = |ctx: &mut RealCtx, cs: &[Rat]| -> Vec<BoundedReal> {
            cs.iter().map(|c| ctx.from_rat(c)).collect()
        };
        let eval = |ctx: &mut RealCtx, cs: &[BoundedReal], t: &BoundedReal| -> BoundedReal {
            let mut acc = ctx.zero();
            for c in cs.iter().rev() {
                acc = ctx.mul(&acc, t);
                acc = ctx.add(&acc, c);
            }
            acc
        };

        let w_main = coeffs(&mut self.ctx, &self.branches[0].w);
        let z_main = coeffs(&mut self.ctx, &self.branches[0].z);
        let w_shift = coeffs(&mut self.ctx, &self.branches[1].w);
        let z_shift = coeffs(&mut self.ctx, &self.branches[1].z);

        let mut t = self.ctx.from_rat(&t0);
        let mut mu = self.ctx.zero();
        for n in 0..n_terms {
            let (wc, zc) = if beta {
                (&w_main, &z_main)
            } else {
                (&w_shift, &z_shift)
            };
            let w = eval(&mut self.ctx, wc, &t);
            let z = eval(&mut self.ctx, zc, &t);
            let wa = self.ctx.abs(&w);
            let za = self.ctx.abs(&z);
            let two_za = self.ctx.scale_exp2(&za, 1);
            // midpoint comparison is only a chart heuristic; correctness
            // needs just |t| <= 5/2 afterwards, which either branch keeps
            let take_z = self.ctx.mid_f64(&wa) <= self.ctx.mid_f64(&two_za);
            let acc = if take_z {
                z.clone()
            } else if beta {
                self.ctx.add(&z, &w)
            } else {
                self.ctx.sub(&z, &w)
            };
            let acc_abs = self.ctx.abs(&acc);
            let term = match self.ctx.ln(&acc_abs) {
                Some(v) => v,
                None => {
                    return Err(Error::Malformed(
                        "series term interval hit zero; raise precision".into(),
                    ))
                }
            };
            let scaled = self.ctx.scale_exp2(&term, -2 * (n as i64 + 1));
            mu = self.ctx.add(&mu, &scaled);
            if !self.ctx.contains_zero(&acc) {
                t = self.ctx.div(&w, &acc);
            } else {
                return Err(Error::Malformed(
                    "series denominator interval hit zero; raise precision".into(),
                ));
            }
            if !take_z {
                beta = !beta;
            }
        }

        // geometric tail
        let tail = self.tail_log_bound * 0.25f64.powi(n_terms as i32) / 3.0;
        let tail_iv = BoundedReal {
            mid: astro_float::BigFloat::from_f64(0.0, self.ctx.prec()),
            rad: astro_float::BigFloat::from_f64(tail * 1.0000001, self.ctx.prec()),
        };
        mu = self.ctx.add(&mu, &tail_iv);

        let lead_ln = if lead.is_one() || lead == rat(-1) {
            self.ctx.zero()
        } else {
            self.ctx.ln_rat_abs(&lead)
        };
        let sum = self.ctx.add(&lead_ln, &mu);
        Ok(self.ctx.scale_exp2(&sum, -1))
    }

    /// Sum of the non-archimedean local heights (half normalization).
    fn non_archimedean(&mut self, x: &Rat, y: &Rat) -> Result<BoundedReal> {
        let m = self.data.model.clone();
        let mut total = self.ctx.zero();

        // good-prime part: (1/2) ln of the bad-prime-free denominator part
        let mut den_good = x.denom().magnitude().clone();
        for (p, _) in &self.data.bad_primes {
            while (&den_good % p).is_zero() {
                den_good /= p;
            }
        }
        if !den_good.is_one() {
            let v = self.ctx.ln_bigint(&den_good);
            let v = self.ctx.scale_exp2(&v, -1);
            total = self.ctx.add(&total, &v);
        }

        for (p, n_disc) in self.data.bad_primes.clone() {
            let rho = lambda_p_multiple(&m, &self.data.c4, x, y, &p, n_disc);
            if rho.is_zero() {
                continue;
            }
            let lnp = self.ctx.ln_bigint(&p);
            let coef = self.ctx.from_rat(&rho);
            let term = self.ctx.mul(&coef, &lnp);
            total = self.ctx.add(&total, &term);
        }
        Ok(total)
    }
}

/// The exact rational `rho` with local height `rho * ln p` at a bad prime
/// (half normalization).
fn lambda_p_multiple(
    model: &IntModel,
    c4: &BigInt,
    x: &Rat,
    y: &Rat,
    p: &BigUint,
    n_disc: u32,
) -> Rat {
    let r = |b: &BigInt| Rat::from(b.clone());
    let vx = ord_p_rat(x, p);

    // psi2 and the x-partial; either having non-positive valuation means the
    // reduction of the point is nonsingular
    let psi2 = rat(2) * y + r(&model.a1) * x + r(&model.a3);
    let dx = rat(3) * x * x + rat(2) * r(&model.a2) * x + r(&model.a4) - r(&model.a1) * y;
    let v_psi2 = if psi2.is_zero() { i64::MAX } else { ord_p_rat(&psi2, p) };
    let v_dx = if dx.is_zero() { i64::MAX } else { ord_p_rat(&dx, p) };

    if v_dx <= 0 || v_psi2 <= 0 {
        let num = (-vx).max(0);
        return Rat::new(BigInt::from(num), BigInt::from(2));
    }

    let n = i64::from(n_disc);
    if ord_p_int(c4, p) == 0 {
        // multiplicative: component index i = min(v(psi2), N/2)
        let i2 = (2 * v_psi2).min(n); // 2i
        // rho = - i (N - i) / (2N) = - (2i)(2N - 2i) / (8N)
        let num = -BigInt::from(i2) * BigInt::from(2 * n - i2);
        return Rat::new(num, BigInt::from(8 * n));
    }

    // additive reduction: compare psi2 against psi3
    let b2 = r(&model.b2());
    let b4 = r(&model.b4());
    let b6 = r(&model.b6());
    let b8 = r(&model.b8());
    let x2 = x * x;
    let psi3 = rat(3) * &x2 * &x2 + &b2 * &x2 * x + rat(3) * &b4 * &x2 + rat(3) * &b6 * x + &b8;
    let v_psi3 = if psi3.is_zero() { i64::MAX } else { ord_p_rat(&psi3, p) };

    if v_psi3 >= 3 * v_psi2 {
        Rat::new(BigInt::from(-v_psi2), BigInt::from(3))
    } else {
        Rat::new(BigInt::from(-v_psi3), BigInt::from(8))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::WeierstrassCurve;
    use crate::heights::interval::RealCtx;
    use crate::rat;

    fn short(alpha: i64, beta: i64) -> RatWeierstrassCurve {
        WeierstrassCurve::new(rat(alpha), rat(beta)).unwrap()
    }

    fn mid(ctx: &RealCtx, b: &BoundedReal) -> f64 {
        ctx.mid_f64(b)
    }

    #[test]
    fn anchor_curve_37a() {
        // (0, 4) on y^2 = x^3 - 16x + 16 generates 37a; in the
        // lim 4^{-n} h(x(2^n P)) normalization its height is
        // 0.0511114082399688...
        let c = short(-16, 16);
        let p = RatPoint::affine(rat(0), rat(4));
        let mut machine = HeightMachine::new(&c).unwrap();
        let h = machine.canonical_height(&p, 1e-12).unwrap();
        let got = mid(machine.ctx(), &h);
        let expect = 0.051111408239968840;
        assert!(
            (got - expect).abs() < 1e-12,
            "got {got}, expected {expect}"
        );
    }

    #[test]
    fn quadraticity_on_37a() {
        let c = short(-16, 16);
        let p = RatPoint::affine(rat(0), rat(4));
        let mut machine = HeightMachine::new(&c).unwrap();
        let h1 = machine.canonical_height(&p, 1e-10).unwrap();
        for m in 2..=4i64 {
            let pm = c.scalar_mul(m, &p).unwrap();
            let hm = machine.canonical_height(&pm, 1e-10).unwrap();
            let scaled = {
                let ctx = machine.ctx();
                let m2 = ctx.from_i64(m * m);
                ctx.mul(&m2, &h1)
            };
            let ctx = machine.ctx();
            assert!(
                ctx.overlaps(&hm, &scaled),
                "m={m}: {} vs {}",
                ctx.mid_f64(&hm),
                ctx.mid_f64(&scaled)
            );
        }
    }

    #[test]
    fn torsion_heights_vanish() {
        // (0,0) on y^2 = x^3 - x is 2-torsion
        let c = short(-1, 0);
        let p = RatPoint::affine(rat(0), rat(0));
        let mut machine = HeightMachine::new(&c).unwrap();
        let h = machine.canonical_height(&p, 1e-10).unwrap();
        let ctx = machine.ctx();
        assert!(ctx.contains_zero(&h) || ctx.mid_f64(&h).abs() < 1e-10);
    }
}
