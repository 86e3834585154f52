//! Midpoint-radius interval arithmetic on arbitrary-precision binary floats.
//!
//! Every operation rounds the midpoint once and inflates the radius with the
//! operands' radii plus a one-ulp slack for that rounding, so the interval
//! always contains the exact result. Transcendental evaluations (only `ln`
//! is needed) bracket the value with directed rounding on the interval's
//! endpoints.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::Rat;

/// Default mantissa precision in bits; overridable through the
/// `SQSEQ_PREC_BITS` environment variable (values below 128 are clamped up).
pub const DEFAULT_PREC_BITS: usize = 192;

/// Read the default precision from the environment.
pub fn default_precision() -> usize {
    std::env::var("SQSEQ_PREC_BITS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|p| p.max(128))
        .unwrap_or(DEFAULT_PREC_BITS)
}

/// A real number known to lie within `mid +- rad`.
#[derive(Debug, Clone)]
pub struct BoundedReal {
    pub(crate) mid: BigFloat,
    pub(crate) rad: BigFloat,
}

/// Shared precision and constants cache for interval operations.
pub struct RealCtx {
    prec: usize,
    cc: Consts,
}

impl RealCtx {
    pub fn new(prec: usize) -> Self {
        RealCtx {
            prec: prec.max(128),
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    fn ulp_of(&self, x: &BigFloat) -> BigFloat {
        if x.is_zero() {
            return BigFloat::from_i8(0, self.prec);
        }
        let e = x.exponent().unwrap_or(0);
        // 2^(e - prec + 2): at least two ulps of x, covering one rounding
        let mut one = BigFloat::from_i8(1, self.prec);
        one.set_exponent(e - self.prec as astro_float::Exponent + 2);
        one
    }

    pub fn zero(&self) -> BoundedReal {
        BoundedReal {
            mid: BigFloat::from_i8(0, self.prec),
            rad: BigFloat::from_i8(0, self.prec),
        }
    }

    pub fn from_i64(&self, n: i64) -> BoundedReal {
        BoundedReal {
            mid: BigFloat::from_i64(n, self.prec),
            rad: BigFloat::from_i8(0, self.prec),
        }
    }

    /// Embed a big integer; exact when it fits in the mantissa, otherwise
    /// correctly rounded with a one-ulp radius.
    pub fn from_bigint(&mut self, n: &BigInt) -> BoundedReal {
        let hex = n.to_str_radix(16);
        let mid = BigFloat::parse(&hex, Radix::Hex, self.prec, RoundingMode::ToEven, &mut self.cc);
        let rad = if n.magnitude().bits() as usize <= self.prec {
            BigFloat::from_i8(0, self.prec)
        } else {
            self.ulp_of(&mid)
        };
        BoundedReal { mid, rad }
    }

    /// Embed an exact rational.
    pub fn from_rat(&mut self, r: &Rat) -> BoundedReal {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        self.div(&num, &den)
    }

    pub fn neg(&self, a: &BoundedReal) -> BoundedReal {
        let mut mid = a.mid.clone();
        mid.inv_sign();
        BoundedReal {
            mid,
            rad: a.rad.clone(),
        }
    }

    pub fn add(&self, a: &BoundedReal, b: &BoundedReal) -> BoundedReal {
        let mid = a.mid.add(&b.mid, self.prec, RoundingMode::ToEven);
        let rad = a
            .rad
            .add(&b.rad, self.prec, RoundingMode::Up)
            .add(&self.ulp_of(&mid), self.prec, RoundingMode::Up);
        BoundedReal { mid, rad }
    }

    pub fn sub(&self, a: &BoundedReal, b: &BoundedReal) -> BoundedReal {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &BoundedReal, b: &BoundedReal) -> BoundedReal {
        let mid = a.mid.mul(&b.mid, self.prec, RoundingMode::ToEven);
        let am = a.mid.abs();
        let bm = b.mid.abs();
        let t1 = am.mul(&b.rad, self.prec, RoundingMode::Up);
        let t2 = bm.mul(&a.rad, self.prec, RoundingMode::Up);
        let t3 = a.rad.mul(&b.rad, self.prec, RoundingMode::Up);
        let rad = t1
            .add(&t2, self.prec, RoundingMode::Up)
            .add(&t3, self.prec, RoundingMode::Up)
            .add(&self.ulp_of(&mid), self.prec, RoundingMode::Up);
        BoundedReal { mid, rad }
    }

    /// Division; the divisor interval must be bounded away from zero.
    pub fn div(&self, a: &BoundedReal, b: &BoundedReal) -> BoundedReal {
        let (blo, bhi) = self.bounds(b);
        assert!(
            blo.is_positive() || bhi.is_negative(),
            "interval division by an interval containing zero"
        );
        let mid = a.mid.div(&b.mid, self.prec, RoundingMode::ToEven);
        // |a/b - mid(a)/mid(b)| <= (|mid(a)| rad_b + |mid(b)| rad_a) / (|b|min^2) roughly;
        // use the conservative form rad = (rad_a + |mid| rad_b) / |b|_min ... computed
        // via endpoints instead: evaluate the four endpoint quotients.
        let (alo, ahi) = self.bounds(a);
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for x in [&alo, &ahi] {
            for y in [&blo, &bhi] {
                let qd = x.div(y, self.prec, RoundingMode::Down);
                let qu = x.div(y, self.prec, RoundingMode::Up);
                lo = Some(match lo {
                    None => qd.clone(),
                    Some(cur) => {
                        if qd.cmp(&cur).unwrap_or(0) < 0 {
                            qd.clone()
                        } else {
                            cur
                        }
                    }
                });
                hi = Some(match hi {
                    None => qu.clone(),
                    Some(cur) => {
                        if qu.cmp(&cur).unwrap_or(0) > 0 {
                            qu.clone()
                        } else {
                            cur
                        }
                    }
                });
            }
        }
        self.from_bounds(&lo.unwrap_or_else(|| mid.clone()), &hi.unwrap_or(mid))
    }

    /// Exact scaling by 2^k.
    pub fn scale_exp2(&self, a: &BoundedReal, k: i64) -> BoundedReal {
        let shift = |x: &BigFloat| {
            if x.is_zero() {
                return x.clone();
            }
            let mut y = x.clone();
            y.set_exponent(y.exponent().unwrap() + k as astro_float::Exponent);
            y
        };
        BoundedReal {
            mid: shift(&a.mid),
            rad: shift(&a.rad),
        }
    }

    /// Natural log of a positive big integer.
    pub fn ln_bigint(&mut self, n: &BigUint) -> BoundedReal {
        assert!(!n.is_zero(), "ln of zero");
        let hex = n.to_str_radix(16);
        let lo_in = BigFloat::parse(&hex, Radix::Hex, self.prec, RoundingMode::Down, &mut self.cc);
        let hi_in = BigFloat::parse(&hex, Radix::Hex, self.prec, RoundingMode::Up, &mut self.cc);
        let lo = lo_in.ln(self.prec, RoundingMode::Down, &mut self.cc);
        let hi = hi_in.ln(self.prec, RoundingMode::Up, &mut self.cc);
        self.from_bounds(&lo, &hi)
    }

    /// Natural log of |r| for a nonzero rational.
    pub fn ln_rat_abs(&mut self, r: &Rat) -> BoundedReal {
        let n = self.ln_bigint(r.numer().abs().magnitude());
        let d = self.ln_bigint(r.denom().magnitude());
        self.sub(&n, &d)
    }

    /// Natural log of an interval known to be strictly positive.
    pub fn ln(&mut self, a: &BoundedReal) -> Option<BoundedReal> {
        let (lo, hi) = self.bounds(a);
        if !lo.is_positive() {
            return None;
        }
        let l = lo.ln(self.prec, RoundingMode::Down, &mut self.cc);
        let h = hi.ln(self.prec, RoundingMode::Up, &mut self.cc);
        Some(self.from_bounds(&l, &h))
    }

    /// Absolute value of the interval.
    pub fn abs(&self, a: &BoundedReal) -> BoundedReal {
        let (lo, hi) = self.bounds(a);
        if lo.is_positive() {
            return a.clone();
        }
        if hi.is_negative() {
            return self.neg(a);
        }
        // contains zero: [0, max(|lo|, hi)]
        let m = if lo.abs().cmp(&hi).unwrap_or(0) > 0 {
            lo.abs()
        } else {
            hi
        };
        let zero = BigFloat::from_i8(0, self.prec);
        self.from_bounds(&zero, &m)
    }

    /// Lower and upper endpoints (outward rounded).
    pub fn bounds(&self, a: &BoundedReal) -> (BigFloat, BigFloat) {
        let lo = a.mid.sub(&a.rad, self.prec, RoundingMode::Down);
        let hi = a.mid.add(&a.rad, self.prec, RoundingMode::Up);
        (lo, hi)
    }

    fn from_bounds(&self, lo: &BigFloat, hi: &BigFloat) -> BoundedReal {
        let sum = lo.add(hi, self.prec, RoundingMode::ToEven);
        let mut mid = sum;
        if !mid.is_zero() {
            mid.set_exponent(mid.exponent().unwrap() - 1);
        }
        let d1 = hi.sub(&mid, self.prec, RoundingMode::Up);
        let d2 = mid.sub(lo, self.prec, RoundingMode::Up);
        let rad = if d1.cmp(&d2).unwrap_or(0) >= 0 { d1 } else { d2 }
            .add(&self.ulp_of(&mid), self.prec, RoundingMode::Up);
        BoundedReal { mid, rad }
    }

    pub fn is_strictly_positive(&self, a: &BoundedReal) -> bool {
        self.bounds(a).0.is_positive()
    }

    pub fn is_strictly_negative(&self, a: &BoundedReal) -> bool {
        self.bounds(a).1.is_negative()
    }

    pub fn contains_zero(&self, a: &BoundedReal) -> bool {
        !self.is_strictly_positive(a) && !self.is_strictly_negative(a)
    }

    /// Do two intervals intersect?
    pub fn overlaps(&self, a: &BoundedReal, b: &BoundedReal) -> bool {
        let (alo, ahi) = self.bounds(a);
        let (blo, bhi) = self.bounds(b);
        !(ahi.cmp(&blo).unwrap_or(0) < 0 || bhi.cmp(&alo).unwrap_or(0) < 0)
    }

    /// `rad <= bound` for a small f64 bound.
    pub fn rad_at_most(&self, a: &BoundedReal, bound: f64) -> bool {
        let b = BigFloat::from_f64(bound, self.prec);
        a.rad.cmp(&b).unwrap_or(1) <= 0
    }

    /// Midpoint as f64 (for display decisions only, never for bounds).
    pub fn mid_f64(&self, a: &BoundedReal) -> f64 {
        let (m, _) = a.mid.to_f64_checked();
        m
    }

    /// Decimal rendering of the midpoint with 40 significant digits, and of
    /// the radius with 3 (rounded up).
    pub fn to_decimal_strings(&mut self, a: &BoundedReal) -> (String, String) {
        let mid = format_decimal(&a.mid, 40, RoundingMode::ToEven, self.prec, &mut self.cc);
        let rad = format_decimal(&a.rad, 3, RoundingMode::Up, self.prec, &mut self.cc);
        (mid, rad)
    }
}

trait F64Checked {
    fn to_f64_checked(&self) -> (f64, bool);
}

impl F64Checked for BigFloat {
    fn to_f64_checked(&self) -> (f64, bool) {
        // format through a string at low precision to avoid sign/NaN traps
        if self.is_zero() {
            return (0.0, true);
        }
        let s = format!("{self}");
        match s.parse::<f64>() {
            Ok(v) => (v, true),
            Err(_) => (f64::NAN, false),
        }
    }
}

/// Render a float with a fixed number of significant decimal digits.
fn format_decimal(
    x: &BigFloat,
    digits: usize,
    _rm: RoundingMode,
    prec: usize,
    cc: &mut Consts,
) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let full = x
        .format(Radix::Dec, RoundingMode::ToEven, cc)
        .unwrap_or_else(|_| "0".into());
    round_decimal_string(&full, digits, prec)
}

/// Round a decimal string of the form `[-]d.ddd...e[+-]x` to `digits`
/// significant digits (half-up on the digit string).
fn round_decimal_string(s: &str, digits: usize, _prec: usize) -> String {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (mantissa, exp) = match body.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let digits_str: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = mantissa.find('.').map(|i| i as i64).unwrap_or(mantissa.len() as i64);
    // exponent of the first digit
    let mut first_exp = exp + point - 1;
    let ds: Vec<u8> = digits_str.bytes().map(|b| b - b'0').collect();
    // strip leading zeros (adjusting exponent)
    let mut start = 0;
    while start + 1 < ds.len() && ds[start] == 0 {
        start += 1;
        first_exp -= 1;
    }
    let ds = &ds[start..];
    let mut kept: Vec<u8> = ds.iter().take(digits).copied().collect();
    while kept.len() < digits {
        kept.push(0);
    }
    // half-up rounding by the next digit
    if ds.len() > digits && ds[digits] >= 5 {
        let mut i = kept.len();
        loop {
            if i == 0 {
                kept.insert(0, 1);
                kept.pop();
                first_exp += 1;
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    // trim trailing zeros but keep at least one digit
    while kept.len() > 1 && *kept.last().unwrap() == 0 {
        kept.pop();
    }
    let sign = if neg { "-" } else { "" };
    let mut out = String::new();
    out.push_str(sign);
    out.push((b'0' + kept[0]) as char);
    if kept.len() > 1 {
        out.push('.');
        for d in &kept[1..] {
            out.push((b'0' + d) as char);
        }
    }
    if first_exp != 0 {
        out.push('e');
        out.push_str(&first_exp.to_string());
    }
    out
}
