//! Integer factorization sized for curve discriminants: trial division,
//! Brent's variant of Pollard rho, and Miller-Rabin primality (deterministic
//! below 3.317e24 via the standard twelve-base witness set).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 100_000;
const RHO_ITERATION_CAP: u64 = 80_000_000;

/// Bound below which the twelve-base Miller-Rabin test is deterministic.
fn deterministic_bound() -> BigUint {
    "3317044064679887385961981".parse().unwrap()
}

/// Miller-Rabin with the fixed witness set. Deterministic below the bound;
/// beyond it the same witnesses make a composite verdict certain and a prime
/// verdict overwhelmingly supported but unproven.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn brent_rho(n: &BigUint) -> Result<BigUint> {
    // n is odd, composite, and has no factor below the trial limit
    for c in 1u64..=20 {
        let cc = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &cc) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m: u64 = 128;
        let mut iterations: u64 = 0;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k: u64 = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (&q * &diff) % n;
                }
                g = q.gcd(n);
                k += m;
                iterations += m;
                if iterations > RHO_ITERATION_CAP {
                    return Err(Error::Malformed(
                        "factorization stalled (rho iteration cap)".into(),
                    ));
                }
            }
            r *= 2;
        }
        if g == *n {
            // backtrack
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n && !g.is_one() {
            return Ok(g);
        }
    }
    Err(Error::Malformed("factorization stalled (no rho split)".into()))
}

/// Full factorization of `n >= 1` as sorted `(prime, exponent)` pairs.
pub fn factorize(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut push = |p: BigUint, out: &mut Vec<(BigUint, u32)>| {
        for entry in out.iter_mut() {
            if entry.0 == p {
                entry.1 += 1;
                return;
            }
        }
        out.push((p, 1));
    };

    if n.is_zero() {
        return Err(Error::Domain);
    }
    let mut rest = n.clone();
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT {
        let db = BigUint::from(d);
        if &db * &db > rest {
            break;
        }
        while (&rest % &db).is_zero() {
            rest /= &db;
            push(db.clone(), &mut out);
        }
        d = if d == 2 { 3 } else { d + 2 };
    }

    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            push(m, &mut out);
            continue;
        }
        let g = brent_rho(&m)?;
        let other = &m / &g;
        stack.push(g);
        stack.push(other);
    }
    out.sort();
    Ok(out)
}

/// p-adic valuation of a nonzero integer.
pub fn ord_p_int(n: &num_bigint::BigInt, p: &BigUint) -> u32 {
    use num_traits::Signed;
    let mut m = n.abs().to_biguint().unwrap();
    let mut v = 0;
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

/// p-adic valuation of a nonzero rational.
pub fn ord_p_rat(r: &crate::Rat, p: &BigUint) -> i64 {
    ord_p_int(r.numer(), p) as i64 - ord_p_int(r.denom(), p) as i64
}
