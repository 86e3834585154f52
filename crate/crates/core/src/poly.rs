//! Dense univariate polynomials and exact Lagrange interpolation.
//!
//! Coefficients are stored lowest degree first; the representation is
//! canonical (empty for the zero polynomial, trailing coefficient nonzero
//! otherwise).


use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense univariate polynomial over a [`Scalar`].
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// Build from coefficients, lowest degree first. Trailing zeros are
    /// stripped.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let mut p = Polynomial { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Add another polynomial.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Polynomial::from_coeffs(coeffs)
    }

    /// Multiply by a scalar.
    pub fn scale(&self, k: &T) -> Self {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Multiply two polynomials.
    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::from_coeffs(out)
    }
}

/// Interpolate the unique polynomial of degree <= `degree` through the first
/// `degree + 1` points; any extra points must lie on it exactly.
///
/// Errors on duplicate abscissae and on extra points off the fit.
pub fn interpolate<T: Scalar>(points: &[(T, T)], degree: usize) -> Result<Polynomial<T>> {
    if points.len() < degree + 1 {
        return Err(Error::InconsistentData(format!(
            "need {} points for degree {}, got {}",
            degree + 1,
            degree,
            points.len()
        )));
    }
    let base = &points[..degree + 1];
    for i in 0..base.len() {
        for j in (i + 1)..base.len() {
            if base[i].0 == base[j].0 {
                return Err(Error::DuplicateAbscissa);
            }
        }
    }

    // Lagrange basis, assembled as polynomials.
    let mut result = Polynomial::zero();
    for (i, (xi, yi)) in base.iter().enumerate() {
        let mut num = Polynomial::from_coeffs(vec![T::one()]);
        let mut den = T::one();
        for (j, (xj, _)) in base.iter().enumerate() {
            if i == j {
                continue;
            }
            num = num.mul(&Polynomial::from_coeffs(vec![
                T::zero() - xj.clone(),
                T::one(),
            ]));
            den = den * (xi.clone() - xj.clone());
        }
        result = result.add(&num.scale(&(yi.clone() / den)));
    }

    for (x, y) in &points[degree + 1..] {
        if result.eval(x) != *y {
            return Err(Error::InconsistentData(format!(
                "extra point at x = {x} is off the degree-{degree} fit"
            )));
        }
    }
    Ok(result)
}
