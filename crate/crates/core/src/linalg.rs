//! Small exact linear solves.


use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Solve a 3x3 system `matrix * x = rhs` exactly by Cramer's rule.
///
/// Errors with [`Error::SingularSystem`] when the determinant vanishes.
pub fn solve_linear_3<T: Scalar>(matrix: &[[T; 3]; 3], rhs: &[T; 3]) -> Result<[T; 3]> {
    let det = det3(matrix);
    if det.is_zero() {
        return Err(Error::SingularSystem);
    }
    let col = |k: usize| {
        let mut m = matrix.clone();
        for i in 0..3 {
            m[i][k] = rhs[i].clone();
        }
        det3(&m) / det.clone()
    };
    Ok([col(0), col(1), col(2)])
}

fn det3<T: Scalar>(m: &[[T; 3]; 3]) -> T {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone()
    };
    m[0][0].clone() * minor(1, 2, 1, 2) - m[0][1].clone() * minor(1, 2, 0, 2)
        + m[0][2].clone() * minor(1, 2, 0, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio, Rat};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn identity() -> [[Rat; 3]; 3] {
        let mut m: [[Rat; 3]; 3] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = if i == j { Rat::one() } else { Rat::zero() };
            }
        }
        m
    }

    #[test]
    fn identity_system() {
        let rhs = [rat(1), rat(2), rat(3)];
        assert_eq!(solve_linear_3(&identity(), &rhs).unwrap(), rhs);
    }

    #[test]
    fn all_ones_is_singular() {
        let m: [[Rat; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| Rat::one()));
        let rhs = [rat(1), rat(4), rat(9)];
        assert_eq!(solve_linear_3(&m, &rhs), Err(Error::SingularSystem));
    }

    #[test]
    fn vandermonde_fit_recovers_cubic_values() {
        // quadratic through (x, x^3) at the nodes x = 1, 4, 9; checked by
        // substitution back into all three equations.
        let nodes = [rat(1), rat(4), rat(9)];
        let m: [[Rat; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| nodes[i].pow_u(j as u32)));
        let rhs: [Rat; 3] = std::array::from_fn(|i| nodes[i].pow_u(3));
        let sol = solve_linear_3(&m, &rhs).unwrap();
        for i in 0..3 {
            let got = sol[0].clone() + sol[1].clone() * nodes[i].clone()
                + sol[2].clone() * nodes[i].clone() * nodes[i].clone();
            assert_eq!(got, rhs[i]);
        }
    }

    trait PowU {
        fn pow_u(&self, e: u32) -> Self;
    }
    impl PowU for Rat {
        fn pow_u(&self, e: u32) -> Self {
            let mut acc = Rat::one();
            for _ in 0..e {
                acc *= self.clone();
            }
            acc
        }
    }

    proptest! {
        #[test]
        fn solution_substitutes_back_exactly(
            entries in proptest::collection::vec(-20i64..20, 9),
            rhs_e in proptest::collection::vec((-20i64..20, 1i64..10), 3)
        ) {
            let m: [[Rat; 3]; 3] =
                std::array::from_fn(|i| std::array::from_fn(|j| rat(entries[3 * i + j])));
            let rhs: [Rat; 3] =
                std::array::from_fn(|i| ratio(rhs_e[i].0, rhs_e[i].1));
            match solve_linear_3(&m, &rhs) {
                Ok(sol) => {
                    for i in 0..3 {
                        let mut acc = Rat::zero();
                        for j in 0..3 {
                            acc += m[i][j].clone() * sol[j].clone();
                        }
                        prop_assert_eq!(acc, rhs[i].clone());
                    }
                }
                Err(Error::SingularSystem) => {}
                Err(e) => prop_assert!(false, "unexpected error {e:?}"),
            }
        }
    }
}
