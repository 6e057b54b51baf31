use num_traits::Zero;

use super::laurent::LaurentPoly;
use super::rational::{binomial, factorial, from_big, int, sign_pow, Rational};

/// `phi_j(i)`: the coefficient of `h^(2j)` in `(-t^2 - t^-2)^i` at `t = e^h`,
/// by the closed binomial formula.
pub fn phi_coeff(j: usize, i: usize) -> Rational {
    let mut sum = num_bigint::BigInt::zero();
    for k in 0..=i {
        let base = num_bigint::BigInt::from(2 * k as i64 - i as i64);
        sum += binomial(i, k) * num_traits::pow::pow(base, 2 * j);
    }
    let two_pow = num_traits::pow::pow(num_bigint::BigInt::from(2), 2 * j);
    sign_pow(i) * Rational::new(two_pow * sum, factorial(2 * j))
}

/// Series expansion of `(-t^2 - t^-2)^i` through `h^order`.
pub fn loop_power_series(i: usize, order: usize) -> Vec<Rational> {
    LaurentPoly::loop_value().pow(i).to_series(order).coeffs().to_vec()
}

/// Independent route to `phi_j(i)` through the Laurent expansion.
pub fn phi_series_oracle(j: usize, i: usize) -> Rational {
    loop_power_series(i, 2 * j)[2 * j].clone()
}

/// `phi_0(i) = (-2)^i`
pub fn phi0(i: usize) -> Rational {
    num_traits::pow::pow(int(-2), i)
}

/// `phi_1(i) = -(-2)^(i+1) * i`
pub fn phi1(i: usize) -> Rational {
    -num_traits::pow::pow(int(-2), i + 1) * from_big(i.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small_values() {
        for i in 0..=5 {
            assert_eq!(phi_coeff(0, i), phi0(i));
        }
        assert_eq!(phi_coeff(1, 1), int(-4));
        assert_eq!(phi_coeff(1, 2), int(16));
    }

    #[test]
    fn oracle_small_values() {
        assert_eq!(phi_series_oracle(0, 0), int(1));
        assert_eq!(phi_series_oracle(3, 0), int(0));
        assert_eq!(phi_series_oracle(1, 2), int(16));
    }

    #[test]
    fn closed_form_matches_oracle() {
        for i in 0..=8 {
            for j in 0..=4 {
                assert_eq!(phi_coeff(j, i), phi_series_oracle(j, i), "j={j} i={i}");
            }
        }
    }
}
