use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::Zero;

use super::rational::Rational;

/// Power series in `h` known exactly through `h^order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// `coeffs[k]` is the coefficient of `h^k`; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs order >= 0");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(vec![Rational::zero(); order + 1])
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `h^k`; panics past the truncation order.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self::from_coeffs(self.coeffs[..=order].to_vec())
    }

    /// `h -> -h`
    pub fn alternate(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl<'a> Add<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &'a TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        TruncSeries::from_coeffs((0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect())
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<'a> Mul<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &'a TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncSeries::from_coeffs(out)
    }
}

impl fmt::Display for TruncSeries {
    /// `[c0, c1, ..., cK]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    #[test]
    fn mixed_orders_take_minimum() {
        let a = TruncSeries::from_coeffs(vec![int(1), int(2), int(3)]);
        let b = TruncSeries::from_coeffs(vec![int(1), int(1)]);
        assert_eq!((&a + &b).order(), 1);
        assert_eq!((&a * &b).coeffs(), &[int(1), int(3)]);
    }

    #[test]
    fn alternate_flips_odd_terms() {
        let a = TruncSeries::from_coeffs(vec![int(1), int(2), int(3), int(4)]);
        assert_eq!(a.alternate().coeffs(), &[int(1), int(-2), int(3), int(-4)]);
    }
}
