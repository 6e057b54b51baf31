use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{inv_factorial, pow, Rational};
use super::series::TruncSeries;

/// Element of `Q[t, t^-1]`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    pub fn monomial(exp: i64, coeff: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `t`
    pub fn t() -> Self {
        Self::monomial(1, Rational::one())
    }

    /// The loop value `-t^2 - t^-2`.
    pub fn loop_value() -> Self {
        let m = -Rational::one();
        Self::from_terms([(2, m.clone()), (-2, m)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The involution `t -> t^-1`.
    pub fn mirror(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (-e, c.clone())))
    }

    /// Substitutes `t = e^h` and truncates after `h^order`.
    pub fn to_series(&self, order: usize) -> TruncSeries {
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (&n, c) in &self.terms {
            let n = Rational::from_integer(n.into());
            for (k, slot) in coeffs.iter_mut().enumerate() {
                *slot += c * pow(&n, k) * inv_factorial(k);
            }
        }
        TruncSeries::from_coeffs(coeffs)
    }
}

pub fn laurent_to_series(l: &LaurentPoly, order: usize) -> TruncSeries {
    l.to_series(order)
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, -c)))
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// `c*t^e` terms in increasing exponent, joined by ` + `; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*t^{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    #[test]
    fn t_to_series() {
        let s = LaurentPoly::t().to_series(2);
        assert_eq!(s.coeffs(), &[int(1), int(1), rat(1, 2)]);
    }

    #[test]
    fn symmetric_poly_has_even_series() {
        let l = LaurentPoly::from_terms([(1, int(1)), (-1, int(1))]);
        assert_eq!(l.to_series(3).coeffs(), &[int(2), int(0), int(1), int(0)]);
    }

    #[test]
    fn loop_value_series() {
        // -e^{2h} - e^{-2h} = -2 - 4h^2 - ...
        let s = LaurentPoly::loop_value().to_series(2);
        assert_eq!(s.coeffs(), &[int(-2), int(0), int(-4)]);
    }

    #[test]
    fn mirror_is_involution() {
        let l = LaurentPoly::from_terms([(3, int(2)), (-1, rat(1, 3))]);
        assert_eq!(l.mirror().mirror(), l);
        assert_eq!(l.mirror().coeff(-3), int(2));
    }

    #[test]
    fn display_grammar() {
        let l = LaurentPoly::from_terms([(3, int(-1)), (-2, rat(1, 2))]);
        assert_eq!(l.to_string(), "1/2*t^-2 + -1*t^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
