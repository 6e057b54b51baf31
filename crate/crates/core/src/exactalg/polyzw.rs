use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{binomial, from_big, Rational};

/// Element of `Q[z, w]`, keyed by `(deg_z, deg_w)`.
///
/// Under the resolution map, `z` counts infinity-markers and `w` counts
/// zero-markers of a partial state.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyZW {
    terms: BTreeMap<(u32, u32), Rational>,
}

/// Weights `p(0..=k)` attached to the number of infinity-markers in a k-state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateWeightFn {
    weights: Vec<Rational>,
}

impl StateWeightFn {
    pub fn new(weights: Vec<Rational>) -> Self {
        assert!(!weights.is_empty());
        Self { weights }
    }

    /// Largest index in the domain.
    pub fn degree(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weight(&self, infinity_count: usize) -> &Rational {
        &self.weights[infinity_count]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(Zero::is_zero)
    }
}

impl PolyZW {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn z() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn w() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn monomial(deg_z: u32, deg_w: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(deg_z, deg_w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, deg_z: u32, deg_w: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (deg_z, deg_w);
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, deg_z: u32, deg_w: u32) -> Rational {
        self.terms.get(&(deg_z, deg_w)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, j), _)| i + j == d)
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|(i, j)| i + j);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, x)| (*k, x * c)))
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `P(z, w) -> P(w, z)`
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|((i, j), c)| ((*j, *i), c.clone())))
    }

    /// Exact division by `w`; `None` if some term has no `w`.
    pub fn div_w(&self) -> Option<Self> {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            if *j == 0 {
                return None;
            }
            out.add_term(*i, j - 1, c.clone());
        }
        Some(out)
    }

    /// Exact division by `z`; `None` if some term has no `z`.
    pub fn div_z(&self) -> Option<Self> {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            if *i == 0 {
                return None;
            }
            out.add_term(i - 1, *j, c.clone());
        }
        Some(out)
    }

    /// Sum of `a_{i,j} * C(inf, i) * C(zero, j)`: the weight a state with the
    /// given marker counts receives from the resolution operator of `self`.
    pub fn binomial_eval(&self, zero_count: usize, inf_count: usize) -> Rational {
        let mut acc = Rational::zero();
        for ((i, j), c) in &self.terms {
            let b = binomial(inf_count, *i as usize) * binomial(zero_count, *j as usize);
            if !num_traits::Zero::is_zero(&b) {
                acc += c * from_big(b);
            }
        }
        acc
    }
}

/// The algebra map `z -> z w`, `w -> w`.
pub fn c_map(p: &PolyZW) -> PolyZW {
    PolyZW::from_terms(p.terms().map(|((i, j), c)| ((i, i + j), c.clone())))
}

/// Coefficient of `w^k` in `p`, read as a polynomial in `z`, padded to `0..=k`.
pub fn pi_k(p: &PolyZW, k: u32) -> StateWeightFn {
    let mut weights = vec![Rational::zero(); k as usize + 1];
    for ((i, j), c) in p.terms() {
        if j == k {
            // entries beyond k cannot come from c_map images; keep them visible
            if i as usize >= weights.len() {
                weights.resize(i as usize + 1, Rational::zero());
            }
            weights[i as usize] += c;
        }
    }
    StateWeightFn::new(weights)
}

impl<'a> Add<&'a PolyZW> for &'a PolyZW {
    type Output = PolyZW;
    fn add(self, rhs: &'a PolyZW) -> PolyZW {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&PolyZW> for PolyZW {
    fn add_assign(&mut self, rhs: &PolyZW) {
        for ((i, j), c) in &rhs.terms {
            self.add_term(*i, *j, c.clone());
        }
    }
}

impl<'a> Sub<&'a PolyZW> for &'a PolyZW {
    type Output = PolyZW;
    fn sub(self, rhs: &'a PolyZW) -> PolyZW {
        self + &(-rhs)
    }
}

impl Neg for &PolyZW {
    type Output = PolyZW;
    fn neg(self) -> PolyZW {
        PolyZW::from_terms(self.terms.iter().map(|(k, c)| (*k, -c)))
    }
}

impl<'a> Mul<&'a PolyZW> for &'a PolyZW {
    type Output = PolyZW;
    fn mul(self, rhs: &'a PolyZW) -> PolyZW {
        let mut out = PolyZW::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &rhs.terms {
                out.add_term(a + c, b + d, x * y);
            }
        }
        out
    }
}

impl fmt::Display for PolyZW {
    /// Terms `c*z^i*w^j` by descending total degree, then ascending z-degree;
    /// unit exponents print bare, zero exponents are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (std::cmp::Reverse(i + j), i));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", self.terms[&(i, j)])?;
            for (var, e) in [("z", i), ("w", j)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{var}")?,
                    _ => write!(f, "*{var}^{e}")?,
                }
            }
        }
        Ok(())
    }
}
