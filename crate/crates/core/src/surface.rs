//! Supported surfaces, curve-system bases of their skein modules, and skein
//! vectors over exact coefficient rings.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::exactalg::{LaurentPoly, Rational, TruncSeries};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceSpec {
    /// Disk with the given number of marked boundary points, numbered
    /// `1..=m` clockwise from a fixed base point.
    Disk(u32),
    Annulus,
    Torus,
}

impl SurfaceSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            SurfaceSpec::Disk(m) if m % 2 == 1 => Err(Error::MalformedDiagram(format!(
                "disk with an odd number ({m}) of boundary points"
            ))),
            _ => Ok(()),
        }
    }

    pub fn zero_class(&self) -> HomologyClass {
        match self {
            SurfaceSpec::Disk(_) => HomologyClass::Null,
            SurfaceSpec::Annulus => HomologyClass::Winding(0),
            SurfaceSpec::Torus => HomologyClass::Pair(0, 0),
        }
    }

    pub fn boundary_points(&self) -> u32 {
        match self {
            SurfaceSpec::Disk(m) => *m,
            _ => 0,
        }
    }

    pub fn accepts(&self, h: &HomologyClass) -> bool {
        matches!(
            (self, h),
            (SurfaceSpec::Disk(_), HomologyClass::Null)
                | (SurfaceSpec::Annulus, HomologyClass::Winding(_))
                | (SurfaceSpec::Torus, HomologyClass::Pair(..))
        )
    }
}

/// First homology class of an oriented path, measured by signed wall crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HomologyClass {
    /// Disk: everything is null-homologous.
    Null,
    /// Annulus: winding number around the core.
    Winding(i64),
    /// Torus: `(a, b)` in the standard basis.
    Pair(i64, i64),
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        matches!(self, HomologyClass::Null | HomologyClass::Winding(0) | HomologyClass::Pair(0, 0))
    }

    pub(crate) fn to_vec(self) -> [i64; 2] {
        match self {
            HomologyClass::Null => [0, 0],
            HomologyClass::Winding(w) => [w, 0],
            HomologyClass::Pair(a, b) => [a, b],
        }
    }

    pub(crate) fn from_vec(surface: SurfaceSpec, v: [i64; 2]) -> Self {
        match surface {
            SurfaceSpec::Disk(_) => HomologyClass::Null,
            SurfaceSpec::Annulus => HomologyClass::Winding(v[0]),
            SurfaceSpec::Torus => HomologyClass::Pair(v[0], v[1]),
        }
    }

    pub fn neg(self) -> Self {
        match self {
            HomologyClass::Null => HomologyClass::Null,
            HomologyClass::Winding(w) => HomologyClass::Winding(-w),
            HomologyClass::Pair(a, b) => HomologyClass::Pair(-a, -b),
        }
    }
}

/// A basis element of the skein module of a supported surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveClass {
    Empty,
    /// Non-crossing perfect matching of disk boundary points, pairs `(i, j)`
    /// with `i < j`, sorted.
    Matching(Vec<(u32, u32)>),
    /// `n >= 1` parallel copies of the annulus core.
    Core(u32),
    /// `n` parallel copies of a primitive torus curve, stored as the
    /// normalized pair `(n p, n q)` with `a > 0`, or `a = 0` and `b > 0`.
    Torus(i64, i64),
}

impl CurveClass {
    pub fn matching(pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut pairs: Vec<(u32, u32)> =
            pairs.into_iter().map(|(a, b)| if a < b { (a, b) } else { (b, a) }).collect();
        pairs.sort_unstable();
        for (n, &(i, j)) in pairs.iter().enumerate() {
            for &(k, l) in &pairs[n + 1..] {
                if i < k && k < j && j < l {
                    return Err(Error::MalformedDiagram(format!(
                        "arcs ({i},{j}) and ({k},{l}) cross"
                    )));
                }
            }
        }
        Ok(if pairs.is_empty() { CurveClass::Empty } else { CurveClass::Matching(pairs) })
    }

    pub fn core(n: u32) -> Self {
        if n == 0 {
            CurveClass::Empty
        } else {
            CurveClass::Core(n)
        }
    }

    /// Multiplicity and primitive direction of a torus class.
    pub fn torus_parts(&self) -> Option<(u32, (i64, i64))> {
        match *self {
            CurveClass::Torus(a, b) => {
                let g = a.gcd(&b);
                Some((g as u32, (a / g, b / g)))
            }
            _ => None,
        }
    }

    /// Action of an integer matrix `[[a, b], [c, d]]` on torus classes; other
    /// classes are fixed.
    pub fn transform(&self, m: [[i64; 2]; 2]) -> Self {
        match *self {
            CurveClass::Torus(a, b) => {
                normalize_torus_class(m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b)
            }
            ref other => other.clone(),
        }
    }
}

/// Canonical representative of the unoriented class `±(a, b)`.
pub fn normalize_torus_class(a: i64, b: i64) -> CurveClass {
    if a == 0 && b == 0 {
        CurveClass::Empty
    } else if a > 0 || (a == 0 && b > 0) {
        CurveClass::Torus(a, b)
    } else {
        CurveClass::Torus(-a, -b)
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveClass::Empty => write!(f, "∅"),
            CurveClass::Core(n) => write!(f, "core^{n}"),
            CurveClass::Torus(a, b) => write!(f, "({a},{b})"),
            CurveClass::Matching(pairs) => {
                write!(f, "match[")?;
                for (n, (i, j)) in pairs.iter().enumerate() {
                    if n > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "({i},{j})")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Splits the closed components of a crossingless resolution into the number
/// of trivial circles and the essential curve system they form.
pub fn classify_components(
    surface: SurfaceSpec,
    classes: &[HomologyClass],
) -> Result<(usize, CurveClass)> {
    let trivial = classes.iter().filter(|h| h.is_zero()).count();
    let essential: Vec<[i64; 2]> =
        classes.iter().filter(|h| !h.is_zero()).map(|h| h.to_vec()).collect();
    if essential.is_empty() {
        return Ok((trivial, CurveClass::Empty));
    }
    match surface {
        SurfaceSpec::Disk(_) => unreachable!("disk classes are always null"),
        SurfaceSpec::Annulus => {
            if let Some(w) = essential.iter().find(|v| v[0].abs() != 1) {
                return Err(Error::NonParallelComponents(format!(
                    "annulus component with winding {}",
                    w[0]
                )));
            }
            Ok((trivial, CurveClass::core(essential.len() as u32)))
        }
        SurfaceSpec::Torus => {
            let [p, q] = essential[0];
            if p.gcd(&q) != 1 {
                return Err(Error::NonParallelComponents(format!(
                    "non-primitive component class ({p},{q})"
                )));
            }
            for v in &essential[1..] {
                let parallel = (v[0] == p && v[1] == q) || (v[0] == -p && v[1] == -q);
                if !parallel {
                    return Err(Error::NonParallelComponents(format!(
                        "components ({p},{q}) and ({},{}) are not parallel",
                        v[0], v[1]
                    )));
                }
            }
            let n = essential.len() as i64;
            Ok((trivial, normalize_torus_class(n * p, n * q)))
        }
    }
}

/// Coefficient rings a [`SkeinVector`] can carry.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add_to(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Coeff for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Coeff for LaurentPoly {
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Coeff for TruncSeries {
    fn is_zero(&self) -> bool {
        TruncSeries::is_zero(self)
    }
    fn add_to(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Finite linear combination of curve classes; zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct SkeinVector<R> {
    terms: BTreeMap<CurveClass, R>,
}

impl<R: Coeff> Default for SkeinVector<R> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<R: Coeff> SkeinVector<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(class: CurveClass, coeff: R) -> Self {
        let mut v = Self::zero();
        v.add_term(class, coeff);
        v
    }

    pub fn add_term(&mut self, class: CurveClass, coeff: R) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&class) {
            Some(slot) => {
                slot.add_to(&coeff);
                if slot.is_zero() {
                    self.terms.remove(&class);
                }
            }
            None => {
                self.terms.insert(class, coeff);
            }
        }
    }

    pub fn get(&self, class: &CurveClass) -> Option<&R> {
        self.terms.get(class)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CurveClass, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (c, x) in &other.terms {
            self.add_term(c.clone(), x.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|x| x.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> SkeinVector<S> {
        let mut out = SkeinVector::zero();
        for (c, x) in &self.terms {
            out.add_term(c.clone(), f(x));
        }
        out
    }

    pub fn map_classes(&self, f: impl Fn(&CurveClass) -> CurveClass) -> Self {
        let mut out = Self::zero();
        for (c, x) in &self.terms {
            out.add_term(f(c), x.clone());
        }
        out
    }
}

impl<R: Coeff> FromIterator<(CurveClass, R)> for SkeinVector<R> {
    fn from_iter<I: IntoIterator<Item = (CurveClass, R)>>(iter: I) -> Self {
        let mut v = Self::zero();
        for (c, x) in iter {
            v.add_term(c, x);
        }
        v
    }
}

impl<R: Coeff> fmt::Display for SkeinVector<R> {
    /// One `class<TAB>coefficient` line per basis element, classes in
    /// canonical order; a zero vector prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (c, x) in &self.terms {
            writeln!(f, "{c}\t{x}")?;
        }
        Ok(())
    }
}

/// All non-crossing perfect matchings of `1..=m` boundary points.
pub fn disk_matchings(m: u32) -> Vec<CurveClass> {
    fn rec(points: &[u32]) -> Vec<Vec<(u32, u32)>> {
        if points.is_empty() {
            return vec![vec![]];
        }
        let first = points[0];
        let mut out = Vec::new();
        // partner must leave an even number of points on each side
        for k in (1..points.len()).step_by(2) {
            for inner in rec(&points[1..k]) {
                for outer in rec(&points[k + 1..]) {
                    let mut m = vec![(first, points[k])];
                    m.extend(inner.iter().copied());
                    m.extend(outer.iter().copied());
                    out.push(m);
                }
            }
        }
        out
    }
    if m % 2 == 1 {
        return vec![];
    }
    let points: Vec<u32> = (1..=m).collect();
    rec(&points)
        .into_iter()
        .map(|m| CurveClass::matching(m).expect("recursive matchings are planar"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn torus_normalization() {
        assert_eq!(normalize_torus_class(0, 0), CurveClass::Empty);
        assert_eq!(normalize_torus_class(-1, 2), CurveClass::Torus(1, -2));
        assert_eq!(normalize_torus_class(0, -3), CurveClass::Torus(0, 3));
    }

    #[test]
    fn classify_examples() {
        let t = SurfaceSpec::Torus;
        let p = HomologyClass::Pair;
        assert_eq!(classify_components(t, &[p(0, 0), p(0, 0)]).unwrap(), (2, CurveClass::Empty));
        assert_eq!(
            classify_components(t, &[p(1, 1), p(-1, -1), p(0, 0)]).unwrap(),
            (1, CurveClass::Torus(2, 2))
        );
        assert!(matches!(
            classify_components(t, &[p(1, 0), p(0, 1)]),
            Err(Error::NonParallelComponents(_))
        ));
        assert!(matches!(
            classify_components(t, &[p(2, 2)]),
            Err(Error::NonParallelComponents(_))
        ));
    }

    #[test]
    fn classify_annulus() {
        let a = SurfaceSpec::Annulus;
        let w = HomologyClass::Winding;
        assert_eq!(classify_components(a, &[w(1), w(-1), w(0)]).unwrap(), (1, CurveClass::Core(2)));
        assert!(classify_components(a, &[w(2)]).is_err());
    }

    #[test]
    fn matchings_are_catalan() {
        let catalan = [1, 1, 2, 5, 14, 42, 132];
        for (n, &c) in catalan.iter().enumerate() {
            let all = disk_matchings(2 * n as u32);
            assert_eq!(all.len(), c, "n = {n}");
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), c);
        }
    }

    #[test]
    fn crossing_matching_rejected() {
        assert!(CurveClass::matching([(1, 3), (2, 4)]).is_err());
        assert_eq!(
            CurveClass::matching([(4, 1), (3, 2)]).unwrap().to_string(),
            "match[(1,4),(2,3)]"
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(CurveClass::Empty.to_string(), "∅");
        assert_eq!(CurveClass::core(3).to_string(), "core^3");
        assert_eq!(CurveClass::Torus(1, -2).to_string(), "(1,-2)");
    }

    #[test]
    fn vector_cancellation() {
        let mut v = SkeinVector::from_term(CurveClass::Torus(1, 0), int(2));
        v.add_term(CurveClass::Torus(1, 0), int(-2));
        assert!(v.is_zero());
        assert_eq!(v.to_string(), "0\n");
    }
}
