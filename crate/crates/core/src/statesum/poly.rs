//! The deformation polynomials `P_k`, fitted from the series identity they
//! must satisfy and cached in a table that can be persisted as JSON.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::exactalg::{int, phi_coeff, rational::inv_factorial, rational::pow, PolyZW, Rational};
use crate::{Error, Result};

/// Sample point of the identity: zero-markers, infinity-markers, trivial circles.
type Sample = (usize, usize, usize);

/// `h^k` coefficient of `(-1)^(zeta+iota) e^{h(zeta-iota)} (-e^{2h}-e^{-2h})^mu`.
fn series_side(k: usize, (zeta, iota, mu): Sample) -> Rational {
    let diff = int(zeta as i64 - iota as i64);
    let mut acc = Rational::zero();
    for j in 0..=k / 2 {
        acc += pow(&diff, k - 2 * j) * inv_factorial(k - 2 * j) * phi_coeff(j, mu);
    }
    if (zeta + iota) % 2 == 1 {
        -acc
    } else {
        acc
    }
}

fn signed_eval(p: &PolyZW, (zeta, iota, _): Sample) -> Rational {
    let v = p.binomial_eval(zeta, iota);
    if (zeta + iota) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Right-hand side after moving the known lower polynomials across.
fn target(k: usize, s: Sample, lower: &BTreeMap<usize, PolyZW>) -> Rational {
    let mut b = series_side(k, s);
    for j in 1..=k / 2 {
        b -= phi_coeff(j, s.2) * signed_eval(&lower[&(k - 2 * j)], s);
    }
    b
}

fn monomials(k: usize) -> Vec<(u32, u32)> {
    let k = k as u32;
    (0..=k).flat_map(|d| (0..=d).map(move |i| (i, d - i))).collect()
}

fn row(k: usize, s: Sample) -> Vec<Rational> {
    let (zeta, iota, mu) = s;
    let lead = phi_coeff(0, mu);
    monomials(k)
        .into_iter()
        .map(|(i, l)| signed_eval(&PolyZW::monomial(i, l, lead.clone()), (zeta, iota, mu)))
        .collect()
}

fn sample_pool(k: usize) -> Vec<Sample> {
    let span = 2 * k + 1;
    let mut pool = vec![];
    for zeta in 0..=span {
        for iota in 0..=span {
            if zeta + iota < k {
                continue;
            }
            for mu in 0..=k {
                pool.push((zeta, iota, mu));
            }
        }
    }
    pool.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed + k as u64));
    pool
}

/// Row-reduced system built one equation at a time.
struct Elimination {
    width: usize,
    /// (pivot column, row, right-hand side), fully reduced against each other
    rows: Vec<(usize, Vec<Rational>, Rational)>,
}

impl Elimination {
    fn new(width: usize) -> Self {
        Self { width, rows: vec![] }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds an equation; `Err` if it contradicts the ones already present.
    fn push(&mut self, mut r: Vec<Rational>, mut b: Rational) -> std::result::Result<(), ()> {
        for (p, basis, rhs) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (x, y) in r.iter_mut().zip(basis) {
                *x -= &f * y;
            }
            b -= &f * rhs;
        }
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return if b.is_zero() { Ok(()) } else { Err(()) };
        };
        let inv = r[p].recip();
        r.iter_mut().for_each(|x| *x *= &inv);
        b *= &inv;
        for (_, basis, rhs) in &mut self.rows {
            if basis[p].is_zero() {
                continue;
            }
            let f = basis[p].clone();
            for (x, y) in basis.iter_mut().zip(&r) {
                *x -= &f * y;
            }
            *rhs -= &f * &b;
        }
        self.rows.push((p, r, b));
        Ok(())
    }

    fn solution(&self) -> Option<Vec<Rational>> {
        if self.rank() < self.width {
            return None;
        }
        let mut x = vec![Rational::zero(); self.width];
        for (p, _, b) in &self.rows {
            x[*p] = b.clone();
        }
        Some(x)
    }
}

/// Fits `P_k` given `P_{k-2}, P_{k-4}, ...` and validates it on held-out samples.
pub fn fit_p(k: usize, lower: &BTreeMap<usize, PolyZW>) -> Result<PolyZW> {
    let cols = monomials(k);
    let pool = sample_pool(k);
    let holdout = (2 * cols.len()).min(pool.len() / 3);
    let (validation, training) = pool.split_at(holdout);
    let mut system = Elimination::new(cols.len());
    let contradiction = |s: &Sample| Error::TheoremViolation(format!("no degree-{k} polynomial fits the sample {s:?}"));
    for (n, s) in training.iter().enumerate() {
        system.push(row(k, *s), target(k, *s, lower)).map_err(|_| contradiction(s))?;
        if system.rank() == cols.len() && n >= 2 * cols.len() {
            break;
        }
    }
    let x = system.solution().ok_or(Error::SingularSystem(k))?;
    let p = PolyZW::from_terms(cols.into_iter().zip(x));
    if let Some(s) = validation.iter().find(|s| !satisfies(k, &p, lower, **s)) {
        return Err(contradiction(s));
    }
    Ok(p)
}

fn satisfies(k: usize, p: &PolyZW, lower: &BTreeMap<usize, PolyZW>, s: Sample) -> bool {
    phi_coeff(0, s.2) * signed_eval(p, s) == target(k, s, lower)
}

/// Derived polynomials keyed by order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DeformationPolyTable {
    polys: BTreeMap<usize, PolyZW>,
}

impl DeformationPolyTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, k: usize) -> Option<&PolyZW> {
        self.polys.get(&k)
    }

    pub fn orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.polys.keys().copied()
    }

    /// Derives every missing order up to `k`.
    pub fn extend_to(&mut self, k: usize) -> Result<&PolyZW> {
        for n in 0..=k {
            if !self.polys.contains_key(&n) {
                let p = fit_p(n, &self.polys)?;
                self.polys.insert(n, p);
            }
        }
        Ok(&self.polys[&k])
    }

    /// Checks stored entries against the defining identity on the sample pool.
    pub fn validate(&self) -> Result<()> {
        for (&k, p) in &self.polys {
            let lower: BTreeMap<usize, PolyZW> =
                (1..=k / 2).filter_map(|j| self.polys.get(&(k - 2 * j)).map(|q| (k - 2 * j, q.clone()))).collect();
            if lower.len() < k / 2 {
                return Err(Error::TheoremViolation(format!("table has P_{k} without all lower orders")));
            }
            if let Some(s) = sample_pool(k).into_iter().take(64).find(|s| !satisfies(k, p, &lower, *s)) {
                return Err(Error::TheoremViolation(format!("stored P_{k} fails at sample {s:?}")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, p) in &self.polys {
            let entries: Vec<Value> =
                p.terms().map(|((i, j), c)| json!([i, j, big_value(c.numer()), big_value(c.denom())])).collect();
            map.insert(k.to_string(), Value::Array(entries));
        }
        Value::Object(map)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: String| Error::MalformedTable(msg);
        let obj = v.as_object().ok_or_else(|| bad("expected an object".into()))?;
        let mut polys = BTreeMap::new();
        for (key, entries) in obj {
            let k: usize = key.parse().map_err(|_| bad(format!("bad order {key:?}")))?;
            let list = entries.as_array().ok_or_else(|| bad(format!("order {k} needs a list")))?;
            let mut p = PolyZW::zero();
            for e in list {
                let parts = e.as_array().filter(|a| a.len() == 4).ok_or_else(|| bad(format!("bad entry {e}")))?;
                let deg = |x: &Value| x.as_u64().and_then(|n| u32::try_from(n).ok()).ok_or_else(|| bad(format!("bad degree {x}")));
                let num = parse_big(&parts[2]).ok_or_else(|| bad(format!("bad numerator {}", parts[2])))?;
                let den = parse_big(&parts[3]).filter(|d| !d.is_zero()).ok_or_else(|| bad(format!("bad denominator {}", parts[3])))?;
                p.add_term(deg(&parts[0])?, deg(&parts[1])?, Rational::new(num, den));
            }
            polys.insert(k, p);
        }
        Ok(Self { polys })
    }

    /// Reads a table; a missing file yields an empty table.
    pub fn load(path: &Path) -> Result<Self> {
        match std::fs::read_to_string(path) {
            Ok(text) => Self::from_json(&serde_json::from_str(&text)?),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::new()),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes through a temporary file in the same directory, then renames.
    pub fn save(&self, path: &Path) -> Result<()> {
        let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| "table".into());
        let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
        std::fs::write(&tmp, serde_json::to_string_pretty(&self.to_json())? + "\n")?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn big_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

fn parse_big(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

static TABLE: LazyLock<RwLock<DeformationPolyTable>> = LazyLock::new(Default::default);

/// `P_k` from the process-wide cache, deriving it (and lower orders) if needed.
pub fn derive_p(k: usize) -> Result<PolyZW> {
    if let Some(p) = TABLE.read().expect("poly table lock").get(k) {
        return Ok(p.clone());
    }
    let mut table = TABLE.write().expect("poly table lock");
    table.extend_to(k).cloned()
}

/// Merges validated entries into the process-wide cache.
pub fn install_table(table: &DeformationPolyTable) -> Result<()> {
    table.validate()?;
    let mut global = TABLE.write().expect("poly table lock");
    for (k, p) in &table.polys {
        global.polys.entry(*k).or_insert_with(|| p.clone());
    }
    Ok(())
}

/// Snapshot of the process-wide cache.
pub fn cached_table() -> DeformationPolyTable {
    TABLE.read().expect("poly table lock").clone()
}
