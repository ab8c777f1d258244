//! Combinatorial shadows of covers of the formal disk: étale-algebra shapes,
//! the motivic Krasner classes of field-extension strata, symmetric-quotient
//! classes, and stratum families indexed by discriminant parameters.
//!
//! The Krasner class function is conjectural; it is implemented exactly as
//! stated, with four branches according to whether `p` divides the degree
//! and the shifted discriminant exponent.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::MotivicValue;
use crate::series::{Affine, ExpPoly, ExpTerm};
use crate::Exponent;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `p | n` in the residue characteristic sense: characteristic 0 divides
/// nothing.
fn char_divides(p: u64, n: u64) -> bool {
    p != 0 && n.is_multiple_of(p)
}

/// A field extension component: degree and discriminant exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u64, u64)", into = "(u64, u64)")]
pub struct LocalFieldShape {
    pub degree: u64,
    pub disc: u64,
}

impl LocalFieldShape {
    pub fn new(degree: u64, disc: u64) -> Self {
        LocalFieldShape { degree, disc }
    }

    /// The singleton extension of degree 1.
    pub fn trivial() -> Self {
        Self::new(1, 0)
    }

    pub fn is_wild(&self, p: u64) -> bool {
        char_divides(p, self.degree)
    }

    fn check(&self, p: u64) -> Option<ViolationKind> {
        let (m, d) = (self.degree, self.disc);
        if m == 0 {
            return Some(ViolationKind::ZeroDegree);
        }
        if d + 1 < m {
            return Some(ViolationKind::DiscBelowTameBound);
        }
        if !self.is_wild(p) {
            if d != m - 1 {
                return Some(ViolationKind::TameDiscMismatch);
            }
        } else if d < m {
            return Some(ViolationKind::WildDiscTooSmall);
        } else if char_divides(p, d - m + 1) {
            return Some(ViolationKind::WildClassVanishes);
        }
        None
    }
}

impl From<(u64, u64)> for LocalFieldShape {
    fn from((degree, disc): (u64, u64)) -> Self {
        Self::new(degree, disc)
    }
}

impl From<LocalFieldShape> for (u64, u64) {
    fn from(s: LocalFieldShape) -> Self {
        (s.degree, s.disc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    EmptyShape,
    BadCharacteristic,
    ZeroDegree,
    DiscBelowTameBound,
    TameDiscMismatch,
    WildDiscTooSmall,
    WildClassVanishes,
}

/// A failed shape check, naming the offending component when there is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeViolation {
    pub component: Option<usize>,
    pub shape: Option<LocalFieldShape>,
    pub p: u64,
    pub kind: ViolationKind,
}

impl fmt::Display for ShapeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let why = match self.kind {
            ViolationKind::EmptyShape => "shape has no components",
            ViolationKind::BadCharacteristic => "residue characteristic must be 0 or a prime",
            ViolationKind::ZeroDegree => "degree must be positive",
            ViolationKind::DiscBelowTameBound => "discriminant exponent below degree - 1",
            ViolationKind::TameDiscMismatch => "tame component needs discriminant exponent degree - 1",
            ViolationKind::WildDiscTooSmall => "wild component needs discriminant exponent >= degree",
            ViolationKind::WildClassVanishes => {
                "p divides disc - degree + 1, so the stratum class is 0"
            }
        };
        match (self.component, self.shape) {
            (Some(i), Some(s)) => write!(
                f,
                "component {i} (degree {}, disc {}) with p = {}: {why}",
                s.degree, s.disc, self.p
            ),
            _ => write!(f, "p = {}: {why}", self.p),
        }
    }
}

/// A multiset of field components over a residue characteristic `p`
/// (`p = 0` for characteristic zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaleShape {
    pub p: u64,
    pub components: Vec<LocalFieldShape>,
}

impl EtaleShape {
    pub fn new(p: u64, components: Vec<LocalFieldShape>) -> Self {
        EtaleShape { p, components }
    }

    /// `count` copies of the degree-1 component.
    pub fn trivial(p: u64, count: usize) -> Self {
        Self::new(p, vec![LocalFieldShape::trivial(); count])
    }

    /// Total degree `Σ m_j`.
    pub fn degree(&self) -> u64 {
        self.components.iter().map(|c| c.degree).sum()
    }

    /// Total discriminant exponent `Σ d_j`.
    pub fn disc(&self) -> u64 {
        self.components.iter().map(|c| c.disc).sum()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn validate(&self) -> Result<(), ShapeViolation> {
        let whole = |kind| ShapeViolation {
            component: None,
            shape: None,
            p: self.p,
            kind,
        };
        if self.p != 0 && !is_prime(self.p) {
            return Err(whole(ViolationKind::BadCharacteristic));
        }
        if self.components.is_empty() {
            return Err(whole(ViolationKind::EmptyShape));
        }
        for (i, c) in self.components.iter().enumerate() {
            if let Some(kind) = c.check(self.p) {
                return Err(ShapeViolation {
                    component: Some(i),
                    shape: Some(*c),
                    p: self.p,
                    kind,
                });
            }
        }
        Ok(())
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        self.validate().map_err(Error::InvalidShape)
    }

    /// Product of the component classes: the class of the ordered stratum.
    pub fn ordered_class(&self) -> MotivicValue {
        self.components
            .iter()
            .map(|c| component_class(self.p, c))
            .fold(MotivicValue::one(), |acc, c| &acc * &c)
    }
}

/// Class of the stratum of degree-`m` field extensions with discriminant
/// exponent `d` in residue characteristic `p`:
///
/// * `p ∤ m`: 1 if `d = m - 1`, else 0;
/// * `p | m`: `(L-1)·L^⌊(d-m+1)/p⌋` if `p ∤ (d-m+1)`, else 0.
///
/// `d < m - 1` always gives 0. `p = 0` takes the tame branch. Degree 1 is
/// the singleton (class 1 at `d = 0`).
pub fn krasner_class(p: u64, m: u64, d: i64) -> MotivicValue {
    let m_i = m as i64;
    if m == 0 || d < m_i - 1 {
        return MotivicValue::zero();
    }
    if !char_divides(p, m) {
        return if d == m_i - 1 {
            MotivicValue::one()
        } else {
            MotivicValue::zero()
        };
    }
    let shifted = d - m_i + 1;
    if shifted % p as i64 == 0 {
        return MotivicValue::zero();
    }
    let k = Integer::div_floor(&shifted, &(p as i64));
    MotivicValue::lpow(Exponent::from_integer(k)) * "L-1".parse::<MotivicValue>().unwrap()
}

fn component_class(p: u64, c: &LocalFieldShape) -> MotivicValue {
    krasner_class(p, c.degree, c.disc as i64)
}

/// `[(G_m)^n / S_n] = L^n - L^(n-1)`, and 1 for `n = 0`.
pub fn torus_sym_class(n: u64) -> MotivicValue {
    if n == 0 {
        return MotivicValue::one();
    }
    let n = n as i64;
    &MotivicValue::lpow(n.into()) - &MotivicValue::lpow((n - 1).into())
}

/// Class of unordered pairs of quadratic extensions sharing the
/// discriminant exponent `2n+2`: `(L-1)·L^(2n+1)`. Only characteristic 2.
pub fn sym_pair_diag_class(p: u64, n: u64) -> Result<MotivicValue> {
    if p != 2 {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    let l_minus_1 = &MotivicValue::lefschetz() - &MotivicValue::one();
    Ok(l_minus_1.times_lpow(Exponent::from_integer(2 * n as i64 + 1)))
}

/// Integer affine map `slope·n + intercept`, for discriminants along a
/// family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntAffine {
    pub slope: i64,
    pub intercept: i64,
}

impl IntAffine {
    pub fn constant(c: i64) -> Self {
        IntAffine {
            slope: 0,
            intercept: c,
        }
    }

    pub fn eval(&self, n: i64) -> i64 {
        self.slope * n + self.intercept
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentTemplate {
    pub degree: u64,
    pub disc: IntAffine,
}

/// An étale shape whose discriminants depend affinely on a family index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeTemplate {
    pub p: u64,
    pub components: Vec<ComponentTemplate>,
}

impl ShapeTemplate {
    pub fn at(&self, n: i64) -> Result<EtaleShape> {
        let components = self
            .components
            .iter()
            .map(|c| {
                let d = c.disc.eval(n);
                u64::try_from(d)
                    .map(|d| LocalFieldShape::new(c.degree, d))
                    .map_err(|_| Error::InvalidArgument(format!("negative discriminant {d} at index {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EtaleShape::new(self.p, components))
    }

    pub fn fixed(shape: &EtaleShape) -> Self {
        ShapeTemplate {
            p: shape.p,
            components: shape
                .components
                .iter()
                .map(|c| ComponentTemplate {
                    degree: c.degree,
                    disc: IntAffine::constant(c.disc as i64),
                })
                .collect(),
        }
    }
}

/// An arithmetic-progression-indexed family of strata: at index `n ≥ start`
/// the stratum has class `class(n)` and the integrand takes the value
/// `L^(exponent(n))` on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumFamily {
    pub index: String,
    #[serde(default)]
    pub start: i64,
    pub class: ExpPoly,
    pub exponent: Affine,
    /// Shape of the covers in the stratum at index `n`; informational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeTemplate>,
}

impl StratumFamily {
    /// Checks `shape` (when present) is a valid shape for the first `count`
    /// indices and that its ordered class matches `class`.
    pub fn check_shapes(&self, count: u64) -> Result<()> {
        let Some(t) = &self.shape else {
            return Ok(());
        };
        for n in self.start..self.start + count as i64 {
            let s = t.at(n)?;
            s.ensure_valid()?;
            let expected = s.ordered_class();
            let got = self.class.eval(n);
            if expected != got {
                return Err(Error::RouteMismatch(format!(
                    "family class {got} differs from shape class {expected} at {} = {n}",
                    self.index
                )));
            }
        }
        Ok(())
    }
}

/// One residue class of the wild stratum family of degree-`m` extensions:
/// the discriminants `d = m - 1 + j` with `j = modulus·i + residue`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueFamily {
    pub modulus: u64,
    pub residue: u64,
    /// Class as a family in `i ≥ 0`.
    pub class: ExpPoly,
    /// Discriminant exponent as a function of `i`.
    pub disc: IntAffine,
}

/// Splits the wild degree-`m` extensions (`p | m`) into residue classes of
/// `j = d - m + 1` modulo `modulus` (a multiple of `p`), so the floor in the
/// class exponent becomes affine. Residues divisible by `p` carry class 0 and
/// are omitted.
///
/// Within a residue class `j ≡ s`, `⌊j/p⌋ = (j - s)/p + ⌊s/p⌋`, which is the
/// family `(L-1)·L^(j/p + ⌊s/p⌋ - s/p)` in `j`; substituting
/// `j = modulus·i + s` gives the family in `i`.
pub fn wild_residue_families(p: u64, m: u64, modulus: u64, index: &str) -> Result<Vec<ResidueFamily>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !m.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!("degree {m} is tame for p = {p}")));
    }
    if modulus == 0 || !modulus.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!(
            "modulus {modulus} must be a positive multiple of p = {p}"
        )));
    }
    let l_minus_1: MotivicValue = "L-1".parse().unwrap();
    let p_i = p as i64;
    let mut out = Vec::new();
    for s in (1..modulus).filter(|s| s % p != 0) {
        let s_i = s as i64;
        let in_j = ExpPoly::from_terms(
            "j",
            vec![ExpTerm::new(
                l_minus_1.clone(),
                Exponent::new(1, p_i),
                Exponent::from_integer(s_i / p_i) - Exponent::new(s_i, p_i),
            )?],
        );
        out.push(ResidueFamily {
            modulus,
            residue: s,
            class: in_j.reindex(modulus, s, index)?,
            disc: IntAffine {
                slope: modulus as i64,
                intercept: m as i64 - 1 + s_i,
            },
        });
    }
    Ok(out)
}
