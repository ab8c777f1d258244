//! Linear-exponential families `Σ c_k · L^(a_k·n + b_k)` in one symbolic
//! integer index `n`, with closed-form finite and infinite geometric sums,
//! arithmetic-progression reindexing and an exact numeric partial-sum oracle.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{rational_pow, MotivicValue};
use crate::serde_util;
use crate::Exponent;

/// `slope·n + intercept` with rational coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Affine {
    #[serde(with = "serde_util::rational")]
    pub slope: Exponent,
    #[serde(with = "serde_util::rational")]
    pub intercept: Exponent,
}

impl Affine {
    pub fn new(slope: Exponent, intercept: Exponent) -> Self {
        Affine { slope, intercept }
    }

    pub fn constant(c: Exponent) -> Self {
        Affine::new(Exponent::zero(), c)
    }

    pub fn eval(&self, n: i64) -> Exponent {
        self.slope * n + self.intercept
    }

    pub fn scale(&self, k: Exponent) -> Self {
        Affine::new(self.slope * k, self.intercept * k)
    }

    /// The unique affine map through `(0, at0)` and `(1, at1)`.
    pub fn through(at0: Exponent, at1: Exponent) -> Self {
        Affine::new(at1 - at0, at0)
    }
}

impl std::ops::Add for Affine {
    type Output = Affine;
    fn add(self, o: Affine) -> Affine {
        Affine::new(self.slope + o.slope, self.intercept + o.intercept)
    }
}

impl std::ops::Neg for Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        Affine::new(-self.slope, -self.intercept)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpTerm {
    coeff: MotivicValue,
    #[serde(with = "serde_util::rational")]
    slope: Exponent,
    #[serde(with = "serde_util::rational")]
    intercept: Exponent,
}

impl ExpTerm {
    pub fn new(coeff: MotivicValue, slope: Exponent, intercept: Exponent) -> Result<Self> {
        if coeff.is_infinite() {
            return Err(Error::InfiniteOperand);
        }
        Ok(ExpTerm {
            coeff,
            slope,
            intercept,
        })
    }

    pub fn coeff(&self) -> &MotivicValue {
        &self.coeff
    }

    pub fn slope(&self) -> Exponent {
        self.slope
    }

    pub fn intercept(&self) -> Exponent {
        self.intercept
    }

    pub fn exponent(&self) -> Affine {
        Affine::new(self.slope, self.intercept)
    }

    fn eval(&self, n: i64) -> MotivicValue {
        self.coeff.times_lpow(self.slope * n + self.intercept)
    }
}

/// A finite sum of [`ExpTerm`]s over a named index.
///
/// Terms are kept sorted by `(slope, intercept)` descending with exact
/// duplicates merged and zero coefficients dropped. Equality is semantic:
/// two families are equal when they agree as functions of the index, which
/// is decided by comparing `Σ c·L^b` slope by slope.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpPoly {
    index: String,
    terms: Vec<ExpTerm>,
}

impl ExpPoly {
    pub fn new(index: impl Into<String>) -> Self {
        ExpPoly {
            index: index.into(),
            terms: Vec::new(),
        }
    }

    pub fn from_terms(index: impl Into<String>, terms: Vec<ExpTerm>) -> Self {
        let mut p = ExpPoly {
            index: index.into(),
            terms,
        };
        p.normalize();
        p
    }

    /// `coeff · L^(slope·n + intercept)`.
    pub fn monomial(
        index: impl Into<String>,
        coeff: MotivicValue,
        slope: Exponent,
        intercept: Exponent,
    ) -> Result<Self> {
        Ok(Self::from_terms(index, vec![ExpTerm::new(coeff, slope, intercept)?]))
    }

    /// The family `L^(slope·n + intercept)`.
    pub fn geometric(index: impl Into<String>, exponent: Affine) -> Self {
        Self::monomial(index, MotivicValue::one(), exponent.slope, exponent.intercept)
            .expect("finite coefficient")
    }

    /// A family constant in the index.
    pub fn constant(index: impl Into<String>, c: MotivicValue) -> Result<Self> {
        Self::monomial(index, c, Exponent::zero(), Exponent::zero())
    }

    fn normalize(&mut self) {
        let mut merged: BTreeMap<(Exponent, Exponent), MotivicValue> = BTreeMap::new();
        for t in self.terms.drain(..) {
            let slot = merged
                .entry((t.slope, t.intercept))
                .or_insert_with(MotivicValue::zero);
            *slot = &*slot + &t.coeff;
        }
        self.terms = merged
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|((slope, intercept), coeff)| ExpTerm {
                coeff,
                slope,
                intercept,
            })
            .collect();
    }

    pub fn index(&self) -> &str {
        &self.index
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.by_slope().is_empty()
    }

    /// `slope -> Σ c·L^b`, dropping slopes whose total vanishes.
    pub fn by_slope(&self) -> BTreeMap<Exponent, MotivicValue> {
        let mut out: BTreeMap<Exponent, MotivicValue> = BTreeMap::new();
        for t in &self.terms {
            let slot = out.entry(t.slope).or_insert_with(MotivicValue::zero);
            *slot = &*slot + &t.coeff.times_lpow(t.intercept);
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn renamed(&self, index: impl Into<String>) -> Self {
        ExpPoly {
            index: index.into(),
            terms: self.terms.clone(),
        }
    }

    fn check_index(&self, other: &ExpPoly) -> Result<()> {
        if self.index != other.index {
            return Err(Error::IndexMismatch {
                expected: self.index.clone(),
                found: other.index.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &ExpPoly) -> Result<Self> {
        self.check_index(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self::from_terms(self.index.clone(), terms))
    }

    pub fn mul(&self, other: &ExpPoly) -> Result<Self> {
        self.check_index(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(ExpTerm {
                    coeff: &a.coeff * &b.coeff,
                    slope: a.slope + b.slope,
                    intercept: a.intercept + b.intercept,
                });
            }
        }
        Ok(Self::from_terms(self.index.clone(), terms))
    }

    pub fn scale(&self, c: &MotivicValue) -> Result<Self> {
        if c.is_infinite() {
            return Err(Error::InfiniteOperand);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| ExpTerm {
                coeff: &t.coeff * c,
                ..t.clone()
            })
            .collect();
        Ok(Self::from_terms(self.index.clone(), terms))
    }

    /// Multiplies every term by `L^(e.slope·n + e.intercept)`.
    pub fn times_geometric(&self, e: Affine) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| ExpTerm {
                coeff: t.coeff.clone(),
                slope: t.slope + e.slope,
                intercept: t.intercept + e.intercept,
            })
            .collect();
        Self::from_terms(self.index.clone(), terms)
    }

    /// Value of the family at index `n`.
    pub fn eval(&self, n: i64) -> MotivicValue {
        self.terms.iter().map(|t| t.eval(n)).sum()
    }

    /// `Σ_{n=0}^{m-1} f(n)` as a family in the new index `m`.
    ///
    /// Each term `c·L^(an+b)` becomes `c·L^b/(L^a-1) · (L^(am) - 1)`.
    pub fn sum_finite(&self, upper: impl Into<String>) -> Result<Self> {
        let mut terms = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            if t.slope.is_zero() {
                return Err(Error::ZeroSlopeUnsupported);
            }
            let denom = &MotivicValue::lpow(t.slope) - &MotivicValue::one();
            let c = &t.coeff.times_lpow(t.intercept) / &denom;
            terms.push(ExpTerm {
                coeff: c.clone(),
                slope: t.slope,
                intercept: Exponent::zero(),
            });
            terms.push(ExpTerm {
                coeff: -c,
                slope: Exponent::zero(),
                intercept: Exponent::zero(),
            });
        }
        Ok(Self::from_terms(upper, terms))
    }

    /// True when every slope with a nonzero total coefficient is negative.
    pub fn converges(&self) -> bool {
        self.by_slope().keys().all(|a| a.is_negative())
    }

    /// `Σ_{n≥start} f(n)`: exact when every slope is negative, otherwise `∞`.
    pub fn sum_infinite(&self, start: i64) -> MotivicValue {
        let groups = self.by_slope();
        if groups.keys().any(|a| !a.is_negative()) {
            return MotivicValue::infinity();
        }
        groups
            .into_iter()
            .map(|(a, c)| {
                let head = c.times_lpow(a * start);
                &head / &(&MotivicValue::one() - &MotivicValue::lpow(a))
            })
            .sum()
    }

    /// Restricts to `n = modulus·i + residue`, returning a family in `i`.
    pub fn reindex(&self, modulus: u64, residue: u64, index: impl Into<String>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("reindex modulus must be positive".into()));
        }
        let (p, s) = (modulus as i64, residue as i64);
        let terms = self
            .terms
            .iter()
            .map(|t| ExpTerm {
                coeff: t.coeff.clone(),
                slope: t.slope * p,
                intercept: t.intercept + t.slope * s,
            })
            .collect();
        Ok(Self::from_terms(index, terms))
    }

    /// Exact `Σ_{n=start}^{start+count-1} f(n)` at `L = q`.
    pub fn numeric_partial_sum(&self, start: i64, count: u64, q: &BigRational) -> Result<BigRational> {
        let coeffs = self
            .terms
            .iter()
            .map(|t| t.coeff.specialize(q))
            .collect::<Result<Vec<_>>>()?;
        let mut total = BigRational::zero();
        for (t, c) in self.terms.iter().zip(&coeffs) {
            if c.is_zero() {
                continue;
            }
            let ratio = rational_pow(q, t.slope)?;
            let mut term = c * rational_pow(q, t.slope * start + t.intercept)?;
            for _ in 0..count {
                total += &term;
                term *= &ratio;
            }
        }
        Ok(total)
    }

    /// Bound on `|Σ_{n≥start+count} f(n)|` at `L = q > 1`:
    /// `Σ |c(q)|·q^(a·(start+count)+b) / (1 - q^a)` over the terms.
    pub fn tail_bound(&self, start: i64, count: u64, q: &BigRational) -> Result<BigRational> {
        let one = BigRational::from_integer(1.into());
        if *q <= one {
            return Err(Error::InvalidArgument("tail bound needs q > 1".into()));
        }
        let first = start + count as i64;
        let mut bound = BigRational::zero();
        for t in &self.terms {
            if !t.slope.is_negative() {
                return Err(Error::InvalidArgument("tail bound of a divergent family".into()));
            }
            let c = t.coeff.specialize(q)?.abs();
            let head = rational_pow(q, t.slope * first + t.intercept)?;
            bound += c * head / (&one - rational_pow(q, t.slope)?);
        }
        Ok(bound)
    }
}

/// Smallest `i` with `modulus·i + residue ≥ start`.
pub fn reindexed_start(start: i64, modulus: u64, residue: u64) -> i64 {
    Integer::div_ceil(&(start - residue as i64), &(modulus as i64))
}

impl PartialEq for ExpPoly {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.by_slope() == other.by_slope()
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let n = &self.index;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let lin = match (t.slope.is_zero(), t.intercept.is_zero()) {
                (true, _) => None,
                (false, true) => Some(format!("{}*{n}", t.slope)),
                (false, false) => Some(format!("{}*{n}+{}", t.slope, t.intercept)),
            };
            match lin {
                None if t.intercept.is_zero() => write!(f, "({})", t.coeff)?,
                None => write!(f, "({})*L^({})", t.coeff, t.intercept)?,
                Some(lin) => write!(f, "({})*L^({lin})", t.coeff)?,
            }
        }
        Ok(())
    }
}
