//! Exact values in the coefficient ring: rational functions in a root
//! `X = L^(1/r)` of the Lefschetz symbol, plus the absorbing value `∞`.
//!
//! Every finite value is stored in a unique canonical form:
//!
//! * `gcd(num, den) = 1` over the rationals,
//! * the integer coefficients of `num` and `den` jointly have content 1,
//! * the leading coefficient of `den` is positive,
//! * `r` is minimal, i.e. `gcd(r, every exponent present) = 1`.
//!
//! Equality of values is therefore structural equality of the fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::{Exponent, IntPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MotivicValue(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Finite {
        num: IntPoly,
        den: IntPoly,
        root: u32,
    },
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl MotivicValue {
    pub fn zero() -> Self {
        Self::finite_unchecked(IntPoly::zero(), IntPoly::one(), 1)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn infinity() -> Self {
        MotivicValue(Repr::Infinity)
    }

    pub fn integer(c: i64) -> Self {
        Self::from_parts(IntPoly::constant(BigInt::from(c)), IntPoly::one(), 1)
            .expect("nonzero denominator")
    }

    pub fn rational(q: &BigRational) -> Self {
        Self::from_parts(
            IntPoly::constant(q.numer().clone()),
            IntPoly::constant(q.denom().clone()),
            1,
        )
        .expect("nonzero denominator")
    }

    /// The Lefschetz symbol `L`.
    pub fn lefschetz() -> Self {
        Self::lpow(Exponent::from_integer(1))
    }

    /// `L^e`.
    pub fn lpow(e: Exponent) -> Self {
        Self::monomial(BigInt::one(), e)
    }

    /// `c * L^e`.
    pub fn monomial(c: BigInt, e: Exponent) -> Self {
        Self::from_terms(&[(c, e)])
    }

    /// Canonical value of `Σ c_i L^(e_i)` with rational exponents.
    pub fn from_terms(terms: &[(BigInt, Exponent)]) -> Self {
        let root = terms
            .iter()
            .fold(1i64, |acc, (_, e)| acc.lcm(e.denom()));
        let scaled: Vec<(BigInt, i64)> = terms
            .iter()
            .map(|(c, e)| (c.clone(), e.numer() * (root / e.denom())))
            .collect();
        let low = scaled.iter().map(|(_, k)| *k).min().unwrap_or(0).min(0);
        let mut num = IntPoly::zero();
        for (c, k) in scaled {
            num = num + IntPoly::monomial(c, (k - low) as usize);
        }
        let den = IntPoly::monomial(BigInt::one(), (-low) as usize);
        Self::from_parts(num, den, root as u32).expect("monomial denominator")
    }

    /// Canonicalizes `num(X) / den(X)` with `X = L^(1/root)`.
    pub fn from_parts(num: IntPoly, den: IntPoly, root: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert!(root > 0, "root index must be positive");
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd_primitive(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        let step = num
            .terms()
            .chain(den.terms())
            .fold(root as usize, |acc, (i, _)| acc.gcd(&i));
        if step > 1 {
            num = num.deflate(step);
            den = den.deflate(step);
        }
        Ok(Self::finite_unchecked(num, den, root / step as u32))
    }

    fn finite_unchecked(num: IntPoly, den: IntPoly, root: u32) -> Self {
        MotivicValue(Repr::Finite { num, den, root })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.0, Repr::Infinity)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Finite { num, .. } if num.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Finite { num, den, .. } if num.is_one() && den.is_one())
    }

    /// Canonical numerator, `None` for `∞`.
    pub fn numerator(&self) -> Option<&IntPoly> {
        match &self.0 {
            Repr::Finite { num, .. } => Some(num),
            Repr::Infinity => None,
        }
    }

    pub fn denominator(&self) -> Option<&IntPoly> {
        match &self.0 {
            Repr::Finite { den, .. } => Some(den),
            Repr::Infinity => None,
        }
    }

    /// The `r` in `X = L^(1/r)`, `None` for `∞`.
    pub fn root_index(&self) -> Option<u32> {
        match &self.0 {
            Repr::Finite { root, .. } => Some(*root),
            Repr::Infinity => None,
        }
    }

    fn parts(&self) -> Result<(&IntPoly, &IntPoly, u32)> {
        match &self.0 {
            Repr::Finite { num, den, root } => Ok((num, den, *root)),
            Repr::Infinity => Err(Error::InfiniteOperand),
        }
    }

    /// Both operands lifted to a common root index.
    fn aligned(a: &Self, b: &Self) -> Result<(IntPoly, IntPoly, IntPoly, IntPoly, u32)> {
        let (an, ad, ar) = a.parts()?;
        let (bn, bd, br) = b.parts()?;
        let root = ar.lcm(&br);
        let (ka, kb) = ((root / ar) as usize, (root / br) as usize);
        Ok((an.inflate(ka), ad.inflate(ka), bn.inflate(kb), bd.inflate(kb), root))
    }

    /// The four field operations with `∞` propagation.
    pub fn arith(op: ArithOp, a: &Self, b: &Self) -> Result<Self> {
        match op {
            ArithOp::Add => a.checked_add(b),
            ArithOp::Sub => a.checked_sub(b),
            ArithOp::Mul => a.checked_mul(b),
            ArithOp::Div => a.checked_div(b),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.is_infinite() || other.is_infinite() {
            return Ok(Self::infinity());
        }
        let (an, ad, bn, bd, root) = Self::aligned(self, other)?;
        if ad == bd {
            return Self::from_parts(&an + &bn, ad, root);
        }
        Self::from_parts(&(&an * &bd) + &(&bn * &ad), &ad * &bd, root)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Err(Error::IndeterminateForm("∞ - ∞")),
            (true, false) | (false, true) => Ok(Self::infinity()),
            (false, false) => self.checked_add(&other.neg_finite()),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ok(Self::infinity()),
            (true, false) | (false, true) => {
                if self.is_zero() || other.is_zero() {
                    Err(Error::IndeterminateForm("∞ · 0"))
                } else {
                    Ok(Self::infinity())
                }
            }
            (false, false) => {
                let (an, ad, bn, bd, root) = Self::aligned(self, other)?;
                Self::from_parts(&an * &bn, &ad * &bd, root)
            }
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Err(Error::IndeterminateForm("∞ / ∞")),
            (true, false) => Ok(Self::infinity()),
            (false, true) => Ok(Self::zero()),
            (false, false) => {
                let (an, ad, bn, bd, root) = Self::aligned(self, other)?;
                Self::from_parts(&an * &bd, &ad * &bn, root)
            }
        }
    }

    fn neg_finite(&self) -> Self {
        match &self.0 {
            Repr::Finite { num, den, root } => {
                Self::finite_unchecked(-num.clone(), den.clone(), *root)
            }
            Repr::Infinity => Self::infinity(),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let (num, den, root) = self.parts().map_err(|_| Error::InfiniteOperand)?;
        if k < 0 && num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut n = IntPoly::one();
        let mut d = IntPoly::one();
        for _ in 0..k.unsigned_abs() {
            n = &n * num;
            d = &d * den;
        }
        if k < 0 {
            std::mem::swap(&mut n, &mut d);
        }
        Self::from_parts(n, d, root)
    }

    /// Multiplies by `L^e`.
    pub fn times_lpow(&self, e: Exponent) -> Self {
        if self.is_infinite() {
            return Self::infinity();
        }
        self.checked_mul(&Self::lpow(e)).expect("finite product")
    }

    /// Substitutes `L^(-1)` for `L`.
    pub fn dualize(&self) -> Result<Self> {
        let (num, den, root) = self.parts()?;
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (dn, dd) = (num.degree().unwrap(), den.degree().unwrap());
        let (num, den) = if dd >= dn {
            (num.reversed().shift(dd - dn), den.reversed())
        } else {
            (num.reversed(), den.reversed().shift(dn - dd))
        };
        Self::from_parts(num, den, root)
    }

    /// Exact value at `L = q`.
    pub fn specialize(&self, q: &BigRational) -> Result<BigRational> {
        let (num, den, root) = self.parts()?;
        let x = rational_root(q, root)?;
        let conv = |c: &BigInt| BigRational::from(c.clone());
        let d = den.eval_with(&x, conv);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes(q.to_string()));
        }
        Ok(num.eval_with(&x, conv) / d)
    }

    /// Floating-point evaluation at `L = q` for any float type. `None` when
    /// the value is infinite or the denominator vanishes.
    pub fn approximate<F: Float + FromPrimitive>(&self, q: F) -> Option<F> {
        let (num, den, root) = self.parts().ok()?;
        let x = q.powf(F::one() / F::from_u32(root)?);
        let conv = |c: &BigInt| F::from_f64(c.to_f64().unwrap_or(f64::NAN)).unwrap_or(F::nan());
        let d = den.eval_with(&x, conv);
        if d.is_zero() {
            return None;
        }
        Some(num.eval_with(&x, conv) / d)
    }

    /// Splits a finite value as `N(X) * X^(-k) / D(X)` with `D(0) != 0`,
    /// returning the numerator as `(coefficient, L-exponent)` terms and `D`.
    pub(crate) fn laurent_split(&self) -> Option<LaurentSplit> {
        let (num, den, root) = self.parts().ok()?;
        let k = den.valuation().unwrap_or(0);
        let r = root as i64;
        let terms = num
            .terms()
            .map(|(i, c)| (c.clone(), Exponent::new(i as i64 - k as i64, r)))
            .collect();
        Some((terms, den.unshift(k), root))
    }
}

impl Default for MotivicValue {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for MotivicValue {
    fn from(c: i64) -> Self {
        Self::integer(c)
    }
}

// Operator sugar over the checked methods. These panic on indeterminate
// forms and division by zero, like integer division does.

impl std::ops::Add for &MotivicValue {
    type Output = MotivicValue;
    fn add(self, rhs: Self) -> MotivicValue {
        self.checked_add(rhs).expect("motivic addition")
    }
}

impl std::ops::Add for MotivicValue {
    type Output = MotivicValue;
    fn add(self, rhs: Self) -> MotivicValue {
        &self + &rhs
    }
}

impl std::ops::Sub for &MotivicValue {
    type Output = MotivicValue;
    fn sub(self, rhs: Self) -> MotivicValue {
        self.checked_sub(rhs).expect("motivic subtraction")
    }
}

impl std::ops::Sub for MotivicValue {
    type Output = MotivicValue;
    fn sub(self, rhs: Self) -> MotivicValue {
        &self - &rhs
    }
}

impl std::ops::Mul for &MotivicValue {
    type Output = MotivicValue;
    fn mul(self, rhs: Self) -> MotivicValue {
        self.checked_mul(rhs).expect("motivic multiplication")
    }
}

impl std::ops::Mul for MotivicValue {
    type Output = MotivicValue;
    fn mul(self, rhs: Self) -> MotivicValue {
        &self * &rhs
    }
}

impl std::ops::Div for &MotivicValue {
    type Output = MotivicValue;
    fn div(self, rhs: Self) -> MotivicValue {
        self.checked_div(rhs).expect("motivic division")
    }
}

impl std::ops::Div for MotivicValue {
    type Output = MotivicValue;
    fn div(self, rhs: Self) -> MotivicValue {
        &self / &rhs
    }
}

impl std::ops::Neg for MotivicValue {
    type Output = MotivicValue;
    fn neg(self) -> MotivicValue {
        self.neg_finite()
    }
}

impl std::ops::Neg for &MotivicValue {
    type Output = MotivicValue;
    fn neg(self) -> MotivicValue {
        self.neg_finite()
    }
}

impl std::iter::Sum for MotivicValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl fmt::Debug for MotivicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Finite { num, den, root } => f
                .debug_struct("MotivicValue")
                .field("value", &self.to_string())
                .field("num", num)
                .field("den", den)
                .field("root", root)
                .finish(),
            Repr::Infinity => write!(f, "MotivicValue(infinity)"),
        }
    }
}

/// Exact `r`-th root of a rational, if it exists.
/// Numerator terms `(c, e)` for `c·L^e`, the remaining denominator, and
/// the root index.
pub(crate) type LaurentSplit = (Vec<(BigInt, Exponent)>, IntPoly, u32);

pub fn rational_root(q: &BigRational, r: u32) -> Result<BigRational> {
    if r == 1 {
        return Ok(q.clone());
    }
    let irrational = || Error::IrrationalRoot {
        value: q.to_string(),
        root: r,
    };
    if q.is_negative() && r.is_multiple_of(2) {
        return Err(irrational());
    }
    let n = q.numer().nth_root(r);
    let d = q.denom().nth_root(r);
    if num_traits::pow(n.clone(), r as usize) != *q.numer()
        || num_traits::pow(d.clone(), r as usize) != *q.denom()
    {
        return Err(irrational());
    }
    Ok(BigRational::new(n, d))
}

/// Exact `q^e` for a rational exponent.
pub fn rational_pow(q: &BigRational, e: Exponent) -> Result<BigRational> {
    let base = rational_root(q, *e.denom() as u32)?;
    let k = *e.numer();
    if k < 0 && base.is_zero() {
        return Err(Error::DenominatorVanishes(q.to_string()));
    }
    let p = num_traits::pow(base, k.unsigned_abs() as usize);
    Ok(if k < 0 { p.recip() } else { p })
}
