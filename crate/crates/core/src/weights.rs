//! Weight functions `v` and `w` for permutation representations, invariant
//! hyperplanes `Σ f_i x_i = 0` inside them, and `Z/pZ`-covers; orders `b`
//! of the pulled-back hyperplane equation, and the vertical boundary
//! coefficients of (pre-)untwisting varieties.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ramification::{is_prime, EtaleShape};
use crate::serde_util::parse_rational;
use crate::Exponent;

/// A valuation `v_D(f_j)`, possibly `+∞` for a vanishing coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FVal {
    Finite(Exponent),
    Infinite,
}

impl FVal {
    pub fn finite(&self) -> Option<Exponent> {
        match self {
            FVal::Finite(q) => Some(*q),
            FVal::Infinite => None,
        }
    }
}

impl PartialOrd for FVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FVal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FVal::Finite(a), FVal::Finite(b)) => a.cmp(b),
            (FVal::Finite(_), FVal::Infinite) => Ordering::Less,
            (FVal::Infinite, FVal::Finite(_)) => Ordering::Greater,
            (FVal::Infinite, FVal::Infinite) => Ordering::Equal,
        }
    }
}

impl From<i64> for FVal {
    fn from(k: i64) -> Self {
        FVal::Finite(Exponent::from_integer(k))
    }
}

impl fmt::Display for FVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FVal::Finite(q) => write!(f, "{q}"),
            FVal::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for FVal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FVal::Finite(q) if q.is_integer() => s.serialize_i64(*q.numer()),
            _ => s.collect_str(self),
        }
    }
}

impl<'de> Deserialize<'de> for FVal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(k) => Ok(k.into()),
            Raw::Text(t) if matches!(t.trim(), "inf" | "infinity" | "∞") => Ok(FVal::Infinite),
            Raw::Text(t) => parse_rational(&t).map(FVal::Finite).map_err(de::Error::custom),
        }
    }
}

/// The hyperplane `Σ f_i x_i = 0` seen from one cover: the orbit
/// decomposition as an étale shape, and `v_D(f_j)` per orbit representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperplaneDatum {
    pub shape: EtaleShape,
    pub fvals: Vec<FVal>,
}

impl HyperplaneDatum {
    pub fn new(shape: EtaleShape, fvals: Vec<FVal>) -> Self {
        HyperplaneDatum { shape, fvals }
    }

    /// The hyperplane `x_1 + ... + x_d = 0`: every coefficient is a unit.
    pub fn sum_of_coordinates(shape: EtaleShape) -> Self {
        let fvals = vec![FVal::from(0); shape.len()];
        Self::new(shape, fvals)
    }

    pub fn validate(&self) -> Result<()> {
        self.shape.ensure_valid()?;
        if self.fvals.len() != self.shape.len() {
            return Err(Error::FvalCountMismatch {
                fvals: self.fvals.len(),
                components: self.shape.len(),
            });
        }
        if let Some(neg) = self.fvals.iter().find_map(|f| f.finite().filter(|q| q.is_negative())) {
            return Err(Error::NegativeValuation(neg.to_string()));
        }
        Ok(())
    }

    /// Whether some coefficient is a unit (valuation 0).
    pub fn has_unit_coefficient(&self) -> bool {
        self.fvals.iter().any(|f| *f == FVal::from(0))
    }

    /// `min_j (v_D(f_j) + ⌊d_j / n_j⌋)`, skipping infinite valuations.
    fn min_term(&self) -> Result<Exponent> {
        self.validate()?;
        self.fvals
            .iter()
            .zip(&self.shape.components)
            .filter_map(|(f, c)| {
                f.finite()
                    .map(|q| q + Exponent::from_integer((c.disc / c.degree) as i64))
            })
            .min()
            .ok_or(Error::AllCoefficientsVanish)
    }
}

/// Which representation the fixed locus is taken in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    /// The full permutation representation.
    Full,
    /// The hyperplane `x_1 + ... + x_d = 0`.
    Hyperplane,
}

/// `v` for the permutation representation: half the total discriminant.
pub fn v_perm(shape: &EtaleShape) -> Result<Exponent> {
    shape.ensure_valid()?;
    Ok(Exponent::new(shape.disc() as i64, 2))
}

/// `v` for the hyperplane:
/// `½ Σ d_j - min_j (v_D(f_j) + ⌊d_j / n_j⌋)`.
pub fn v_hyperplane(h: &HyperplaneDatum) -> Result<Exponent> {
    let min = h.min_term()?;
    Ok(v_perm(&h.shape)? - min)
}

/// Codimension of the fixed locus of the stabilizer.
///
/// For the full representation this is `d - l` (`l` orbits). For the
/// hyperplane: if `p` divides every orbit size the equation restricted to
/// the fixed locus vanishes identically, giving `(d - 1) - l`; otherwise the
/// fixed locus is cut down by one and the codimension is `d - l`.
///
/// The hyperplane rule is an extrapolation pinned by two data points: the
/// connected `Z/pZ`-cover on the degree-`p` hyperplane (`p - 2`) and the
/// `(2,2)` stratum for `S_4` in characteristic 2 (`1`).
pub fn codim_fixed_locus(shape: &EtaleShape, space: Space) -> Result<i64> {
    shape.ensure_valid()?;
    let d = shape.degree() as i64;
    let l = shape.len() as i64;
    Ok(match space {
        Space::Full => d - l,
        Space::Hyperplane => {
            let p = shape.p;
            if p != 0 && shape.components.iter().all(|c| c.degree % p == 0) {
                d - 1 - l
            } else {
                d - l
            }
        }
    })
}

/// `w = codim - v`.
pub fn w_weight(codim: i64, v: Exponent) -> Exponent {
    Exponent::from_integer(codim) - v
}

/// `Σ_{i=1}^{upto} ⌊i·j / p⌋`.
pub fn floor_sum(p: u64, j: u64, upto: u64) -> u64 {
    (1..=upto).map(|i| i * j / p).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PcyclicWeights {
    /// Discriminant exponent `(p-1)(j+1)`.
    pub disc: u64,
    pub v: Exponent,
    pub w: Exponent,
}

/// Weights of a `Z/pZ`-cover with ramification jump `j` acting on the
/// hyperplane of the regular permutation representation.
///
/// `v` is computed twice, as `d/2 - ⌊d/p⌋` with `d = (p-1)(j+1)` and as
/// `(p-2) + Σ_{i=1}^{p-2} ⌊ij/p⌋`, and the two must agree. Then
/// `w = (p-2) - v = -Σ_{i=1}^{p-2} ⌊ij/p⌋`.
pub fn pcyclic_weights(p: u64, j: u64) -> Result<PcyclicWeights> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if j == 0 {
        return Err(Error::InvalidArgument("ramification jump must be positive".into()));
    }
    if j.is_multiple_of(p) {
        return Err(Error::JumpDivisibleByP { p, jump: j });
    }
    let disc = (p - 1) * (j + 1);
    let via_disc = Exponent::new(disc as i64, 2) - Exponent::from_integer((disc / p) as i64);
    let via_sum = Exponent::from_integer((p - 2 + floor_sum(p, j, p - 2)) as i64);
    if via_disc != via_sum {
        return Err(Error::RouteMismatch(format!(
            "p-cyclic v: {via_disc} from the discriminant, {via_sum} from the floor sum (p={p}, j={j})"
        )));
    }
    Ok(PcyclicWeights {
        disc,
        v: via_disc,
        w: w_weight(p as i64 - 2, via_disc),
    })
}

/// Order of the pulled-back hyperplane equation along the fixed locus:
/// `#H · min_j (v_D(f_j) + ⌊d_j / n_j⌋)`.
pub fn b_order(h: &HyperplaneDatum, group_order: u64) -> Result<Exponent> {
    h.validate()?;
    if let Some(c) = h
        .shape
        .components
        .iter()
        .find(|c| group_order == 0 || !group_order.is_multiple_of(c.degree))
    {
        return Err(Error::InconsistentGroupOrder {
            order: group_order,
            orbit: c.degree,
        });
    }
    Ok(h.min_term()? * group_order as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryCoeffs {
    /// Coefficient of the special fiber in the pre-untwisting boundary.
    pub pre_untwist: Exponent,
    /// Coefficient of the special fiber in the untwisting boundary.
    pub untwist: Exponent,
    /// For the hypersurface case, whether `b` is a multiple of `#H` as it
    /// must be for an invariant equation. `None` in the linear case.
    pub b_multiple_of_order: Option<bool>,
}

/// Vertical boundary coefficients after (pre-)untwisting:
///
/// * pre-untwist: `δ - (#H·v + d_{F/D})`,
/// * untwist: `δ/#H - v` in the linear case, `δ/#H + b/#H - v` for a
///   hypersurface whose equation pulls back with order `b`.
pub fn boundary_coeffs(
    group_order: u64,
    v: Exponent,
    different: u64,
    pulled_delta: Exponent,
    b: Option<Exponent>,
) -> Result<BoundaryCoeffs> {
    if group_order == 0 {
        return Err(Error::InvalidArgument("group order must be positive".into()));
    }
    let h = group_order as i64;
    let pre_untwist = pulled_delta - (v * h + Exponent::from_integer(different as i64));
    let base = pulled_delta / h - v;
    Ok(match b {
        None => BoundaryCoeffs {
            pre_untwist,
            untwist: base,
            b_multiple_of_order: None,
        },
        Some(b) => BoundaryCoeffs {
            pre_untwist,
            untwist: base + b / h,
            b_multiple_of_order: Some((b / h).is_integer()),
        },
    })
}

/// `true` when `v_hyperplane` and `v_perm` coincide, i.e. some orbit has
/// `v_D(f_j) + ⌊d_j/n_j⌋ = 0`.
pub fn hyperplane_min_vanishes(h: &HyperplaneDatum) -> Result<bool> {
    Ok(h.min_term()?.is_zero())
}
