//! Stringy motifs from a simple normal crossing model:
//!
//! `M_st = Σ_h L^(a_h) Σ_J [W ∩ A_h° ∩ C_J°] Π_{j∈J} (L-1)/(L^(1-c_j)-1)`.
//!
//! The same evaluator serves quotient stacks: callers pass the classes of
//! the quotients `[·/G]` directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::MotivicValue;
use crate::series::{Affine, ExpPoly};
use crate::{fixtures, Exponent};

fn yes() -> bool {
    true
}

/// One piece `W ∩ A_h° ∩ C_J°` of the stratification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SncStratum {
    /// `a_h`, the coefficient of the vertical divisor.
    #[serde(with = "crate::serde_util::rational")]
    pub shift: Exponent,
    pub class: MotivicValue,
    /// `c_j` for the horizontal divisors `j ∈ J` through the stratum.
    #[serde(default, with = "crate::serde_util::rational_vec")]
    pub coeffs: Vec<Exponent>,
    /// Whether the horizontal divisors meet `W` inside the smooth locus.
    #[serde(default = "yes")]
    pub meets_center_smooth: bool,
}

impl SncStratum {
    pub fn new(shift: Exponent, class: MotivicValue, coeffs: Vec<Exponent>) -> Self {
        SncStratum {
            shift,
            class,
            coeffs,
            meets_center_smooth: true,
        }
    }

    /// Whether the stratum forces divergence: nonzero class, meets the
    /// center in the smooth locus, and some `c_j ≥ 1`.
    pub fn diverges(&self) -> bool {
        self.meets_center_smooth
            && !self.class.is_zero()
            && self.coeffs.iter().any(|c| *c >= Exponent::from_integer(1))
    }

    /// `Π_j (L-1)/(L^(1-c_j)-1)`, defined when every `c_j < 1`.
    fn horizontal_factor(&self) -> Result<MotivicValue> {
        let l_minus_1 = &MotivicValue::lefschetz() - &MotivicValue::one();
        let one = MotivicValue::one();
        let mut acc = MotivicValue::one();
        for c in &self.coeffs {
            let den = &MotivicValue::lpow(Exponent::from_integer(1) - c) - &one;
            acc = acc.checked_mul(&l_minus_1.checked_div(&den)?)?;
        }
        Ok(acc)
    }

    /// `class · Π_j (L-1)/(L^(1-c_j)-1)` without the shift.
    fn weight(&self) -> Result<Option<MotivicValue>> {
        if self.diverges() {
            return Err(Error::InfiniteOperand);
        }
        if self.class.is_zero() || self.coeffs.iter().any(|c| *c >= Exponent::from_integer(1)) {
            // Either nothing to count, or divisors away from the smooth
            // locus of the center: no contribution.
            return Ok(None);
        }
        Ok(Some(self.class.checked_mul(&self.horizontal_factor()?)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SncModel {
    pub label: String,
    pub strata: Vec<SncStratum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
}

impl SncModel {
    pub fn new(label: impl Into<String>, strata: Vec<SncStratum>) -> Self {
        SncModel {
            label: label.into(),
            strata,
            notes: None,
            version: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.strata.is_empty() {
            return Err(Error::InvalidArgument(format!("model `{}` has no strata", self.label)));
        }
        if let Some(s) = self.strata.iter().find(|s| s.class.is_infinite()) {
            return Err(Error::InvalidArgument(format!("stratum class must be finite, got {}", s.class)));
        }
        Ok(())
    }
}

/// The stringy motif of the model, `∞` when some stratum meeting the
/// center has a horizontal coefficient `c_j ≥ 1`.
pub fn evaluate_snc(model: &SncModel) -> Result<MotivicValue> {
    model.validate()?;
    if model.strata.iter().any(SncStratum::diverges) {
        return Ok(MotivicValue::infinity());
    }
    let mut total = MotivicValue::zero();
    for s in &model.strata {
        if let Some(w) = s.weight()? {
            total = total.checked_add(&w.times_lpow(s.shift))?;
        }
    }
    Ok(total)
}

/// Sum of the contributions of the individual covers.
pub fn eparts_total(eparts: &[MotivicValue]) -> Result<MotivicValue> {
    eparts
        .iter()
        .try_fold(MotivicValue::zero(), |acc, e| acc.checked_add(e))
}

/// A stratum whose shift depends affinely on a family index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SncTemplateStratum {
    pub shift: Affine,
    pub class: MotivicValue,
    #[serde(default, with = "crate::serde_util::rational_vec")]
    pub coeffs: Vec<Exponent>,
    #[serde(default = "yes")]
    pub meets_center_smooth: bool,
}

/// A family of SNC models whose strata shift with the index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SncTemplate {
    pub label: String,
    pub index: String,
    /// Smallest index for which the model describes an actual resolution.
    pub valid_from: i64,
    pub strata: Vec<SncTemplateStratum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
}

impl SncTemplate {
    pub fn instantiate(&self, n: i64) -> SncModel {
        SncModel {
            label: format!("{} ({} = {n})", self.label, self.index),
            strata: self
                .strata
                .iter()
                .map(|s| SncStratum {
                    shift: s.shift.eval(n),
                    class: s.class.clone(),
                    coeffs: s.coeffs.clone(),
                    meets_center_smooth: s.meets_center_smooth,
                })
                .collect(),
            notes: self.notes.clone(),
            version: self.version,
        }
    }

    /// The stringy motif as a family in the index. Fails when the family
    /// diverges, which does not depend on the index.
    pub fn evaluate_family(&self) -> Result<ExpPoly> {
        let mut family = ExpPoly::new(self.index.clone());
        for s in &self.strata {
            let fixed = SncStratum {
                shift: Exponent::from_integer(0),
                class: s.class.clone(),
                coeffs: s.coeffs.clone(),
                meets_center_smooth: s.meets_center_smooth,
            };
            if let Some(w) = fixed.weight()? {
                let term = ExpPoly::monomial(self.index.clone(), w, s.shift.slope, s.shift.intercept)?;
                family = family.add(&term)?;
            }
        }
        Ok(family)
    }
}

/// `(L+1)^2·L^(2-3n)/(L^2+L+1)`.
pub fn wild_epart_closed_form(n: i64) -> MotivicValue {
    let base: MotivicValue = "(L+1)^2/(L^2+L+1)".parse().expect("valid literal");
    base.times_lpow(Exponent::from_integer(2 - 3 * n))
}

/// The contribution of the wild cover with `ord Tr(ρ) = n`: the resolution
/// value times `L^(-2n)`. Both the two-`A_1` model (`n = 1`) and the `D_2n^0`
/// family (read at `n`, also for `n = 1`) are evaluated and must agree with
/// the closed form.
pub fn wild_example_epart(n: i64) -> Result<MotivicValue> {
    if n < 1 {
        return Err(Error::InvalidArgument("the wild cover index starts at 1".into()));
    }
    let twist = Exponent::from_integer(-2 * n);
    let expected = wild_epart_closed_form(n);
    let template = fixtures::wild_template()?;
    let via_template = evaluate_snc(&template.instantiate(n))?.times_lpow(twist);
    let via_family = template.evaluate_family()?.eval(n).times_lpow(twist);
    let mut routes = vec![("template", via_template), ("family", via_family)];
    if n == 1 {
        routes.push(("two A1", evaluate_snc(&fixtures::wild_n1()?)?.times_lpow(twist)));
    }
    for (name, value) in routes {
        if value != expected {
            return Err(Error::RouteMismatch(format!(
                "{name} route gives {value}, closed form {expected} (n = {n})"
            )));
        }
    }
    Ok(expected)
}

/// The contribution of all nontrivial covers:
/// `Σ_{n≥1} (L-1)·L^(n-1) · E(n)` with `E` the family from the template.
pub fn wild_nontrivial_total() -> Result<MotivicValue> {
    let template = fixtures::wild_template()?;
    let index = template.index.clone();
    let per_cover = template
        .evaluate_family()?
        .times_geometric(Affine::new(Exponent::from_integer(-2), Exponent::from_integer(0)));
    let stratum = ExpPoly::monomial(
        index,
        "L-1".parse()?,
        Exponent::from_integer(1),
        Exponent::from_integer(-1),
    )?;
    Ok(per_cover.mul(&stratum)?.sum_infinite(1))
}

/// The wild example summed over all covers.
pub fn wild_total() -> Result<MotivicValue> {
    let trivial = evaluate_snc(&fixtures::wild_e1()?)?;
    eparts_total(&[trivial, wild_nontrivial_total()?])
}

/// The tame example: the two cover contributions and the direct value.
pub fn tame_example() -> Result<(Vec<MotivicValue>, MotivicValue)> {
    let parts = vec![
        evaluate_snc(&fixtures::tame_e1()?)?,
        evaluate_snc(&fixtures::tame_e2()?)?,
    ];
    Ok((parts, evaluate_snc(&fixtures::tame_direct()?)?))
}
