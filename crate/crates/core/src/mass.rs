//! Integrals `∫ L^(exponent) dτ` over stratified families of covers, the
//! motivic Serre mass formula, and the `S_4` table in characteristic 2.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ramification::{
    is_prime, krasner_class, sym_pair_diag_class, ComponentTemplate, EtaleShape, IntAffine,
    LocalFieldShape, ShapeTemplate, StratumFamily, wild_residue_families,
};
use crate::ring::MotivicValue;
use crate::series::{Affine, ExpPoly, ExpTerm};
use crate::text::render_sum;
use crate::weights::{codim_fixed_locus, v_hyperplane, HyperplaneDatum, Space};
use crate::Exponent;

/// A stratum with fixed class on which the integrand is `L^exponent`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteStratum {
    pub class: MotivicValue,
    #[serde(with = "crate::serde_util::rational")]
    pub exponent: Exponent,
}

/// A stratification of the space of covers together with the integrand's
/// value on each piece.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassSpec {
    #[serde(default)]
    pub finite_strata: Vec<FiniteStratum>,
    #[serde(default)]
    pub families: Vec<StratumFamily>,
}

impl MassSpec {
    pub fn validate(&self) -> Result<()> {
        if let Some(s) = self.finite_strata.iter().find(|s| s.class.is_infinite()) {
            return Err(Error::InvalidArgument(format!(
                "stratum class must be finite, got {}",
                s.class
            )));
        }
        for f in &self.families {
            if f.class.index() != f.index {
                return Err(Error::IndexMismatch {
                    expected: f.index.clone(),
                    found: f.class.index().to_string(),
                });
            }
        }
        Ok(())
    }

    /// Disjoint union of two stratifications.
    pub fn union(&self, other: &MassSpec) -> MassSpec {
        let mut out = self.clone();
        out.finite_strata.extend(other.finite_strata.iter().cloned());
        out.families.extend(other.families.iter().cloned());
        out
    }

    /// The same strata with every exponent shifted by `c`.
    pub fn shifted(&self, c: Exponent) -> MassSpec {
        let mut out = self.clone();
        for s in &mut out.finite_strata {
            s.exponent += c;
        }
        for f in &mut out.families {
            f.exponent.intercept += c;
        }
        out
    }

    /// The summands `class(n)·L^(exponent(n))` of each family with its start.
    pub fn integrands(&self) -> Vec<(ExpPoly, i64)> {
        self.families
            .iter()
            .map(|f| (f.class.times_geometric(f.exponent), f.start))
            .collect()
    }

    /// Exact truncation at `L = q`: the finite strata plus `count` terms of
    /// every family, together with a bound on the omitted tails.
    pub fn numeric_estimate(&self, count: u64, q: &BigRational) -> Result<(BigRational, BigRational)> {
        let mut partial = BigRational::zero();
        let mut tail = BigRational::zero();
        for s in &self.finite_strata {
            partial += s.class.times_lpow(s.exponent).specialize(q)?;
        }
        for (family, start) in self.integrands() {
            partial += family.numeric_partial_sum(start, count, q)?;
            tail += family.tail_bound(start, count, q)?;
        }
        Ok((partial, tail))
    }
}

/// `Σ class·L^exponent` over the finite strata plus the closed-form sum of
/// each family. Any divergent family makes the result `∞`.
pub fn integrate(spec: &MassSpec) -> MotivicValue {
    let mut total = MotivicValue::zero();
    for (family, start) in spec.integrands() {
        let part = family.sum_infinite(start);
        if part.is_infinite() {
            return part;
        }
        total = &total + &part;
    }
    for s in &spec.finite_strata {
        total = &total + &s.class.times_lpow(s.exponent);
    }
    total
}

/// Strata of degree-`m` extensions of a local field of residue
/// characteristic `p`, weighted by `L^(-d)`.
///
/// Tame degrees give a single stratum at `d = m - 1`. Wild degrees give one
/// family per nonzero residue of `d - m + 1` modulo `p`.
pub fn serre_mass_spec(p: u64, m: u64) -> Result<MassSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    if !m.is_multiple_of(p) {
        let d = m as i64 - 1;
        return Ok(MassSpec {
            finite_strata: vec![FiniteStratum {
                class: krasner_class(p, m, d),
                exponent: Exponent::from_integer(-d),
            }],
            families: Vec::new(),
        });
    }
    let families = wild_residue_families(p, m, p, "i")?
        .into_iter()
        .map(|r| StratumFamily {
            index: "i".into(),
            start: 0,
            class: r.class,
            exponent: Affine::new(
                Exponent::from_integer(-r.disc.slope),
                Exponent::from_integer(-r.disc.intercept),
            ),
            shape: Some(ShapeTemplate {
                p,
                components: vec![ComponentTemplate {
                    degree: m,
                    disc: r.disc,
                }],
            }),
        })
        .collect();
    Ok(MassSpec {
        finite_strata: Vec::new(),
        families,
    })
}

/// `∫_{Fie_m} L^(-d) dτ`.
pub fn serre_mass(p: u64, m: u64) -> Result<MotivicValue> {
    Ok(integrate(&serre_mass_spec(p, m)?))
}

/// Whether [`serre_mass`] equals `L^(1-m)`.
pub fn check_serre(p: u64, m: u64) -> Result<bool> {
    Ok(serre_mass(p, m)? == MotivicValue::lpow(Exponent::from_integer(1 - m as i64)))
}

/// Whether `b` is the dual of `a`.
pub fn check_duality(a: &MotivicValue, b: &MotivicValue) -> Result<bool> {
    if a.is_infinite() || b.is_infinite() {
        return Err(Error::InfiniteOperand);
    }
    Ok(a.dualize()? == *b)
}

/// The function integrated over the space of `G`-covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrand {
    /// `L^(-k·v)`.
    NegV(i64),
    /// `L^(k·w)` with `w = codim - v`.
    PosW(i64),
}

impl Integrand {
    fn exponent(&self, codim: i64, v: Exponent) -> Exponent {
        match *self {
            Integrand::NegV(k) => -v * k,
            Integrand::PosW(k) => (Exponent::from_integer(codim) - v) * k,
        }
    }

    fn affine(&self, codim: i64, v: Affine) -> Affine {
        match *self {
            Integrand::NegV(k) => v.scale(Exponent::from_integer(-k)),
            Integrand::PosW(k) => {
                (Affine::constant(Exponent::from_integer(codim)) + -v).scale(Exponent::from_integer(k))
            }
        }
    }
}

const S4_DEGREE: u64 = 4;
const S4_P: u64 = 2;
/// Further indices on which an affine fit of `v` is confirmed.
const FIT_CHECKS: i64 = 8;

fn sum_hyperplane(shape: EtaleShape) -> HyperplaneDatum {
    HyperplaneDatum::sum_of_coordinates(shape)
}

/// Fits `v` along a shape template by its values at `start` and
/// `start + 1`, then confirms the fit further along.
fn fit_v(template: &ShapeTemplate, start: i64) -> Result<Affine> {
    let v_at = |n: i64| v_hyperplane(&sum_hyperplane(template.at(n)?));
    let fit = Affine::through(v_at(start)?, v_at(start + 1)?);
    for n in start + 2..start + 2 + FIT_CHECKS {
        if v_at(n)? != fit.eval(n) {
            return Err(Error::NonAffineWeight(format!("v is not affine along the family at n = {n}")));
        }
    }
    Ok(fit)
}

/// One partition of `S_4`: the label, the shape's codimension and the
/// strata with the integrand applied.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionSpec {
    pub partition: &'static str,
    pub codim: i64,
    pub spec: MassSpec,
}

/// Partitions with a single wild orbit of size `m` and the remaining
/// points split off.
fn single_wild(partition: &'static str, m: u64, integrand: Integrand) -> Result<PartitionSpec> {
    let modulus = Integer::lcm(&S4_P, &m);
    let trivial = (S4_DEGREE - m) as usize;
    let mut families = Vec::new();
    let mut codim = None;
    for r in wild_residue_families(S4_P, m, modulus, "i")? {
        let mut components = vec![ComponentTemplate {
            degree: m,
            disc: r.disc,
        }];
        components.extend((0..trivial).map(|_| ComponentTemplate {
            degree: 1,
            disc: IntAffine::constant(0),
        }));
        let template = ShapeTemplate { p: S4_P, components };
        let c = codim_fixed_locus(&template.at(0)?, Space::Hyperplane)?;
        codim = Some(c);
        let v = fit_v(&template, 0)?;
        families.push(StratumFamily {
            index: "i".into(),
            start: 0,
            class: r.class,
            exponent: integrand.affine(c, v),
            shape: Some(template),
        });
    }
    Ok(PartitionSpec {
        partition,
        codim: codim.expect("a wild degree has a nonzero residue"),
        spec: MassSpec {
            finite_strata: Vec::new(),
            families,
        },
    })
}

/// Partitions whose covers form a single point stratum.
fn fixed(partition: &'static str, shape: EtaleShape, integrand: Integrand) -> Result<PartitionSpec> {
    let codim = codim_fixed_locus(&shape, Space::Hyperplane)?;
    let v = v_hyperplane(&sum_hyperplane(shape.clone()))?;
    Ok(PartitionSpec {
        partition,
        codim,
        spec: MassSpec {
            finite_strata: vec![FiniteStratum {
                class: shape.ordered_class(),
                exponent: integrand.exponent(codim, v),
            }],
            families: Vec::new(),
        },
    })
}

/// Two quadratic orbits with discriminants `2n+2` and `2m+2`. Unordered
/// pairs are the ordered pairs `n < m` (summed over `n` first) plus the
/// diagonal `n = m`.
fn two_quadratics(integrand: Integrand) -> Result<PartitionSpec> {
    let quad = |d: IntAffine| ComponentTemplate { degree: 2, disc: d };
    let disc = IntAffine { slope: 2, intercept: 2 };
    let pair = ShapeTemplate {
        p: S4_P,
        components: vec![quad(disc), quad(disc)],
    };
    let codim = codim_fixed_locus(&pair.at(0)?, Space::Hyperplane)?;

    // v depends only on the larger index: fit along the diagonal and confirm
    // on every pair below the check horizon.
    let v = fit_v(&pair, 0)?;
    for m in 0..2 + FIT_CHECKS {
        for n in 0..m {
            let shape = EtaleShape::new(
                S4_P,
                vec![
                    LocalFieldShape::new(2, disc.eval(n) as u64),
                    LocalFieldShape::new(2, disc.eval(m) as u64),
                ],
            );
            if v_hyperplane(&sum_hyperplane(shape))? != v.eval(m) {
                return Err(Error::NonAffineWeight(format!("v at (n, m) = ({n}, {m})")));
            }
        }
    }

    let l_minus_1: MotivicValue = "L-1".parse()?;
    let single = |index: &str| {
        ExpPoly::monomial(index, l_minus_1.clone(), Exponent::from_integer(1), Exponent::zero())
    };
    let smaller = single("n")?.sum_finite("m")?;
    let off_diagonal = smaller.mul(&single("m")?)?;
    let diagonal = ExpPoly::monomial(
        "m",
        l_minus_1.clone(),
        Exponent::from_integer(2),
        Exponent::from_integer(1),
    )?;
    for m in 0..2 + FIT_CHECKS {
        if diagonal.eval(m) != sym_pair_diag_class(S4_P, m as u64)? {
            return Err(Error::RouteMismatch(format!("diagonal class at m = {m}")));
        }
    }
    let exponent = integrand.affine(codim, v);
    let family = |class: ExpPoly| StratumFamily {
        index: "m".into(),
        start: 0,
        class,
        exponent,
        shape: None,
    };
    Ok(PartitionSpec {
        partition: "(2^2)",
        codim,
        spec: MassSpec {
            finite_strata: Vec::new(),
            families: vec![family(off_diagonal), family(diagonal)],
        },
    })
}

/// The five partitions of 4 as stratifications of `S_4`-covers in
/// characteristic 2, for the hyperplane `x_1 + x_2 + x_3 + x_4 = 0`.
pub fn s4_char2_specs(integrand: Integrand) -> Result<Vec<PartitionSpec>> {
    let shape = |cs: &[(u64, u64)]| EtaleShape::new(S4_P, cs.iter().map(|&c| c.into()).collect());
    Ok(vec![
        single_wild("(4)", 4, integrand)?,
        fixed("(3,1)", shape(&[(3, 2), (1, 0)]), integrand)?,
        two_quadratics(integrand)?,
        single_wild("(2,1^2)", 2, integrand)?,
        fixed("(1^4)", EtaleShape::trivial(S4_P, 4), integrand)?,
    ])
}

#[derive(Debug, Clone, PartialEq)]
pub struct S4Row {
    pub partition: &'static str,
    pub codim: i64,
    /// `∫ L^(-3v) dτ`.
    pub mass: MotivicValue,
    /// `∫ L^(3w) dτ`.
    pub dual_mass: MotivicValue,
    /// `dual_mass` is the dual of `mass`.
    pub verified_dual: bool,
    /// `dual_mass = L^(3·codim)·mass`.
    pub codim_shift: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct S4Table {
    pub rows: Vec<S4Row>,
    pub total: MotivicValue,
    pub dual_total: MotivicValue,
    /// The totals summed with like denominators collected, without
    /// reducing across different denominators.
    pub total_text: String,
    pub dual_total_text: String,
    pub total_verified_dual: bool,
}

/// Masses of the five `S_4` strata and their totals.
pub fn s4_char2_masses() -> Result<S4Table> {
    let neg = s4_char2_specs(Integrand::NegV(3))?;
    let pos = s4_char2_specs(Integrand::PosW(3))?;
    let mut rows = Vec::with_capacity(neg.len());
    for (a, b) in neg.into_iter().zip(pos) {
        let mass = integrate(&a.spec);
        let dual_mass = integrate(&b.spec);
        rows.push(S4Row {
            partition: a.partition,
            codim: a.codim,
            verified_dual: check_duality(&mass, &dual_mass)?,
            codim_shift: mass.times_lpow(Exponent::from_integer(3 * a.codim)) == dual_mass,
            mass,
            dual_mass,
        });
    }
    let masses: Vec<_> = rows.iter().map(|r| r.mass.clone()).collect();
    let duals: Vec<_> = rows.iter().map(|r| r.dual_mass.clone()).collect();
    let total: MotivicValue = masses.iter().cloned().sum();
    let dual_total: MotivicValue = duals.iter().cloned().sum();
    Ok(S4Table {
        total_verified_dual: check_duality(&total, &dual_total)?,
        total_text: render_sum(&masses),
        dual_total_text: render_sum(&duals),
        rows,
        total,
        dual_total,
    })
}

/// `∫ L^(-n·v) dτ` and `∫ L^(n·w) dτ` over the `S_4` strata.
pub fn s4_divergence_probe(n: i64) -> Result<(MotivicValue, MotivicValue)> {
    if n <= 0 {
        return Err(Error::InvalidArgument("probe exponent must be positive".into()));
    }
    let total = |integrand| -> Result<MotivicValue> {
        let mut acc = MotivicValue::zero();
        for part in s4_char2_specs(integrand)? {
            acc = acc.checked_add(&integrate(&part.spec))?;
        }
        Ok(acc)
    };
    Ok((total(Integrand::NegV(n))?, total(Integrand::PosW(n))?))
}

/// A family given by a single term, mostly for building specs by hand.
pub fn monomial_family(
    index: &str,
    start: i64,
    class: ExpTerm,
    exponent: Affine,
) -> StratumFamily {
    StratumFamily {
        index: index.into(),
        start,
        class: ExpPoly::from_terms(index, vec![class]),
        exponent,
        shape: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MotivicValue {
        s.parse().unwrap()
    }

    fn q(n: i64) -> Exponent {
        Exponent::from_integer(n)
    }

    fn quad_family() -> StratumFamily {
        let class = ExpTerm::new(p("L-1"), q(1), q(0)).unwrap();
        monomial_family("n", 0, class, Affine::new(q(-3), q(-3)))
    }

    #[test]
    fn integrate_examples() {
        let spec = MassSpec {
            finite_strata: Vec::new(),
            families: vec![quad_family()],
        };
        assert_eq!(integrate(&spec), p("L^-1/(L+1)"));
        let point = MassSpec {
            finite_strata: vec![FiniteStratum { class: p("1"), exponent: q(0) }],
            families: Vec::new(),
        };
        assert_eq!(integrate(&point), p("1"));
        assert_eq!(integrate(&MassSpec::default()), p("0"));
    }

    #[test]
    fn divergent_family_absorbs() {
        let class = ExpTerm::new(p("L-1"), q(1), q(0)).unwrap();
        let bad = monomial_family("n", 0, class, Affine::new(q(-1), q(0)));
        let spec = MassSpec {
            finite_strata: vec![FiniteStratum { class: p("-1"), exponent: q(0) }],
            families: vec![quad_family(), bad],
        };
        assert!(integrate(&spec).is_infinite());
    }

    #[test]
    fn additive_and_homogeneous() {
        let a = MassSpec {
            finite_strata: vec![FiniteStratum { class: p("L^2+1"), exponent: Exponent::new(1, 2) }],
            families: vec![quad_family()],
        };
        let b = serre_mass_spec(3, 6).unwrap();
        assert_eq!(integrate(&a.union(&b)), integrate(&a) + integrate(&b));
        for c in [q(-4), q(0), Exponent::new(3, 2)] {
            assert_eq!(integrate(&a.shifted(c)), integrate(&a).times_lpow(c));
        }
    }

    #[test]
    fn serre_examples() {
        assert_eq!(serre_mass(2, 3).unwrap(), p("L^-2"));
        assert_eq!(serre_mass(2, 2).unwrap(), p("L^-1"));
        assert_eq!(serre_mass(3, 3).unwrap(), p("L^-2"));
        assert_eq!(serre_mass_spec(3, 3).unwrap().families.len(), 2);
        assert_eq!(serre_mass(4, 3), Err(Error::NotPrime(4)));
        for p in [2, 3, 5] {
            for m in 1..8 {
                assert!(check_serre(p, m).unwrap(), "p={p} m={m}");
            }
        }
    }

    #[test]
    fn serre_shapes_match_classes() {
        for f in serre_mass_spec(3, 6).unwrap().families {
            f.check_shapes(12).unwrap();
        }
    }

    #[test]
    fn duality_examples() {
        assert!(check_duality(&p("1"), &p("1")).unwrap());
        assert!(check_duality(&p("L^-3"), &p("L^3")).unwrap());
        assert!(!check_duality(&p("L^-3"), &p("L^-3")).unwrap());
        assert_eq!(check_duality(&MotivicValue::infinity(), &p("1")), Err(Error::InfiniteOperand));
    }

    #[test]
    fn s4_table() {
        let t = s4_char2_masses().unwrap();
        let expect = [
            ("(4)", 2, "L^-4+L^-2", "L^4+L^2"),
            ("(3,1)", 2, "L^-3", "L^3"),
            ("(2^2)", 1, "(L^-2+L^-1+1)/(L+1)", "(L+L^2+L^3)/(L+1)"),
            ("(2,1^2)", 1, "L^-1/(L+1)", "L^2/(L+1)"),
            ("(1^4)", 0, "1", "1"),
        ];
        for (row, (label, codim, m, md)) in t.rows.iter().zip(expect) {
            assert_eq!(row.partition, label);
            assert_eq!(row.codim, codim, "{label}");
            assert_eq!(row.mass, p(m), "{label}");
            assert_eq!(row.dual_mass, p(md), "{label}");
            assert!(row.verified_dual && row.codim_shift, "{label}");
        }
        assert_eq!(t.total, p("L^-4+L^-3+L^-2+1+(L^-2+2L^-1+1)/(L+1)"));
        assert_eq!(t.dual_total, p("L^4+L^3+L^2+1+(L+2L^2+L^3)/(L+1)"));
        assert_eq!(t.total_text, "L^-4+L^-3+L^-2+1+(L^-2+2L^-1+1)/(L+1)");
        assert!(t.total_verified_dual);
    }

    #[test]
    fn s4_divergence() {
        for n in [1, 2] {
            let (a, b) = s4_divergence_probe(n).unwrap();
            assert!(a.is_infinite() && b.is_infinite(), "n={n}");
        }
        let (a, b) = s4_divergence_probe(3).unwrap();
        assert_eq!(a, s4_char2_masses().unwrap().total);
        assert!(b.is_finite());
    }

    #[test]
    fn numeric_estimate_brackets_closed_form() {
        let two = BigRational::from_integer(2.into());
        for part in s4_char2_specs(Integrand::NegV(3)).unwrap() {
            let exact = integrate(&part.spec).specialize(&two).unwrap();
            let (partial, tail) = part.spec.numeric_estimate(40, &two).unwrap();
            let gap = &exact - &partial;
            assert!(gap.clone() <= tail && -gap <= tail, "{}", part.partition);
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = serre_mass_spec(2, 4).unwrap().union(&MassSpec {
            finite_strata: vec![FiniteStratum { class: p("L^(1/2)-1"), exponent: Exponent::new(-1, 2) }],
            families: Vec::new(),
        });
        let text = serde_json::to_string(&spec).unwrap();
        let back: MassSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(integrate(&back), integrate(&spec));
    }
}
