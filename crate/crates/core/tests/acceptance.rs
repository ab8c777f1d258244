//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

#![allow(clippy::eq_op)]

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use motivic::mass::{
    check_duality, integrate, s4_char2_masses, s4_char2_specs, s4_divergence_probe, serre_mass,
    serre_mass_spec, Integrand, MassSpec,
};
use motivic::ramification::is_prime;
use motivic::stringy::{
    eparts_total, evaluate_snc, tame_example, wild_epart_closed_form, wild_example_epart, wild_total,
    SncModel,
};
use motivic::weights::{floor_sum, pcyclic_weights};
use motivic::{fixtures, Affine, ExpPoly, Exponent, MotivicValue, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Check = Result<String, String>;

fn p(s: &str) -> MotivicValue {
    s.parse().expect("literal")
}

fn q(n: i64) -> Exponent {
    Exponent::from_integer(n)
}

fn expect_eq(what: &str, got: &MotivicValue, want: &MotivicValue) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, want {want}"))
    }
}

fn c1_s4_table() -> Check {
    let t = s4_char2_masses().map_err(|e| e.to_string())?;
    let golden = [
        ("(4)", "L^-4+L^-2", "L^4+L^2"),
        ("(3,1)", "L^-3", "L^3"),
        ("(2^2)", "(L^-2+L^-1+1)/(L+1)", "(L+L^2+L^3)/(L+1)"),
        ("(2,1^2)", "L^-1/(L+1)", "L^2/(L+1)"),
        ("(1^4)", "1", "1"),
    ];
    if t.rows.len() != golden.len() {
        return Err(format!("{} rows", t.rows.len()));
    }
    for (row, (label, m, md)) in t.rows.iter().zip(golden) {
        if row.partition != label {
            return Err(format!("row {} where {label} expected", row.partition));
        }
        expect_eq(&format!("M_{label}"), &row.mass, &p(m))?;
        expect_eq(&format!("M'_{label}"), &row.dual_mass, &p(md))?;
    }
    expect_eq("M", &t.total, &p("L^-4+L^-3+L^-2+1+(L^-2+2L^-1+1)/(L+1)"))?;
    expect_eq("M'", &t.dual_total, &p("L^4+L^3+L^2+1+(L+2L^2+L^3)/(L+1)"))?;
    let line = "L^-4+L^-3+L^-2+1+(L^-2+2L^-1+1)/(L+1)";
    if t.total_text != line {
        return Err(format!("totals line `{}`", t.total_text));
    }
    Ok(format!("10 values and 2 totals; M = {}", t.total_text))
}

fn c2_duality() -> Check {
    let t = s4_char2_masses().map_err(|e| e.to_string())?;
    for r in &t.rows {
        if !check_duality(&r.mass, &r.dual_mass).map_err(|e| e.to_string())? {
            return Err(format!("{} is not self-dual", r.partition));
        }
        if r.mass.times_lpow(q(3 * r.codim)) != r.dual_mass {
            return Err(format!("{}: M' != L^(3 codim) M", r.partition));
        }
    }
    if !check_duality(&t.total, &t.dual_total).map_err(|e| e.to_string())? {
        return Err("totals are not dual".into());
    }
    Ok("5 partitions and totals".into())
}

fn c3_serre() -> Check {
    let mut count = 0;
    for prime in [2u64, 3, 5, 7] {
        for m in 2..=9u64 {
            let got = serre_mass(prime, m).map_err(|e| e.to_string())?;
            expect_eq(&format!("p={prime} m={m}"), &got, &MotivicValue::lpow(q(1 - m as i64)))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs"))
}

fn c4_tame() -> Check {
    let (parts, direct) = tame_example().map_err(|e| e.to_string())?;
    expect_eq("E1 part", &parts[0], &p("L^2+L"))?;
    expect_eq("E2 part", &parts[1], &p("2L"))?;
    expect_eq("direct", &direct, &p("L^2+3L"))?;
    let total = eparts_total(&parts).map_err(|e| e.to_string())?;
    expect_eq("sum of parts", &total, &direct)?;
    Ok(format!("{} + {} = {}", parts[0], parts[1], total))
}

fn c5_wild() -> Check {
    // Closed form summed independently of the fixtures.
    let base = p("(L+1)^2/(L^2+L+1)");
    let per_cover = ExpPoly::monomial("n", base, q(-3), q(2)).map_err(|e| e.to_string())?;
    let stratum = ExpPoly::monomial("n", p("L-1"), q(1), q(-1)).map_err(|e| e.to_string())?;
    let tail = per_cover.mul(&stratum).map_err(|e| e.to_string())?.sum_infinite(1);
    let closed = eparts_total(&[p("1/(L^2+L+1)"), tail]).map_err(|e| e.to_string())?;
    expect_eq("closed-form total", &closed, &p("1"))?;
    let via_fixtures = wild_total().map_err(|e| e.to_string())?;
    expect_eq("fixture total", &via_fixtures, &p("1"))?;
    for n in 1..=10 {
        let e = wild_example_epart(n).map_err(|e| e.to_string())?;
        expect_eq(&format!("n={n}"), &e, &wild_epart_closed_form(n))?;
    }
    Ok("total 1; routes agree for n = 1..10".into())
}

fn c6_divergence() -> Check {
    for n in [1, 2] {
        let (neg, pos) = s4_divergence_probe(n).map_err(|e| e.to_string())?;
        if !neg.is_infinite() || !pos.is_infinite() {
            return Err(format!("n={n}: got {neg} and {pos}"));
        }
    }
    let (neg, pos) = s4_divergence_probe(3).map_err(|e| e.to_string())?;
    if neg.is_infinite() || pos.is_infinite() {
        return Err("n=3 diverges".into());
    }
    Ok("n = 1, 2 infinite on both signs; n = 3 finite".into())
}

fn c7_pcyclic() -> Check {
    let mut count = 0u64;
    for prime in (2..=31u64).filter(|&n| is_prime(n)) {
        for j in (1..=200u64).filter(|j| j % prime != 0) {
            pcyclic_weights(prime, j).map_err(|e| e.to_string())?;
            // brute-force floor sum against the reciprocity identity
            let brute: u64 = (1..prime).map(|i| (i * j) / prime).sum();
            if brute != floor_sum(prime, j, prime - 1) || 2 * brute != (prime - 1) * (j - 1) {
                return Err(format!("p={prime} j={j}: Σ⌊ij/p⌋ = {brute}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} pairs"))
}

const TERMS: u64 = 200;

fn numeric_cases() -> Result<Vec<(String, MassSpec, MotivicValue)>, String> {
    let mut cases = Vec::new();
    for (integrand, tag) in [(Integrand::NegV(3), "M"), (Integrand::PosW(3), "M'")] {
        for part in s4_char2_specs(integrand).map_err(|e| e.to_string())? {
            let value = integrate(&part.spec);
            cases.push((format!("{tag}_{}", part.partition), part.spec, value));
        }
    }
    for prime in [2u64, 3, 5, 7] {
        for m in 2..=9u64 {
            let spec = serre_mass_spec(prime, m).map_err(|e| e.to_string())?;
            cases.push((format!("serre p={prime} m={m}"), spec, MotivicValue::lpow(q(1 - m as i64))));
        }
    }
    Ok(cases)
}

fn within(exact: &Rational, partial: &Rational, bound: &Rational) -> bool {
    let gap = exact - partial;
    gap <= *bound && -gap <= *bound
}

fn c8_numeric() -> Check {
    let cases = numeric_cases()?;
    let template = fixtures::wild_template().map_err(|e| e.to_string())?;
    let wild = template
        .evaluate_family()
        .map_err(|e| e.to_string())?
        .times_geometric(Affine::new(q(-2), q(0)))
        .mul(&ExpPoly::monomial("n", p("L-1"), q(1), q(-1)).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let wild_closed = &p("1") - &p("1/(L^2+L+1)");
    let mut checked = 0;
    for qv in [2i64, 7] {
        let at = Rational::from_integer(qv.into());
        for (name, spec, value) in &cases {
            let exact = value.specialize(&at).map_err(|e| e.to_string())?;
            let (partial, bound) = spec.numeric_estimate(TERMS, &at).map_err(|e| e.to_string())?;
            if !within(&exact, &partial, &bound) {
                return Err(format!("{name} at q={qv}"));
            }
            checked += 1;
        }
        let exact = wild_closed.specialize(&at).map_err(|e| e.to_string())?;
        let partial = wild.numeric_partial_sum(1, TERMS, &at).map_err(|e| e.to_string())?;
        let bound = wild.tail_bound(1, TERMS, &at).map_err(|e| e.to_string())?;
        if !within(&exact, &partial, &bound) {
            return Err(format!("wild covers at q={qv}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} closed forms at q = 2, 7 with N = {TERMS}"))
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new(config);
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn c9_properties() -> Check {
    use common::{int_poly, square_point, value, violates};
    run_property("ring axioms", (value(), value(), value()), |(a, b, c)| {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a / &a).is_one());
        }
        Ok(())
    })?;
    run_property("canonical uniqueness", (value(), int_poly(), 1usize..4), |(a, c, s)| {
        let (num, den, root) = (a.numerator().unwrap(), a.denominator().unwrap(), a.root_index().unwrap());
        let k = BigInt::from(-3);
        let other = MotivicValue::from_parts((num * &c).scale(&k).inflate(s), (den * &c).scale(&k).inflate(s), root * s as u32)
            .unwrap();
        prop_assert_eq!(other.numerator(), a.numerator());
        prop_assert_eq!(other.denominator(), a.denominator());
        prop_assert_eq!(other.root_index(), a.root_index());
        let back: MotivicValue = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
        Ok(())
    })?;
    run_property("dualize involution", value(), |a| {
        prop_assert_eq!(a.dualize().unwrap().dualize().unwrap(), a);
        Ok(())
    })?;
    run_property("specialization homomorphism", (value(), value(), square_point()), |(a, b, (n, d))| {
        let at = Rational::new(n.into(), d.into());
        let (Ok(sa), Ok(sb)) = (a.specialize(&at), b.specialize(&at)) else {
            return Err(TestCaseError::reject("pole"));
        };
        prop_assert_eq!((&a + &b).specialize(&at).unwrap(), &sa + &sb);
        prop_assert_eq!((&a * &b).specialize(&at).unwrap(), &sa * &sb);
        Ok(())
    })?;
    run_property("snc divergence criterion", prop::collection::vec(common::snc_stratum(), 1..5), |strata| {
        let value = evaluate_snc(&SncModel::new("random", strata.clone())).unwrap();
        prop_assert_eq!(value.is_infinite(), violates(&strata));
        Ok(())
    })?;
    Ok("5 suites x 1000 cases".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "S4 char-2 table", limit: Some(Duration::from_secs(1)), run: c1_s4_table },
        Criterion { id: 2, name: "duality", limit: None, run: c2_duality },
        Criterion { id: 3, name: "Serre mass formula", limit: Some(Duration::from_secs(1)), run: c3_serre },
        Criterion { id: 4, name: "tame example", limit: None, run: c4_tame },
        Criterion { id: 5, name: "wild example", limit: None, run: c5_wild },
        Criterion { id: 6, name: "divergence", limit: None, run: c6_divergence },
        Criterion { id: 7, name: "p-cyclic consistency", limit: None, run: c7_pcyclic },
        Criterion { id: 8, name: "numeric oracle", limit: Some(Duration::from_secs(5)), run: c8_numeric },
        Criterion { id: 9, name: "property suites", limit: None, run: c9_properties },
    ];
    let mut failed = 0;
    for c in criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS  {}. {} ({elapsed:.2?}): {detail}", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}. {} ({elapsed:.2?}): {why}", c.id, c.name);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
