mod support;

use decomp_embed_core::embedding::{decide, EmbedError, EmbeddingQuery, MembershipTest, Outcome, QueryOptions, SubsetI0, Target};
use decomp_embed_core::exponents::{int, rat, ExtExponent, Rational};
use decomp_embed_core::families::{FamilyParams, FamilySpec};
use decomp_embed_core::seqspace::{truncated_oracle, OracleConfig, RadiusSchedule};
use proptest::prelude::*;
use support::criteria::{criterion6, inconsistent, random_params};

fn run(spec: &FamilySpec, p: ExtExponent, r: ExtExponent, target: Target, options: QueryOptions) -> Result<decomp_embed_core::embedding::Verdict, EmbedError> {
    let src = spec.source(r).unwrap();
    decide(&EmbeddingQuery { source: &src, p, r, target, options })
}

fn outcome(spec: &FamilySpec, p: ExtExponent, r: ExtExponent, k: u32, q: ExtExponent, refine: bool) -> Outcome {
    let options = QueryOptions { use_family_refinements: refine, ..Default::default() };
    run(spec, p, r, Target::Sobolev { k, q }, options).unwrap().outcome
}

fn rank(o: Outcome) -> u8 {
    match o {
        Outcome::DoesNotEmbed => 0,
        Outcome::Undetermined => 1,
        Outcome::Embeds => 2,
    }
}

fn exponent() -> impl Strategy<Value = ExtExponent> {
    prop::sample::select(support::grid_exponents())
}

fn smoothness() -> impl Strategy<Value = Rational> {
    (-8i128..=16).prop_map(|n| rat(n, 4))
}

/// Families whose space gets smaller as the smoothness parameter grows.
fn with_smoothness(kind: u8, s: Rational) -> FamilyParams {
    match kind {
        0 => FamilyParams::InhomBesov { d: 2, s },
        1 => FamilyParams::AlphaModulation { d: 2, alpha: rat(1, 2), gamma: s, radius: int(2) },
        _ => FamilyParams::ShearletSmoothness { beta: s },
    }
}

#[test]
fn structural_equalities_on_random_queries() {
    let c = criterion6();
    assert!(c.passed, "{}", c.detail);
}

#[test]
fn verdict_decisions_survive_the_oracle() {
    let mut rng = support::rng(61);
    let mut checked = 0;
    for _ in 0..60 {
        let spec = FamilySpec::instantiate(random_params(&mut rng)).unwrap();
        let (p, r, q) = (support::grid_exponent(&mut rng), support::grid_exponent(&mut rng), support::grid_exponent(&mut rng));
        let v = run(&spec, p, r, Target::Sobolev { k: 1, q }, QueryOptions::default()).unwrap();
        for d in &v.decisions {
            let MembershipTest::Lp(theta) = d.test else { continue };
            let c = truncated_oracle(&d.weight, theta, &RadiusSchedule::for_dimension(d.weight.arity()), &OracleConfig::default());
            if let Some(got) = c.decided() {
                assert_eq!(got, d.member, "{} in l^{}", d.weight, theta);
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn explicit_empty_i0_drops_khintchine_conditions() {
    let spec = FamilySpec::instantiate(FamilyParams::InhomBesov { d: 1, s: int(1) }).unwrap();
    let two = ExtExponent::int(2);
    let options = QueryOptions { subset_i0: SubsetI0::None, ..Default::default() };
    let v = run(&spec, two, two, Target::Sobolev { k: 0, q: ExtExponent::int(3) }, options).unwrap();
    assert!(v.get("khintchine_p").is_none() && v.get("khintchine_2").is_none());
    let v = run(&spec, two, two, Target::Sobolev { k: 0, q: ExtExponent::int(3) }, QueryOptions::default()).unwrap();
    assert!(v.get("khintchine_p").is_some() && v.get("khintchine_2").is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn monotone_in_smoothness(kind in 0u8..3, s in smoothness(), ds in 1i128..=8, p in exponent(), r in exponent(), q in exponent(), k in 0u32..=2, refine: bool) {
        let lo = FamilySpec::instantiate(with_smoothness(kind, s)).unwrap();
        let hi = FamilySpec::instantiate(with_smoothness(kind, s + rat(ds, 4))).unwrap();
        prop_assert!(rank(outcome(&lo, p, r, k, q, refine)) <= rank(outcome(&hi, p, r, k, q, refine)));
    }

    #[test]
    fn refinements_only_resolve_the_gap(params in any::<u64>().prop_map(|seed| random_params(&mut support::rng(seed))), p in exponent(), r in exponent(), q in exponent(), k in 0u32..=2) {
        let spec = FamilySpec::instantiate(params).unwrap();
        let plain = outcome(&spec, p, r, k, q, false);
        let refined = outcome(&spec, p, r, k, q, true);
        if plain != Outcome::Undetermined {
            prop_assert_eq!(plain, refined);
        }
        let options = QueryOptions { use_family_refinements: true, ..Default::default() };
        let v = run(&spec, p, r, Target::Sobolev { k, q }, options).unwrap();
        prop_assert!(!inconsistent(&v));
    }

    #[test]
    fn larger_target_exponent_needs_p_below(params in any::<u64>().prop_map(|seed| random_params(&mut support::rng(seed))), p in exponent(), r in exponent(), q in exponent()) {
        prop_assume!(p > q);
        let spec = FamilySpec::instantiate(params).unwrap();
        prop_assert_eq!(outcome(&spec, p, r, 0, q, true), Outcome::DoesNotEmbed);
    }
}
