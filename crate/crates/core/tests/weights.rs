mod support;

use decomp_embed_core::exponents::{int, rat, ExtExponent};
use decomp_embed_core::families::{FamilyId, FamilyParams, FamilySpec};
use decomp_embed_core::weights::{build_weight, quotient, WeightKind};

fn samples(id: FamilyId) -> Vec<FamilySpec> {
    let params: Vec<FamilyParams> = match id {
        FamilyId::HomBesov => (1..=3).map(|d| FamilyParams::HomBesov { d, s: rat(1, 2) }).collect(),
        FamilyId::InhomBesov => (1..=3).map(|d| FamilyParams::InhomBesov { d, s: int(-1) }).collect(),
        FamilyId::AlphaModulation => [int(0), rat(1, 3), rat(1, 2)]
            .into_iter()
            .map(|alpha| FamilyParams::AlphaModulation { d: 2, alpha, gamma: rat(3, 2), radius: int(2) })
            .collect(),
        FamilyId::ShearletSmoothness => vec![FamilyParams::ShearletSmoothness { beta: rat(1, 2) }],
        FamilyId::ShearletCoorbit => [int(-1), rat(1, 2), int(1), int(2)]
            .into_iter()
            .map(|c| FamilyParams::ShearletCoorbit { c, alpha: rat(1, 4), beta: rat(3, 2) })
            .collect(),
        FamilyId::DiagonalCoorbit => {
            vec![FamilyParams::DiagonalCoorbit { alpha: vec![int(1), rat(-1, 2)], beta: vec![int(0), int(2)] }]
        }
    };
    params.into_iter().map(|p| FamilySpec::instantiate(p).unwrap()).collect()
}

fn radius(id: FamilyId) -> u64 {
    match id {
        FamilyId::HomBesov | FamilyId::InhomBesov => 12,
        FamilyId::ShearletSmoothness => 4,
        _ => 6,
    }
}

/// Extremes of `numeric / symbolic` over the window, for every criterion
/// weight with `k ≤ 3` and exponents from the test grid.
fn ratio_range(spec: &FamilySpec, radius: u64) -> (f64, f64) {
    let cov = spec.covering();
    let geometry = spec.geometry();
    let window = cov.scheme().window(radius);
    let exps = support::grid_exponents();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for kind in [WeightKind::Ukpq, WeightKind::V0, WeightKind::Wk, WeightKind::Wt] {
        for k in 0..=3 {
            for &p in &exps {
                let t = ExtExponent::int(2);
                let w = build_weight(cov, Some(&geometry), kind, k, p, t).unwrap();
                let sym = w.symbolic.as_ref().unwrap();
                for idx in &window {
                    let Some(li) = (geometry.project)(idx) else { continue };
                    let ratio = w.evaluate(idx) / sym.eval(&li).unwrap();
                    lo = lo.min(ratio);
                    hi = hi.max(ratio);
                }
            }
        }
    }
    (lo, hi)
}

#[test]
fn symbolic_weights_are_exact_for_besov_and_alpha_modulation() {
    for id in [FamilyId::HomBesov, FamilyId::InhomBesov, FamilyId::AlphaModulation] {
        for spec in samples(id) {
            let (lo, hi) = ratio_range(&spec, radius(id));
            assert!((lo - 1.0).abs() < 1e-9 && (hi - 1.0).abs() < 1e-9, "{:?}: {} {}", spec.params(), lo, hi);
        }
    }
}

#[test]
fn symbolic_weights_are_equivalent_elsewhere() {
    for id in [FamilyId::ShearletSmoothness, FamilyId::ShearletCoorbit, FamilyId::DiagonalCoorbit] {
        for spec in samples(id) {
            for r in [radius(id), radius(id) + 1] {
                let (lo, hi) = ratio_range(&spec, r);
                assert!(lo >= 1.0 / 64.0 && hi <= 64.0, "{:?} at radius {}: {} {}", spec.params(), r, lo, hi);
            }
        }
    }
}

#[test]
fn space_weights_match_their_symbolic_form() {
    let r = ExtExponent::int(3);
    for id in FamilyId::ALL {
        for spec in samples(id) {
            let geometry = spec.geometry();
            let u = spec.space_weight_symbolic(r).unwrap();
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for idx in spec.covering().scheme().window(radius(id)) {
                let Some(li) = (geometry.project)(&idx) else { continue };
                let ratio = spec.space_weight(&idx, r) / u.eval(&li).unwrap();
                lo = lo.min(ratio);
                hi = hi.max(ratio);
            }
            if id == FamilyId::ShearletCoorbit {
                assert!(lo >= 1.0 / 8.0 && hi <= 8.0, "{:?}: {} {}", spec.params(), lo, hi);
            } else {
                assert!((lo - 1.0).abs() < 1e-9 && (hi - 1.0).abs() < 1e-9, "{:?}: {} {}", spec.params(), lo, hi);
            }
        }
    }
}

#[test]
fn quotient_weights_divide_pointwise() {
    let spec = &samples(FamilyId::InhomBesov)[1];
    let cov = spec.covering();
    let geometry = spec.geometry();
    let r = ExtExponent::int(2);
    let u = spec.space_weight_symbolic(r).unwrap();
    let den = |i: &[i64]| spec.space_weight(i, r);
    let w = build_weight(cov, Some(&geometry), WeightKind::Ukpq, 2, ExtExponent::int(1), ExtExponent::int(3)).unwrap();
    let q = quotient(&w, &den, Some(&u)).unwrap();
    let sym = q.symbolic.as_ref().unwrap();
    for n in 0..10 {
        let ratio = q.evaluate(&[n]) / sym.eval(&[n]).unwrap();
        assert!((ratio - 1.0).abs() < 1e-9);
    }
}
