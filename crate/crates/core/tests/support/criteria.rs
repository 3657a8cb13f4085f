//! The acceptance checks, each returning a pass flag and a one-line summary.
#![allow(dead_code)]

use decomp_embed_core::covering::{AffineCovering, Index};
use decomp_embed_core::embedding::{
    decide, decide_bv, decide_cb, EmbeddingQuery, MembershipTest, Outcome, QueryOptions, Role, Target, Verdict,
};
use decomp_embed_core::exponents::{int, positive_part, rat, ExtExponent, Rational};
use decomp_embed_core::families::{
    golden_grid, shearlet_bv_solvable, shearlet_coorbit_norm_asymptotic, FamilyId, FamilyParams, FamilySpec,
};
use decomp_embed_core::seqspace::{
    decide_lp_membership, decide_sequence_embedding, lemma_witness, truncated_oracle, ExpPolyWeight, OracleConfig,
    RadiusSchedule,
};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{any_exponent, grid_exponent, grid_exponents, random_pair, random_weight, rng, step};

pub struct Check {
    pub passed: bool,
    pub detail: String,
}

fn first(failures: &[String]) -> String {
    failures.first().map(|f| format!("; first: {}", f)).unwrap_or_default()
}

impl Check {
    fn new(passed: bool, detail: String) -> Self {
        Check { passed, detail }
    }
}

// ---------------------------------------------------------------- exponents

/// `compound(s, r)` from its definition `s·(r/s)'`, with `(t)' = t/(t-1)`.
pub fn compound_by_definition(s: ExtExponent, r: ExtExponent) -> Option<Rational> {
    match (s.finite(), r.finite()) {
        (Some(s), Some(r)) if r > s => {
            let t = r / s;
            Some(s * t / (t - Rational::one()))
        }
        (Some(s), None) => Some(s),
        _ => None,
    }
}

fn random_rational_exponent(rng: &mut impl Rng) -> ExtExponent {
    if rng.gen_bool(0.1) {
        return ExtExponent::INFINITY;
    }
    let den: i128 = rng.gen_range(1..=24);
    let num: i128 = rng.gen_range(1..=10 * den);
    ExtExponent::ratio(num, den).unwrap()
}

pub fn criterion1() -> Check {
    let mut rng = rng(1);
    let mut failures = Vec::new();
    let n = 10_000;
    let one = ExtExponent::int(1);
    let two = ExtExponent::int(2);
    for _ in 0..n {
        let p = random_rational_exponent(&mut rng);
        let s = random_rational_exponent(&mut rng);
        let r = random_rational_exponent(&mut rng);
        if p >= one && p.conjugate().conjugate() != p {
            failures.push(format!("conjugate involution at {}", p));
        }
        if p.lower_conjugate() > two {
            failures.push(format!("lower conjugate of {} exceeds 2", p));
        }
        let c = ExtExponent::compound(s, r);
        let expect_recip = positive_part(s.reciprocal() - r.reciprocal());
        if c.reciprocal() != expect_recip {
            failures.push(format!("1/compound({}, {}) = {}", s, r, c.reciprocal()));
        }
        match compound_by_definition(s, r) {
            Some(v) if c.finite() != Some(v) => failures.push(format!("compound({}, {}) = {} vs {}", s, r, c, v)),
            None if !c.is_infinite() => failures.push(format!("compound({}, {}) = {} should be inf", s, r, c)),
            _ => {}
        }
        if c.is_infinite() != (r <= s) {
            failures.push(format!("compound({}, {}) infinite iff r ≤ s", s, r));
        }
    }
    Check::new(failures.is_empty(), format!("{} exponent triples, {} failures{}", n, failures.len(), first(&failures)))
}

// ---------------------------------------------------------------- two-weight test

fn direct_norm(c: &[(Index, f64)], w: &ExpPolyWeight, s: ExtExponent) -> f64 {
    let terms = c.iter().map(|(i, ci)| w.eval(i).unwrap() * ci.abs());
    match s.finite() {
        Some(t) => {
            let t = to_f64(t);
            terms.map(|x| x.powf(t)).sum::<f64>().powf(1.0 / t)
        }
        None => terms.fold(0.0, f64::max),
    }
}

fn to_f64(x: Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn direct_constant(q: &ExpPolyWeight, theta: ExtExponent, window: &[Index]) -> f64 {
    let ones: Vec<(Index, f64)> = window.iter().map(|i| (i.clone(), 1.0)).collect();
    direct_norm(&ones, q, theta)
}

/// Ratio of `‖c‖_{ℓ_u^s} / ‖c‖_{ℓ_v^r}` for the witness on a window.
fn witness_ratio(u: &ExpPolyWeight, v: &ExpPolyWeight, r: ExtExponent, s: ExtExponent, radius: u64) -> f64 {
    let window = u.window(radius);
    let w = lemma_witness(u, v, r, s, &window).unwrap();
    let c: Vec<(Index, f64)> = w.coefficients.iter().map(|(i, l)| (i.clone(), l.exp2())).collect();
    direct_norm(&c, u, s) / direct_norm(&c, v, r)
}

pub fn criterion2() -> Check {
    let mut rng = rng(2);
    let (mut embeds, mut dne) = (0, 0);
    let mut failures = Vec::new();
    for case in 0..200 {
        let (u, v) = random_pair(&mut rng);
        let r = grid_exponent(&mut rng);
        let s = grid_exponent(&mut rng);
        let verdict = decide_sequence_embedding(&u, &v, r, s).unwrap();
        if verdict.embeds {
            embeds += 1;
            for radius in [4u64, 8] {
                let window = u.window(radius);
                let constant = direct_constant(&verdict.quotient, verdict.exponent, &window);
                for _ in 0..5 {
                    let mut c: Vec<(Index, f64)> = Vec::new();
                    for i in &window {
                        if rng.gen_bool(0.6) {
                            c.push((i.clone(), to_f64(step(&mut rng, -8, 8, 4)).exp2()));
                        }
                    }
                    if c.is_empty() {
                        continue;
                    }
                    let lhs = direct_norm(&c, &u, s);
                    let rhs = constant * direct_norm(&c, &v, r);
                    if lhs > rhs * (1.0 + 1e-9) {
                        failures.push(format!("case {}: Hölder {} > {} at radius {}", case, lhs, rhs, radius));
                    }
                }
                let attained = witness_ratio(&u, &v, r, s, radius);
                if (attained / constant - 1.0).abs() > 1e-9 {
                    failures.push(format!("case {}: witness ratio {} vs constant {}", case, attained, constant));
                }
            }
        } else {
            dne += 1;
            let ratios: Vec<f64> = [4u64, 8, 16].iter().map(|&rad| witness_ratio(&u, &v, r, s, rad)).collect();
            for w in ratios.windows(2) {
                if w[1] < 1.2 * w[0] {
                    failures.push(format!("case {}: witness ratio {:?} grows too slowly (u = {}, v = {})", case, ratios, u, v));
                }
            }
        }
    }
    Check::new(
        failures.is_empty(),
        format!("{} Embeds, {} DoesNotEmbed instances, {} failures{}", embeds, dne, failures.len(), first(&failures)),
    )
}

// ---------------------------------------------------------------- golden grid

pub fn engine_outcome(spec: &FamilySpec, p: ExtExponent, r: ExtExponent, target: Target, refine: bool) -> Outcome {
    let src = spec.source(r).unwrap();
    let query = EmbeddingQuery {
        source: &src,
        p,
        r,
        target,
        options: QueryOptions { use_family_refinements: refine, ..Default::default() },
    };
    decide(&query).unwrap().outcome
}

/// Disagreements between the engine and the closed forms on a family's grid.
pub fn grid_mismatches(id: FamilyId) -> (usize, Vec<String>) {
    let grid = golden_grid(id);
    let mut bad = Vec::new();
    for case in &grid {
        let spec = FamilySpec::instantiate(case.params.clone()).unwrap();
        let g = spec.golden_verdict(case.p, case.r, case.k, case.q);
        let e = engine_outcome(&spec, case.p, case.r, Target::Sobolev { k: case.k, q: case.q }, true);
        if g != e {
            bad.push(format!("{:?}: closed form {} engine {}", case, g, e));
        }
    }
    (grid.len(), bad)
}

/// Spot checks on Besov spaces and the coorbit BV problem.
pub fn spot_fixtures() -> Vec<String> {
    let mut bad = Vec::new();
    let exps = grid_exponents();
    let two = ExtExponent::int(2);
    for &p in &exps {
        for &q in &exps {
            for &r in &exps {
                let dpq = p.reciprocal() - q.reciprocal();
                for d in 1..=2u32 {
                    for k in 1..=2u32 {
                        for s in [int(-1), int(d as i128) * dpq, int(k as i128 + 1)] {
                            let hom = FamilySpec::instantiate(FamilyParams::HomBesov { d, s }).unwrap();
                            let o = engine_outcome(&hom, p, r, Target::Sobolev { k, q }, true);
                            if o != Outcome::DoesNotEmbed {
                                bad.push(format!("hom d={} s={} p={} q={} r={} k={}: {}", d, s, p, q, r, k, o));
                            }
                        }
                    }
                    if p > q {
                        continue;
                    }
                    let k = 1;
                    let s = int(k as i128) + int(d as i128) * dpq;
                    let inhom = FamilySpec::instantiate(FamilyParams::InhomBesov { d, s }).unwrap();
                    let plain = engine_outcome(&inhom, p, r, Target::Sobolev { k, q }, false) == Outcome::Embeds;
                    if plain != (r <= q.lower_conjugate()) {
                        bad.push(format!("inhom threshold d={} p={} q={} r={}: Embeds = {}", d, p, q, r, plain));
                    }
                    let gap = !q.is_infinite() && q > two;
                    let refined = engine_outcome(&inhom, p, r, Target::Sobolev { k, q }, true) == Outcome::Embeds;
                    let expect = if gap { r <= two } else { r <= q.lower_conjugate() };
                    if refined != expect {
                        bad.push(format!("refined inhom threshold d={} p={} q={} r={}: Embeds = {}", d, p, q, r, refined));
                    }
                }
            }
        }
    }
    bad.extend(bv_solvability_mismatches());
    bad
}

/// `α` values that cut the coorbit BV problem into intervals on which the
/// outcome is constant, plus one point inside each interval.
fn alpha_candidates(beta: Rational, p: ExtExponent, r: ExtExponent) -> Vec<Rational> {
    let c = rat(1, 2);
    let one = int(1);
    let gamma = rat(1, 2) - r.reciprocal() + p.reciprocal() - one;
    let mut cuts = Vec::new();
    for b in [beta, beta - one] {
        for x in [Rational::zero(), positive_part(one - r.reciprocal())] {
            for a in [b, b * c, b + (c - one) * x, c * b] {
                cuts.push(a - (one + c) * gamma);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut out = cuts.clone();
    out.push(cuts[0] - one);
    out.push(cuts[cuts.len() - 1] + one);
    out.extend(cuts.windows(2).map(|w| (w[0] + w[1]) / int(2)));
    out
}

fn bv_solvability_mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    for p in [ExtExponent::ratio(1, 2).unwrap(), ExtExponent::int(1)] {
        for &r in &grid_exponents() {
            let t = if r <= ExtExponent::int(1) { int(2) } else { int(3) - r.reciprocal() };
            for beta in [t - rat(1, 4), t, t + rat(1, 4)] {
                let solvable = alpha_candidates(beta, p, r).into_iter().any(|alpha| {
                    let spec =
                        FamilySpec::instantiate(FamilyParams::ShearletCoorbit { c: rat(1, 2), alpha, beta }).unwrap();
                    engine_outcome(&spec, p, r, Target::Bv { k: 1 }, true) == Outcome::Embeds
                });
                if solvable != shearlet_bv_solvable(beta, r) {
                    bad.push(format!("coorbit BV p={} r={} beta={}: solvable = {}", p, r, beta, solvable));
                }
            }
        }
    }
    bad
}

pub fn criterion3() -> Check {
    let mut total = 0;
    let mut bad = Vec::new();
    for id in FamilyId::ALL {
        let (n, b) = grid_mismatches(id);
        total += n;
        bad.extend(b);
    }
    let spots = spot_fixtures();
    Check::new(
        bad.is_empty() && spots.is_empty(),
        format!(
            "{} grid cases, {} disagreements, {} spot fixture failures{}",
            total,
            bad.len(),
            spots.len(),
            first(if bad.is_empty() { &spots } else { &bad })
        ),
    )
}

// ---------------------------------------------------------------- oracle

/// Membership weights recorded by the engine on random shearlet queries.
fn shearlet_weights(rng: &mut impl Rng, count: usize) -> Vec<(ExpPolyWeight, ExtExponent)> {
    let mut out = Vec::new();
    while out.len() < count {
        let spec = FamilySpec::instantiate(random_shearlet_params(rng)).unwrap();
        let (p, r, q) = (grid_exponent(rng), grid_exponent(rng), grid_exponent(rng));
        let src = spec.source(r).unwrap();
        let query = EmbeddingQuery {
            source: &src,
            p,
            r,
            target: Target::Sobolev { k: rng.gen_range(0..=2), q },
            options: QueryOptions::default(),
        };
        let v = decide(&query).unwrap();
        let recs: Vec<_> = v.decisions.iter().filter(|d| matches!(d.test, MembershipTest::Lp(_))).collect();
        let d = recs.choose(rng).unwrap();
        if let MembershipTest::Lp(theta) = d.test {
            out.push((d.weight.clone(), theta));
        }
    }
    out
}

fn random_shearlet_params(rng: &mut impl Rng) -> FamilyParams {
    if rng.gen_bool(0.5) {
        FamilyParams::ShearletSmoothness { beta: step(rng, -2, 4, 4) }
    } else {
        FamilyParams::ShearletCoorbit {
            c: *[int(-1), rat(1, 2), int(1), int(2)].choose(rng).unwrap(),
            alpha: step(rng, -3, 3, 4),
            beta: step(rng, -2, 4, 4),
        }
    }
}

pub struct OracleStats {
    pub total: usize,
    pub classified: usize,
    pub contradictions: Vec<String>,
}

pub fn oracle_stats() -> OracleStats {
    let mut rng = rng(4);
    let mut cases: Vec<(ExpPolyWeight, ExtExponent)> =
        (0..400).map(|_| (random_weight(&mut rng), grid_exponent(&mut rng))).collect();
    cases.extend(shearlet_weights(&mut rng, 100));
    let mut classified = 0;
    let mut contradictions = Vec::new();
    for (w, theta) in &cases {
        let exact = decide_lp_membership(w, *theta).unwrap().is_member();
        let sched = RadiusSchedule::for_dimension(w.arity());
        let c = truncated_oracle(w, *theta, &sched, &OracleConfig::default());
        if let Some(got) = c.decided() {
            classified += 1;
            if got != exact {
                contradictions.push(format!("{} in l^{}: exact {}, oracle {:?}", w, theta, exact, c.verdict));
            }
        }
    }
    OracleStats { total: cases.len(), classified, contradictions }
}

pub fn criterion4() -> Check {
    let s = oracle_stats();
    let rate = s.classified as f64 / s.total as f64;
    Check::new(
        s.contradictions.is_empty() && rate >= 0.9,
        format!(
            "{} weights, {:.1}% classified, {} contradictions{}",
            s.total,
            100.0 * rate,
            s.contradictions.len(),
            first(&s.contradictions)
        ),
    )
}

// ---------------------------------------------------------------- coverings

fn family(params: FamilyParams) -> FamilySpec {
    FamilySpec::instantiate(params).unwrap()
}

/// `(N_hat, C_hat, |0*|)` on a window.
fn graph_constants(cov: &AffineCovering, radius: u64, origin: &[i64]) -> (usize, f64, usize) {
    let tiles = cov.enumerate_window(radius).unwrap();
    let rep = cov.certify_constants(&tiles).unwrap();
    let zero = rep.neighbors.neighbors_of(origin).map_or(0, |n| n.len());
    (rep.n_hat, rep.c_hat, zero)
}

/// Extreme ratios of `‖T_i‖` to the asymptotic norm over the coorbit window.
fn coorbit_norm_ratios(c: Rational, radius: u64) -> (f64, f64) {
    let spec = family(FamilyParams::ShearletCoorbit { c, alpha: int(0), beta: int(0) });
    let cov = spec.covering();
    let cf = to_f64(c);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for idx in cov.scheme().window(radius) {
        let (n, m) = (idx[0], idx[1]);
        if n.abs() > 8 {
            continue;
        }
        let ratio = cov.tile(&idx).t.spectral_norm() / shearlet_coorbit_norm_asymptotic(cf, n, m);
        lo = lo.min(ratio);
        hi = hi.max(ratio);
    }
    (lo, hi)
}

pub fn covering_failures() -> Vec<String> {
    let mut bad = Vec::new();
    for d in 1..=2u32 {
        let hom = family(FamilyParams::HomBesov { d, s: int(0) });
        let radius = if d == 1 { 10 } else { 6 };
        let a = graph_constants(hom.covering(), radius, &[0]);
        let b = graph_constants(hom.covering(), radius + 1, &[0]);
        if a.0 > 9 || a.0 != b.0 {
            bad.push(format!("hom d={}: N_hat {} then {}", d, a.0, b.0));
        }
        let inhom = family(FamilyParams::InhomBesov { d, s: int(0) });
        let a = graph_constants(inhom.covering(), radius, &[0]);
        let b = graph_constants(inhom.covering(), radius + 1, &[0]);
        if a.2 > 4 || a.1 > 16.0 + 1e-9 || a.2 != b.2 || (a.1 - b.1).abs() > 1e-9 {
            bad.push(format!("inhom d={}: |0*| {} then {}, C_hat {} then {}", d, a.2, b.2, a.1, b.1));
        }
    }
    for c in [int(-1), rat(1, 2), int(1), int(2)] {
        let a = coorbit_norm_ratios(c, 8);
        let b = coorbit_norm_ratios(c, 9);
        let inside = |(lo, hi): (f64, f64)| lo >= 0.25 && hi <= 4.0;
        if !inside(a) || !inside(b) {
            bad.push(format!("coorbit c={}: norm ratios {:?} then {:?}", c, a, b));
        }
    }
    bad
}

pub fn criterion5() -> Check {
    let bad = covering_failures();
    Check::new(bad.is_empty(), format!("{} certification failures{}", bad.len(), first(&bad)))
}

// ---------------------------------------------------------------- engine structure

pub fn random_params(rng: &mut impl Rng) -> FamilyParams {
    match rng.gen_range(0..6) {
        0 => FamilyParams::HomBesov { d: rng.gen_range(1..=3), s: step(rng, -2, 4, 4) },
        1 => FamilyParams::InhomBesov { d: rng.gen_range(1..=3), s: step(rng, -2, 4, 4) },
        2 => FamilyParams::AlphaModulation {
            d: rng.gen_range(1..=3),
            alpha: *[int(0), rat(1, 3), rat(1, 2), rat(2, 3)].choose(rng).unwrap(),
            gamma: step(rng, -2, 4, 4),
            radius: int(2),
        },
        3 => FamilyParams::ShearletSmoothness { beta: step(rng, -2, 4, 4) },
        4 => FamilyParams::ShearletCoorbit {
            c: *[int(-1), rat(1, 2), int(1), int(2)].choose(rng).unwrap(),
            alpha: step(rng, -3, 3, 4),
            beta: step(rng, -2, 4, 4),
        },
        _ => {
            let d = rng.gen_range(1..=3);
            FamilyParams::DiagonalCoorbit {
                alpha: (0..d).map(|_| step(rng, -3, 3, 4)).collect(),
                beta: (0..d).map(|_| step(rng, -3, 3, 4)).collect(),
            }
        }
    }
}

/// Outcome and non-note evidence, for comparing reductions.
fn core_of(v: &Verdict) -> (Outcome, Vec<(String, bool)>) {
    (v.outcome, v.evidence.iter().filter(|e| e.role != Role::Note).map(|e| (e.id.clone(), e.holds)).collect())
}

/// A complete sufficient branch holds while some necessary condition fails.
pub fn inconsistent(v: &Verdict) -> bool {
    let holds = |id: &str| v.get(id).is_some_and(|e| e.holds);
    let branch = holds("p_le_q") && (holds("sufficient") || holds("refined_sufficient"));
    let nec_fail = v.evidence.iter().any(|e| matches!(e.role, Role::Necessary | Role::Both) && !e.holds);
    branch && nec_fail
}

pub fn structural_failures(n: usize, seed: u64) -> (usize, Vec<String>) {
    let mut rng = rng(seed);
    let mut bad = Vec::new();
    let two = ExtExponent::int(2);
    for _ in 0..n {
        let params = random_params(&mut rng);
        let spec = family(params.clone());
        let (p, r, q) = (any_exponent(&mut rng), any_exponent(&mut rng), any_exponent(&mut rng));
        let k = rng.gen_range(0..=3u32);
        let refine = rng.gen_bool(0.5);
        let src = spec.source(r).unwrap();
        let query = |target| EmbeddingQuery {
            source: &src,
            p,
            r,
            target,
            options: QueryOptions { use_family_refinements: refine, ..Default::default() },
        };
        let label = format!("{:?} p={} r={} q={} k={} refine={}", params, p, r, q, k, refine);
        let sob = match decide(&query(Target::Sobolev { k, q })) {
            Ok(v) => v,
            Err(e) => {
                bad.push(format!("{}: {}", label, e));
                continue;
            }
        };
        if inconsistent(&sob) {
            bad.push(format!("{}: sufficient branch with a failed necessary condition", label));
        }
        if (q <= two || q.is_infinite()) && sob.outcome == Outcome::Undetermined {
            bad.push(format!("{}: Undetermined outside the gap", label));
        }
        let with = |t| decide(&query(t)).map(|v| core_of(&v)).map_err(|e| e.to_string());
        let cb = decide_cb(&query(Target::Cb { k }), k).map(|v| core_of(&v)).map_err(|e| e.to_string());
        if cb != with(Target::Sobolev { k, q: ExtExponent::INFINITY }) {
            bad.push(format!("{}: C_b differs from W^(k,inf)", label));
        }
        if k >= 1 {
            let bv = decide_bv(&query(Target::Bv { k }), k).map(|v| core_of(&v)).map_err(|e| e.to_string());
            if bv != with(Target::Sobolev { k, q: ExtExponent::int(1) }) {
                bad.push(format!("{}: BV differs from W^(k,1)", label));
            }
        }
    }
    (n, bad)
}

pub fn criterion6() -> Check {
    let (n, bad) = structural_failures(10_000, 6);
    Check::new(bad.is_empty(), format!("{} random queries, {} failures{}", n, bad.len(), first(&bad)))
}
