//! The subcommands. Each returns its report and the process exit status.

use decomp_embed_core::covering::Index;
use decomp_embed_core::embedding::{
    decide, EmbeddingQuery, MembershipTest, Outcome, QueryOptions, SubsetI0, Target, Verdict,
};
use decomp_embed_core::exponents::ExtExponent;
use decomp_embed_core::families::{golden_grid, FamilyId, FamilySpec};
use decomp_embed_core::seqspace::{
    decide_sequence_embedding, truncated_oracle, ExpPolyWeight, LatticeSeries, OracleConfig, RadiusSchedule,
    TailClassification, TailVerdict,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::input::{exponent_to_value, family_spec, CoveringSource, I0Choice, QueryDocument, TargetKind};

pub struct Report {
    pub json: Value,
    pub text: String,
    pub code: i32,
}

fn outcome_code(o: Outcome) -> i32 {
    match o {
        Outcome::Embeds => 0,
        Outcome::DoesNotEmbed => 1,
        Outcome::Undetermined => 2,
    }
}

fn classify<S: LatticeSeries + ?Sized>(w: &S, theta: ExtExponent) -> TailClassification {
    truncated_oracle(w, theta, &RadiusSchedule::for_dimension(w.dimension()), &OracleConfig::default())
}

fn oracle_json(c: &TailClassification) -> Value {
    match c.verdict {
        TailVerdict::Convergent { partial_sum, tail_bound } => json!({
            "verdict": "Convergent",
            "partial_sum": partial_sum,
            "tail_bound": tail_bound,
            "window_radius": c.window_radius,
        }),
        TailVerdict::Divergent { partial_sum, growth } => json!({
            "verdict": "Divergent",
            "partial_sum": partial_sum,
            "growth": growth,
            "window_radius": c.window_radius,
        }),
        TailVerdict::Inconclusive => json!({ "verdict": "Inconclusive", "window_radius": c.window_radius }),
    }
}

// ---------------------------------------------------------------- decide

fn verdict_json(v: &Verdict) -> Value {
    let evidence: Vec<Value> = v
        .evidence
        .iter()
        .map(|e| json!({ "id": e.id, "anchor": e.anchor, "holds": e.holds, "detail": e.detail }))
        .collect();
    json!({ "outcome": v.outcome.as_str(), "evidence": evidence, "gap_note": v.gap_note })
}

fn verdict_text(v: &Verdict) -> String {
    let mut rows = vec![["holds".to_string(), "id".to_string(), "anchor".to_string(), "detail".to_string()]];
    for e in &v.evidence {
        rows.push([if e.holds { "yes" } else { "no" }.into(), e.id.clone(), e.anchor.clone(), e.detail.clone()]);
    }
    let mut out = format!("outcome: {}\n\n{}", v.outcome, table(&rows));
    if let Some(g) = &v.gap_note {
        out.push_str(&format!("\ngap: {}\n", g));
    }
    out
}

/// Left-aligned columns; the last column is not padded.
fn table<const N: usize>(rows: &[[String; N]]) -> String {
    let mut widths = [0usize; N];
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (j, c) in r.iter().enumerate() {
            if j + 1 == N {
                line.push_str(c);
            } else {
                line.push_str(c);
                line.push_str(&" ".repeat(widths[j] - c.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn target(kind: TargetKind, k: u32, q: Option<ExtExponent>) -> Result<Target, CliError> {
    match (kind, q) {
        (TargetKind::Sobolev, Some(q)) => Ok(Target::Sobolev { k, q }),
        (TargetKind::Sobolev, None) => Err(CliError::Usage("target sobolev needs --q".into())),
        (_, Some(_)) => Err(CliError::Usage("--q only applies to target sobolev".into())),
        (TargetKind::Cb, None) => Ok(Target::Cb { k }),
        (TargetKind::Bv, None) => Ok(Target::Bv { k }),
    }
}

pub fn cmd_decide(doc: &QueryDocument) -> Result<Report, CliError> {
    let id = crate::input::family_id(&doc.family)
        .ok_or_else(|| CliError::Usage(format!("unknown family {:?}", doc.family)))?;
    let spec = family_spec(id, &doc.params)?;
    let (p, r) = (doc.p.0, doc.r.0);
    let src = spec.source(r)?;
    let query = EmbeddingQuery {
        source: &src,
        p,
        r,
        target: target(doc.target, doc.k, doc.q.map(|q| q.0))?,
        options: QueryOptions {
            use_family_refinements: doc.refine,
            subset_i0: match doc.i0 {
                I0Choice::Default => SubsetI0::Default,
                I0Choice::None => SubsetI0::None,
            },
        },
    };
    let v = decide(&query)?;
    let mut json = verdict_json(&v);
    let mut text = verdict_text(&v);
    if doc.oracle_check {
        let (mut checked, mut classified) = (0usize, 0usize);
        for d in &v.decisions {
            let MembershipTest::Lp(theta) = d.test else { continue };
            checked += 1;
            let c = classify(&d.weight, theta);
            match c.decided() {
                Some(got) if got != d.member => {
                    return Err(CliError::OracleMismatch(format!(
                        "{}: {} in l^{} is {} symbolically, oracle says {:?}",
                        d.id, d.weight, theta, d.member, c.verdict
                    )))
                }
                Some(_) => classified += 1,
                None => {}
            }
        }
        json["oracle_check"] = json!({ "decisions": checked, "classified": classified, "contradictions": 0 });
        text.push_str(&format!("\noracle check: {} of {} decisions classified, no contradictions\n", classified, checked));
    }
    Ok(Report { json, text, code: outcome_code(v.outcome) })
}

// ---------------------------------------------------------------- inspect-covering

fn index_json(i: &Index) -> Value {
    Value::from(i.clone())
}

pub fn cmd_inspect_covering(src: &CoveringSource, radius: u64, r: Option<ExtExponent>) -> Result<Report, CliError> {
    let cov = src.covering();
    let tiles = cov.enumerate_window(radius)?;
    let rep = cov.certify_constants(&tiles)?;
    let nb = &rep.neighbors;
    let analytic = if cov.has_analytic_neighbors() {
        let mut outside = 0usize;
        for (a, adj) in nb.adjacency.iter().enumerate() {
            let bound = cov.analytic_neighbors(&nb.window[a]).unwrap_or_default();
            outside += adj.iter().filter(|&&b| !bound.contains(&nb.window[b])).count();
        }
        json!({ "numeric_within_analytic": outside == 0, "pairs_outside": outside })
    } else {
        Value::Null
    };
    let surrogate = match cov.norm_surrogate_check(&tiles) {
        Ok(s) => json!({ "min_ratio": s.min_ratio, "max_ratio": s.max_ratio }),
        Err(_) => Value::Null,
    };
    let moderate = match (src, r) {
        (CoveringSource::Family(spec), Some(r)) => {
            let m = cov.check_moderate(&|i| spec.space_weight(i, r), radius)?;
            json!({ "r": exponent_to_value(r), "c_uq_hat": m.c_uq_hat, "c_uq_next": m.c_uq_next, "ok": m.ok, "analytic": m.analytic })
        }
        (CoveringSource::Custom(_), Some(_)) => {
            return Err(CliError::Usage("--r needs a family covering (custom coverings carry no space weight)".into()))
        }
        _ => Value::Null,
    };
    let neighbors: Vec<Value> = nb
        .adjacency
        .iter()
        .enumerate()
        .map(|(a, adj)| {
            json!({
                "index": index_json(&nb.window[a]),
                "neighbors": adj.iter().map(|&b| index_json(&nb.window[b])).collect::<Vec<_>>(),
            })
        })
        .collect();
    let non_invertible: Vec<Value> = rep.non_invertible.iter().map(index_json).collect();
    let json = json!({
        "covering": cov.name(),
        "dimension": cov.dimension(),
        "radius": radius,
        "window_size": tiles.len(),
        "n_hat": rep.n_hat,
        "c_hat": rep.c_hat,
        "r_hat": rep.r_hat,
        "tightness_ok": rep.tightness_ok,
        "non_invertible": non_invertible,
        "conservative_pairs": nb.conservative_pairs,
        "analytic_neighbors": analytic,
        "norm_surrogate": surrogate,
        "moderate": moderate,
        "neighbors": neighbors,
    });
    let rows: Vec<[String; 2]> = ["covering", "dimension", "radius", "window_size", "n_hat", "c_hat", "r_hat", "tightness_ok", "conservative_pairs"]
        .iter()
        .map(|k| [k.to_string(), compact(&json[*k])])
        .chain(["analytic_neighbors", "norm_surrogate", "moderate"].iter().map(|k| [k.to_string(), compact(&json[*k])]))
        .collect();
    Ok(Report { json, text: table(&rows), code: 0 })
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

// ---------------------------------------------------------------- check-sequence

pub fn cmd_check_sequence(
    u: &ExpPolyWeight,
    v: &ExpPolyWeight,
    r: ExtExponent,
    s: ExtExponent,
    oracle: bool,
) -> Result<Report, CliError> {
    let verdict = decide_sequence_embedding(u, v, r, s)?;
    let mut json = json!({ "embeds": verdict.embeds, "exponent": exponent_to_value(verdict.exponent) });
    let mut text = format!("embeds: {}\nexponent: {}\nquotient: {}\n", verdict.embeds, verdict.exponent, verdict.quotient);
    if oracle {
        let c = classify(&verdict.quotient, verdict.exponent);
        if let Some(got) = c.decided() {
            if got != verdict.embeds {
                return Err(CliError::OracleMismatch(format!(
                    "{} in l^{} is {} symbolically, oracle says {:?}",
                    verdict.quotient, verdict.exponent, verdict.embeds, c.verdict
                )));
            }
        }
        json["oracle"] = oracle_json(&c);
        text.push_str(&format!("oracle: {}\n", compact(&json["oracle"])));
    }
    Ok(Report { json, text, code: if verdict.embeds { 0 } else { 1 } })
}

// ---------------------------------------------------------------- verify-family

pub const MISMATCH_LIMIT: usize = 20;

pub fn cmd_verify_family(id: FamilyId) -> Result<Report, CliError> {
    let grid = golden_grid(id);
    let (mut agree, mut undetermined) = (0usize, 0usize);
    let mut mismatches = Vec::new();
    for case in &grid {
        let spec = FamilySpec::instantiate(case.params.clone())?;
        let golden = spec.golden_verdict(case.p, case.r, case.k, case.q);
        let src = spec.source(case.r)?;
        let query = EmbeddingQuery {
            source: &src,
            p: case.p,
            r: case.r,
            target: Target::Sobolev { k: case.k, q: case.q },
            options: QueryOptions { use_family_refinements: true, ..Default::default() },
        };
        let engine = decide(&query)?.outcome;
        if engine == golden {
            agree += 1;
            undetermined += usize::from(engine == Outcome::Undetermined);
        } else {
            mismatches.push(format!(
                "{:?} p={} r={} k={} q={}: closed form {}, engine {}",
                case.params, case.p, case.r, case.k, case.q, golden, engine
            ));
        }
    }
    let failed = mismatches.len();
    let json = json!({
        "family": id.as_str(),
        "cases": grid.len(),
        "agree": agree,
        "disagree": failed,
        "undetermined": undetermined,
        "mismatches": mismatches.iter().take(MISMATCH_LIMIT).collect::<Vec<_>>(),
    });
    let mut text = format!(
        "family: {}\ncases: {}\nagree: {}\ndisagree: {}\nundetermined: {}\n",
        id,
        grid.len(),
        agree,
        failed,
        undetermined
    );
    for m in mismatches.iter().take(MISMATCH_LIMIT) {
        text.push_str(&format!("  {}\n", m));
    }
    Ok(Report { json, text, code: if failed == 0 { 0 } else { 1 } })
}
