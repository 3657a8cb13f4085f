//! The verdict engine: Sobolev, `C_b^k` and `BV^k` targets.
//!
//! A query is decided from the criterion weight `w^{(t)}` of the source's
//! symbolic geometry, divided by the space weight `u`, through exact
//! `ℓ^θ`-membership tests. Sufficient and necessary branches are evaluated
//! independently and both are reported as evidence.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::exponents::{positive_part, ExtExponent};
use crate::seqspace::{
    decide_lp_membership, decide_shell_bounded, ExpPolyWeight, Region, SeqError, Sector,
};
use crate::weights::{symbolic_weight, SymbolicGeometry, WeightKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmbedError {
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error("moderateness of the space weight is not certified: {0}")]
    ModerationUnknown(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("sufficient condition holds while a necessary one fails: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Sobolev { k: u32, q: ExtExponent },
    Cb { k: u32 },
    Bv { k: u32 },
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Sobolev { k, q } => write!(f, "W^({},{})", k, q),
            Target::Cb { k } => write!(f, "C_b^{}", k),
            Target::Bv { k } => write!(f, "BV^{}", k),
        }
    }
}

/// A decomposition space `D(Q, L^p, ℓ_u^r)` seen through its symbolic data.
#[derive(Debug)]
pub struct EmbeddingSource {
    pub name: String,
    pub geometry: SymbolicGeometry,
    /// Space weight `u` on the symbolic lattice, one atom per region.
    pub u: ExpPolyWeight,
    /// Default `I_0` with `sup_{i ∈ I_0} ‖T_i^{-1}‖ < ∞`, as sectors of the lattice.
    pub default_i0: Option<Vec<Sector>>,
    /// Evidence anchor of the family's Besov-detour refinement, if it has one.
    pub detour_anchor: Option<String>,
    /// Whether `u` is known to be moderate with respect to the covering.
    pub moderate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SubsetI0 {
    /// The source's default.
    #[default]
    Default,
    None,
    Sectors(Vec<Sector>),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QueryOptions {
    pub use_family_refinements: bool,
    pub subset_i0: SubsetI0,
}

#[derive(Debug, Clone)]
pub struct EmbeddingQuery<'a> {
    pub source: &'a EmbeddingSource,
    pub p: ExtExponent,
    pub r: ExtExponent,
    pub target: Target,
    pub options: QueryOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Embeds,
    DoesNotEmbed,
    Undetermined,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Embeds => "Embeds",
            Outcome::DoesNotEmbed => "DoesNotEmbed",
            Outcome::Undetermined => "Undetermined",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Sufficient,
    Necessary,
    Both,
    Note,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evidence {
    pub id: String,
    pub anchor: String,
    pub holds: bool,
    pub detail: String,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub evidence: Vec<Evidence>,
    pub gap_note: Option<String>,
    /// Every symbolic membership decision taken, for oracle re-validation.
    pub decisions: Vec<MembershipRecord>,
}

/// One exact decision `w ∈ ℓ^θ` (or a shell bound) made by the engine.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipRecord {
    pub id: String,
    pub weight: ExpPolyWeight,
    pub test: MembershipTest,
    pub member: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MembershipTest {
    Lp(ExtExponent),
    /// `sup_shell |shell|^x sup_shell w < ∞`.
    Shell(crate::exponents::Rational),
}

struct Recorder {
    decisions: Vec<MembershipRecord>,
}

impl Recorder {
    fn lp(&mut self, id: &str, w: &ExpPolyWeight, theta: ExtExponent) -> Result<bool, EmbedError> {
        let member = decide_lp_membership(w, theta)?.is_member();
        self.decisions.push(MembershipRecord { id: id.into(), weight: w.clone(), test: MembershipTest::Lp(theta), member });
        Ok(member)
    }

    fn shell(&mut self, id: &str, w: &ExpPolyWeight, x: crate::exponents::Rational) -> Result<bool, EmbedError> {
        let member = decide_shell_bounded(w, x)?.is_member();
        self.decisions.push(MembershipRecord { id: id.into(), weight: w.clone(), test: MembershipTest::Shell(x), member });
        Ok(member)
    }
}

fn restrict(w: &ExpPolyWeight, sectors: &[Sector]) -> Result<ExpPolyWeight, EmbedError> {
    let mut regions: Vec<Region> = Vec::new();
    for s in sectors {
        match w.regions().iter().find(|r| &r.sector == s) {
            Some(r) => regions.push(r.clone()),
            None => {
                return Err(EmbedError::InvalidQuery(format!(
                    "I0 sector {} is not a region of {}",
                    s,
                    w.lattice_string()
                )))
            }
        }
    }
    Ok(ExpPolyWeight::new(regions)?)
}

fn membership_detail(label: &str, w: &ExpPolyWeight, theta: ExtExponent, member: bool) -> String {
    format!("{} = {} {} l^{}", label, w, if member { "∈" } else { "∉" }, theta)
}

pub fn decide(query: &EmbeddingQuery<'_>) -> Result<Verdict, EmbedError> {
    match query.target {
        Target::Sobolev { k, q } => decide_sobolev_at(query, k, q),
        Target::Cb { k } => decide_cb(query, k),
        Target::Bv { k } => decide_bv(query, k),
    }
}

/// Embedding into `W^{k,q}` for the query's Sobolev target.
pub fn decide_sobolev(query: &EmbeddingQuery<'_>) -> Result<Verdict, EmbedError> {
    match query.target {
        Target::Sobolev { k, q } => decide_sobolev_at(query, k, q),
        other => Err(EmbedError::InvalidQuery(format!("decide_sobolev called with target {}", other))),
    }
}

/// Embedding into `BV^k` through `W^{k,1}`.
pub fn decide_bv(query: &EmbeddingQuery<'_>, k: u32) -> Result<Verdict, EmbedError> {
    if k == 0 {
        return Err(EmbedError::InvalidQuery("BV^k needs k ≥ 1".into()));
    }
    let mut v = decide_sobolev_at(query, k, ExtExponent::int(1))?;
    v.evidence.push(Evidence {
        id: "bv_reduction".into(),
        anchor: "Cor 6.1".into(),
        holds: true,
        detail: format!(
            "D ↪ BV^{0} iff D ↪ W^({0},1); an embedding forces p ≤ 1 and Y ↪ l_v^1 with v = w^(1)",
            k
        ),
        role: Role::Note,
    });
    Ok(v)
}

/// Embedding into `C_b^k`, which coincides with the `q = ∞` Sobolev case.
pub fn decide_cb(query: &EmbeddingQuery<'_>, k: u32) -> Result<Verdict, EmbedError> {
    let mut v = decide_sobolev_at(query, k, ExtExponent::INFINITY)?;
    v.evidence.push(Evidence {
        id: "cb_equivalence".into(),
        anchor: "Cor 3.4(1)(c)".into(),
        holds: true,
        detail: format!("D ↪ W^({0},inf) iff D ↪ C_b^{0}", k),
        role: Role::Note,
    });
    Ok(v)
}

fn decide_sobolev_at(query: &EmbeddingQuery<'_>, k: u32, q: ExtExponent) -> Result<Verdict, EmbedError> {
    let src = query.source;
    if !src.moderate {
        return Err(EmbedError::ModerationUnknown(src.name.clone()));
    }
    let (p, r) = (query.p, query.r);
    let two = ExtExponent::int(2);
    let mut rec = Recorder { decisions: Vec::new() };
    let mut ev: Vec<Evidence> = Vec::new();
    let quotient = |t: ExtExponent| -> Result<ExpPolyWeight, EmbedError> {
        Ok(symbolic_weight(&src.geometry, WeightKind::Wt, k, p, t)?.div(&src.u)?)
    };

    let p_le_q = p <= q;
    ev.push(Evidence {
        id: "p_le_q".into(),
        anchor: "Thm 4.1".into(),
        holds: p_le_q,
        detail: format!("p = {} ≤ q = {}", p, q),
        role: Role::Both,
    });

    let w_q = quotient(q)?;
    let qv = q.lower_conjugate();
    let theta_s = ExtExponent::compound(qv, r);
    let suff_member = rec.lp("sufficient", &w_q, theta_s)?;
    ev.push(Evidence {
        id: "sufficient".into(),
        anchor: "Cor 5.2(1)".into(),
        holds: suff_member,
        detail: membership_detail("w^(q)/u", &w_q, theta_s, suff_member),
        role: Role::Sufficient,
    });
    let mut sufficient = p_le_q && suff_member;

    let theta_n = ExtExponent::compound(q, r);
    let nec_member = rec.lp("necessary", &w_q, theta_n)?;
    ev.push(Evidence {
        id: "necessary".into(),
        anchor: "Cor 5.2(2)".into(),
        holds: nec_member,
        detail: membership_detail("w^(q)/u", &w_q, theta_n, nec_member),
        role: Role::Necessary,
    });
    let mut necessary_failed = !p_le_q || !nec_member;

    if q.is_infinite() {
        let rc = r.conjugate();
        let ok = rec.lp("necessary_sup", &w_q, rc)?;
        ev.push(Evidence {
            id: "necessary_sup".into(),
            anchor: "Cor 5.2(2)(b)".into(),
            holds: ok,
            detail: membership_detail("w^(inf)/u", &w_q, rc, ok),
            role: Role::Necessary,
        });
        necessary_failed |= !ok;
    }

    let i0 = match &query.options.subset_i0 {
        SubsetI0::Default => src.default_i0.clone(),
        SubsetI0::None => None,
        SubsetI0::Sectors(s) => Some(s.clone()),
    };
    if let Some(sectors) = &i0 {
        let theta2 = ExtExponent::compound(two, r);
        if !q.is_infinite() {
            let w_p = restrict(&quotient(p)?, sectors)?;
            let ok = rec.lp("khintchine_p", &w_p, theta2)?;
            ev.push(Evidence {
                id: "khintchine_p".into(),
                anchor: "Cor 5.2(2)(c)(i)".into(),
                holds: ok,
                detail: membership_detail("w^(p)/u on I0", &w_p, theta2, ok),
                role: Role::Necessary,
            });
            necessary_failed |= !ok;
        }
        if !q.is_infinite() && q >= two {
            let w_2 = restrict(&quotient(two)?, sectors)?;
            let ok = rec.lp("khintchine_2", &w_2, theta2)?;
            ev.push(Evidence {
                id: "khintchine_2".into(),
                anchor: "Cor 5.2(2)(c)(ii)".into(),
                holds: ok,
                detail: membership_detail("w^(2)/u on I0", &w_2, theta2, ok),
                role: Role::Necessary,
            });
            necessary_failed |= !ok;
        }
    }

    let in_gap = !q.is_infinite() && q > two;
    let refine = query.options.use_family_refinements && in_gap;
    if let (true, Some(anchor)) = (refine, &src.detour_anchor) {
        let x = positive_part(qv.reciprocal() - r.reciprocal());
        let (suff, s_detail) = if r <= two {
            let ok = rec.shell("refined_sufficient", &w_q, x)?;
            (ok, format!("r ≤ 2: shell bound of w^(q)/u with exponent {} {}", x, holds_word(ok)))
        } else {
            let ok = rec.lp("refined_sufficient", &w_q, theta_s)?;
            (ok, format!("r > 2: {}", membership_detail("w^(q)/u", &w_q, theta_s, ok)))
        };
        ev.push(Evidence {
            id: "refined_sufficient".into(),
            anchor: format!("{} (sufficient)", anchor),
            holds: suff,
            detail: s_detail,
            role: Role::Sufficient,
        });
        sufficient |= p_le_q && suff;
        let (nec, n_detail) = if r <= q {
            let ok = rec.shell("refined_necessary", &w_q, x)?;
            (ok, format!("r ≤ q: shell bound of w^(q)/u with exponent {} {}", x, holds_word(ok)))
        } else {
            let ok = rec.lp("refined_necessary", &w_q, theta_s)?;
            (ok, format!("r > q: {}", membership_detail("w^(q)/u", &w_q, theta_s, ok)))
        };
        ev.push(Evidence {
            id: "refined_necessary".into(),
            anchor: format!("{} (necessary)", anchor),
            holds: nec,
            detail: n_detail,
            role: Role::Necessary,
        });
        necessary_failed |= !nec;
    }

    if sufficient && necessary_failed {
        return Err(EmbedError::Inconsistent(format!("{} into W^({},{})", src.name, k, q)));
    }
    let (outcome, gap_note) = if sufficient {
        (Outcome::Embeds, None)
    } else if necessary_failed {
        (Outcome::DoesNotEmbed, None)
    } else {
        let mut note = format!(
            "sufficient condition w^(q)/u ∈ l^{} fails; necessary condition w^(q)/u ∈ l^{} holds (q = {} lies in (2, inf))",
            theta_s, theta_n, q
        );
        if refine && src.detour_anchor.is_some() {
            note.push_str("; the refined criteria leave the threshold case with r in (2, q] open");
        }
        (Outcome::Undetermined, Some(note))
    };
    Ok(Verdict { outcome, evidence: ev, gap_note, decisions: rec.decisions })
}

fn holds_word(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "fails"
    }
}

impl Verdict {
    /// Evidence entries with the given id.
    pub fn get(&self, id: &str) -> Option<&Evidence> {
        self.evidence.iter().find(|e| e.id == id)
    }

    pub fn summary(&self) -> String {
        let mut s = self.outcome.to_string();
        for e in &self.evidence {
            s.push_str(&format!("\n  [{}] {} ({}): {}", if e.holds { "x" } else { " " }, e.id, e.anchor, e.detail));
        }
        if let Some(g) = &self.gap_note {
            s.push_str(&format!("\n  gap: {}", g));
        }
        s
    }
}
