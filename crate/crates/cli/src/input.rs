//! JSON and flag formats: exponents, family parameters, weights, coverings
//! and query documents.

use decomp_embed_core::covering::{AffineCovering, BaseSet, IndexExpr, IndexScheme, TightnessWitness, DEFAULT_MAX_WINDOW};
use decomp_embed_core::exponents::{int, parse_decimal, rat, ExtExponent, Rational, DEFAULT_DENOMINATOR_CAP};
use decomp_embed_core::families::{FamilyId, FamilyParams, FamilySpec};
use decomp_embed_core::seqspace::{Atom, Axis, AxisFactor, ExpPolyWeight, Fiber, Growth, Region, Sector};
use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer};
use serde_json::Value;

use crate::error::CliError;

pub const MAX_WINDOW_VAR: &str = "DECOMP_EMBED_MAX_WINDOW";

fn float_to_rational(x: f64) -> Result<Rational, String> {
    if x == 0.0 {
        return Ok(int(0));
    }
    let mag = ExtExponent::from_f64(x.abs(), DEFAULT_DENOMINATOR_CAP).map_err(|e| e.to_string())?;
    let v = mag.finite().ok_or_else(|| format!("{} is not finite", x))?;
    Ok(if x < 0.0 { -v } else { v })
}

fn rational_from_str(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    let bad = || format!("cannot read a rational from {:?}", s);
    if let Some((n, d)) = t.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        return if d == 0 { Err(bad()) } else { Ok(rat(n, d)) };
    }
    if let Ok(n) = t.parse::<i128>() {
        return Ok(int(n));
    }
    parse_decimal(t).ok_or_else(bad)
}

/// A number, a `[num, den]` pair, or a string such as `"3/2"` or `"0.25"`.
pub fn rational_from_value(v: &Value) -> Result<Rational, String> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(int(i as i128)),
            None => float_to_rational(n.as_f64().ok_or_else(|| format!("bad number {}", n))?),
        },
        Value::Array(a) if a.len() == 2 => {
            let part = |x: &Value| x.as_i64().ok_or_else(|| format!("[num, den] needs integers, got {}", v));
            let (n, d) = (part(&a[0])?, part(&a[1])?);
            if d == 0 {
                Err(format!("zero denominator in {}", v))
            } else {
                Ok(rat(n as i128, d as i128))
            }
        }
        Value::String(s) => rational_from_str(s),
        _ => Err(format!("expected a rational, got {}", v)),
    }
}

/// As [`rational_from_value`], plus `"inf"`; the value must be positive.
pub fn exponent_from_value(v: &Value) -> Result<ExtExponent, String> {
    if let Value::String(s) = v {
        return s.parse::<ExtExponent>().map_err(|e| e.to_string());
    }
    ExtExponent::new(rational_from_value(v)?).map_err(|e| e.to_string())
}

/// The JSON form of an exponent: an integer, `[num, den]` or `"inf"`.
pub fn exponent_to_value(e: ExtExponent) -> Value {
    match e.finite() {
        None => Value::from("inf"),
        Some(v) => rational_to_value(v),
    }
}

pub fn rational_to_value(v: Rational) -> Value {
    if v.is_integer() {
        Value::from(*v.numer() as i64)
    } else {
        Value::from(vec![*v.numer() as i64, *v.denom() as i64])
    }
}

/// An exponent given on the command line, in text or JSON form.
pub fn exponent_flag(name: &str, s: &str) -> Result<ExtExponent, CliError> {
    let t = s.trim();
    let parsed = if t.starts_with('[') || t.starts_with('"') {
        serde_json::from_str::<Value>(t).map_err(|e| e.to_string()).and_then(|v| exponent_from_value(&v))
    } else {
        t.parse::<ExtExponent>().map_err(|e| e.to_string())
    };
    parsed.map_err(|e| CliError::Usage(format!("--{}: {}", name, e)))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct JsonRational(pub Rational);

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        rational_from_value(&v).map(JsonRational).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct JsonExponent(pub ExtExponent);

impl<'de> Deserialize<'de> for JsonExponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        exponent_from_value(&v).map(JsonExponent).map_err(D::Error::custom)
    }
}

/// Inline JSON, or `@path` to read it from a file.
pub fn json_arg(name: &str, s: &str) -> Result<Value, CliError> {
    let text = match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("--{}: {}: {}", name, path, e)))?,
        None => s.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("--{}: {}", name, e)))
}

fn typed<T: DeserializeOwned>(what: &str, v: &Value) -> Result<T, CliError> {
    T::deserialize(v).map_err(|e| CliError::Schema(format!("{}: {}", what, e)))
}

pub fn max_window() -> Result<u128, CliError> {
    match std::env::var(MAX_WINDOW_VAR) {
        Ok(s) => s
            .trim()
            .parse::<u128>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("{} must be a positive integer, got {:?}", MAX_WINDOW_VAR, s))),
        Err(_) => Ok(DEFAULT_MAX_WINDOW),
    }
}

// ---------------------------------------------------------------- families

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BesovJson {
    d: u32,
    s: JsonRational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlphaModulationJson {
    d: u32,
    alpha: JsonRational,
    gamma: JsonRational,
    radius: Option<JsonRational>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SmoothnessJson {
    beta: JsonRational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoorbitJson {
    c: JsonRational,
    alpha: JsonRational,
    beta: JsonRational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagonalJson {
    alpha: Vec<JsonRational>,
    beta: Vec<JsonRational>,
}

pub const DEFAULT_ALPHA_RADIUS: i128 = 2;

pub fn family_id(s: &str) -> Option<FamilyId> {
    FamilyId::parse(s.trim())
}

pub fn family_params(id: FamilyId, v: &Value) -> Result<FamilyParams, CliError> {
    let what = format!("params for {}", id);
    Ok(match id {
        FamilyId::HomBesov => {
            let p: BesovJson = typed(&what, v)?;
            FamilyParams::HomBesov { d: p.d, s: p.s.0 }
        }
        FamilyId::InhomBesov => {
            let p: BesovJson = typed(&what, v)?;
            FamilyParams::InhomBesov { d: p.d, s: p.s.0 }
        }
        FamilyId::AlphaModulation => {
            let p: AlphaModulationJson = typed(&what, v)?;
            FamilyParams::AlphaModulation {
                d: p.d,
                alpha: p.alpha.0,
                gamma: p.gamma.0,
                radius: p.radius.map_or(int(DEFAULT_ALPHA_RADIUS), |r| r.0),
            }
        }
        FamilyId::ShearletSmoothness => {
            let p: SmoothnessJson = typed(&what, v)?;
            FamilyParams::ShearletSmoothness { beta: p.beta.0 }
        }
        FamilyId::ShearletCoorbit => {
            let p: CoorbitJson = typed(&what, v)?;
            FamilyParams::ShearletCoorbit { c: p.c.0, alpha: p.alpha.0, beta: p.beta.0 }
        }
        FamilyId::DiagonalCoorbit => {
            let p: DiagonalJson = typed(&what, v)?;
            FamilyParams::DiagonalCoorbit {
                alpha: p.alpha.into_iter().map(|x| x.0).collect(),
                beta: p.beta.into_iter().map(|x| x.0).collect(),
            }
        }
    })
}

pub fn family_spec(id: FamilyId, params: &Value) -> Result<FamilySpec, CliError> {
    Ok(FamilySpec::instantiate(family_params(id, params)?)?.with_max_window(max_window()?))
}

// ---------------------------------------------------------------- weights

#[derive(Deserialize)]
#[serde(untagged)]
enum WeightJson {
    Regions(RegionsJson),
    Single(RegionJson),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionsJson {
    regions: Vec<RegionJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionJson {
    sector: SectorJson,
    atoms: Vec<AtomJson>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SectorJson {
    Grid(String),
    Axes(Vec<String>),
    Other(SectorObj),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
enum SectorObj {
    Radial(u32),
    Fibered(FiberedJson),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FiberedJson {
    axis: String,
    fiber: FiberJson,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FiberJson {
    Name(String),
    Bound(FiberBound),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
enum FiberBound {
    Below {
        kappa: JsonRational,
        #[serde(default)]
        minus_one: bool,
    },
    Above {
        kappa: JsonRational,
        #[serde(default)]
        plus_one: bool,
    },
}

fn one() -> f64 {
    1.0
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomJson {
    #[serde(default = "one")]
    coef: f64,
    #[serde(default)]
    axes: Vec<AxisJson>,
    #[serde(default)]
    radial: JsonRational,
    #[serde(default)]
    fiber: JsonRational,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AxisJson {
    Split(SplitJson),
    Uniform(GrowthJson),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SplitJson {
    pos: GrowthJson,
    neg: GrowthJson,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct GrowthJson {
    #[serde(default)]
    exp2: JsonRational,
    #[serde(default)]
    poly: JsonRational,
}

impl GrowthJson {
    fn growth(&self) -> Growth {
        Growth::new(self.exp2.0, self.poly.0)
    }
}

fn axis(s: &str) -> Result<Axis, String> {
    match s.trim() {
        "N0" | "N" | "ℕ0" | "ℕ₀" => Ok(Axis::Natural),
        "Z<0" | "-N" => Ok(Axis::Negative),
        "Z" | "ℤ" => Ok(Axis::Integers),
        other => Err(format!("unknown axis {:?}", other)),
    }
}

/// `"N0"`, `"Z^2"`, `"N0xZ"` or `"N0×Z<0"`.
fn grid_axes(s: &str) -> Result<Vec<Axis>, String> {
    let mut out = Vec::new();
    for part in s.split(['x', '×']) {
        match part.split_once('^') {
            Some((a, n)) => {
                let n: usize = n.trim().parse().map_err(|_| format!("bad power in {:?}", s))?;
                out.extend(std::iter::repeat_n(axis(a)?, n));
            }
            None => out.push(axis(part)?),
        }
    }
    Ok(out)
}

fn sector(s: &SectorJson) -> Result<Sector, String> {
    Ok(match s {
        SectorJson::Grid(g) => Sector::Grid(grid_axes(g)?),
        SectorJson::Axes(a) => Sector::Grid(a.iter().map(|x| axis(x)).collect::<Result<_, _>>()?),
        SectorJson::Other(SectorObj::Radial(dim)) => Sector::Radial { dim: *dim },
        SectorJson::Other(SectorObj::Fibered(f)) => {
            let fiber = match &f.fiber {
                FiberJson::Name(n) if n == "origin" => Fiber::Origin,
                FiberJson::Name(n) if n == "punctured" => Fiber::Punctured,
                FiberJson::Name(n) => return Err(format!("unknown fiber {:?}", n)),
                FiberJson::Bound(FiberBound::Below { kappa, minus_one }) => {
                    Fiber::Below { kappa: kappa.0, minus_one: *minus_one }
                }
                FiberJson::Bound(FiberBound::Above { kappa, plus_one }) => {
                    Fiber::Above { kappa: kappa.0, plus_one: *plus_one }
                }
            };
            Sector::Fibered { axis: axis(&f.axis)?, fiber }
        }
    })
}

fn atom(a: &AtomJson, sector: &Sector) -> Atom {
    let mut out = Atom::constant(sector, a.coef);
    if !a.axes.is_empty() {
        out.axes = a
            .axes
            .iter()
            .map(|x| match x {
                AxisJson::Split(s) => AxisFactor::split(s.pos.growth(), s.neg.growth()),
                AxisJson::Uniform(g) => AxisFactor::uniform(g.growth()),
            })
            .collect();
    }
    out.radial = a.radial.0;
    out.fiber = a.fiber.0;
    out
}

fn region(r: &RegionJson) -> Result<Region, CliError> {
    let s = sector(&r.sector).map_err(CliError::Schema)?;
    let atoms = r.atoms.iter().map(|a| atom(a, &s)).collect();
    Ok(Region::new(s, atoms)?)
}

/// A weight `{"regions": [...]}`, or a single region `{"sector": ..., "atoms": [...]}`.
pub fn weight(name: &str, v: &Value) -> Result<ExpPolyWeight, CliError> {
    let w: WeightJson = typed(&format!("--{}", name), v)?;
    let regions = match &w {
        WeightJson::Regions(r) => r.regions.iter().map(region).collect::<Result<Vec<_>, _>>()?,
        WeightJson::Single(r) => vec![region(r)?],
    };
    Ok(ExpPolyWeight::new(regions)?)
}

// ---------------------------------------------------------------- coverings

#[derive(Deserialize)]
#[serde(untagged)]
enum CoveringJson {
    Family(FamilyRefJson),
    Custom(CustomWrapJson),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyRefJson {
    family: String,
    params: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomWrapJson {
    custom: CustomJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomJson {
    dimension: usize,
    indices: String,
    #[serde(rename = "T")]
    t: Vec<Vec<ExprJson>>,
    b: Vec<ExprJson>,
    base_set: BaseSetJson,
    tightness: Option<TightnessJson>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ExprJson {
    Number(f64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
enum BaseSetJson {
    Ball {
        center: Option<Vec<f64>>,
        radius: f64,
    },
    Box {
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
    Annulus {
        inner: f64,
        outer: f64,
    },
    Cone {
        x_lo: f64,
        x_hi: f64,
        slope: f64,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TightnessJson {
    eps: f64,
    center: Vec<f64>,
}

pub enum CoveringSource {
    Family(FamilySpec),
    Custom(AffineCovering),
}

impl CoveringSource {
    pub fn covering(&self) -> &AffineCovering {
        match self {
            CoveringSource::Family(f) => f.covering(),
            CoveringSource::Custom(c) => c,
        }
    }
}

fn expr(e: &ExprJson, vars: usize) -> Result<IndexExpr, CliError> {
    match e {
        ExprJson::Number(x) => Ok(IndexExpr::constant(*x, vars)),
        ExprJson::Text(s) => IndexExpr::parse(s, vars).map_err(CliError::Schema),
    }
}

fn custom_covering(c: &CustomJson) -> Result<AffineCovering, CliError> {
    let scheme = IndexScheme::parse(&c.indices)?;
    let vars = scheme.arity();
    let t = c.t.iter().map(|row| row.iter().map(|e| expr(e, vars)).collect()).collect::<Result<Vec<Vec<_>>, _>>()?;
    let b = c.b.iter().map(|e| expr(e, vars)).collect::<Result<Vec<_>, _>>()?;
    let base = match &c.base_set {
        BaseSetJson::Ball { center, radius } => {
            BaseSet::Ball { center: center.clone().unwrap_or_else(|| vec![0.0; c.dimension]), radius: *radius }
        }
        BaseSetJson::Box { lo, hi } => BaseSet::Box { lo: lo.clone(), hi: hi.clone() },
        BaseSetJson::Annulus { inner, outer } => BaseSet::Annulus { inner: *inner, outer: *outer },
        BaseSetJson::Cone { x_lo, x_hi, slope } => BaseSet::Cone { x_lo: *x_lo, x_hi: *x_hi, slope: *slope },
    };
    let mut cov = AffineCovering::custom(c.dimension, scheme, t, b, base)?.with_max_window(max_window()?);
    if let Some(w) = &c.tightness {
        if w.center.len() != c.dimension || w.eps <= 0.0 {
            return Err(CliError::Schema("tightness needs eps > 0 and a center of the covering's dimension".into()));
        }
        cov = cov.with_tightness(TightnessWitness::constant(w.eps, w.center.clone()));
    }
    Ok(cov)
}

/// `{"family": id, "params": {...}}` or `{"custom": {...}}`.
pub fn covering(v: &Value) -> Result<CoveringSource, CliError> {
    match typed::<CoveringJson>("covering", v)? {
        CoveringJson::Family(f) => {
            let id = family_id(&f.family).ok_or_else(|| CliError::Schema(format!("unknown family {:?}", f.family)))?;
            Ok(CoveringSource::Family(family_spec(id, &f.params)?))
        }
        CoveringJson::Custom(c) => Ok(CoveringSource::Custom(custom_covering(&c.custom)?)),
    }
}

// ---------------------------------------------------------------- query documents

#[derive(Deserialize, Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    Sobolev,
    Cb,
    Bv,
}

#[derive(Deserialize, Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum I0Choice {
    #[default]
    Default,
    None,
}

/// The `decide` payload, from a file or assembled from flags.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryDocument {
    pub family: String,
    pub params: Value,
    pub p: JsonExponent,
    pub r: JsonExponent,
    pub target: TargetKind,
    pub k: u32,
    pub q: Option<JsonExponent>,
    #[serde(default)]
    pub refine: bool,
    #[serde(default)]
    pub oracle_check: bool,
    #[serde(default)]
    pub i0: I0Choice,
}

pub fn query_document(v: &Value) -> Result<QueryDocument, CliError> {
    typed("query", v)
}
