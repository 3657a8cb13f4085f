//! Exp-poly weights over lattice sectors and the summability calculus.
//!
//! A weight is a finite list of [`Region`]s that partition its lattice. On
//! each region the weight is (up to bounded factors) a sum of [`Atom`]s, so
//! membership in `ℓ^θ` reduces to membership of every atom on its region.

mod decide;
mod lemma;
mod oracle;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exponents::{int, Rational};
use crate::numeric::{ceil_pow2, log2_sum_exp2, rat_f64};

pub use decide::{
    decide_lp_membership, decide_sequence_embedding, decide_shell_bounded, Membership,
    SequenceVerdict,
};
pub use lemma::{log2_embedding_constant, lemma_witness, log2_weighted_norm, Witness, WitnessKind};
pub use oracle::{
    truncated_oracle, FnSeries, LatticeSeries, OracleConfig, RadiusSchedule, TailClassification,
    TailVerdict,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeqError {
    #[error("no closed-form rule for {0}")]
    UnsupportedWeight(String),
    #[error("weights live on different lattices: {0}")]
    LatticeMismatch(String),
    #[error("malformed weight: {0}")]
    Malformed(String),
}

/// One integer axis of a product lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// `n ≥ 0`
    Natural,
    /// `n ≤ -1`
    Negative,
    /// all of `ℤ`
    Integers,
}

impl Axis {
    pub fn contains(self, n: i64) -> bool {
        match self {
            Axis::Natural => n >= 0,
            Axis::Negative => n < 0,
            Axis::Integers => true,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Axis::Natural => "N0",
            Axis::Negative => "Z<0",
            Axis::Integers => "Z",
        }
    }
}

/// The set of `m` attached to a fixed `n` in a fibered sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fiber {
    /// `m = 0`
    Origin,
    /// `m ≠ 0`
    Punctured,
    /// `|m| ≤ ⌈2^{κn}⌉ - [minus_one]`
    Below { kappa: Rational, minus_one: bool },
    /// `|m| ≥ ⌈2^{κn}⌉ + [plus_one]`
    Above { kappa: Rational, plus_one: bool },
}

impl Fiber {
    pub fn contains(self, n: i64, m: i64) -> bool {
        let am = m.unsigned_abs() as f64;
        match self {
            Fiber::Origin => m == 0,
            Fiber::Punctured => m != 0,
            Fiber::Below { kappa, minus_one } => {
                am <= ceil_pow2(rat_f64(kappa) * n as f64) - if minus_one { 1.0 } else { 0.0 }
            }
            Fiber::Above { kappa, plus_one } => {
                am >= ceil_pow2(rat_f64(kappa) * n as f64) + if plus_one { 1.0 } else { 0.0 }
            }
        }
    }
}

/// The index set carrying a region.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sector {
    /// Product of axes; each index is its own scale shell.
    Grid(Vec<Axis>),
    /// `ℤ^d \ {0}` with radial atoms `|k|^c`; scale shells are dyadic in `|k|`.
    Radial { dim: u32 },
    /// `{(n, m) : n ∈ axis, m ∈ fiber(n)}`; the fiber over `n` is one scale shell.
    Fibered { axis: Axis, fiber: Fiber },
}

impl Sector {
    pub fn natural() -> Self {
        Sector::Grid(vec![Axis::Natural])
    }

    pub fn integers() -> Self {
        Sector::Grid(vec![Axis::Integers])
    }

    /// Number of coordinates of an index.
    pub fn arity(&self) -> usize {
        match self {
            Sector::Grid(axes) => axes.len(),
            Sector::Radial { dim } => *dim as usize,
            Sector::Fibered { .. } => 2,
        }
    }

    pub fn contains(&self, idx: &[i64]) -> bool {
        if idx.len() != self.arity() {
            return false;
        }
        match self {
            Sector::Grid(axes) => axes.iter().zip(idx).all(|(a, &n)| a.contains(n)),
            Sector::Radial { .. } => idx.iter().any(|&k| k != 0),
            Sector::Fibered { axis, fiber } => axis.contains(idx[0]) && fiber.contains(idx[0], idx[1]),
        }
    }

    fn validate(&self) -> Result<(), SeqError> {
        match self {
            Sector::Grid(axes) if axes.is_empty() => Err(SeqError::Malformed("empty grid".into())),
            Sector::Radial { dim: 0 } => Err(SeqError::Malformed("radial sector of dimension 0".into())),
            Sector::Fibered { axis: Axis::Integers, .. } => Err(SeqError::Malformed(
                "fibered sectors need a half-line base axis".into(),
            )),
            Sector::Fibered { axis, fiber } => {
                let kappa = match fiber {
                    Fiber::Below { kappa, .. } | Fiber::Above { kappa, .. } => *kappa,
                    _ => Rational::zero(),
                };
                let sigma = if *axis == Axis::Natural { int(1) } else { int(-1) };
                if (kappa * sigma).is_negative() {
                    Err(SeqError::Malformed(format!(
                        "fiber bound 2^({}·n) must be at least 1 on {}",
                        kappa,
                        axis.symbol()
                    )))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::Grid(axes) => {
                for (i, a) in axes.iter().enumerate() {
                    if i > 0 {
                        f.write_str("×")?;
                    }
                    f.write_str(a.symbol())?;
                }
                Ok(())
            }
            Sector::Radial { dim } => write!(f, "Z^{}\\{{0}}", dim),
            Sector::Fibered { axis, fiber } => {
                write!(f, "{{(n,m): n∈{}, ", axis.symbol())?;
                match fiber {
                    Fiber::Origin => f.write_str("m=0}"),
                    Fiber::Punctured => f.write_str("m≠0}"),
                    Fiber::Below { kappa, minus_one } => {
                        write!(f, "|m|≤⌈2^({}n)⌉{}}}", kappa, if *minus_one { "-1" } else { "" })
                    }
                    Fiber::Above { kappa, plus_one } => {
                        write!(f, "|m|≥⌈2^({}n)⌉{}}}", kappa, if *plus_one { "+1" } else { "" })
                    }
                }
            }
        }
    }
}

/// Exponents of `2^{a n} ⟨n⟩^c` on one side of an axis, `⟨n⟩ = max{|n|, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Growth {
    pub exp2: Rational,
    pub poly: Rational,
}

impl Growth {
    pub fn new(exp2: Rational, poly: Rational) -> Self {
        Growth { exp2, poly }
    }

    pub fn exp(exp2: Rational) -> Self {
        Growth { exp2, poly: Rational::zero() }
    }

    fn add(self, o: Growth) -> Growth {
        Growth { exp2: self.exp2 + o.exp2, poly: self.poly + o.poly }
    }

    fn scale(self, e: Rational) -> Growth {
        Growth { exp2: self.exp2 * e, poly: self.poly * e }
    }

    fn is_zero(&self) -> bool {
        self.exp2.is_zero() && self.poly.is_zero()
    }
}

/// Per-orthant factor along one axis: `pos` applies for `n ≥ 0`, `neg` for `n < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AxisFactor {
    pub pos: Growth,
    pub neg: Growth,
}

impl AxisFactor {
    pub fn uniform(g: Growth) -> Self {
        AxisFactor { pos: g, neg: g }
    }

    pub fn exp(a: Rational) -> Self {
        Self::uniform(Growth::exp(a))
    }

    pub fn split(pos: Growth, neg: Growth) -> Self {
        AxisFactor { pos, neg }
    }

    fn at(&self, n: i64) -> Growth {
        if n >= 0 {
            self.pos
        } else {
            self.neg
        }
    }

    fn log2_at(&self, n: i64) -> f64 {
        let g = self.at(n);
        rat_f64(g.exp2) * n as f64 + rat_f64(g.poly) * libm::log2((n.unsigned_abs().max(1)) as f64)
    }
}

/// A positive monomial: `coef · Π_j 2^{a_j n_j}⟨n_j⟩^{c_j} · |k|^radial · ⟨m⟩^fiber`.
///
/// `axes` has one entry per grid coordinate, or a single entry for the base
/// axis of a fibered sector; radial sectors use `radial` only.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub coef: f64,
    pub axes: Vec<AxisFactor>,
    pub radial: Rational,
    pub fiber: Rational,
}

impl Atom {
    /// The constant `c` shaped for a sector.
    pub fn constant(sector: &Sector, coef: f64) -> Self {
        let n = match sector {
            Sector::Grid(axes) => axes.len(),
            Sector::Radial { .. } => 0,
            Sector::Fibered { .. } => 1,
        };
        Atom { coef, axes: vec![AxisFactor::default(); n], radial: Rational::zero(), fiber: Rational::zero() }
    }

    pub fn grid(axes: Vec<AxisFactor>) -> Self {
        Atom { coef: 1.0, axes, radial: Rational::zero(), fiber: Rational::zero() }
    }

    pub fn radial(c: Rational) -> Self {
        Atom { coef: 1.0, axes: Vec::new(), radial: c, fiber: Rational::zero() }
    }

    pub fn fibered(n: AxisFactor, rho: Rational) -> Self {
        Atom { coef: 1.0, axes: vec![n], radial: Rational::zero(), fiber: rho }
    }

    pub fn with_coef(mut self, coef: f64) -> Self {
        self.coef = coef;
        self
    }

    pub fn mul(&self, o: &Atom) -> Atom {
        Atom {
            coef: self.coef * o.coef,
            axes: self
                .axes
                .iter()
                .zip(&o.axes)
                .map(|(a, b)| AxisFactor { pos: a.pos.add(b.pos), neg: a.neg.add(b.neg) })
                .collect(),
            radial: self.radial + o.radial,
            fiber: self.fiber + o.fiber,
        }
    }

    pub fn pow(&self, e: Rational) -> Atom {
        Atom {
            coef: libm::pow(self.coef, rat_f64(e)),
            axes: self
                .axes
                .iter()
                .map(|a| AxisFactor { pos: a.pos.scale(e), neg: a.neg.scale(e) })
                .collect(),
            radial: self.radial * e,
            fiber: self.fiber * e,
        }
    }

    pub fn recip(&self) -> Atom {
        self.pow(int(-1))
    }

    fn is_constant(&self) -> bool {
        self.axes.iter().all(|a| a.pos.is_zero() && a.neg.is_zero())
            && self.radial.is_zero()
            && self.fiber.is_zero()
    }

    fn shape_matches(&self, sector: &Sector) -> bool {
        match sector {
            Sector::Grid(axes) => self.axes.len() == axes.len() && self.radial.is_zero() && self.fiber.is_zero(),
            Sector::Radial { .. } => self.axes.is_empty() && self.fiber.is_zero(),
            Sector::Fibered { .. } => self.axes.len() == 1 && self.radial.is_zero(),
        }
    }

    /// `log2` of the atom at `idx` (assumed inside the sector).
    pub fn log2_at(&self, sector: &Sector, idx: &[i64]) -> f64 {
        let mut v = libm::log2(self.coef);
        match sector {
            Sector::Grid(_) => {
                for (a, &n) in self.axes.iter().zip(idx) {
                    v += a.log2_at(n);
                }
            }
            Sector::Radial { .. } => {
                let sq: f64 = idx.iter().map(|&k| (k as f64) * (k as f64)).sum();
                v += rat_f64(self.radial) * 0.5 * libm::log2(sq);
            }
            Sector::Fibered { .. } => {
                v += self.axes[0].log2_at(idx[0]);
                v += rat_f64(self.fiber) * libm::log2(idx[1].unsigned_abs().max(1) as f64);
            }
        }
        v
    }

    fn describe(&self, sector: &Sector) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.coef != 1.0 || self.is_constant() {
            parts.push(format!("{}", self.coef));
        }
        let names = ["n", "m", "l", "j", "i"];
        match sector {
            Sector::Grid(_) | Sector::Fibered { .. } => {
                let many = self.axes.len() > 1;
                for (j, a) in self.axes.iter().enumerate() {
                    let v = if many { format!("k{}", j + 1) } else { String::from(names[0]) };
                    if a.pos == a.neg {
                        push_growth(&mut parts, &v, a.pos, "");
                    } else {
                        push_growth(&mut parts, &v, a.pos, "[+]");
                        push_growth(&mut parts, &v, a.neg, "[-]");
                    }
                }
                if !self.fiber.is_zero() {
                    parts.push(format!("<m>^({})", self.fiber));
                }
            }
            Sector::Radial { .. } => {
                if !self.radial.is_zero() {
                    parts.push(format!("|k|^({})", self.radial));
                }
            }
        }
        if parts.is_empty() {
            String::from("1")
        } else {
            parts.join("·")
        }
    }
}

fn push_growth(parts: &mut Vec<String>, v: &str, g: Growth, tag: &str) {
    if !g.exp2.is_zero() {
        parts.push(format!("2^({}{}){}", g.exp2, v, tag));
    }
    if !g.poly.is_zero() {
        parts.push(format!("<{}>^({}){}", v, g.poly, tag));
    }
    if g.is_zero() && !tag.is_empty() {
        parts.push(format!("1{}", tag));
    }
}

/// A sector together with the atoms summed over it.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub sector: Sector,
    pub atoms: Vec<Atom>,
}

impl Region {
    pub fn new(sector: Sector, atoms: Vec<Atom>) -> Result<Self, SeqError> {
        sector.validate()?;
        if atoms.is_empty() {
            return Err(SeqError::Malformed(format!("region {} has no atoms", sector)));
        }
        if let Some(a) = atoms.iter().find(|a| !a.shape_matches(&sector)) {
            return Err(SeqError::Malformed(format!("atom {:?} does not fit sector {}", a, sector)));
        }
        if atoms.iter().any(|a| !a.coef.is_finite() || a.coef <= 0.0) {
            return Err(SeqError::Malformed("atom coefficients must be positive".into()));
        }
        Ok(Region { sector, atoms })
    }

    pub fn log2_at(&self, idx: &[i64]) -> f64 {
        let vals: Vec<f64> = self.atoms.iter().map(|a| a.log2_at(&self.sector, idx)).collect();
        log2_sum_exp2(&vals)
    }
}

/// A positive weight on a union of disjoint sectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPolyWeight {
    regions: Vec<Region>,
}

impl ExpPolyWeight {
    pub fn new(regions: Vec<Region>) -> Result<Self, SeqError> {
        if regions.is_empty() {
            return Err(SeqError::Malformed("weight without regions".into()));
        }
        Ok(ExpPolyWeight { regions })
    }

    pub fn single(sector: Sector, atom: Atom) -> Result<Self, SeqError> {
        Self::new(vec![Region::new(sector, vec![atom])?])
    }

    /// `2^{a n}⟨n⟩^c` on one axis.
    pub fn on_axis(axis: Axis, exp2: Rational, poly: Rational) -> Self {
        Self::single(Sector::Grid(vec![axis]), Atom::grid(vec![AxisFactor::uniform(Growth::new(exp2, poly))]))
            .expect("valid axis weight")
    }

    pub fn constant_like(&self, coef: f64) -> Self {
        ExpPolyWeight {
            regions: self
                .regions
                .iter()
                .map(|r| Region { sector: r.sector.clone(), atoms: vec![Atom::constant(&r.sector, coef)] })
                .collect(),
        }
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn arity(&self) -> usize {
        self.regions[0].sector.arity()
    }

    fn aligned(&self, o: &Self) -> Result<(), SeqError> {
        let same = self.regions.len() == o.regions.len()
            && self.regions.iter().zip(&o.regions).all(|(a, b)| a.sector == b.sector);
        if same {
            Ok(())
        } else {
            Err(SeqError::LatticeMismatch(format!("{} vs {}", self.lattice_string(), o.lattice_string())))
        }
    }

    /// Pointwise product.
    pub fn mul(&self, o: &Self) -> Result<Self, SeqError> {
        self.aligned(o)?;
        let regions = self
            .regions
            .iter()
            .zip(&o.regions)
            .map(|(a, b)| Region {
                sector: a.sector.clone(),
                atoms: a.atoms.iter().flat_map(|x| b.atoms.iter().map(move |y| x.mul(y))).collect(),
            })
            .collect();
        Ok(ExpPolyWeight { regions })
    }

    /// Pointwise sum.
    pub fn add(&self, o: &Self) -> Result<Self, SeqError> {
        self.aligned(o)?;
        let regions = self
            .regions
            .iter()
            .zip(&o.regions)
            .map(|(a, b)| {
                let mut atoms = a.atoms.clone();
                atoms.extend(b.atoms.iter().cloned());
                Region { sector: a.sector.clone(), atoms }
            })
            .collect();
        Ok(ExpPolyWeight { regions })
    }

    /// Pointwise quotient; the denominator must be a single atom on every region.
    pub fn div(&self, o: &Self) -> Result<Self, SeqError> {
        self.aligned(o)?;
        if let Some(r) = o.regions.iter().find(|r| r.atoms.len() != 1) {
            return Err(SeqError::UnsupportedWeight(format!(
                "division by a sum of {} atoms on {}",
                r.atoms.len(),
                r.sector
            )));
        }
        self.mul(&o.recip_single())
    }

    fn recip_single(&self) -> Self {
        ExpPolyWeight {
            regions: self
                .regions
                .iter()
                .map(|r| Region { sector: r.sector.clone(), atoms: vec![r.atoms[0].recip()] })
                .collect(),
        }
    }

    /// `w^e`. Exact for single-atom regions; for sums and `e ≥ 0` it returns
    /// `Σ a_i^e`, which is equivalent up to constants depending on `e` and the
    /// number of atoms.
    pub fn pow(&self, e: Rational) -> Result<Self, SeqError> {
        let mut regions = Vec::with_capacity(self.regions.len());
        for r in &self.regions {
            if r.atoms.len() > 1 && e.is_negative() {
                return Err(SeqError::UnsupportedWeight(format!(
                    "negative power {} of a sum on {}",
                    e, r.sector
                )));
            }
            regions.push(Region { sector: r.sector.clone(), atoms: r.atoms.iter().map(|a| a.pow(e)).collect() });
        }
        Ok(ExpPolyWeight { regions })
    }

    pub fn region_containing(&self, idx: &[i64]) -> Option<&Region> {
        self.regions.iter().find(|r| r.sector.contains(idx))
    }

    /// `log2 w(idx)`, or `None` outside the lattice.
    pub fn log2_at(&self, idx: &[i64]) -> Option<f64> {
        self.region_containing(idx).map(|r| r.log2_at(idx))
    }

    pub fn eval(&self, idx: &[i64]) -> Option<f64> {
        self.log2_at(idx).map(libm::exp2)
    }

    pub fn lattice_string(&self) -> String {
        self.regions.iter().map(|r| format!("{}", r.sector)).collect::<Vec<_>>().join(" ∪ ")
    }
}

impl fmt::Display for ExpPolyWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.regions.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let terms: Vec<String> = r.atoms.iter().map(|a| a.describe(&r.sector)).collect();
            write!(f, "{} on {}", terms.join(" + "), r.sector)?;
        }
        Ok(())
    }
}
