//! Criterion weights `|det T_i|^{1/p-1/t}·(1 + |b_i|^k + ‖T_i‖^k)` and their
//! quotients against a space weight.
//!
//! Each weight has a numeric evaluator over covering indices and, when the
//! covering comes with a [`SymbolicGeometry`], an exp-poly form over the
//! symbolic lattice. The symbolic form is exact where the geometry atoms are
//! exact and equivalent up to constants otherwise.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::covering::{euclid, AffineCovering, Index};
use crate::exponents::{ExtExponent, Rational};
use crate::numeric::rat_f64;
use crate::seqspace::{Atom, ExpPolyWeight, Region, SeqError, Sector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// `|det T_i|^{1/p-1/t}·(1 + |b_i|^k + ‖T_i‖^k)`, with `t = q`.
    Ukpq,
    /// `|det T_i|^{1/p-1/t}`.
    V0,
    /// `|det T_i|^{1/p-1/t}·(|b_i|^k + ‖T_i‖^k)`.
    Wk,
    /// `|det T_i|^{1/p-1/t}·(1 + |b_i|^k + ‖T_i‖^k)` for a free `t`.
    Wt,
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightKind::Ukpq => "u_kpq",
            WeightKind::V0 => "v0",
            WeightKind::Wk => "w_k",
            WeightKind::Wt => "w_t",
        })
    }
}

/// Asymptotics of `|det T_i|`, `‖T_i‖` and `|b_i|` on one region of the
/// symbolic lattice. `norm` and `shift` are sums of atoms; `shift = None`
/// means `b_i = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryRegion {
    pub sector: Sector,
    pub det: Atom,
    pub norm: Vec<Atom>,
    pub shift: Option<Vec<Atom>>,
}

/// Map from covering indices to the symbolic lattice.
pub type Projection = Box<dyn Fn(&[i64]) -> Option<Index> + Send + Sync>;

/// Symbolic geometry of a covering together with the map from covering
/// indices to the symbolic lattice (`None` for indices left out of
/// summability, such as a single low-pass index).
pub struct SymbolicGeometry {
    pub regions: Vec<GeometryRegion>,
    pub project: Projection,
}

impl fmt::Debug for SymbolicGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolicGeometry").field("regions", &self.regions).finish_non_exhaustive()
    }
}

impl SymbolicGeometry {
    /// A weight with one atom per region, e.g. a space weight.
    pub fn lattice_weight(&self, atom: impl Fn(&GeometryRegion) -> Atom) -> Result<ExpPolyWeight, SeqError> {
        let regions = self
            .regions
            .iter()
            .map(|g| Region::new(g.sector.clone(), alloc::vec![atom(g)]))
            .collect::<Result<Vec<_>, _>>()?;
        ExpPolyWeight::new(regions)
    }
}

fn det_exponent(p: ExtExponent, t: ExtExponent) -> Rational {
    p.reciprocal() - t.reciprocal()
}

/// The symbolic form of a criterion weight.
pub fn symbolic_weight(
    geometry: &SymbolicGeometry,
    kind: WeightKind,
    k: u32,
    p: ExtExponent,
    t: ExtExponent,
) -> Result<ExpPolyWeight, SeqError> {
    let e = det_exponent(p, t);
    let kr = Rational::from_integer(k as i128);
    let mut regions = Vec::with_capacity(geometry.regions.len());
    for g in &geometry.regions {
        let one = Atom::constant(&g.sector, 1.0);
        let mut terms: Vec<Atom> = Vec::new();
        if matches!(kind, WeightKind::Ukpq | WeightKind::Wt) {
            terms.push(one.clone());
        }
        if kind != WeightKind::V0 {
            match (&g.shift, k) {
                (_, 0) => terms.push(one.clone()),
                (Some(shift), _) => terms.extend(shift.iter().map(|a| a.pow(kr))),
                (None, _) => {}
            }
            if k == 0 {
                terms.push(one.clone());
            } else {
                terms.extend(g.norm.iter().map(|a| a.pow(kr)));
            }
        } else {
            terms.push(one.clone());
        }
        let det = g.det.pow(e);
        regions.push(Region::new(g.sector.clone(), terms.iter().map(|a| det.mul(a)).collect())?);
    }
    ExpPolyWeight::new(regions)
}

/// One of the criterion weights, bound to a covering.
pub struct CriterionWeight<'a> {
    pub kind: WeightKind,
    pub k: u32,
    pub p: ExtExponent,
    pub t: ExtExponent,
    pub symbolic: Option<ExpPolyWeight>,
    covering: &'a AffineCovering,
}

impl fmt::Debug for CriterionWeight<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CriterionWeight")
            .field("kind", &self.kind)
            .field("k", &self.k)
            .field("p", &self.p)
            .field("t", &self.t)
            .field("symbolic", &self.symbolic)
            .finish_non_exhaustive()
    }
}

pub fn build_weight<'a>(
    cov: &'a AffineCovering,
    geometry: Option<&SymbolicGeometry>,
    kind: WeightKind,
    k: u32,
    p: ExtExponent,
    t: ExtExponent,
) -> Result<CriterionWeight<'a>, SeqError> {
    let symbolic = geometry.map(|g| symbolic_weight(g, kind, k, p, t)).transpose()?;
    Ok(CriterionWeight { kind, k, p, t, symbolic, covering: cov })
}

impl CriterionWeight<'_> {
    /// The exponent `1/p - 1/t` of `|det T_i|`.
    pub fn det_exponent(&self) -> Rational {
        det_exponent(self.p, self.t)
    }

    pub fn evaluate(&self, idx: &[i64]) -> f64 {
        let tile = self.covering.tile(idx);
        let e = rat_f64(self.det_exponent());
        let det = if self.det_exponent().is_zero() { 1.0 } else { libm::pow(tile.t.det().abs(), e) };
        let k = self.k as f64;
        let b = libm::pow(euclid(&tile.b), k);
        let n = libm::pow(tile.t.spectral_norm(), k);
        det * match self.kind {
            WeightKind::Ukpq | WeightKind::Wt => 1.0 + b + n,
            WeightKind::Wk => b + n,
            WeightKind::V0 => 1.0,
        }
    }

    pub fn describe(&self) -> alloc::string::String {
        match &self.symbolic {
            Some(w) => format!("{}", w),
            None => format!("{}(k={}, p={}, t={})", self.kind, self.k, self.p, self.t),
        }
    }
}

/// `num / den` pointwise.
pub struct QuotientWeight<'a> {
    num: &'a CriterionWeight<'a>,
    den: &'a dyn Fn(&[i64]) -> f64,
    pub symbolic: Option<ExpPolyWeight>,
}

pub fn quotient<'a>(
    num: &'a CriterionWeight<'a>,
    den: &'a dyn Fn(&[i64]) -> f64,
    den_symbolic: Option<&ExpPolyWeight>,
) -> Result<QuotientWeight<'a>, SeqError> {
    let symbolic = match (&num.symbolic, den_symbolic) {
        (Some(a), Some(b)) => Some(a.div(b)?),
        _ => None,
    };
    Ok(QuotientWeight { num, den, symbolic })
}

impl QuotientWeight<'_> {
    pub fn evaluate(&self, idx: &[i64]) -> f64 {
        self.num.evaluate(idx) / (self.den)(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::{BaseSet, Generator, IndexScheme, Matrix};
    use crate::exponents::int;
    use crate::seqspace::{Axis, AxisFactor};
    use alloc::vec;

    fn identity_cover() -> AffineCovering {
        let gen: Generator = Box::new(|_| (Matrix::identity(2), vec![0.0, 0.0], BaseSet::ball(2, 1.0)));
        AffineCovering::new("id", 2, IndexScheme::Single, gen)
    }

    #[test]
    fn identity_criterion_weight() {
        let cov = identity_cover();
        let p = ExtExponent::int(3);
        let w = build_weight(&cov, None, WeightKind::Wt, 1, p, p).unwrap();
        assert_eq!(w.evaluate(&[]), 2.0);
        assert!(w.det_exponent().is_zero());
        let v0 = build_weight(&cov, None, WeightKind::V0, 4, ExtExponent::int(1), ExtExponent::int(2)).unwrap();
        assert_eq!(v0.evaluate(&[]), 1.0);
    }

    fn dyadic_geometry() -> SymbolicGeometry {
        SymbolicGeometry {
            regions: vec![GeometryRegion {
                sector: Sector::natural(),
                det: Atom::grid(vec![AxisFactor::exp(int(1))]),
                norm: vec![Atom::grid(vec![AxisFactor::exp(int(1))])],
                shift: None,
            }],
            project: Box::new(|i| Some(i.to_vec())),
        }
    }

    #[test]
    fn symbolic_besov_weight() {
        let g = dyadic_geometry();
        let one = ExtExponent::int(1);
        let w = symbolic_weight(&g, WeightKind::Wt, 0, one, one).unwrap();
        for n in 0..5 {
            assert!((w.eval(&[n]).unwrap() - 3.0).abs() < 1e-12);
        }
        let w = symbolic_weight(&g, WeightKind::Wt, 2, ExtExponent::int(1), ExtExponent::int(2)).unwrap();
        let n = 3;
        let expect = libm::exp2(n as f64 * 0.5) * (1.0 + libm::exp2(2.0 * n as f64));
        assert!((w.eval(&[n]).unwrap() / expect - 1.0).abs() < 1e-12);
        let u = ExpPolyWeight::on_axis(Axis::Natural, int(1), int(0));
        assert!(w.div(&u).is_ok());
        let w = symbolic_weight(&g, WeightKind::Wk, 2, one, one).unwrap();
        assert!((w.eval(&[1]).unwrap() - 4.0).abs() < 1e-12);
    }
}
