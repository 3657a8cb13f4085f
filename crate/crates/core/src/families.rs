//! The six built-in families: coverings, symbolic geometry, space weights,
//! default `I_0`, and closed-form characterizations.
//!
//! Golden predicates are written directly in the family parameters, without
//! going through weights, so they serve as an independent check of the
//! engine. They describe the engine with family refinements enabled.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::covering::{AffineCovering, BaseSet, Index, IndexScheme, Matrix, TightnessWitness};
use crate::embedding::{EmbeddingSource, Outcome};
use crate::exponents::{int, positive_part, rat, ExtExponent, Rational};
use crate::numeric::rat_f64;
use crate::seqspace::{Atom, Axis, AxisFactor, ExpPolyWeight, Fiber, Growth, SeqError, Sector};
use crate::weights::{GeometryRegion, SymbolicGeometry};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    HomBesov,
    InhomBesov,
    AlphaModulation,
    ShearletSmoothness,
    ShearletCoorbit,
    DiagonalCoorbit,
}

impl FamilyId {
    pub const ALL: [FamilyId; 6] = [
        FamilyId::HomBesov,
        FamilyId::InhomBesov,
        FamilyId::AlphaModulation,
        FamilyId::ShearletSmoothness,
        FamilyId::ShearletCoorbit,
        FamilyId::DiagonalCoorbit,
    ];

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.as_str() == s)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::HomBesov => "hom_besov",
            FamilyId::InhomBesov => "inhom_besov",
            FamilyId::AlphaModulation => "alpha_modulation",
            FamilyId::ShearletSmoothness => "shearlet_smoothness",
            FamilyId::ShearletCoorbit => "shearlet_coorbit",
            FamilyId::DiagonalCoorbit => "diagonal_coorbit",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Family parameters. Smoothness and weight exponents are exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyParams {
    /// `u_n = 2^{sn}` on `ℤ`.
    HomBesov { d: u32, s: Rational },
    /// `u_n = 2^{sn}` on `ℕ_0`.
    InhomBesov { d: u32, s: Rational },
    /// `u_k = |k|^{γ/(1-α)}`; `radius` is the radius of the base ball.
    AlphaModulation { d: u32, alpha: Rational, gamma: Rational, radius: Rational },
    /// `u = 2^{2nβ}`, with `u = 1` on the low-pass index.
    ShearletSmoothness { beta: Rational },
    /// Coorbit weight `v(A) = a^α ‖A^{-T}‖^β`; `β = 0` is the weight `a^α`.
    ShearletCoorbit { c: Rational, alpha: Rational, beta: Rational },
    /// Per-axis exponents of `v^{(α,β)}`; the dimension is their length.
    DiagonalCoorbit { alpha: Vec<Rational>, beta: Vec<Rational> },
}

impl FamilyParams {
    pub fn id(&self) -> FamilyId {
        match self {
            FamilyParams::HomBesov { .. } => FamilyId::HomBesov,
            FamilyParams::InhomBesov { .. } => FamilyId::InhomBesov,
            FamilyParams::AlphaModulation { .. } => FamilyId::AlphaModulation,
            FamilyParams::ShearletSmoothness { .. } => FamilyId::ShearletSmoothness,
            FamilyParams::ShearletCoorbit { .. } => FamilyId::ShearletCoorbit,
            FamilyParams::DiagonalCoorbit { .. } => FamilyId::DiagonalCoorbit,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            FamilyParams::HomBesov { d, .. }
            | FamilyParams::InhomBesov { d, .. }
            | FamilyParams::AlphaModulation { d, .. } => *d as usize,
            FamilyParams::ShearletSmoothness { .. } | FamilyParams::ShearletCoorbit { .. } => 2,
            FamilyParams::DiagonalCoorbit { alpha, .. } => alpha.len(),
        }
    }

    fn validate(&self) -> Result<(), FamilyError> {
        let bad = |m: &str| Err(FamilyError::InvalidParams(m.into()));
        match self {
            FamilyParams::HomBesov { d, .. } | FamilyParams::InhomBesov { d, .. } if *d == 0 || *d > 8 => {
                bad("d must lie in 1..=8")
            }
            FamilyParams::AlphaModulation { d, alpha, radius, .. } => {
                if *d == 0 || *d > 8 {
                    bad("d must lie in 1..=8")
                } else if alpha.is_negative() || *alpha >= int(1) {
                    bad("alpha must lie in [0, 1); use inhom_besov for the Besov endpoint")
                } else if !radius.is_positive() {
                    bad("radius must be positive")
                } else {
                    Ok(())
                }
            }
            FamilyParams::DiagonalCoorbit { alpha, beta } => {
                if alpha.is_empty() || alpha.len() > 8 {
                    bad("alpha must have between 1 and 8 entries")
                } else if alpha.len() != beta.len() {
                    bad("alpha and beta must have the same length")
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

/// An instantiated family: its covering plus the parameters that fix the
/// symbolic data.
pub struct FamilySpec {
    params: FamilyParams,
    covering: AffineCovering,
}

impl fmt::Debug for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FamilySpec").field("params", &self.params).field("covering", &self.covering).finish()
    }
}

fn pow2(e: f64) -> f64 {
    libm::exp2(e)
}

fn unit_center(d: usize) -> Vec<f64> {
    let mut c = vec![0.0; d];
    c[0] = 1.0;
    c
}

/// `‖T^{(c)}_{n,m,ε}‖ ≍ 2^n + 2^{nc} + 2^{nc}|m|`.
pub fn shearlet_coorbit_norm_asymptotic(c: f64, n: i64, m: i64) -> f64 {
    let nf = n as f64;
    pow2(nf) + pow2(nf * c) + pow2(nf * c) * m.unsigned_abs() as f64
}

fn coorbit_matrix(c: f64, n: i64, m: i64, eps: i64) -> Matrix {
    let e = eps as f64;
    let a = pow2(n as f64);
    let b = pow2(n as f64 * c);
    Matrix::from_rows(&[&[e * a, 0.0], &[e * b * m as f64, e * b]])
}

fn smoothness_matrix(n: i64, m: i64, eps: i64, delta: i64) -> Matrix {
    let e = eps as f64;
    let a = pow2(n as f64);
    let (r0, r1) = ([e * a * a, 0.0], [e * a * m as f64, e * a]);
    if delta == 1 {
        Matrix::from_rows(&[&r1, &r0])
    } else {
        Matrix::from_rows(&[&r0, &r1])
    }
}

fn build_covering(params: &FamilyParams) -> AffineCovering {
    match params.clone() {
        FamilyParams::HomBesov { d, .. } => {
            let d = d as usize;
            let gen = Box::new(move |i: &[i64]| {
                (Matrix::scalar(d, pow2(i[0] as f64)), vec![0.0; d], BaseSet::Annulus { inner: 0.25, outer: 4.0 })
            });
            AffineCovering::new("hom_besov", d, IndexScheme::Lattice(vec![Axis::Integers]), gen)
                .with_tightness(TightnessWitness::constant(0.5, unit_center(d)))
                .with_analytic_neighbors(Box::new(|i: &[i64]| (i[0] - 4..=i[0] + 4).map(|n| vec![n]).collect()))
        }
        FamilyParams::InhomBesov { d, .. } => {
            let d = d as usize;
            let gen = Box::new(move |i: &[i64]| {
                if i[0] == 0 {
                    (Matrix::identity(d), vec![0.0; d], BaseSet::ball(d, 2.0))
                } else {
                    (Matrix::scalar(d, pow2(i[0] as f64)), vec![0.0; d], BaseSet::Annulus { inner: 0.25, outer: 4.0 })
                }
            });
            let neighbors = Box::new(|i: &[i64]| -> Vec<Index> {
                let n = i[0];
                if n == 0 {
                    return (0..=3).map(|m| vec![m]).collect();
                }
                let lo = if n <= 3 { 0 } else { (n - 4).max(1) };
                (lo..=n + 4).map(|m| vec![m]).collect()
            });
            AffineCovering::new("inhom_besov", d, IndexScheme::Lattice(vec![Axis::Natural]), gen)
                .with_tightness(TightnessWitness::constant(0.5, unit_center(d)))
                .with_analytic_neighbors(neighbors)
        }
        FamilyParams::AlphaModulation { d, alpha, radius, .. } => {
            let d = d as usize;
            let a0 = rat_f64(alpha / (int(1) - alpha));
            let rad = rat_f64(radius);
            let gen = Box::new(move |k: &[i64]| {
                let norm = libm::sqrt(k.iter().map(|&x| (x * x) as f64).sum::<f64>());
                let s = libm::pow(norm, a0);
                (Matrix::scalar(d, s), k.iter().map(|&x| s * x as f64).collect(), BaseSet::ball(d, rad))
            });
            AffineCovering::new("alpha_modulation", d, IndexScheme::Punctured { dim: d }, gen)
                .with_tightness(TightnessWitness::constant(rad / 2.0, vec![0.0; d]))
        }
        FamilyParams::ShearletSmoothness { .. } => {
            let cone = BaseSet::Cone { x_lo: 1.0 / 3.0, x_hi: 3.0, slope: 1.0 };
            let gen = Box::new(move |i: &[i64]| {
                if i.is_empty() {
                    (Matrix::scalar(2, 4.0), vec![-4.0, 0.0], cone.clone())
                } else {
                    (smoothness_matrix(i[0], i[1], i[2], i[3]), vec![0.0, 0.0], cone.clone())
                }
            });
            AffineCovering::new("shearlet_smoothness", 2, IndexScheme::ShearletCone, gen)
                .with_tightness(TightnessWitness::constant(0.5, vec![1.0, 0.0]))
        }
        FamilyParams::ShearletCoorbit { c, .. } => {
            let c = rat_f64(c);
            let gen = Box::new(move |i: &[i64]| {
                (coorbit_matrix(c, i[0], i[1], i[2]), vec![0.0, 0.0], BaseSet::Cone { x_lo: 0.5, x_hi: 2.0, slope: 1.0 })
            });
            AffineCovering::new("shearlet_coorbit", 2, IndexScheme::SignedPlane, gen)
                .with_tightness(TightnessWitness::constant(0.25, vec![1.0, 0.0]))
        }
        FamilyParams::DiagonalCoorbit { alpha, .. } => {
            let d = alpha.len();
            let gen = Box::new(move |i: &[i64]| {
                let diag: Vec<f64> = (0..d).map(|l| i[d + l] as f64 * pow2(-(i[l] as f64))).collect();
                (Matrix::diagonal(&diag), vec![0.0; d], BaseSet::cube(d, 0.5, 2.0))
            });
            let neighbors = Box::new(move |i: &[i64]| -> Vec<Index> {
                let mut out: Vec<Index> = vec![i.to_vec()];
                for l in 0..d {
                    out = out
                        .into_iter()
                        .flat_map(|j| {
                            (-1..=1).map(move |t| {
                                let mut j = j.clone();
                                j[l] += t;
                                j
                            })
                        })
                        .collect();
                }
                out.sort();
                out
            });
            AffineCovering::new("diagonal_coorbit", d, IndexScheme::SignedLattice { dim: d }, gen)
                .with_tightness(TightnessWitness::constant(0.5, vec![1.0; d]))
                .with_analytic_neighbors(neighbors)
        }
    }
}

fn grid1(a: Rational) -> Atom {
    Atom::grid(vec![AxisFactor::exp(a)])
}

fn fib(a: Rational, rho: Rational) -> Atom {
    Atom::fibered(AxisFactor::exp(a), rho)
}

/// The four regions of the shearlet-coorbit lattice and `‖T‖` on each.
fn coorbit_regions(c: Rational) -> Vec<(Sector, Atom)> {
    let one = int(1);
    let zero = Rational::zero();
    let fibered = |axis, fiber| Sector::Fibered { axis, fiber };
    let kappa = one - c;
    if c >= one {
        vec![
            (fibered(Axis::Natural, Fiber::Punctured), fib(c, one)),
            (fibered(Axis::Natural, Fiber::Origin), fib(c, zero)),
            (fibered(Axis::Negative, Fiber::Above { kappa, plus_one: false }), fib(c, one)),
            (fibered(Axis::Negative, Fiber::Below { kappa, minus_one: true }), fib(one, zero)),
        ]
    } else {
        vec![
            (fibered(Axis::Natural, Fiber::Below { kappa, minus_one: false }), fib(one, zero)),
            (fibered(Axis::Natural, Fiber::Above { kappa, plus_one: true }), fib(c, one)),
            (fibered(Axis::Negative, Fiber::Punctured), fib(c, one)),
            (fibered(Axis::Negative, Fiber::Origin), fib(c, zero)),
        ]
    }
}

impl FamilySpec {
    pub fn instantiate(params: FamilyParams) -> Result<Self, FamilyError> {
        params.validate()?;
        let covering = build_covering(&params);
        Ok(FamilySpec { params, covering })
    }

    pub fn id(&self) -> FamilyId {
        self.params.id()
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn covering(&self) -> &AffineCovering {
        &self.covering
    }

    /// Replaces the covering's window cap.
    pub fn with_max_window(mut self, cap: u128) -> Self {
        self.covering = self.covering.with_max_window(cap);
        self
    }

    /// Whether the space weight depends on `r` (coorbit families).
    pub fn weight_depends_on_r(&self) -> bool {
        matches!(self.id(), FamilyId::ShearletCoorbit | FamilyId::DiagonalCoorbit)
    }

    pub fn geometry(&self) -> SymbolicGeometry {
        let one = int(1);
        let zero = Rational::zero();
        let region = |sector, det, norm, shift| GeometryRegion { sector, det, norm, shift };
        match &self.params {
            FamilyParams::HomBesov { d, .. } => {
                let d = int(*d as i128);
                SymbolicGeometry {
                    regions: [Axis::Natural, Axis::Negative]
                        .into_iter()
                        .map(|a| region(Sector::Grid(vec![a]), grid1(d), vec![grid1(one)], None))
                        .collect(),
                    project: Box::new(|i| Some(i.to_vec())),
                }
            }
            FamilyParams::InhomBesov { d, .. } => SymbolicGeometry {
                regions: vec![region(Sector::natural(), grid1(int(*d as i128)), vec![grid1(one)], None)],
                project: Box::new(|i| Some(i.to_vec())),
            },
            FamilyParams::AlphaModulation { d, alpha, .. } => {
                let a0 = *alpha / (one - *alpha);
                let dd = int(*d as i128);
                SymbolicGeometry {
                    regions: vec![region(
                        Sector::Radial { dim: *d },
                        Atom::radial(dd * a0),
                        vec![Atom::radial(a0)],
                        Some(vec![Atom::radial(a0 + one)]),
                    )],
                    project: Box::new(|i| Some(i.to_vec())),
                }
            }
            FamilyParams::ShearletSmoothness { .. } => SymbolicGeometry {
                regions: vec![region(
                    Sector::Fibered { axis: Axis::Natural, fiber: Fiber::Below { kappa: one, minus_one: false } },
                    fib(int(3), zero),
                    vec![fib(int(2), zero)],
                    None,
                )],
                project: Box::new(|i| if i.is_empty() { None } else { Some(vec![i[0], i[1]]) }),
            },
            FamilyParams::ShearletCoorbit { c, .. } => SymbolicGeometry {
                regions: coorbit_regions(*c)
                    .into_iter()
                    .map(|(s, norm)| region(s, fib(one + *c, zero), vec![norm], None))
                    .collect(),
                project: Box::new(|i| Some(vec![i[0], i[1]])),
            },
            FamilyParams::DiagonalCoorbit { alpha, .. } => {
                let d = alpha.len();
                let axis_atom = |l: Option<usize>| {
                    Atom::grid((0..d).map(|j| AxisFactor::exp(if l.is_none() || l == Some(j) { -one } else { zero })).collect())
                };
                SymbolicGeometry {
                    regions: vec![region(
                        Sector::Grid(vec![Axis::Integers; d]),
                        axis_atom(None),
                        (0..d).map(|l| axis_atom(Some(l))).collect(),
                        None,
                    )],
                    project: Box::new(move |i| Some(i[..d].to_vec())),
                }
            }
        }
    }

    /// The space weight on the symbolic lattice.
    pub fn space_weight_symbolic(&self, r: ExtExponent) -> Result<ExpPolyWeight, FamilyError> {
        let g = self.geometry();
        let half_minus = rat(1, 2) - r.reciprocal();
        let w = match &self.params {
            FamilyParams::HomBesov { s, .. } | FamilyParams::InhomBesov { s, .. } => g.lattice_weight(|_| grid1(*s))?,
            FamilyParams::AlphaModulation { alpha, gamma, .. } => {
                let e = *gamma / (int(1) - *alpha);
                g.lattice_weight(|_| Atom::radial(e))?
            }
            FamilyParams::ShearletSmoothness { beta } => g.lattice_weight(|_| fib(int(2) * *beta, Rational::zero()))?,
            FamilyParams::ShearletCoorbit { c, alpha, beta } => {
                let lead = fib(-(int(1) + *c) * half_minus - *alpha, Rational::zero());
                g.lattice_weight(|reg| lead.mul(&reg.norm[0].pow(*beta)))?
            }
            FamilyParams::DiagonalCoorbit { alpha, beta } => g.lattice_weight(|_| {
                Atom::grid(
                    alpha
                        .iter()
                        .zip(beta)
                        .map(|(a, b)| AxisFactor::split(Growth::exp(*a + half_minus), Growth::exp(*b + half_minus)))
                        .collect(),
                )
            })?,
        };
        Ok(w)
    }

    /// The space weight at a covering index.
    pub fn space_weight(&self, idx: &[i64], r: ExtExponent) -> f64 {
        let half_minus = rat_f64(rat(1, 2) - r.reciprocal());
        match &self.params {
            FamilyParams::HomBesov { s, .. } | FamilyParams::InhomBesov { s, .. } => pow2(rat_f64(*s) * idx[0] as f64),
            FamilyParams::AlphaModulation { alpha, gamma, .. } => {
                let norm = libm::sqrt(idx.iter().map(|&x| (x * x) as f64).sum::<f64>());
                libm::pow(norm, rat_f64(*gamma / (int(1) - *alpha)))
            }
            FamilyParams::ShearletSmoothness { beta } => {
                if idx.is_empty() {
                    1.0
                } else {
                    pow2(2.0 * rat_f64(*beta) * idx[0] as f64)
                }
            }
            FamilyParams::ShearletCoorbit { c, alpha, beta } => {
                let (cf, n) = (rat_f64(*c), idx[0] as f64);
                let t = coorbit_matrix(cf, idx[0], idx[1], idx[2]);
                pow2(-n * (1.0 + cf) * half_minus - n * rat_f64(*alpha)) * libm::pow(t.spectral_norm(), rat_f64(*beta))
            }
            FamilyParams::DiagonalCoorbit { alpha, beta } => alpha
                .iter()
                .zip(beta)
                .zip(idx)
                .map(|((a, b), &k)| {
                    let e = if k >= 0 { *a } else { *b };
                    pow2(k as f64 * (rat_f64(e) + half_minus))
                })
                .product(),
        }
    }

    /// Default `I_0` (a union of symbolic sectors with `sup ‖T_i^{-1}‖ < ∞`).
    pub fn default_i0(&self) -> Option<Vec<Sector>> {
        match &self.params {
            FamilyParams::HomBesov { .. } | FamilyParams::InhomBesov { .. } => Some(vec![Sector::natural()]),
            FamilyParams::AlphaModulation { d, .. } => Some(vec![Sector::Radial { dim: *d }]),
            FamilyParams::ShearletSmoothness { .. } => Some(self.geometry().regions.into_iter().map(|g| g.sector).collect()),
            FamilyParams::ShearletCoorbit { .. } | FamilyParams::DiagonalCoorbit { .. } => None,
        }
    }

    /// Evidence anchor of the Besov-detour refinement, if the family has one.
    pub fn detour_anchor(&self) -> Option<&'static str> {
        match self.id() {
            FamilyId::InhomBesov => Some("Ex 7.2"),
            FamilyId::AlphaModulation => Some("Ex 7.3"),
            FamilyId::ShearletSmoothness => Some("Ex 7.4"),
            _ => None,
        }
    }

    /// The symbolic source used by the engine, with the space weight for `r`.
    pub fn source(&self, r: ExtExponent) -> Result<EmbeddingSource, FamilyError> {
        Ok(EmbeddingSource {
            name: format!("{}", self.id()),
            geometry: self.geometry(),
            u: self.space_weight_symbolic(r)?,
            default_i0: self.default_i0(),
            detour_anchor: self.detour_anchor().map(String::from),
            moderate: true,
        })
    }

    /// Closed-form verdict for `D ↪ W^{k,q}` (use `q = 1` for `BV^k` and
    /// `q = ∞` for `C_b^k`), with family refinements applied.
    pub fn golden_verdict(&self, p: ExtExponent, r: ExtExponent, k: u32, q: ExtExponent) -> Outcome {
        let c = Closed::new(p, r, k, q);
        match &self.params {
            FamilyParams::HomBesov { d, s } => c.hom_besov(*d, *s),
            FamilyParams::InhomBesov { d, s } => c.with_refinement(|x_strict| {
                let thr = c.k + int(*d as i128) * c.dpq;
                at_least(*s, thr, x_strict)
            }, |strict2| at_least(*s, c.k, strict2)),
            FamilyParams::AlphaModulation { d, alpha, gamma, .. } => {
                let dd = int(*d as i128);
                let thr = c.k + dd * (*alpha * c.dpq + (int(1) - *alpha) * c.x);
                c.with_refinement(|strict| at_least(*gamma, thr, strict), |_| true)
            }
            FamilyParams::ShearletSmoothness { beta } => {
                let thr = c.k + rat(3, 2) * c.dpq + c.x / int(2);
                c.with_refinement(|strict| at_least(*beta, thr, strict), |_| true)
            }
            FamilyParams::ShearletCoorbit { c: cc, alpha, beta } => c.plain(|e| {
                let gamma = rat(1, 2) - r.reciprocal() + c.dpq;
                let a = *alpha + (int(1) + *cc) * gamma;
                let x = positive_part(e.reciprocal() - r.reciprocal());
                coorbit_member(a, *beta, *cc, x) && coorbit_member(a, *beta - c.k, *cc, x)
            }),
            FamilyParams::DiagonalCoorbit { alpha, beta } => c.plain(|e| {
                let gamma = q.reciprocal() - p.reciprocal() + r.reciprocal() - rat(1, 2);
                let strict = r > e;
                alpha.iter().all(|a| at_least(*a, gamma, strict)) && beta.iter().all(|b| at_least(gamma - c.k, *b, strict))
            }),
        }
    }

    /// The verdict of the refined criteria alone, for the families that have
    /// them and `q ∈ (2, ∞)`.
    pub fn refined_criteria(&self, p: ExtExponent, r: ExtExponent, k: u32, q: ExtExponent) -> Option<Outcome> {
        let c = Closed::new(p, r, k, q);
        if !c.gap || self.detour_anchor().is_none() {
            return None;
        }
        let (suff, nec) = match &self.params {
            FamilyParams::InhomBesov { d, s } => {
                let thr = c.k + int(*d as i128) * c.dpq;
                (at_least(*s, thr, r > ExtExponent::int(2)), at_least(*s, thr, r > q))
            }
            FamilyParams::AlphaModulation { d, alpha, gamma, .. } => {
                let thr = c.k + int(*d as i128) * (*alpha * c.dpq + (int(1) - *alpha) * c.x);
                (at_least(*gamma, thr, r > ExtExponent::int(2)), at_least(*gamma, thr, r > q))
            }
            FamilyParams::ShearletSmoothness { beta } => {
                let thr = c.k + rat(3, 2) * c.dpq + c.x / int(2);
                (at_least(*beta, thr, r > ExtExponent::int(2)), at_least(*beta, thr, r > q))
            }
            _ => return None,
        };
        Some(c.outcome(c.p_le_q && suff, c.p_le_q && nec))
    }
}

/// `s ≥ thr`, or `s > thr` when `strict`.
fn at_least(s: Rational, thr: Rational, strict: bool) -> bool {
    if strict {
        s > thr
    } else {
        s >= thr
    }
}

/// `2^{an}‖T^{(c)}_{n,m}‖^{-b} ∈ ℓ^θ` with `x = 1/θ`.
fn coorbit_member(a: Rational, b: Rational, c: Rational, x: Rational) -> bool {
    let one = int(1);
    if b.is_negative() {
        return false;
    }
    if x.is_zero() {
        if c >= one {
            b <= a && a <= b * c
        } else {
            b * c <= a && a <= b
        }
    } else if b <= x {
        false
    } else if c >= one {
        b + (c - one) * x < a && a < c * b
    } else {
        c * b < a && a < b + (c - one) * x
    }
}

/// Whether some `α` makes the shearlet coorbit space with `c = 1/2` embed
/// into `BV^1`, for `p ≤ 1`.
pub fn shearlet_bv_solvable(beta: Rational, r: ExtExponent) -> bool {
    if r <= ExtExponent::int(1) {
        beta >= int(2)
    } else {
        beta > int(3) - r.reciprocal()
    }
}

/// Shared exponent bookkeeping of the closed forms.
struct Closed {
    r: ExtExponent,
    q: ExtExponent,
    qv: ExtExponent,
    k: Rational,
    dpq: Rational,
    /// `(1/q▽ - 1/r)_+`
    x: Rational,
    p_le_q: bool,
    gap: bool,
}

impl Closed {
    fn new(p: ExtExponent, r: ExtExponent, k: u32, q: ExtExponent) -> Self {
        let qv = q.lower_conjugate();
        Closed {
            r,
            q,
            qv,
            k: int(k as i128),
            dpq: p.reciprocal() - q.reciprocal(),
            x: positive_part(qv.reciprocal() - r.reciprocal()),
            p_le_q: p <= q,
            gap: !q.is_infinite() && q > ExtExponent::int(2),
        }
    }

    fn outcome(&self, suff: bool, nec: bool) -> Outcome {
        if suff {
            Outcome::Embeds
        } else if nec {
            Outcome::Undetermined
        } else {
            Outcome::DoesNotEmbed
        }
    }

    /// Families without refinement: the characterization with `q▽` is
    /// sufficient, and necessary with `q` in its place.
    fn plain(&self, holds: impl Fn(ExtExponent) -> bool) -> Outcome {
        if !self.p_le_q {
            return Outcome::DoesNotEmbed;
        }
        if !self.gap {
            return self.outcome(holds(self.qv), false);
        }
        self.outcome(holds(self.qv), holds(self.q))
    }

    /// Threshold families with a Besov-detour refinement. `thr(strict)` is
    /// the smoothness test; `extra(strict)` is a further necessary test with
    /// strictness `r > 2`.
    fn with_refinement(&self, thr: impl Fn(bool) -> bool, extra: impl Fn(bool) -> bool) -> Outcome {
        if !self.p_le_q {
            return Outcome::DoesNotEmbed;
        }
        let two = ExtExponent::int(2);
        if !self.gap {
            return self.outcome(thr(self.r > self.qv), false);
        }
        let suff = thr(self.r > self.qv) || thr(self.r > two);
        let nec = thr(self.r > self.q) && extra(self.r > two);
        self.outcome(suff, nec)
    }

    fn hom_besov(&self, d: u32, s: Rational) -> Outcome {
        if !self.k.is_zero() || !self.p_le_q || s != int(d as i128) * self.dpq {
            return Outcome::DoesNotEmbed;
        }
        if self.r <= self.qv {
            return Outcome::Embeds;
        }
        if !self.gap {
            return Outcome::DoesNotEmbed;
        }
        let two = ExtExponent::int(2);
        if self.r <= self.q && (!self.dpq.is_zero() || self.r <= two) {
            Outcome::Undetermined
        } else {
            Outcome::DoesNotEmbed
        }
    }
}

/// One point of a family's golden grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridCase {
    pub params: FamilyParams,
    pub p: ExtExponent,
    pub r: ExtExponent,
    pub k: u32,
    pub q: ExtExponent,
}

/// The exponents `{1/2, 1, 3/2, 2, 3, ∞}` of the golden grids.
pub fn grid_exponents() -> Vec<ExtExponent> {
    vec![
        ExtExponent::ratio(1, 2).expect("positive"),
        ExtExponent::int(1),
        ExtExponent::ratio(3, 2).expect("positive"),
        ExtExponent::int(2),
        ExtExponent::int(3),
        ExtExponent::INFINITY,
    ]
}

fn around(values: &[Rational]) -> Vec<Rational> {
    let h = rat(1, 4);
    let mut out: Vec<Rational> = values.iter().flat_map(|v| [*v - h, *v, *v + h]).collect();
    out.sort();
    out.dedup();
    out
}

/// The parameter grid for one family: every `(p, q, r) ∈ E^3`, `k ∈ {0,1,2}`,
/// and smoothness parameters below, at and above each threshold.
pub fn golden_grid(id: FamilyId) -> Vec<GridCase> {
    let es = grid_exponents();
    let mut out = Vec::new();
    for &p in &es {
        for &q in &es {
            for &r in &es {
                for k in 0..3u32 {
                    let cl = Closed::new(p, r, k, q);
                    let x_q = positive_part(q.reciprocal() - r.reciprocal());
                    let mut push = |params: FamilyParams| out.push(GridCase { params, p, r, k, q });
                    match id {
                        FamilyId::HomBesov | FamilyId::InhomBesov => {
                            for d in 1..=2u32 {
                                let dd = int(d as i128);
                                for s in around(&[cl.k + dd * cl.dpq, cl.k]) {
                                    push(if id == FamilyId::HomBesov {
                                        FamilyParams::HomBesov { d, s }
                                    } else {
                                        FamilyParams::InhomBesov { d, s }
                                    });
                                }
                            }
                        }
                        FamilyId::AlphaModulation => {
                            for d in 1..=2u32 {
                                for alpha in [int(0), rat(1, 3), rat(1, 2)] {
                                    let dd = int(d as i128);
                                    let t = |x: Rational| cl.k + dd * (alpha * cl.dpq + (int(1) - alpha) * x);
                                    for gamma in around(&[t(cl.x), t(x_q)]) {
                                        push(FamilyParams::AlphaModulation { d, alpha, gamma, radius: int(2) });
                                    }
                                }
                            }
                        }
                        FamilyId::ShearletSmoothness => {
                            let t = |x: Rational| cl.k + rat(3, 2) * cl.dpq + x / int(2);
                            for beta in around(&[t(cl.x), t(x_q)]) {
                                push(FamilyParams::ShearletSmoothness { beta });
                            }
                        }
                        FamilyId::ShearletCoorbit => {
                            let gamma = rat(1, 2) - r.reciprocal() + cl.dpq;
                            for c in [int(-1), rat(1, 2), int(1), int(2)] {
                                let xs = [cl.x, x_q];
                                let mut betas = vec![cl.k];
                                betas.extend(xs.iter().map(|x| cl.k + *x));
                                for beta in around(&betas) {
                                    let mut bounds = Vec::new();
                                    for b in [beta, beta - cl.k] {
                                        for x in xs {
                                            bounds.extend([b, c * b, b + (c - int(1)) * x]);
                                        }
                                    }
                                    for a in around(&bounds) {
                                        let alpha = a - (int(1) + c) * gamma;
                                        push(FamilyParams::ShearletCoorbit { c, alpha, beta });
                                    }
                                }
                            }
                        }
                        FamilyId::DiagonalCoorbit => {
                            let gamma = q.reciprocal() - p.reciprocal() + r.reciprocal() - rat(1, 2);
                            for d in 1..=2usize {
                                for a in around(&[gamma]) {
                                    for b in around(&[gamma - cl.k]) {
                                        let mut alpha = vec![a; d];
                                        let mut beta = vec![b; d];
                                        if d == 2 {
                                            alpha[1] = a + rat(1, 2);
                                            beta[1] = b - rat(1, 2);
                                        }
                                        push(FamilyParams::DiagonalCoorbit { alpha, beta });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}
