//! Affine coverings `Q_i = T_i Q_i' + b_i`, their finite index windows,
//! neighbor graphs and numerically certified covering constants.

mod expr;
mod geometry;
mod linalg;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

pub use expr::IndexExpr;
pub use geometry::{intersects, BaseSet, Shape};
pub use linalg::{euclid, Matrix, POWER_ITERATION_CAP, POWER_ITERATION_TOL};

use crate::seqspace::Axis;

pub type Index = Vec<i64>;

pub const DEFAULT_MAX_WINDOW: u128 = 1_000_000;
/// Condition numbers above this count as numerically singular.
pub const CONDITION_LIMIT: f64 = 1e12;
/// Allowed drift of a moderateness constant between two radii.
pub const MODERATE_STABILITY: f64 = 1.01;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoveringError {
    #[error("window of radius {radius} has {size} indices, above the cap {cap}")]
    WindowTooLarge { radius: u64, size: u128, cap: u128 },
    #[error("cannot intersect {0}")]
    UnsupportedGeometry(String),
    #[error("covering has no tightness witness")]
    MissingTightnessWitness,
    #[error("invalid covering: {0}")]
    Invalid(String),
}

/// The countable index set of a covering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexScheme {
    /// One index, written `[]`.
    Single,
    /// Product of axes, e.g. `ℤ`, `ℕ₀`, `ℤ^d`.
    Lattice(Vec<Axis>),
    /// `ℤ^d \ {0}`.
    Punctured { dim: usize },
    /// `ℤ^d × {±1}^d`, written `[k_1..k_d, ε_1..ε_d]`.
    SignedLattice { dim: usize },
    /// `{[]} ∪ {[n, m, ε, δ] : n ≥ 0, |m| ≤ 2^n, ε = ±1, δ ∈ {0, 1}}`.
    ShearletCone,
    /// `ℤ² × {±1}`, written `[n, m, ε]`.
    SignedPlane,
}

impl IndexScheme {
    /// Parses `single`, `Z`, `N0`, `Z^d`, `N0^d` or `Z^d\0`.
    pub fn parse(s: &str) -> Result<Self, CoveringError> {
        let s = s.trim();
        let bad = || CoveringError::Invalid(format!("unknown index set {:?}", s));
        if s == "single" {
            return Ok(IndexScheme::Single);
        }
        let (body, punctured) = match s.strip_suffix("\\0") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let (base, dim) = match body.split_once('^') {
            Some((b, d)) => (b, d.parse::<usize>().map_err(|_| bad())?),
            None => (body, 1),
        };
        if dim == 0 || dim > 8 {
            return Err(bad());
        }
        let axis = match base {
            "Z" => Axis::Integers,
            "N0" => Axis::Natural,
            _ => return Err(bad()),
        };
        match (punctured, axis) {
            (true, Axis::Integers) => Ok(IndexScheme::Punctured { dim }),
            (true, _) => Err(bad()),
            (false, a) => Ok(IndexScheme::Lattice(vec![a; dim])),
        }
    }

    /// Number of integer coordinates of an index.
    pub fn arity(&self) -> usize {
        match self {
            IndexScheme::Single => 0,
            IndexScheme::Lattice(axes) => axes.len(),
            IndexScheme::Punctured { dim } => *dim,
            IndexScheme::SignedLattice { dim } => 2 * dim,
            IndexScheme::ShearletCone => 4,
            IndexScheme::SignedPlane => 3,
        }
    }

    pub fn contains(&self, idx: &[i64]) -> bool {
        let sign = |e: i64| e == 1 || e == -1;
        match self {
            IndexScheme::Single => idx.is_empty(),
            IndexScheme::Lattice(axes) => idx.len() == axes.len() && axes.iter().zip(idx).all(|(a, &n)| a.contains(n)),
            IndexScheme::Punctured { dim } => idx.len() == *dim && idx.iter().any(|&k| k != 0),
            IndexScheme::SignedLattice { dim } => idx.len() == 2 * dim && idx[*dim..].iter().all(|&e| sign(e)),
            IndexScheme::ShearletCone => {
                idx.is_empty()
                    || (idx.len() == 4
                        && (0..=62).contains(&idx[0])
                        && idx[1].unsigned_abs() <= 1u64 << idx[0]
                        && sign(idx[2])
                        && (idx[3] == 0 || idx[3] == 1))
            }
            IndexScheme::SignedPlane => idx.len() == 3 && sign(idx[2]),
        }
    }

    /// Size of the window of the given radius.
    pub fn window_size(&self, radius: u64) -> u128 {
        let r = radius as u128;
        let full = 2 * r + 1;
        match self {
            IndexScheme::Single => 1,
            IndexScheme::Lattice(axes) => axes
                .iter()
                .map(|a| match a {
                    Axis::Integers => full,
                    _ => r + 1,
                })
                .fold(1u128, |acc, x| acc.saturating_mul(x)),
            IndexScheme::Punctured { dim } => full.saturating_pow(*dim as u32) - 1,
            IndexScheme::SignedLattice { dim } => full.saturating_pow(*dim as u32).saturating_mul(1 << dim),
            IndexScheme::ShearletCone => {
                if radius >= 100 {
                    return u128::MAX;
                }
                1 + (0..=r).map(|n| 4 * (2 * (1u128 << n) + 1)).sum::<u128>()
            }
            IndexScheme::SignedPlane => full * full * 2,
        }
    }

    /// All indices of the window, in a fixed order. Windows are nested in
    /// the radius; for the shearlet cone the radius bounds the scale `n`.
    pub fn window(&self, radius: u64) -> Vec<Index> {
        let r = radius as i64;
        match self {
            IndexScheme::Single => vec![Vec::new()],
            IndexScheme::Lattice(axes) => {
                let ranges: Vec<(i64, i64)> = axes
                    .iter()
                    .map(|a| match a {
                        Axis::Integers => (-r, r),
                        Axis::Natural => (0, r),
                        Axis::Negative => (-r.max(1), -1),
                    })
                    .collect();
                cube(&ranges)
            }
            IndexScheme::Punctured { dim } => {
                cube(&vec![(-r, r); *dim]).into_iter().filter(|k| k.iter().any(|&x| x != 0)).collect()
            }
            IndexScheme::SignedLattice { dim } => {
                let mut ranges = vec![(-r, r); *dim];
                ranges.extend(vec![(-1, 1); *dim]);
                cube(&ranges).into_iter().filter(|k| k[*dim..].iter().all(|&e| e != 0)).collect()
            }
            IndexScheme::ShearletCone => {
                let mut out = vec![Vec::new()];
                for n in 0..=r {
                    let w = 1i64 << n;
                    for m in -w..=w {
                        for e in [-1, 1] {
                            for d in [0, 1] {
                                out.push(vec![n, m, e, d]);
                            }
                        }
                    }
                }
                out
            }
            IndexScheme::SignedPlane => cube(&[(-r, r), (-r, r), (-1, 1)]).into_iter().filter(|k| k[2] != 0).collect(),
        }
    }
}

impl fmt::Display for IndexScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexScheme::Single => f.write_str("single"),
            IndexScheme::Lattice(axes) => {
                let all_z = axes.iter().all(|a| *a == Axis::Integers);
                let all_n = axes.iter().all(|a| *a == Axis::Natural);
                let base = if all_z {
                    "Z"
                } else if all_n {
                    "N0"
                } else {
                    return write!(f, "{:?}", axes);
                };
                if axes.len() == 1 {
                    f.write_str(base)
                } else {
                    write!(f, "{}^{}", base, axes.len())
                }
            }
            IndexScheme::Punctured { dim } => write!(f, "Z^{}\\0", dim),
            IndexScheme::SignedLattice { dim } => write!(f, "Z^{}x{{±1}}^{}", dim, dim),
            IndexScheme::ShearletCone => f.write_str("{0} ∪ {(n,m,ε,δ): n≥0, |m|≤2^n}"),
            IndexScheme::SignedPlane => f.write_str("Z^2x{±1}"),
        }
    }
}

fn cube(ranges: &[(i64, i64)]) -> Vec<Index> {
    let mut out = Vec::new();
    if ranges.iter().any(|(lo, hi)| lo > hi) {
        return out;
    }
    let mut idx: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        out.push(idx.clone());
        let mut j = ranges.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if idx[j] < ranges[j].1 {
                idx[j] += 1;
                break;
            }
            idx[j] = ranges[j].0;
        }
    }
}

/// `(T_i, b_i, Q_i')` for one index.
#[derive(Debug, Clone, PartialEq)]
pub struct Tile {
    pub index: Index,
    pub t: Matrix,
    pub b: Vec<f64>,
    pub base: BaseSet,
}

impl Tile {
    pub fn shape(&self) -> Shape {
        self.base.image(&self.t, &self.b)
    }

    /// `sup_{x ∈ Q_i} |x|`.
    pub fn sup_norm(&self) -> f64 {
        self.shape().sup_norm()
    }
}

pub type Generator = Box<dyn Fn(&[i64]) -> (Matrix, Vec<f64>, BaseSet) + Send + Sync>;
pub type NeighborBound = Box<dyn Fn(&[i64]) -> Vec<Index> + Send + Sync>;
pub type CenterMap = Box<dyn Fn(&[i64]) -> Vec<f64> + Send + Sync>;

/// Inscribed balls `B_ε(c_i) ⊂ Q_i'`.
pub struct TightnessWitness {
    pub eps: f64,
    pub center: CenterMap,
}

impl TightnessWitness {
    pub fn constant(eps: f64, center: Vec<f64>) -> Self {
        TightnessWitness { eps, center: Box::new(move |_| center.clone()) }
    }
}

pub struct AffineCovering {
    name: String,
    dimension: usize,
    scheme: IndexScheme,
    generator: Generator,
    tightness: Option<TightnessWitness>,
    analytic_neighbors: Option<NeighborBound>,
    max_window: u128,
}

impl fmt::Debug for AffineCovering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineCovering")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .field("scheme", &self.scheme)
            .finish_non_exhaustive()
    }
}

impl AffineCovering {
    pub fn new(name: impl Into<String>, dimension: usize, scheme: IndexScheme, generator: Generator) -> Self {
        AffineCovering {
            name: name.into(),
            dimension,
            scheme,
            generator,
            tightness: None,
            analytic_neighbors: None,
            max_window: DEFAULT_MAX_WINDOW,
        }
    }

    pub fn with_tightness(mut self, w: TightnessWitness) -> Self {
        self.tightness = Some(w);
        self
    }

    pub fn with_analytic_neighbors(mut self, n: NeighborBound) -> Self {
        self.analytic_neighbors = Some(n);
        self
    }

    pub fn with_max_window(mut self, cap: u128) -> Self {
        self.max_window = cap;
        self
    }

    /// A covering whose `T`, `b` are index expressions and whose base set is fixed.
    pub fn custom(
        dimension: usize,
        scheme: IndexScheme,
        t: Vec<Vec<IndexExpr>>,
        b: Vec<IndexExpr>,
        base: BaseSet,
    ) -> Result<Self, CoveringError> {
        if dimension == 0 {
            return Err(CoveringError::Invalid("dimension must be positive".into()));
        }
        if t.len() != dimension || t.iter().any(|row| row.len() != dimension) || b.len() != dimension {
            return Err(CoveringError::Invalid(format!("T must be {0}x{0} and b must have {0} entries", dimension)));
        }
        base.validate(dimension).map_err(|e| CoveringError::Invalid(e.into()))?;
        let gen: Generator = Box::new(move |idx| {
            let data = t.iter().flat_map(|row| row.iter().map(|e| e.eval(idx))).collect();
            (Matrix::from_vec(dimension, data), b.iter().map(|e| e.eval(idx)).collect(), base.clone())
        });
        Ok(AffineCovering::new("custom", dimension, scheme, gen))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn scheme(&self) -> &IndexScheme {
        &self.scheme
    }

    pub fn tightness(&self) -> Option<&TightnessWitness> {
        self.tightness.as_ref()
    }

    pub fn has_analytic_neighbors(&self) -> bool {
        self.analytic_neighbors.is_some()
    }

    /// The analytic superset of `i*`, when the covering carries one.
    pub fn analytic_neighbors(&self, idx: &[i64]) -> Option<Vec<Index>> {
        self.analytic_neighbors.as_ref().map(|f| f(idx))
    }

    pub fn tile(&self, idx: &[i64]) -> Tile {
        let (t, b, base) = (self.generator)(idx);
        Tile { index: idx.to_vec(), t, b, base }
    }

    pub fn enumerate_window(&self, radius: u64) -> Result<Vec<Tile>, CoveringError> {
        let size = self.scheme.window_size(radius);
        if size > self.max_window {
            return Err(CoveringError::WindowTooLarge { radius, size, cap: self.max_window });
        }
        Ok(self.scheme.window(radius).iter().map(|i| self.tile(i)).collect())
    }

    /// The intersection graph of a window.
    pub fn neighbors(&self, tiles: &[Tile]) -> Result<NeighborStructure, CoveringError> {
        let shapes: Vec<Shape> = tiles.iter().map(Tile::shape).collect();
        let balls: Vec<(Vec<f64>, f64)> = shapes.iter().map(Shape::bounding_ball).collect();
        for s in &shapes {
            if let Shape::Annulus { .. } | Shape::Ball { .. } | Shape::Box { .. } | Shape::Bounding { .. } = s {
                continue;
            }
            if let Shape::Polygon(v) = s {
                if v.len() >= 3 {
                    continue;
                }
            }
            return Err(CoveringError::UnsupportedGeometry(format!("{:?}", s)));
        }
        let n = tiles.len();
        let mut adjacency: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        let mut conservative = 0;
        for i in 0..n {
            for j in i + 1..n {
                let (ci, ri) = &balls[i];
                let (cj, rj) = &balls[j];
                let gap: Vec<f64> = ci.iter().zip(cj).map(|(a, b)| a - b).collect();
                if euclid(&gap) >= ri + rj {
                    continue;
                }
                let (hit, exact) = intersects(&shapes[i], &shapes[j]);
                if hit {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                    if !exact {
                        conservative += 1;
                    }
                }
            }
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        let inverses: Vec<Option<Matrix>> = tiles.iter().map(|t| t.t.inverse()).collect();
        let mut c_hat: f64 = 0.0;
        for (i, adj) in adjacency.iter().enumerate() {
            let inv = match &inverses[i] {
                Some(m) => m,
                None => {
                    c_hat = f64::INFINITY;
                    continue;
                }
            };
            for &j in adj {
                c_hat = c_hat.max(inv.mul(&tiles[j].t).spectral_norm());
            }
        }
        let n_hat = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        Ok(NeighborStructure {
            window: tiles.iter().map(|t| t.index.clone()).collect(),
            adjacency,
            n_hat,
            c_hat,
            conservative_pairs: conservative,
        })
    }

    pub fn certify_constants(&self, tiles: &[Tile]) -> Result<CertificateReport, CoveringError> {
        let nb = self.neighbors(tiles)?;
        let r_hat = tiles.iter().map(|t| t.base.sup_norm(self.dimension)).fold(0.0, f64::max);
        let tightness_ok = self
            .tightness
            .as_ref()
            .map(|w| tiles.iter().all(|t| t.base.contains_ball(&(w.center)(&t.index), w.eps)));
        let non_invertible = tiles
            .iter()
            .filter(|t| t.t.condition().is_nan() || t.t.condition() >= CONDITION_LIMIT)
            .map(|t| t.index.clone())
            .collect();
        Ok(CertificateReport { n_hat: nb.n_hat, c_hat: nb.c_hat, r_hat, tightness_ok, non_invertible, neighbors: nb })
    }

    /// `max_{i ∈ window} max_{j ∈ i*} u_i/u_j`, at `radius` and `radius + 1`.
    ///
    /// The analytic neighbor bound is used when present, otherwise the
    /// numeric neighbor graph of the window.
    pub fn check_moderate(&self, weight: &dyn Fn(&[i64]) -> f64, radius: u64) -> Result<ModerateReport, CoveringError> {
        let at = |r: u64| -> Result<f64, CoveringError> {
            let mut worst: f64 = 1.0;
            match &self.analytic_neighbors {
                Some(nb) => {
                    let window = self.scheme.window(r);
                    let size = self.scheme.window_size(r);
                    if size > self.max_window {
                        return Err(CoveringError::WindowTooLarge { radius: r, size, cap: self.max_window });
                    }
                    for i in &window {
                        let ui = weight(i);
                        for j in nb(i) {
                            worst = worst.max(ui / weight(&j));
                        }
                    }
                }
                None => {
                    let tiles = self.enumerate_window(r)?;
                    let graph = self.neighbors(&tiles)?;
                    for (a, adj) in graph.adjacency.iter().enumerate() {
                        let ua = weight(&graph.window[a]);
                        for &b in adj {
                            worst = worst.max(ua / weight(&graph.window[b]));
                        }
                    }
                }
            }
            Ok(worst)
        };
        let c = at(radius)?;
        let next = at(radius + 1)?;
        let ok = c.is_finite() && next.is_finite() && next <= c * MODERATE_STABILITY;
        Ok(ModerateReport { c_uq_hat: c, c_uq_next: next, ok, analytic: self.analytic_neighbors.is_some() })
    }

    /// Ratios `(|b_i| + ‖T_i‖) / sup_{x ∈ Q_i} |x|` over a window.
    pub fn norm_surrogate_check(&self, tiles: &[Tile]) -> Result<SurrogateReport, CoveringError> {
        if self.tightness.is_none() {
            return Err(CoveringError::MissingTightnessWitness);
        }
        let mut min = f64::INFINITY;
        let mut max: f64 = 0.0;
        for t in tiles {
            let ratio = (euclid(&t.b) + t.t.spectral_norm()) / t.sup_norm();
            min = min.min(ratio);
            max = max.max(ratio);
        }
        Ok(SurrogateReport { min_ratio: min, max_ratio: max, count: tiles.len() })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeighborStructure {
    pub window: Vec<Index>,
    /// `adjacency[a]` lists window positions `b` with `Q_a ∩ Q_b ≠ ∅`, sorted, including `a`.
    pub adjacency: Vec<Vec<usize>>,
    pub n_hat: usize,
    pub c_hat: f64,
    /// Pairs whose intersection was only established through bounding balls.
    pub conservative_pairs: usize,
}

impl NeighborStructure {
    pub fn position(&self, idx: &[i64]) -> Option<usize> {
        self.window.iter().position(|w| w.as_slice() == idx)
    }

    pub fn neighbors_of(&self, idx: &[i64]) -> Option<Vec<Index>> {
        self.position(idx).map(|a| self.adjacency[a].iter().map(|&b| self.window[b].clone()).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    pub n_hat: usize,
    pub c_hat: f64,
    pub r_hat: f64,
    /// `None` without a tightness witness.
    pub tightness_ok: Option<bool>,
    pub non_invertible: Vec<Index>,
    pub neighbors: NeighborStructure,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModerateReport {
    pub c_uq_hat: f64,
    pub c_uq_next: f64,
    pub ok: bool,
    /// Whether the analytic neighbor bound was used.
    pub analytic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurrogateReport {
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub count: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn translates() -> AffineCovering {
        let gen: Generator = Box::new(|i| (Matrix::identity(1), vec![i[0] as f64], BaseSet::ball(1, 1.0)));
        AffineCovering::new("translates", 1, IndexScheme::Lattice(vec![Axis::Integers]), gen)
            .with_tightness(TightnessWitness::constant(0.5, vec![0.0]))
    }

    #[test]
    fn windows_are_nested_and_sized() {
        for scheme in [
            IndexScheme::Lattice(vec![Axis::Integers]),
            IndexScheme::Lattice(vec![Axis::Natural, Axis::Integers]),
            IndexScheme::Punctured { dim: 2 },
            IndexScheme::SignedLattice { dim: 2 },
            IndexScheme::ShearletCone,
            IndexScheme::SignedPlane,
        ] {
            for r in 0..4 {
                let w = scheme.window(r);
                assert_eq!(w.len() as u128, scheme.window_size(r), "{}", scheme);
                assert!(w.iter().all(|i| scheme.contains(i)));
                let next = scheme.window(r + 1);
                assert!(w.iter().all(|i| next.contains(i)));
            }
        }
        assert_eq!(IndexScheme::SignedLattice { dim: 2 }.window(1).len(), 36);
        assert_eq!(IndexScheme::Lattice(vec![Axis::Integers]).window(2), vec![vec![-2], vec![-1], vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn parse_schemes() {
        assert_eq!(IndexScheme::parse("Z").unwrap(), IndexScheme::Lattice(vec![Axis::Integers]));
        assert_eq!(IndexScheme::parse("N0^2").unwrap(), IndexScheme::Lattice(vec![Axis::Natural; 2]));
        assert_eq!(IndexScheme::parse("Z^3\\0").unwrap(), IndexScheme::Punctured { dim: 3 });
        assert_eq!(IndexScheme::parse("single").unwrap(), IndexScheme::Single);
        assert!(IndexScheme::parse("Q").is_err());
        assert!(IndexScheme::parse("N0\\0").is_err());
    }

    #[test]
    fn translated_balls() {
        let cov = translates();
        let tiles = cov.enumerate_window(5).unwrap();
        let rep = cov.certify_constants(&tiles).unwrap();
        assert_eq!(rep.n_hat, 3);
        assert!((rep.c_hat - 1.0).abs() < 1e-12);
        assert_eq!(rep.tightness_ok, Some(true));
        assert!(rep.non_invertible.is_empty());
        let sur = cov.norm_surrogate_check(&tiles).unwrap();
        assert!(sur.max_ratio.is_finite());
    }

    #[test]
    fn identity_ball_ratio_is_one() {
        let gen: Generator = Box::new(|_| (Matrix::identity(2), vec![0.0, 0.0], BaseSet::ball(2, 1.0)));
        let cov = AffineCovering::new("one", 2, IndexScheme::Single, gen)
            .with_tightness(TightnessWitness::constant(0.5, vec![0.0, 0.0]));
        let tiles = cov.enumerate_window(0).unwrap();
        let sur = cov.norm_surrogate_check(&tiles).unwrap();
        assert!((sur.min_ratio - 1.0).abs() < 1e-12 && (sur.max_ratio - 1.0).abs() < 1e-12);
        assert_eq!(cov.neighbors(&tiles).unwrap().n_hat, 1);
    }

    #[test]
    fn window_cap() {
        let cov = translates().with_max_window(10);
        assert!(matches!(cov.enumerate_window(5), Err(CoveringError::WindowTooLarge { size: 11, .. })));
    }

    #[test]
    fn surrogate_needs_witness() {
        let gen: Generator = Box::new(|_| (Matrix::identity(1), vec![0.0], BaseSet::ball(1, 1.0)));
        let cov = AffineCovering::new("x", 1, IndexScheme::Single, gen);
        let tiles = cov.enumerate_window(0).unwrap();
        assert_eq!(cov.norm_surrogate_check(&tiles), Err(CoveringError::MissingTightnessWitness));
    }

    #[test]
    fn moderate_constant_weight() {
        let cov = translates();
        let rep = cov.check_moderate(&|_| 1.0, 4).unwrap();
        assert_eq!(rep.c_uq_hat, 1.0);
        assert!(rep.ok && !rep.analytic);
    }

    #[test]
    fn custom_dyadic() {
        let t = vec![vec![IndexExpr::parse("2^n", 1).unwrap()]];
        let b = vec![IndexExpr::constant(0.0, 1)];
        let cov = AffineCovering::custom(
            1,
            IndexScheme::parse("Z").unwrap(),
            t,
            b,
            BaseSet::Annulus { inner: 0.25, outer: 4.0 },
        )
        .unwrap();
        let tiles = cov.enumerate_window(6).unwrap();
        let nb = cov.neighbors(&tiles).unwrap();
        assert_eq!(nb.n_hat, 7);
        assert!((nb.c_hat - 8.0).abs() < 1e-9);
    }
}
