//! Base sets, their affine images and open-set intersection tests.

use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{euclid, Matrix};

const EPS: f64 = 1e-12;

/// The reference set `Q_i'` of a covering member (an open set).
#[derive(Debug, Clone, PartialEq)]
pub enum BaseSet {
    Ball { center: Vec<f64>, radius: f64 },
    /// Open axis-parallel box.
    Box { lo: Vec<f64>, hi: Vec<f64> },
    /// `{inner < |x| < outer}`.
    Annulus { inner: f64, outer: f64 },
    /// Planar cone section `{(x, y): x_lo < x < x_hi, |y| < slope·x}`.
    Cone { x_lo: f64, x_hi: f64, slope: f64 },
}

impl BaseSet {
    pub fn ball(dim: usize, radius: f64) -> Self {
        BaseSet::Ball { center: vec![0.0; dim], radius }
    }

    pub fn cube(dim: usize, lo: f64, hi: f64) -> Self {
        BaseSet::Box { lo: vec![lo; dim], hi: vec![hi; dim] }
    }

    /// Dimension, if the set fixes one.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            BaseSet::Ball { center, .. } => Some(center.len()),
            BaseSet::Box { lo, .. } => Some(lo.len()),
            BaseSet::Annulus { .. } => None,
            BaseSet::Cone { .. } => Some(2),
        }
    }

    pub fn validate(&self, dim: usize) -> Result<(), &'static str> {
        if self.dimension().is_some_and(|d| d != dim) {
            return Err("base set dimension does not match the covering");
        }
        let ok = match self {
            BaseSet::Ball { radius, .. } => *radius > 0.0,
            BaseSet::Box { lo, hi } => lo.len() == hi.len() && lo.iter().zip(hi).all(|(a, b)| a < b),
            BaseSet::Annulus { inner, outer } => *inner >= 0.0 && inner < outer,
            BaseSet::Cone { x_lo, x_hi, slope } => *x_lo >= 0.0 && x_lo < x_hi && *slope > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err("degenerate base set")
        }
    }

    /// `sup_{x ∈ Q'} |x|`.
    pub fn sup_norm(&self, dim: usize) -> f64 {
        self.image(&Matrix::identity(dim), &vec![0.0; dim]).sup_norm()
    }

    /// Whether `B_ε(c) ⊂ Q'`.
    pub fn contains_ball(&self, c: &[f64], eps: f64) -> bool {
        match self {
            BaseSet::Ball { center, radius } => {
                let d: Vec<f64> = c.iter().zip(center).map(|(a, b)| a - b).collect();
                euclid(&d) + eps <= radius + EPS
            }
            BaseSet::Box { lo, hi } => {
                c.iter().zip(lo.iter().zip(hi)).all(|(&x, (&l, &h))| l + eps <= x + EPS && x + eps <= h + EPS)
            }
            BaseSet::Annulus { inner, outer } => {
                let r = euclid(c);
                inner + eps <= r + EPS && r + eps <= outer + EPS
            }
            BaseSet::Cone { x_lo, x_hi, slope } => {
                let (x, y) = (c[0], c[1]);
                let norm = libm::sqrt(1.0 + slope * slope);
                x - x_lo + EPS >= eps
                    && x_hi - x + EPS >= eps
                    && (slope * x - y) / norm + EPS >= eps
                    && (slope * x + y) / norm + EPS >= eps
            }
        }
    }

    /// The image `T·Q' + b`.
    pub fn image(&self, t: &Matrix, b: &[f64]) -> Shape {
        let dim = t.dim();
        match self {
            BaseSet::Ball { center, radius } => match t.as_scalar() {
                Some(s) => Shape::Ball { center: add(&t.apply(center), b), radius: s.abs() * radius },
                None => Shape::Bounding { center: add(&t.apply(center), b), radius: t.spectral_norm() * radius },
            },
            BaseSet::Annulus { inner, outer } => match t.as_scalar() {
                Some(s) => Shape::Annulus { center: b.to_vec(), inner: s.abs() * inner, outer: s.abs() * outer },
                None => Shape::Bounding { center: b.to_vec(), radius: t.spectral_norm() * outer },
            },
            BaseSet::Box { lo, hi } => {
                if t.is_diagonal() {
                    let mut nlo = Vec::with_capacity(dim);
                    let mut nhi = Vec::with_capacity(dim);
                    for j in 0..dim {
                        let (u, v) = (t.get(j, j) * lo[j] + b[j], t.get(j, j) * hi[j] + b[j]);
                        nlo.push(u.min(v));
                        nhi.push(u.max(v));
                    }
                    Shape::Box { lo: nlo, hi: nhi }
                } else if dim == 2 {
                    let corners = [[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]];
                    Shape::polygon(corners.iter().map(|c| add(&t.apply(c), b)).collect())
                } else {
                    let center: Vec<f64> = lo.iter().zip(hi).map(|(a, c)| (a + c) / 2.0).collect();
                    let half: Vec<f64> = lo.iter().zip(hi).map(|(a, c)| (c - a) / 2.0).collect();
                    Shape::Bounding { center: add(&t.apply(&center), b), radius: t.spectral_norm() * euclid(&half) }
                }
            }
            BaseSet::Cone { x_lo, x_hi, slope } => {
                let corners =
                    [[*x_lo, -slope * x_lo], [*x_hi, -slope * x_hi], [*x_hi, slope * x_hi], [*x_lo, slope * x_lo]];
                Shape::polygon(corners.iter().map(|c| add(&t.apply(c), b)).collect())
            }
        }
    }
}

fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sq(x: f64) -> f64 {
    x * x
}

fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// An open set in frequency space.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Ball { center: Vec<f64>, radius: f64 },
    Annulus { center: Vec<f64>, inner: f64, outer: f64 },
    Box { lo: Vec<f64>, hi: Vec<f64> },
    /// Convex planar polygon, counter-clockwise.
    Polygon(Vec<[f64; 2]>),
    /// A ball known to contain the set; tests against it are conservative.
    Bounding { center: Vec<f64>, radius: f64 },
}

impl Shape {
    fn polygon(pts: Vec<Vec<f64>>) -> Shape {
        let mut v: Vec<[f64; 2]> = pts.iter().map(|p| [p[0], p[1]]).collect();
        let area: f64 = (0..v.len())
            .map(|i| {
                let (a, b) = (v[i], v[(i + 1) % v.len()]);
                a[0] * b[1] - a[1] * b[0]
            })
            .sum();
        if area < 0.0 {
            v.reverse();
        }
        Shape::Polygon(v)
    }

    fn as_polygon(&self) -> Option<Vec<[f64; 2]>> {
        match self {
            Shape::Polygon(v) => Some(v.clone()),
            Shape::Box { lo, hi } if lo.len() == 2 => {
                Some(vec![[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]])
            }
            _ => None,
        }
    }

    /// `sup_{x} |x|` over the set (an upper bound for `Bounding`).
    pub fn sup_norm(&self) -> f64 {
        match self {
            Shape::Ball { center, radius } | Shape::Bounding { center, radius } => euclid(center) + radius,
            Shape::Annulus { center, outer, .. } => euclid(center) + outer,
            Shape::Box { lo, hi } => libm::sqrt(lo.iter().zip(hi).map(|(a, b)| sq(a.abs().max(b.abs()))).sum()),
            Shape::Polygon(v) => v.iter().map(|p| libm::hypot(p[0], p[1])).fold(0.0, f64::max),
        }
    }

    /// A ball containing the set.
    pub fn bounding_ball(&self) -> (Vec<f64>, f64) {
        match self {
            Shape::Ball { center, radius } | Shape::Bounding { center, radius } => (center.clone(), *radius),
            Shape::Annulus { center, outer, .. } => (center.clone(), *outer),
            Shape::Box { lo, hi } => {
                let c: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| (a + b) / 2.0).collect();
                let r = euclid(&sub(hi, &c));
                (c, r)
            }
            Shape::Polygon(v) => {
                let k = v.len() as f64;
                let c = [v.iter().map(|p| p[0]).sum::<f64>() / k, v.iter().map(|p| p[1]).sum::<f64>() / k];
                let r = v.iter().map(|p| libm::hypot(p[0] - c[0], p[1] - c[1])).fold(0.0, f64::max);
                (c.to_vec(), r)
            }
        }
    }

    /// `(dist(c, closure), sup distance)` for convex shapes.
    fn distance_range(&self, c: &[f64]) -> Option<(f64, f64)> {
        match self {
            Shape::Ball { center, radius } => {
                let d = euclid(&sub(c, center));
                Some(((d - radius).max(0.0), d + radius))
            }
            Shape::Box { lo, hi } => {
                let near: f64 = c
                    .iter()
                    .zip(lo.iter().zip(hi))
                    .map(|(&x, (&l, &h))| {
                        let e = if x < l { l - x } else if x > h { x - h } else { 0.0 };
                        e * e
                    })
                    .sum();
                let far: f64 = c
                    .iter()
                    .zip(lo.iter().zip(hi))
                    .map(|(&x, (&l, &h))| sq((x - l).abs().max((x - h).abs())))
                    .sum();
                Some((libm::sqrt(near), libm::sqrt(far)))
            }
            Shape::Polygon(v) => {
                let p = [c[0], c[1]];
                let far = v.iter().map(|q| libm::hypot(q[0] - p[0], q[1] - p[1])).fold(0.0, f64::max);
                Some((polygon_distance(v, p), far))
            }
            _ => None,
        }
    }
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn polygon_distance(v: &[[f64; 2]], p: [f64; 2]) -> f64 {
    let n = v.len();
    if (0..n).all(|i| cross(v[i], v[(i + 1) % n], p) >= 0.0) {
        return 0.0;
    }
    (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
            let len2 = dx * dx + dy * dy;
            let t = (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0);
            libm::hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy)
        })
        .fold(f64::INFINITY, f64::min)
}

fn project(v: &[[f64; 2]], axis: [f64; 2]) -> (f64, f64) {
    v.iter()
        .map(|p| p[0] * axis[0] + p[1] * axis[1])
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

fn polygons_meet(a: &[[f64; 2]], b: &[[f64; 2]]) -> bool {
    for poly in [a, b] {
        let n = poly.len();
        for i in 0..n {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            let axis = [q[1] - p[1], p[0] - q[0]];
            let (a0, a1) = project(a, axis);
            let (b0, b1) = project(b, axis);
            let scale = EPS * (a1.abs().max(b1.abs()).max(1.0));
            if a1 <= b0 + scale || b1 <= a0 + scale {
                return false;
            }
        }
    }
    true
}

/// Whether two open sets meet; the flag is `false` when the answer may be a
/// false positive (a bounding ball was involved).
pub fn intersects(x: &Shape, y: &Shape) -> (bool, bool) {
    use Shape::*;
    match (x, y) {
        (Bounding { center, radius }, other) | (other, Bounding { center, radius }) => {
            let ball = Ball { center: center.clone(), radius: *radius };
            let other = match other {
                Bounding { center, radius } => Ball { center: center.clone(), radius: *radius },
                o => o.clone(),
            };
            (intersects(&ball, &other).0, false)
        }
        (Ball { center: c1, radius: r1 }, Ball { center: c2, radius: r2 }) => {
            (euclid(&sub(c1, c2)) < r1 + r2 - EPS * (r1 + r2), true)
        }
        (Annulus { center: c1, inner: i1, outer: o1 }, Annulus { center: c2, inner: i2, outer: o2 }) => {
            if euclid(&sub(c1, c2)) <= EPS * o1.max(*o2) {
                (i1.max(*i2) < o1.min(*o2) * (1.0 - EPS), true)
            } else {
                let ball = Ball { center: c2.clone(), radius: *o2 };
                (intersects(x, &ball).0, false)
            }
        }
        (Annulus { center, inner, outer }, other) | (other, Annulus { center, inner, outer }) => {
            let (near, far) = other.distance_range(center).expect("convex shape");
            let tol = EPS * outer;
            (near < outer - tol && far > inner + tol, true)
        }
        (Box { lo: l1, hi: h1 }, Box { lo: l2, hi: h2 }) => {
            let ok = (0..l1.len()).all(|j| {
                let tol = EPS * h1[j].abs().max(h2[j].abs()).max(l1[j].abs()).max(l2[j].abs());
                l1[j].max(l2[j]) < h1[j].min(h2[j]) - tol
            });
            (ok, true)
        }
        (Ball { center, radius }, other) | (other, Ball { center, radius }) => {
            let (near, _) = other.distance_range(center).expect("convex shape");
            (near < radius * (1.0 - EPS), true)
        }
        (p, q) => match (p.as_polygon(), q.as_polygon()) {
            (Some(a), Some(b)) => (polygons_meet(&a, &b), true),
            _ => unreachable!("remaining pairs are boxes or polygons in the plane"),
        },
    }
}
