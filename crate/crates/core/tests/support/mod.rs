//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

pub mod criteria;

use decomp_embed_core::exponents::{rat, ExtExponent, Rational};
use decomp_embed_core::seqspace::{Atom, Axis, AxisFactor, ExpPolyWeight, Fiber, Growth, Region, Sector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A multiple of `1/den` in `[lo, hi]`.
pub fn step(rng: &mut impl Rng, lo: i128, hi: i128, den: i128) -> Rational {
    rat(rng.gen_range(lo * den..=hi * den), den)
}

pub fn grid_exponents() -> Vec<ExtExponent> {
    ["1/2", "1", "3/2", "2", "3", "inf"].iter().map(|s| s.parse().unwrap()).collect()
}

pub fn grid_exponent(rng: &mut impl Rng) -> ExtExponent {
    *grid_exponents().choose(rng).unwrap()
}

/// A finite exponent with denominator at most 4 in `[1/4, 6]`, or `∞`.
pub fn any_exponent(rng: &mut impl Rng) -> ExtExponent {
    if rng.gen_bool(0.15) {
        ExtExponent::INFINITY
    } else {
        let den = rng.gen_range(1..=4);
        ExtExponent::ratio(rng.gen_range(1..=6 * den), den).unwrap()
    }
}

fn axis(rng: &mut impl Rng) -> Axis {
    *[Axis::Natural, Axis::Negative, Axis::Integers].choose(rng).unwrap()
}

fn growth(rng: &mut impl Rng) -> Growth {
    Growth::new(step(rng, -3, 3, 4), step(rng, -4, 4, 2))
}

fn factor(rng: &mut impl Rng) -> AxisFactor {
    AxisFactor::split(growth(rng), growth(rng))
}

/// A random fibered sector whose fiber bound is at least 1 on its base axis.
fn fibered_sector(rng: &mut impl Rng) -> Sector {
    let base = if rng.gen_bool(0.5) { Axis::Natural } else { Axis::Negative };
    let sign = if base == Axis::Natural { 1 } else { -1 };
    let kappa = step(rng, 0, 2, 2) * rat(sign, 1);
    let fiber = match rng.gen_range(0..4) {
        0 => Fiber::Origin,
        1 => Fiber::Punctured,
        2 => Fiber::Below { kappa, minus_one: rng.gen_bool(0.5) },
        _ => Fiber::Above { kappa, plus_one: rng.gen_bool(0.5) },
    };
    Sector::Fibered { axis: base, fiber }
}

/// A random supported weight: a grid in 1 to 3 dimensions, a radial sector,
/// or a fibered sector, with one or two atoms.
pub fn random_weight(rng: &mut impl Rng) -> ExpPolyWeight {
    let sector = match rng.gen_range(0..5) {
        0 | 1 => Sector::Grid((0..rng.gen_range(1..=3)).map(|_| axis(rng)).collect()),
        2 => Sector::Radial { dim: rng.gen_range(1..=3) },
        _ => fibered_sector(rng),
    };
    let atoms = (0..rng.gen_range(1..=2)).map(|_| random_atom(rng, &sector)).collect();
    ExpPolyWeight::new(vec![Region::new(sector, atoms).unwrap()]).unwrap()
}

fn random_atom(rng: &mut impl Rng, sector: &Sector) -> Atom {
    match sector {
        Sector::Grid(axes) => Atom::grid(axes.iter().map(|_| factor(rng)).collect()),
        Sector::Radial { .. } => Atom::radial(step(rng, -4, 4, 2)),
        Sector::Fibered { .. } => Atom::fibered(factor(rng), step(rng, -4, 4, 2)),
    }
}

/// Nonzero multiples of 1/2 in `[-2, 2]`.
fn rate(rng: &mut impl Rng) -> Rational {
    let r = *[-4, -3, -2, -1, 1, 2, 3, 4].choose(rng).unwrap();
    rat(r, 2)
}

/// A pair `(u, v)` on a common grid in one or two dimensions whose quotient
/// has a nonzero exponential rate on every orthant and a polynomial part in
/// `[-1, 1]`.
pub fn random_pair(rng: &mut impl Rng) -> (ExpPolyWeight, ExpPolyWeight) {
    let axes: Vec<Axis> = (0..rng.gen_range(1..=2)).map(|_| axis(rng)).collect();
    let mut uf = Vec::new();
    let mut vf = Vec::new();
    for _ in &axes {
        let mut side = || {
            let v = Growth::new(step(rng, -2, 2, 2), step(rng, -1, 1, 2));
            let q = Growth::new(rate(rng), step(rng, -1, 1, 2));
            (Growth::new(v.exp2 + q.exp2, v.poly + q.poly), v)
        };
        let (up, vp) = side();
        let (un, vn) = side();
        uf.push(AxisFactor::split(up, un));
        vf.push(AxisFactor::split(vp, vn));
    }
    let sector = Sector::Grid(axes);
    (
        ExpPolyWeight::single(sector.clone(), Atom::grid(uf)).unwrap(),
        ExpPolyWeight::single(sector, Atom::grid(vf)).unwrap(),
    )
}
