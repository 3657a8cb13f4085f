//! Exact membership rules for exp-poly weights.

use alloc::format;

use num_traits::{Signed, Zero};

use super::{Atom, Axis, AxisFactor, ExpPolyWeight, Fiber, Growth, SeqError, Sector};
use crate::exponents::{ExtExponent, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Member,
    NotMember,
}

impl Membership {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Membership::Member
        } else {
            Membership::NotMember
        }
    }

    pub fn is_member(self) -> bool {
        self == Membership::Member
    }
}

/// Which norm-like quantity must stay finite. `x` is `1/θ`.
#[derive(Debug, Clone, Copy)]
enum Test {
    Sum(Rational),
    Sup,
    Shell(Rational),
}

/// Exact decision of `w ∈ ℓ^θ`.
pub fn decide_lp_membership(w: &ExpPolyWeight, theta: ExtExponent) -> Result<Membership, SeqError> {
    let test = if theta.is_infinite() { Test::Sup } else { Test::Sum(theta.reciprocal()) };
    decide(w, test)
}

/// Exact decision of `sup_shells |shell|^x · sup_shell w < ∞`, where the
/// scale shells are single grid points, dyadic annuli of radial sectors, or
/// the fibers of fibered sectors. With `x = 0` this is `ℓ^∞`.
pub fn decide_shell_bounded(w: &ExpPolyWeight, x: Rational) -> Result<Membership, SeqError> {
    if x.is_negative() {
        return Err(SeqError::Malformed(format!("negative shell exponent {}", x)));
    }
    decide(w, if x.is_zero() { Test::Sup } else { Test::Shell(x) })
}

fn decide(w: &ExpPolyWeight, test: Test) -> Result<Membership, SeqError> {
    let mut member = true;
    for r in w.regions() {
        for a in &r.atoms {
            member &= atom_ok(&r.sector, a, test)?;
        }
    }
    Ok(Membership::from_bool(member))
}

fn atom_ok(sector: &Sector, atom: &Atom, test: Test) -> Result<bool, SeqError> {
    match sector {
        Sector::Grid(axes) => Ok(axes.iter().zip(&atom.axes).all(|(&ax, f)| grid_axis_ok(ax, f, test))),
        Sector::Radial { dim } => {
            let d = Rational::from_integer(*dim as i128);
            let c = atom.radial;
            Ok(match test {
                Test::Sum(x) => c < -(d * x),
                Test::Sup => !c.is_positive(),
                Test::Shell(x) => !(c + d * x).is_positive(),
            })
        }
        Sector::Fibered { axis, fiber } => fibered_ok(*axis, *fiber, &atom.axes[0], atom.fiber, test),
    }
}

fn grid_axis_ok(axis: Axis, f: &AxisFactor, test: Test) -> bool {
    let side = |g: Growth, sigma: i128| -> bool {
        let a = g.exp2 * Rational::from_integer(sigma);
        if a.is_negative() {
            return true;
        }
        if a.is_positive() {
            return false;
        }
        match test {
            Test::Sum(x) => g.poly < -x,
            Test::Sup | Test::Shell(_) => !g.poly.is_positive(),
        }
    };
    match axis {
        Axis::Natural => side(f.pos, 1),
        Axis::Negative => side(f.neg, -1),
        Axis::Integers => side(f.pos, 1) && side(f.neg, -1),
    }
}

/// Reduces the fiber over `n` to `2^{E n}⟨n⟩^P` (in units of the tested
/// norm) and then applies the one-dimensional rule along the base axis.
fn fibered_ok(axis: Axis, fiber: Fiber, base: &AxisFactor, rho: Rational, test: Test) -> Result<bool, SeqError> {
    let zero = Rational::zero();
    let (g, sigma) = match axis {
        Axis::Natural => (base.pos, 1),
        Axis::Negative => (base.neg, -1),
        Axis::Integers => unreachable!("validated at region construction"),
    };
    let (e, p) = match test {
        Test::Sum(x) => match fiber {
            Fiber::Origin => (zero, zero),
            Fiber::Punctured => {
                if rho >= -x {
                    return Ok(false);
                }
                (zero, zero)
            }
            Fiber::Above { kappa, .. } => {
                if rho >= -x {
                    return Ok(false);
                }
                (kappa * (x + rho), zero)
            }
            Fiber::Below { kappa, .. } => {
                if kappa.is_zero() || rho < -x {
                    (zero, zero)
                } else if rho == -x {
                    (zero, x)
                } else {
                    (kappa * (x + rho), zero)
                }
            }
        },
        Test::Sup | Test::Shell(_) => {
            let (mut e, count) = match fiber {
                Fiber::Origin => (zero, None),
                Fiber::Punctured => {
                    if rho.is_positive() {
                        return Ok(false);
                    }
                    (zero, None)
                }
                Fiber::Above { kappa, .. } => {
                    if rho.is_positive() {
                        return Ok(false);
                    }
                    (kappa * rho, None)
                }
                Fiber::Below { kappa, .. } => (if rho.is_negative() { zero } else { kappa * rho }, Some(kappa)),
            };
            if let Test::Shell(x) = test {
                match (fiber, count) {
                    (Fiber::Origin, _) => {}
                    (_, Some(kappa)) => e += kappa * x,
                    _ => {
                        return Err(SeqError::UnsupportedWeight(format!(
                            "shell test on the unbounded fiber {:?}",
                            fiber
                        )))
                    }
                }
            }
            (e, zero)
        }
    };
    let rate = (g.exp2 + e) * Rational::from_integer(sigma);
    if rate.is_negative() {
        return Ok(true);
    }
    if rate.is_positive() {
        return Ok(false);
    }
    Ok(match test {
        Test::Sum(x) => g.poly + p < -x,
        Test::Sup | Test::Shell(_) => !(g.poly + p).is_positive(),
    })
}

/// Outcome of the two-weight sequence-space test.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceVerdict {
    pub embeds: bool,
    /// `compound(s, r)`, the exponent applied to `u/v`.
    pub exponent: ExtExponent,
    pub quotient: ExpPolyWeight,
}

/// `ℓ_v^r ↪ ℓ_u^s` iff `u/v ∈ ℓ^{compound(s, r)}`.
pub fn decide_sequence_embedding(
    u: &ExpPolyWeight,
    v: &ExpPolyWeight,
    r: ExtExponent,
    s: ExtExponent,
) -> Result<SequenceVerdict, SeqError> {
    let quotient = u.div(v)?;
    let exponent = ExtExponent::compound(s, r);
    let embeds = decide_lp_membership(&quotient, exponent)?.is_member();
    Ok(SequenceVerdict { embeds, exponent, quotient })
}
