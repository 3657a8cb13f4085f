//! Finite-window norms and the extremal sequences of the two-weight test.

use alloc::vec;
use alloc::vec::Vec;

use super::{ExpPolyWeight, SeqError};
use crate::exponents::ExtExponent;
use crate::numeric::{rat_f64, LogAcc};

impl ExpPolyWeight {
    /// Lattice points with `max_j |k_j| ≤ radius`, in lexicographic order.
    pub fn window(&self, radius: u64) -> Vec<Vec<i64>> {
        let d = self.arity();
        let r = radius as i64;
        let mut out = Vec::new();
        let mut idx = vec![-r; d];
        loop {
            if self.region_containing(&idx).is_some() {
                out.push(idx.clone());
            }
            let mut j = d;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if idx[j] < r {
                    idx[j] += 1;
                    break;
                }
                idx[j] = -r;
            }
        }
    }
}

/// `log2 ‖c‖_{ℓ_u^s}` for a finitely supported `c` given as `(index, log2|c_i|)`.
pub fn log2_weighted_norm(c: &[(Vec<i64>, f64)], u: &ExpPolyWeight, s: ExtExponent) -> Result<f64, SeqError> {
    let mut acc = LogAcc::new();
    for (idx, lc) in c {
        let lu = u
            .log2_at(idx)
            .ok_or_else(|| SeqError::LatticeMismatch(alloc::format!("{:?} is not in {}", idx, u.lattice_string())))?;
        match s.finite() {
            Some(t) => acc.add(rat_f64(t) * (lu + lc)),
            None => acc.add_max(lu + lc),
        }
    }
    Ok(match s.finite() {
        Some(t) => acc.log2() / rat_f64(t),
        None => acc.log2(),
    })
}

/// `log2 ‖w‖_{ℓ^θ}` restricted to `indices`.
pub fn log2_embedding_constant(w: &ExpPolyWeight, theta: ExtExponent, indices: &[Vec<i64>]) -> Result<f64, SeqError> {
    let ones: Vec<(Vec<i64>, f64)> = indices.iter().map(|i| (i.clone(), 0.0)).collect();
    log2_weighted_norm(&ones, w, theta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// `u_i c_i = (u_i/v_i)^{θ/s}` with `θ = compound(s, r) < ∞`.
    Power,
    /// A unit mass where `u/v` is largest on the window.
    Delta,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub kind: WitnessKind,
    /// `(index, log2|c_i|)`.
    pub coefficients: Vec<(Vec<i64>, f64)>,
}

impl Witness {
    /// `log2(‖c‖_{ℓ_u^s} / ‖c‖_{ℓ_v^r})`.
    pub fn log2_ratio(&self, u: &ExpPolyWeight, v: &ExpPolyWeight, r: ExtExponent, s: ExtExponent) -> Result<f64, SeqError> {
        Ok(log2_weighted_norm(&self.coefficients, u, s)? - log2_weighted_norm(&self.coefficients, v, r)?)
    }
}

/// The sequence on `indices` attaining `‖c‖_{ℓ_u^s} = ‖u/v‖_{ℓ^θ} ‖c‖_{ℓ_v^r}`.
pub fn lemma_witness(
    u: &ExpPolyWeight,
    v: &ExpPolyWeight,
    r: ExtExponent,
    s: ExtExponent,
    indices: &[Vec<i64>],
) -> Result<Witness, SeqError> {
    let q = u.div(v)?;
    let theta = ExtExponent::compound(s, r);
    let mut pts = Vec::with_capacity(indices.len());
    for idx in indices {
        let lq = q.log2_at(idx).ok_or_else(|| SeqError::LatticeMismatch(alloc::format!("{:?}", idx)))?;
        let lu = u.log2_at(idx).expect("same lattice as the quotient");
        pts.push((idx.clone(), lq, lu));
    }
    match (theta.finite(), s.finite()) {
        (Some(t), Some(s)) => {
            let e = rat_f64(t) / rat_f64(s);
            Ok(Witness {
                kind: WitnessKind::Power,
                coefficients: pts.into_iter().map(|(i, lq, lu)| (i, e * lq - lu)).collect(),
            })
        }
        _ => {
            let best = pts
                .into_iter()
                .fold(None::<(Vec<i64>, f64, f64)>, |b, p| match b {
                    Some(b) if b.1 >= p.1 => Some(b),
                    _ => Some(p),
                })
                .ok_or_else(|| SeqError::Malformed("empty window".into()))?;
            Ok(Witness { kind: WitnessKind::Delta, coefficients: vec![(best.0, -best.2)] })
        }
    }
}
