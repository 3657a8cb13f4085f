//! Small floating-point helpers shared by the evaluators and the oracle.

use crate::exponents::Rational;

pub fn rat_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `⌈2^e⌉`, exact when `e` is an integer.
pub fn ceil_pow2(e: f64) -> f64 {
    if libm::floor(e) == e {
        libm::exp2(e)
    } else {
        libm::ceil(libm::exp2(e))
    }
}

/// `log2(Σ 2^{v_i})`; `-∞` for an empty slice.
pub fn log2_sum_exp2(vals: &[f64]) -> f64 {
    let mut acc = LogAcc::new();
    for &v in vals {
        acc.add(v);
    }
    acc.log2()
}

/// Streaming `log2 Σ 2^{v}` (or `max v` in sup mode).
#[derive(Debug, Clone, Copy)]
pub struct LogAcc {
    max: f64,
    scaled: f64,
}

impl Default for LogAcc {
    fn default() -> Self {
        Self::new()
    }
}

impl LogAcc {
    pub fn new() -> Self {
        LogAcc { max: f64::NEG_INFINITY, scaled: 0.0 }
    }

    pub fn add(&mut self, v: f64) {
        if v == f64::NEG_INFINITY {
            return;
        }
        if v == f64::INFINITY || self.max == f64::INFINITY {
            self.max = f64::INFINITY;
            self.scaled = 1.0;
            return;
        }
        if v <= self.max {
            self.scaled += libm::exp2(v - self.max);
        } else {
            self.scaled = self.scaled * libm::exp2(self.max - v) + 1.0;
            self.max = v;
        }
    }

    pub fn add_max(&mut self, v: f64) {
        if v > self.max {
            self.max = v;
            self.scaled = 1.0;
        }
    }

    pub fn log2(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + libm::log2(self.scaled)
        }
    }
}

/// `log2(1 - 2^{-y})` for `y > 0`, accurate for small `y`.
pub fn log2_one_minus_exp2(y: f64) -> f64 {
    let ln2 = core::f64::consts::LN_2;
    libm::log2(-libm::expm1(-y * ln2))
}
