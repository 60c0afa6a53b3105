use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::numerics::trig::{check_bits, residual, BigComplex, BigReal};

pub const DEFAULT_BITS: u32 = 256;

/// Working precision and the pass threshold derived from it.
///
/// The threshold is `2^(-bits/2)` unless `tolerance_log2` pins it; a failed
/// check is retried once at `2 * bits` against the same threshold when
/// `escalate` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub bits: u32,
    pub tolerance_log2: Option<i64>,
    pub escalate: bool,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            bits: DEFAULT_BITS,
            tolerance_log2: None,
            escalate: true,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(bits: u32) -> Result<PrecisionPolicy> {
        check_bits(bits)?;
        Ok(PrecisionPolicy {
            bits,
            ..PrecisionPolicy::default()
        })
    }

    pub fn with_tolerance_log2(mut self, log2: i64) -> PrecisionPolicy {
        self.tolerance_log2 = Some(log2);
        self
    }

    pub fn without_escalation(mut self) -> PrecisionPolicy {
        self.escalate = false;
        self
    }

    /// Exponent `e` of the threshold `2^e`.
    pub fn tolerance_exp(&self) -> i64 {
        self.tolerance_log2.unwrap_or(-(self.bits as i64) / 2)
    }

    pub fn tolerance(&self) -> BigReal {
        Float::with_val(self.bits, Float::i_exp(1, self.tolerance_exp() as i32))
    }

    /// The retry policy: doubled precision, same threshold.
    pub fn escalated(&self) -> PrecisionPolicy {
        PrecisionPolicy {
            bits: self.bits * 2,
            tolerance_log2: Some(self.tolerance_exp()),
            escalate: false,
        }
    }
}

/// `|u - v| <= tol * max(1, |u|, |v|)`, with the scaled residual.
pub fn near_equal(u: &BigComplex, v: &BigComplex, policy: &PrecisionPolicy) -> (bool, BigReal) {
    let r = residual(u, v);
    (r <= policy.tolerance(), r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Complex;

    fn c(bits: u32, v: Float) -> Complex {
        Complex::with_val(bits, (v, 0))
    }

    #[test]
    fn near_equal_examples() {
        let pol = PrecisionPolicy::default();
        let one = c(256, Float::with_val(256, 1));
        let close = c(256, Float::with_val(256, 1) + Float::with_val(256, Float::i_exp(1, -200)));
        assert!(near_equal(&one, &close, &pol).0);

        let zero = c(256, Float::with_val(256, 0));
        let small = c(256, Float::with_val(256, 1e-10));
        assert!(!near_equal(&zero, &small, &pol).0);

        // relative rule: an absolute gap of 1e-35 is far above 2^-128 but
        // within 2^-128 * 1e6
        let big = c(256, Float::with_val(256, 1_000_000));
        let shifted = |e: &str| {
            let eps = Float::with_val(256, Float::parse(e).unwrap());
            c(256, Float::with_val(256, 1_000_000) + eps)
        };
        assert!(near_equal(&big, &shifted("1e-35"), &pol).0);
        // 1e-30 / 1e6 = 1e-36 exceeds 2^-128 ~ 2.9e-39
        assert!(!near_equal(&big, &shifted("1e-30"), &pol).0);
    }

    #[test]
    fn tolerance_defaults() {
        let pol = PrecisionPolicy::default();
        assert_eq!(pol.tolerance_exp(), -128);
        assert_eq!(pol.escalated().bits, 512);
        assert_eq!(pol.escalated().tolerance_exp(), -128);
        assert!(PrecisionPolicy::new(32).is_err());
        assert_eq!(pol.with_tolerance_log2(-100000).tolerance_exp(), -100000);
    }
}
