//! Logarithm base used when reporting information quantities.
//!
//! Every kernel in this crate computes in bits. Entropy, mutual information and
//! capacity all scale by `1 / log2(base)` under a change of base, so converting
//! at the reporting boundary is exact.

use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};

pub const DEFAULT_LOG_BASE: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LogBase(f64);

impl LogBase {
    pub const BITS: LogBase = LogBase(2.0);
    pub const NATS: LogBase = LogBase(std::f64::consts::E);

    pub fn new(base: f64) -> Result<Self> {
        if !base.is_finite() || base <= 0.0 || (base - 1.0).abs() < 1e-12 {
            return Err(validation(format!(
                "log base must be finite, positive and != 1, got {base}"
            )));
        }
        Ok(LogBase(base))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Convert a quantity measured in bits into this base.
    pub fn from_bits(self, bits: f64) -> f64 {
        if self.0 == 2.0 {
            bits
        } else {
            bits / self.0.log2()
        }
    }

    /// Convert a quantity expressed in this base into bits.
    pub fn to_bits(self, value: f64) -> f64 {
        if self.0 == 2.0 {
            value
        } else {
            value * self.0.log2()
        }
    }
}

impl Default for LogBase {
    fn default() -> Self {
        LogBase::BITS
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_are_identity() {
        assert_eq!(LogBase::BITS.from_bits(0.7), 0.7);
    }

    #[test]
    fn one_bit_is_ln2_nats() {
        let nats = LogBase::NATS.from_bits(1.0);
        assert!((nats - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((LogBase::NATS.to_bits(nats) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_base_one_and_negative() {
        assert!(LogBase::new(1.0).is_err());
        assert!(LogBase::new(-2.0).is_err());
        assert!(LogBase::new(f64::NAN).is_err());
        assert!(LogBase::new(10.0).is_ok());
    }
}
