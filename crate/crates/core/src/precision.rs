use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Working precision and tolerance policy governing every evaluation.
///
/// `working_digits` is the requested decimal precision; the binary
/// precision used for midpoints carries 32 guard bits on top of it.
/// The default tolerance keeps 10 guard digits, so results certify to
/// `10^-(digits-10)` without per-call tuning.
#[derive(Debug, Clone)]
pub struct PrecisionContext {
    working_digits: u32,
    target_tolerance: Float,
    max_terms: usize,
    max_quad_levels: usize,
}

pub const MIN_DIGITS: u32 = 15;
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;
pub const DEFAULT_MAX_QUAD_LEVELS: usize = 12;

/// Binary precision used for radius bookkeeping; radii only need a
/// couple of digits plus a wide exponent.
pub const RADIUS_PREC: u32 = 64;

impl PrecisionContext {
    pub fn new(working_digits: u32) -> Result<Self> {
        if working_digits < MIN_DIGITS {
            return Err(Error::Domain(format!(
                "working_digits must be at least {MIN_DIGITS}, got {working_digits}"
            )));
        }
        let tol = Float::with_val(RADIUS_PREC, 10).pow(-(working_digits as i32 - 10));
        Ok(Self {
            working_digits,
            target_tolerance: tol,
            max_terms: DEFAULT_MAX_TERMS,
            max_quad_levels: DEFAULT_MAX_QUAD_LEVELS,
        })
    }

    /// Override the tolerance. Must stay positive and no tighter than
    /// `10^-working_digits`.
    pub fn with_tolerance(mut self, tol: Float) -> Result<Self> {
        let floor = Float::with_val(RADIUS_PREC, 10).pow(-(self.working_digits as i32));
        if !(tol > 0) || tol < floor {
            return Err(Error::Domain(format!(
                "tolerance must satisfy 0 < tol and tol >= 10^-{}",
                self.working_digits
            )));
        }
        self.target_tolerance = tol;
        Ok(self)
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be positive".into()));
        }
        self.max_terms = max_terms;
        Ok(self)
    }

    pub fn with_max_quad_levels(mut self, levels: usize) -> Result<Self> {
        if levels == 0 {
            return Err(Error::Domain("max_quad_levels must be positive".into()));
        }
        self.max_quad_levels = levels;
        Ok(self)
    }

    pub fn working_digits(&self) -> u32 {
        self.working_digits
    }

    pub fn target_tolerance(&self) -> &Float {
        &self.target_tolerance
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn max_quad_levels(&self) -> usize {
        self.max_quad_levels
    }

    /// Binary precision for midpoint arithmetic: ceil(digits * log2 10)
    /// plus 32 guard bits.
    pub fn prec(&self) -> u32 {
        let bits = (self.working_digits as f64 * std::f64::consts::LOG2_10).ceil() as u32;
        bits + 32
    }

    /// A fraction of the target tolerance, used as the certification
    /// target of individual sub-evaluations so that a handful of them
    /// can be combined while staying under the overall tolerance.
    pub fn sub_tolerance(&self, divisor: u32) -> Float {
        Float::with_val(RADIUS_PREC, &self.target_tolerance / divisor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_tolerance_keeps_ten_guard_digits() {
        let ctx = PrecisionContext::new(50).unwrap();
        let expect = Float::with_val(RADIUS_PREC, 10).pow(-40);
        assert_eq!(ctx.target_tolerance().to_f64(), expect.to_f64());
    }

    #[test]
    fn rejects_digits_below_floor() {
        assert!(PrecisionContext::new(14).is_err());
        assert!(PrecisionContext::new(15).is_ok());
    }

    #[test]
    fn rejects_tolerance_past_working_precision() {
        let ctx = PrecisionContext::new(20).unwrap();
        let too_tight = Float::with_val(RADIUS_PREC, 10).pow(-25);
        assert!(ctx.with_tolerance(too_tight).is_err());
    }
}
