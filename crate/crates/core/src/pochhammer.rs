use crate::ball::ErrorBall;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

/// Rising factorial `(s)_n = s (s+1) ... (s+n-1)`, the ratio
/// Gamma(s+n)/Gamma(s) computed without evaluating Gamma itself. The
/// empty product is exactly one.
///
/// Cancellation is only possible when the interval of some factor
/// `s + k` strictly straddles zero, i.e. when s's interval contains a
/// non-positive integer without being pinned to it; that case is
/// reported as exhaustion. An exact non-positive integer s yields an
/// exact zero.
pub fn pochhammer_ratio(s: &ErrorBall, n: u32, ctx: &PrecisionContext) -> Result<ErrorBall> {
    let prec = ctx.prec();
    let mut acc = ErrorBall::one(prec);
    for k in 0..n {
        let factor = s.add(&ErrorBall::from_int(k as i64, prec), prec);
        if factor.mid().is_zero() && factor.rad().is_zero() {
            return Ok(ErrorBall::zero(prec));
        }
        if factor.contains_zero() && !factor.rad().is_zero() {
            return Err(Error::PrecisionExhausted(format!(
                "pochhammer factor s+{k} straddles zero; s's interval contains \
                 a non-positive integer"
            )));
        }
        acc = acc.mul(&factor, prec);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::factorial;
    use rug::Rational;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    #[test]
    fn rising_factorial_of_two() {
        let c = ctx();
        let s = ErrorBall::from_int(2, c.prec());
        let p = pochhammer_ratio(&s, 3, &c).unwrap();
        assert!(p.agrees_with(&ErrorBall::from_int(24, c.prec()), None));
    }

    #[test]
    fn empty_product_is_exact_one() {
        let c = ctx();
        let s = ErrorBall::from_rational(&Rational::from((7, 3)), c.prec());
        let p = pochhammer_ratio(&s, 0, &c).unwrap();
        assert_eq!(p.mid().to_f64(), 1.0);
        assert!(p.rad().is_zero());
    }

    #[test]
    fn two_poch_over_factorial_is_n_plus_one() {
        // (2)_n / n! = n + 1, the coefficient pattern of the alternating
        // (m-1) zeta series
        let c = ctx();
        let s = ErrorBall::from_int(2, c.prec());
        for n in 0..12u32 {
            let p = pochhammer_ratio(&s, n, &c).unwrap();
            let f = ErrorBall::from_integer(&factorial(n), c.prec());
            let ratio = p.div(&f, c.prec()).unwrap();
            let expect = ErrorBall::from_int(n as i64 + 1, c.prec());
            assert!(ratio.agrees_with(&expect, None), "n={n}");
        }
    }

    #[test]
    fn exact_nonpositive_integer_gives_exact_zero() {
        let c = ctx();
        let s = ErrorBall::from_int(0, c.prec());
        let p = pochhammer_ratio(&s, 2, &c).unwrap();
        assert!(p.mid().is_zero() && p.rad().is_zero());
    }

    #[test]
    fn straddling_interval_reports_exhaustion() {
        let c = ctx();
        let s = ErrorBall::from_parts(
            rug::Float::with_val(c.prec(), -1),
            rug::Float::with_val(crate::precision::RADIUS_PREC, 1e-30),
        );
        assert!(matches!(
            pochhammer_ratio(&s, 3, &c),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn recurrence_step_multiplies_by_s_plus_n() {
        let c = ctx();
        let s = ErrorBall::from_rational(&Rational::from((5, 2)), c.prec());
        for n in 0..10u32 {
            let a = pochhammer_ratio(&s, n, &c).unwrap();
            let b = pochhammer_ratio(&s, n + 1, &c).unwrap();
            let step = s.add(&ErrorBall::from_int(n as i64, c.prec()), c.prec());
            let prod = a.mul(&step, c.prec());
            assert!(prod.agrees_with(&b, None), "n={n}");
        }
    }
}
