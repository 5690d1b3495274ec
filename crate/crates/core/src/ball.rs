use std::cmp::Ordering;
use std::fmt;

use rug::float::Round;
use rug::ops::{DivAssignRound, Pow};
use rug::{Assign, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, RADIUS_PREC};

/// An arbitrary-precision value with a certified error radius.
///
/// The contract is containment: the true mathematical result of an
/// operation lies in `[midpoint - radius, midpoint + radius]` whenever
/// the inputs satisfy containment. Midpoints are rounded to nearest at
/// the working precision; the half-ulp rounding error and the exactly
/// propagated input radii are absorbed into the radius, which is kept
/// at a small precision of its own and always rounded upward.
#[derive(Debug, Clone)]
pub struct ErrorBall {
    mid: Float,
    rad: Float,
}

fn rad_zero() -> Float {
    Float::new(RADIUS_PREC)
}

/// Upper bound on the rounding error of a round-to-nearest result,
/// `|mid| * 2^(1-prec)`; zero when MPFR reported the result exact.
fn rounding_term(mid: &Float, ord: Ordering) -> Float {
    if ord == Ordering::Equal || mid.is_zero() {
        return rad_zero();
    }
    let mut t = Float::with_val_round(RADIUS_PREC, mid.as_abs().as_ref(), Round::Up).0;
    t >>= mid.prec() - 1;
    t
}

fn rad_up(incomplete: Float) -> Float {
    // already RADIUS_PREC; keep as-is
    incomplete
}

fn radd(a: &Float, b: &Float) -> Float {
    rad_up(Float::with_val_round(RADIUS_PREC, a + b, Round::Up).0)
}

fn rmul(a: &Float, b: &Float) -> Float {
    rad_up(Float::with_val_round(RADIUS_PREC, a * b, Round::Up).0)
}

fn abs_up(f: &Float) -> Float {
    Float::with_val_round(RADIUS_PREC, f.as_abs().as_ref(), Round::Up).0
}

impl ErrorBall {
    pub fn zero(prec: u32) -> Self {
        Self {
            mid: Float::new(prec),
            rad: rad_zero(),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(i: i64, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, i, Round::Nearest);
        let rad = rounding_term(&mid, ord);
        Self { mid, rad }
    }

    pub fn from_integer(i: &Integer, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, i, Round::Nearest);
        let rad = rounding_term(&mid, ord);
        Self { mid, rad }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, r, Round::Nearest);
        let rad = rounding_term(&mid, ord);
        Self { mid, rad }
    }

    /// Wraps a float as an exact ball (radius zero).
    pub fn from_float_exact(mid: Float) -> Self {
        Self {
            mid,
            rad: rad_zero(),
        }
    }

    pub fn from_parts(mid: Float, rad: Float) -> Self {
        debug_assert!(rad.is_sign_positive() || rad.is_zero());
        let rad = Float::with_val_round(RADIUS_PREC, &rad, Round::Up).0;
        Self { mid, rad }
    }

    /// Pi as a ball (MPFR's constant, correct to half an ulp).
    pub fn pi(prec: u32) -> Self {
        let (mid, ord) =
            Float::with_val_round(prec, rug::float::Constant::Pi, Round::Nearest);
        let rad = rounding_term(&mid, ord);
        Self { mid, rad }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Float {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    /// Directed lower endpoint of the interval.
    pub fn lower(&self) -> Float {
        Float::with_val_round(self.mid.prec(), &self.mid - &self.rad, Round::Down).0
    }

    /// Directed upper endpoint of the interval.
    pub fn upper(&self) -> Float {
        Float::with_val_round(self.mid.prec(), &self.mid + &self.rad, Round::Up).0
    }

    /// Upper bound on |x| over the ball.
    pub fn abs_upper(&self) -> Float {
        radd(&abs_up(&self.mid), &self.rad)
    }

    /// Lower bound on |x| over the ball (zero if the interval straddles 0).
    pub fn abs_lower(&self) -> Float {
        let a = Float::with_val_round(RADIUS_PREC, self.mid.as_abs().as_ref(), Round::Down).0;
        let d = Float::with_val_round(RADIUS_PREC, &a - &self.rad, Round::Down).0;
        if d < 0 {
            rad_zero()
        } else {
            d
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lower() > 0
    }

    /// True when the two balls overlap, optionally with extra slack.
    pub fn agrees_with(&self, other: &Self, slack: Option<&Float>) -> bool {
        let gap = Float::with_val_round(RADIUS_PREC, (&self.mid - &other.mid).abs(), Round::Down).0;
        let mut budget = radd(&self.rad, &other.rad);
        if let Some(s) = slack {
            budget = radd(&budget, s);
        }
        gap <= budget
    }

    /// True when this interval is contained in `other`, allowing the
    /// endpoints to overhang by `other`'s radius (the refinement test of
    /// the containment-under-refinement property).
    pub fn contained_in(&self, other: &Self) -> bool {
        self.lower() >= other.lower() && self.upper() <= other.upper()
    }

    pub fn neg(&self) -> Self {
        Self {
            mid: Float::with_val(self.mid.prec(), -&self.mid),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, &self.mid + &other.mid, Round::Nearest);
        let rad = radd(&radd(&self.rad, &other.rad), &rounding_term(&mid, ord));
        Self { mid, rad }
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, &self.mid - &other.mid, Round::Nearest);
        let rad = radd(&radd(&self.rad, &other.rad), &rounding_term(&mid, ord));
        Self { mid, rad }
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, &self.mid * &other.mid, Round::Nearest);
        // ra*|mb| + rb*|ma| + ra*rb
        let mut rad = rmul(&self.rad, &abs_up(&other.mid));
        rad = radd(&rad, &rmul(&other.rad, &abs_up(&self.mid)));
        rad = radd(&rad, &rmul(&self.rad, &other.rad));
        rad = radd(&rad, &rounding_term(&mid, ord));
        Self { mid, rad }
    }

    pub fn mul_int(&self, k: i64, prec: u32) -> Self {
        self.mul(&Self::from_int(k, prec), prec)
    }

    /// Exact scaling by a power of two.
    pub fn scale_pow2(&self, k: i32) -> Self {
        let mut mid = self.mid.clone();
        let mut rad = self.rad.clone();
        if k >= 0 {
            mid <<= k as u32;
            rad <<= k as u32;
        } else {
            mid >>= (-k) as u32;
            rad >>= (-k) as u32;
        }
        Self { mid, rad }
    }

    pub fn div(&self, other: &Self, prec: u32) -> Result<Self> {
        let denom_low = other.abs_lower();
        if denom_low.is_zero() {
            return Err(Error::Domain(
                "division by an interval containing zero".into(),
            ));
        }
        let (mid, ord) = Float::with_val_round(prec, &self.mid / &other.mid, Round::Nearest);
        // (ra + |q|*rb) / (|mb| - rb)
        let mut num = rmul(&abs_up(&mid), &other.rad);
        num = radd(&num, &self.rad);
        let mut rad = num;
        rad.div_assign_round(&denom_low, Round::Up);
        rad = radd(&rad, &rounding_term(&mid, ord));
        Ok(Self { mid, rad })
    }

    pub fn recip(&self, prec: u32) -> Result<Self> {
        Self::one(prec).div(self, prec)
    }

    /// Integer power by the mean-value bound
    /// `|x^n - m^n| <= n * (|m|+r)^(n-1) * r`; negative exponents go
    /// through `recip`.
    pub fn pow_int(&self, n: i64, prec: u32) -> Result<Self> {
        if n == 0 {
            return Ok(Self::one(prec));
        }
        if n < 0 {
            return self.pow_int(-n, prec)?.recip(prec);
        }
        let un = u32::try_from(n)
            .map_err(|_| Error::Domain(format!("pow_int exponent {n} out of range")))?;
        let (mid, ord) = Float::with_val_round(prec, (&self.mid).pow(un), Round::Nearest);
        let sup = self.abs_upper();
        let sup_pow = Float::with_val_round(RADIUS_PREC, (&sup).pow(un - 1), Round::Up).0;
        let mut rad = rmul(&sup_pow, &self.rad);
        rad = rmul(&rad, &Float::with_val(RADIUS_PREC, n));
        rad = radd(&rad, &rounding_term(&mid, ord));
        Ok(Self { mid, rad })
    }

    fn monotone_incr<F>(&self, prec: u32, f: F) -> Self
    where
        F: Fn(Float, Round) -> Float,
    {
        let lo_arg = Float::with_val_round(prec, &self.mid - &self.rad, Round::Down).0;
        let hi_arg = Float::with_val_round(prec, &self.mid + &self.rad, Round::Up).0;
        let f_lo = f(lo_arg, Round::Down);
        let f_hi = f(hi_arg, Round::Up);
        let mid = f(self.mid.clone(), Round::Nearest);
        let dev_lo = Float::with_val_round(RADIUS_PREC, &mid - &f_lo, Round::Up).0;
        let dev_hi = Float::with_val_round(RADIUS_PREC, &f_hi - &mid, Round::Up).0;
        let rad = if dev_lo > dev_hi { dev_lo } else { dev_hi };
        // one extra ulp guards the nearest-rounded midpoint itself
        let rad = radd(&rad, &rounding_term(&mid, Ordering::Greater));
        Self { mid, rad }
    }

    pub fn exp(&self, prec: u32) -> Self {
        self.monotone_incr(prec, |mut x, rnd| {
            x.exp_round(rnd);
            x
        })
    }

    /// `e^x - 1` with full relative accuracy near zero.
    pub fn expm1(&self, prec: u32) -> Self {
        self.monotone_incr(prec, |mut x, rnd| {
            x.exp_m1_round(rnd);
            x
        })
    }

    pub fn ln(&self, prec: u32) -> Result<Self> {
        if !self.is_strictly_positive() {
            return Err(Error::Domain(
                "log requires an interval strictly right of zero".into(),
            ));
        }
        Ok(self.monotone_incr(prec, |mut x, rnd| {
            x.ln_round(rnd);
            x
        }))
    }

    /// Renders `mid ± rad` with `digits` significant digits on the
    /// midpoint and a two-digit radius.
    pub fn to_display_string(&self, digits: usize) -> String {
        let mid = format_decimal(&self.mid, digits);
        if self.rad.is_zero() {
            format!("{mid} ± 0")
        } else {
            format!("{mid} ± {}", format_sci(&self.rad))
        }
    }
}

impl fmt::Display for ErrorBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.mid.prec() as f64 - 32.0) / std::f64::consts::LOG2_10) as usize;
        write!(f, "{}", self.to_display_string(digits.max(6)))
    }
}

/// Plain-decimal rendering of a float, falling back to scientific
/// notation for extreme exponents.
pub fn format_decimal(f: &Float, sig: usize) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    if !f.is_finite() {
        return f.to_string();
    }
    let (sign, digits, exp) = f.to_sign_string_exp(10, Some(sig.max(1)));
    let exp = exp.expect("finite nonzero float has an exponent");
    let s = if sign { "-" } else { "" };
    // exp is the position of the decimal point relative to the digit string
    if exp >= 1 && (exp as usize) <= sig + 4 {
        let e = exp as usize;
        if e >= digits.len() {
            let zeros = "0".repeat(e - digits.len());
            format!("{s}{digits}{zeros}")
        } else {
            format!("{s}{}.{}", &digits[..e], &digits[e..])
        }
    } else if exp <= 0 && exp > -6 {
        let zeros = "0".repeat((-exp) as usize);
        format!("{s}0.{zeros}{digits}")
    } else {
        let mantissa = if digits.len() > 1 {
            format!("{}.{}", &digits[..1], &digits[1..])
        } else {
            digits.clone()
        };
        format!("{s}{mantissa}e{}", exp - 1)
    }
}

/// Two-digit scientific rendering used for radii.
pub fn format_sci(f: &Float) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let (sign, digits, exp) = f.to_sign_string_exp(10, Some(2));
    let exp = exp.unwrap_or(0);
    let s = if sign { "-" } else { "" };
    let mantissa = if digits.len() > 1 {
        format!("{}.{}", &digits[..1], &digits[1..])
    } else {
        digits
    };
    format!("{s}{mantissa}e{}", exp - 1)
}

/// The operation set of `ball_arith`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallOp {
    Add,
    Sub,
    Mul,
    Div,
    PowInt(i64),
    Exp,
    Log,
}

/// Dispatcher over the primitive ball operations, with the
/// total-cancellation check: a result whose radius exceeds both its
/// midpoint magnitude and the context tolerance carries no information
/// at the requested precision and is reported as exhaustion. (A tiny
/// residual with a tiny radius is legitimate and passes.)
pub fn ball_arith(
    a: &ErrorBall,
    b: Option<&ErrorBall>,
    op: BallOp,
    ctx: &PrecisionContext,
) -> Result<ErrorBall> {
    let prec = ctx.prec();
    let need_b = || b.ok_or_else(|| Error::Domain("binary ball op missing operand".into()));
    let out = match op {
        BallOp::Add => a.add(need_b()?, prec),
        BallOp::Sub => a.sub(need_b()?, prec),
        BallOp::Mul => a.mul(need_b()?, prec),
        BallOp::Div => a.div(need_b()?, prec)?,
        BallOp::PowInt(n) => a.pow_int(n, prec)?,
        BallOp::Exp => a.exp(prec),
        BallOp::Log => a.ln(prec)?,
    };
    if out.rad > out.mid.clone().abs() && out.rad > *ctx.target_tolerance() {
        return Err(Error::PrecisionExhausted(format!(
            "total cancellation: radius {} exceeds |midpoint| {}",
            format_sci(&out.rad),
            format_sci(&out.mid.clone().abs())
        )));
    }
    Ok(out)
}
