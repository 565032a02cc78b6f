//! Log-domain complex values.
//!
//! Asymptotic formulas here scale like exp(r * Vol / 2pi); values are carried
//! as (log-magnitude, argument) pairs so ratios and growth rates stay
//! well-conditioned no matter how large the magnitudes get.

use crate::prec::{cabs, cpx, wrap_angle, PrecisionContext};
use rug::float::Special;
use rug::{Complex, Float};

/// An exponentially large (or small) complex value stored as
/// natural-log magnitude plus argument in (-pi, pi].
#[derive(Clone, Debug)]
pub struct LogComplex {
    log_mag: Float,
    arg: Float,
}

impl LogComplex {
    pub fn new(log_mag: Float, arg: Float) -> Self {
        Self {
            log_mag,
            arg: wrap_angle(arg),
        }
    }

    /// Log form of an ordinary complex value. Zero maps to log-magnitude -inf.
    pub fn from_complex(z: &Complex) -> Self {
        let p = z.prec().0;
        let mag = cabs(z);
        let log_mag = if mag.is_zero() {
            Float::with_val(p, Special::NegInfinity)
        } else {
            mag.ln()
        };
        let im = Float::with_val(p, z.imag());
        let re = Float::with_val(p, z.real());
        let arg = im.atan2(&re);
        Self { log_mag, arg }
    }

    /// Log form of exp(w): log-magnitude Re w, argument Im w wrapped.
    pub fn exp_of(w: &Complex) -> Self {
        let p = w.prec().0;
        Self::new(Float::with_val(p, w.real()), Float::with_val(p, w.imag()))
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Self {
            log_mag: ctx.float(0),
            arg: ctx.float(0),
        }
    }

    pub fn log_mag(&self) -> &Float {
        &self.log_mag
    }

    pub fn arg(&self) -> &Float {
        &self.arg
    }

    /// Back to an ordinary complex value (exact up to rounding whenever the
    /// magnitude is representable, which for MPFR floats is essentially
    /// always).
    pub fn to_complex(&self) -> Complex {
        let p = self.log_mag.prec();
        let mag = self.log_mag.clone().exp();
        let (s, c) = self.arg.clone().sin_cos(Float::new(p));
        cpx(mag.clone() * c, mag * s)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            self.log_mag.clone() + &other.log_mag,
            self.arg.clone() + &other.arg,
        )
    }

    pub fn div(&self, other: &Self) -> Self {
        Self::new(
            self.log_mag.clone() - &other.log_mag,
            self.arg.clone() - &other.arg,
        )
    }

    /// ln of the magnitude ratio |self| / |other|.
    pub fn log_mag_ratio(&self, other: &Self) -> Float {
        self.log_mag.clone() - &other.log_mag
    }
}

/// Stable log-sum-exp over log-magnitudes of nonnegative reals:
/// returns ln(sum_i exp(v_i)).
///
/// Accumulation is sequential left-to-right in the given order; callers that
/// parallelize must fill the slice in a fixed index order to stay
/// deterministic.
pub fn log_sum_exp(values: &[Float], prec: u32) -> Float {
    let mut max: Option<&Float> = None;
    for v in values {
        if v.is_finite() {
            max = Some(match max {
                None => v,
                Some(m) => {
                    if v > m {
                        v
                    } else {
                        m
                    }
                }
            });
        }
    }
    let max = match max {
        None => return Float::with_val(prec, Special::NegInfinity),
        Some(m) => m.clone(),
    };
    let mut acc = Float::new(prec);
    for v in values {
        if v.is_finite() {
            acc += Float::with_val(prec, v - &max).exp();
        }
    }
    max + acc.ln()
}
