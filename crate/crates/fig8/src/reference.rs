//! Independent reference implementations used by the test suites.
//!
//! Everything here deliberately avoids the main evaluation paths: the
//! dilogarithm is integrated from its definition, Clausen/Lobachevsky come
//! from their log-sine integrals, and the Habiro sum is re-evaluated without
//! the incremental product update. Keep it that way; these are the oracles
//! the fast paths are tested against.

use crate::error::Result;
use crate::prec::{cabs, creal, PrecisionContext};
use crate::quad;
use rug::{Complex, Float};

/// Li2 by adaptive quadrature of -int_0^1 log(1 - z t) / t dt.
pub fn dilog_by_quadrature(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let p = ctx.bits();
    let zz = z.clone();
    let f = move |t: &Float| -> Result<Complex> {
        if t.is_zero() {
            return Ok(zz.clone());
        }
        let w = Complex::with_val(p, &zz * t);
        let one_minus = Complex::with_val(p, Complex::with_val(p, (1, 0)) - w);
        Ok(-(one_minus.ln() / t))
    };
    quad::integrate(&f, &ctx.float(0), &ctx.float(1), ctx.quad_tol(), p)
}

/// Cl_2(theta) = -int_0^theta log(2 sin(t/2)) dt for theta in (0, 2 pi),
/// with the log endpoint singularity integrated analytically:
/// int_0^x log t dt = x (log x - 1).
pub fn clausen_by_quadrature(theta: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.bits();
    let f = move |t: &Float| -> Result<Complex> {
        // log(2 sin(t/2) / t), smooth through t = 0
        if t.is_zero() {
            return Ok(Complex::with_val(p, (0, 0)));
        }
        let half = Float::with_val(p, t / 2u32);
        let v = (half.sin() * 2u32 / t).ln();
        Ok(creal(v))
    };
    let smooth = quad::integrate(&f, &ctx.float(0), theta, ctx.quad_tol(), p)?;
    let log_part = theta.clone() * (theta.clone().ln() - 1u32);
    Ok(-(log_part + Float::with_val(p, smooth.real())))
}

/// Lobachevsky function by its own log-sine integral over (0, pi/2]:
/// -int_0^theta log(2 sin t) dt, endpoint log integrated analytically.
pub fn lobachevsky_by_quadrature(theta: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.bits();
    let f = move |t: &Float| -> Result<Complex> {
        if t.is_zero() {
            return Ok(Complex::with_val(p, (0, 0)));
        }
        let v = (t.clone().sin() / t).ln();
        Ok(creal(v))
    };
    let smooth = quad::integrate(&f, &ctx.float(0), theta, ctx.quad_tol(), p)?;
    let two_theta = theta.clone() * 2u32;
    let log_part = theta.clone() * (two_theta.ln() - 1u32);
    Ok(-(log_part + Float::with_val(p, smooth.real())))
}

/// Habiro sum with every product recomputed from scratch via explicit powers.
/// O(M^2) and deliberately naive; independent of the incremental fast path.
pub fn jones_bruteforce(m: u32, q: &Complex, ctx: &PrecisionContext) -> Complex {
    let p = ctx.bits();
    let mut total = Complex::with_val(p, (0, 0));
    for k in 0..m {
        let mut term = pow_complex(q, -((k as i64) * m as i64), p);
        for l in 1..=k {
            let a = Complex::with_val(p, (1, 0)) - pow_complex(q, m as i64 - l as i64, p);
            let b = Complex::with_val(p, (1, 0)) - pow_complex(q, m as i64 + l as i64, p);
            term *= Complex::with_val(p, a * b);
        }
        total += term;
    }
    total
}

/// q^e for integer e via ln/exp (distinct from repeated multiplication).
pub fn pow_complex(q: &Complex, e: i64, prec: u32) -> Complex {
    if e == 0 {
        return Complex::with_val(prec, (1, 0));
    }
    let ln = q.clone().ln();
    (ln * Complex::with_val(prec, (e as f64, 0.0))).exp()
}

/// Relative deviation |a - b| / max(|a|, |b|), as f64 for assertions.
pub fn rel_dev(a: &Complex, b: &Complex) -> f64 {
    let p = a.prec().0;
    let diff = cabs(&Complex::with_val(p, a - b));
    let denom = cabs(a).max(&cabs(b));
    if denom.is_zero() {
        return diff.to_f64();
    }
    (diff / denom).to_f64()
}
