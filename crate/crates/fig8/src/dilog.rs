//! Complex dilogarithm, Clausen and Lobachevsky functions.
//!
//! Li2 is evaluated through the Bernoulli series in u = -log(1 - w) after a
//! region transformation; the defining-integral quadrature lives in
//! [`crate::reference`] as the independent oracle. The series route is the
//! one that stays fast on the unit circle, where the plain power series
//! effectively stalls near the hexagonal points e^{+-i pi/3}.

use crate::error::{Error, Result};
use crate::prec::{cabs, creal, unit_circle, wrap_angle, PrecisionContext};
use rug::{Complex, Float, Integer, Rational};
use std::sync::{Mutex, OnceLock};

/// Bernoulli numbers B_0, B_1, B_2, ... as exact rationals (B_1 = -1/2).
fn bernoulli_upto(n: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1), Rational::from((-1, 2))]));
    let mut b = cache.lock().unwrap();
    while b.len() <= n {
        let m = b.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0  =>  B_m
        let mut acc = Rational::new();
        let mut binom = Integer::from(1); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from((binom.clone(), Integer::from(1))) * bj;
            // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
            binom *= (m + 1 - j) as u32;
            binom /= (j + 1) as u32;
        }
        let mm = Integer::from((m + 1) as u32);
        b.push(-acc / Rational::from((mm, Integer::from(1))));
    }
    b[..=n].to_vec()
}

/// Li2(w) through the Bernoulli series, with u = -log(1 - w) supplied by the
/// caller. Converges for |u| < 2 pi; the region dispatch keeps |u| away from
/// that bound.
fn li2_series(u: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let p = ctx.bits();
    let eps = ctx.eps();
    let u2 = Complex::with_val(p, u * u);
    // n = 0 and n = 1 terms: u - u^2/4
    let mut sum = u.clone() - Complex::with_val(p, &u2 / &Complex::with_val(p, (4, 0)));
    // running u^{2k+1} / (2k+1)! starting at k = 1
    let mut pw = Complex::with_val(p, u * &u2);
    let mut fact = Float::with_val(p, 6);
    let max_k = 8 * p as usize;
    let mut k = 1usize;
    loop {
        let b2k = {
            let bs = bernoulli_upto(2 * k);
            Float::with_val(p, &bs[2 * k])
        };
        let term = Complex::with_val(p, &pw / &fact) * &creal(b2k);
        sum += &term;
        let t = cabs(&term);
        let s = cabs(&sum);
        if t < eps.clone() * s {
            break;
        }
        k += 1;
        if k > max_k {
            return Err(Error::Precision(format!(
                "dilog series did not converge within {max_k} terms (|u| = {})",
                cabs(u).to_f64()
            )));
        }
        pw *= &u2;
        // (2k-1)! -> (2k+1)!
        fact *= (2 * k * (2 * k + 1)) as u32;
    }
    Ok(sum)
}

fn pi_sq_over_6(ctx: &PrecisionContext) -> Float {
    let pi = ctx.pi();
    pi.clone() * pi / 6u32
}

/// Complex dilogarithm Li2(z) = - int_0^z log(1-x)/x dx, analytic on
/// C \ [1, inf), principal branch. Real z > 1 is rejected; z = 1 returns
/// pi^2/6.
pub fn dilog(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let p = ctx.bits();
    if z.imag().is_zero() && *z.real() > 1f64 {
        return Err(Error::Cut);
    }
    if z.is_zero() {
        return Ok(ctx.complex_zero());
    }
    let one = Complex::with_val(p, (1, 0));
    if Complex::with_val(p, z - &one).is_zero() {
        return Ok(creal(pi_sq_over_6(ctx)));
    }

    let re = Float::with_val(p, z.real());
    let norm = Float::with_val(p, z.norm_ref()); // |z|^2

    // Region transformations keep |u| = |log(1-w)| comfortably below 2 pi.
    let (u, rest, negate) = if re <= 0.5f64 {
        if norm > 1f64 {
            // inversion: Li2(z) = -pi^2/6 - log(-z)^2/2 - Li2(1/z)
            let lnmz = Complex::with_val(p, -z.clone()).ln();
            let rest = -creal(pi_sq_over_6(ctx)) - Complex::with_val(p, &lnmz * &lnmz) / 2u32;
            let w = one.clone() / z; // 1/z
            let u = -Complex::with_val(p, &one - &w).ln();
            (u, rest, true)
        } else {
            let u = -Complex::with_val(p, &one - z).ln();
            (u, ctx.complex_zero(), false)
        }
    } else {
        let two_re = re.clone() * 2u32;
        if norm <= two_re {
            // reflection: Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
            let lnz = z.clone().ln();
            let ln1mz = Complex::with_val(p, &one - z).ln();
            let rest = creal(pi_sq_over_6(ctx)) - Complex::with_val(p, &lnz * &ln1mz);
            // series target 1 - z has u = -log(z)
            (-lnz, rest, true)
        } else {
            let lnmz = Complex::with_val(p, -z.clone()).ln();
            let rest = -creal(pi_sq_over_6(ctx)) - Complex::with_val(p, &lnmz * &lnmz) / 2u32;
            let w = one.clone() / z;
            let u = -Complex::with_val(p, &one - &w).ln();
            (u, rest, true)
        }
    };

    let series = li2_series(&u, ctx)?;
    let value = if negate { rest - series } else { rest + series };
    if !value.real().is_finite() || !value.imag().is_finite() {
        return Err(Error::Precision("dilog produced a non-finite value".into()));
    }
    Ok(value)
}

/// Im Li2(e^{i theta}): the Clausen function Cl_2(theta), odd and
/// 2 pi-periodic, maximal at theta = pi/3.
pub fn clausen(theta: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let th = wrap_angle(Float::with_val(ctx.bits(), theta));
    if th.is_zero() {
        return Ok(ctx.float(0));
    }
    let z = unit_circle(&th);
    let li = dilog(&z, ctx)?;
    Ok(Float::with_val(ctx.bits(), li.imag()))
}

/// Lobachevsky function L(theta) = -int_0^theta log|2 sin t| dt, odd and
/// pi-periodic; equals Cl_2(2 theta) / 2.
pub fn lobachevsky(theta: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.bits();
    // reduce mod pi into (-pi/2, pi/2]
    let pi = ctx.pi();
    let mut k = Float::with_val(p, theta / &pi);
    k.round_mut();
    let reduced = Float::with_val(p, theta) - k * &pi;
    let doubled = reduced * 2u32;
    Ok(clausen(&doubled, ctx)? / 2u32)
}

/// Hyperbolic volume of the figure-eight knot complement, 2 Cl_2(pi/3).
pub fn fig8_volume(ctx: &PrecisionContext) -> Float {
    let third_pi = ctx.pi() / 3u32;
    clausen(&third_pi, ctx).expect("clausen(pi/3) is interior to the domain") * 2u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::standard()
    }

    #[test]
    fn dilog_zero_and_one() {
        let c = ctx();
        let z0 = dilog(&c.complex_zero(), &c).unwrap();
        assert!(cabs(&z0).is_zero());
        let z1 = dilog(&c.complex(1.0, 0.0), &c).unwrap();
        let exact = pi_sq_over_6(&c);
        assert!((Float::with_val(256, z1.real()) - exact).abs() < 1e-70);
        assert!(dilog(&c.complex(1.5, 0.0), &c).is_err());
    }

    #[test]
    fn dilog_minus_one() {
        // Li2(-1) = -pi^2/12
        let c = ctx();
        let v = dilog(&c.complex(-1.0, 0.0), &c).unwrap();
        let exact = -pi_sq_over_6(&c) / 2u32;
        assert!((Float::with_val(256, v.real()) - exact).abs() < 1e-70);
        assert!(Float::with_val(256, v.imag()).abs() < 1e-70);
    }

    #[test]
    fn dilog_half() {
        // Li2(1/2) = pi^2/12 - log(2)^2/2
        let c = ctx();
        let v = dilog(&c.complex(0.5, 0.0), &c).unwrap();
        let ln2 = Float::with_val(256, 2).ln();
        let exact = pi_sq_over_6(&c) / 2u32 - ln2.clone() * ln2 / 2u32;
        assert!((Float::with_val(256, v.real()) - exact).abs() < 1e-70);
    }

    #[test]
    fn clausen_pi_third_is_half_volume() {
        let c = ctx();
        let third_pi = c.pi() / 3u32;
        let cl = clausen(&third_pi, &c).unwrap();
        // frozen from the defining-integral oracle (see tests/special_oracles.rs)
        let expect = c.float(1.0149416064096536f64);
        assert!((cl.clone() - expect).abs() < 1e-15, "Cl2(pi/3) = {cl}");
    }

    #[test]
    fn clausen_odd_symmetry() {
        let c = ctx();
        let th = c.float(0.7);
        let a = clausen(&th, &c).unwrap();
        let b = clausen(&c.float(-0.7), &c).unwrap();
        assert!((a + b).abs() < 1e-70);
    }

    #[test]
    fn lobachevsky_zero_and_pi() {
        let c = ctx();
        assert!(lobachevsky(&c.float(0), &c).unwrap().abs() < 1e-70);
        assert!(lobachevsky(&c.pi(), &c).unwrap().abs() < 1e-70);
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_upto(12);
        assert_eq!(b[2], Rational::from((1, 6)));
        assert_eq!(b[4], Rational::from((-1, 30)));
        assert_eq!(b[12], Rational::from((-691, 2730)));
        assert_eq!(b[7], Rational::from(0));
    }
}
