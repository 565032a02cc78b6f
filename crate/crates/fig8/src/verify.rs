//! Independent numerical oracles: the contour-integral representation of the
//! colored Jones polynomial, the one-parameter Laplace engine, and the
//! Riemann-sum-to-integral equivalence.
//!
//! `contour_jones` is the strongest end-to-end check in the crate: it
//! reproduces the Habiro sum from the quantum-dilogarithm contour
//! representation through completely different machinery (adaptive complex
//! quadrature of tan((M+a) pi z) g_M(z) plus a residue-matched head sum).

use crate::error::{Error, Result};
use crate::jones::RootSpec;
use crate::logcx::LogComplex;
use crate::potentials::{Potential, SaddleSolution};
use crate::prec::{cabs, cpx, creal, PrecisionContext};
use crate::qdilog::QuantumDilog;
use crate::quad;
use crate::tv::{eta_prime, tv_invariant};
use rug::{Complex, Float};

/// Polygonal contour labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContourLabel {
    CPlus,
    CMinus,
    Custom,
}

/// A polygonal integration path.
#[derive(Clone, Debug)]
pub struct Contour {
    pub vertices: Vec<Complex>,
    pub label: ContourLabel,
}

impl Contour {
    /// Upper path: 1-eps -> 1 - u/2pi - eps + i -> -u/2pi + eps + i -> eps.
    pub fn c_plus(eps: &Float, u: f64, ctx: &PrecisionContext) -> Self {
        let p = ctx.bits();
        let shift = ctx.float(u) / ctx.two_pi();
        let one = ctx.float(1);
        let vertices = vec![
            creal(one.clone() - eps),
            cpx(one.clone() - &shift - eps, ctx.float(1)),
            cpx(-(shift.clone()) + eps, ctx.float(1)),
            creal(Float::with_val(p, eps)),
        ];
        Self {
            vertices,
            label: ContourLabel::CPlus,
        }
    }

    /// Lower path: eps -> eps + u/2pi - i -> 1 - eps + u/2pi - i -> 1 - eps.
    pub fn c_minus(eps: &Float, u: f64, ctx: &PrecisionContext) -> Self {
        let p = ctx.bits();
        let shift = ctx.float(u) / ctx.two_pi();
        let one = ctx.float(1);
        let vertices = vec![
            creal(Float::with_val(p, eps)),
            cpx(shift.clone() + eps, ctx.float(-1)),
            cpx(one.clone() - eps + &shift, ctx.float(-1)),
            creal(one - eps),
        ];
        Self {
            vertices,
            label: ContourLabel::CMinus,
        }
    }

    /// Total polygonal length.
    pub fn length(&self, ctx: &PrecisionContext) -> Float {
        let p = ctx.bits();
        let mut acc = Float::new(p);
        for pair in self.vertices.windows(2) {
            acc += cabs(&Complex::with_val(p, &pair[1] - &pair[0]));
        }
        acc
    }
}

/// The paper-fixed pole-splitting epsilon (2a + 1/2) / (2 (M + a)).
pub fn contour_epsilon(spec: &RootSpec, ctx: &PrecisionContext) -> Float {
    (ctx.float(2.0 * spec.a()) + ctx.float(0.5)) / (spec.order(ctx) * 2u32)
}

/// Colored Jones polynomial via the contour representation: residue-matched
/// head sum plus the S-ratio prefactor times the adaptive contour integral of
/// tan((M+a) pi z) g_M(z).
///
/// Supported for M <= 12; quadrature near the tan poles gets expensive beyond
/// that.
pub fn contour_jones(spec: &RootSpec, ctx: &PrecisionContext) -> Result<Complex> {
    let m = spec.m();
    if m > 12 {
        return Err(Error::Domain(format!(
            "contour oracle supports M <= 12, got {m}"
        )));
    }
    let p = ctx.bits();
    let u = spec.u();
    let a = spec.a();
    let ord = spec.order(ctx);
    let xi = spec.xi(ctx);
    let gamma = spec.gamma(ctx);
    let q = spec.q(ctx);
    let eps = contour_epsilon(spec, ctx);
    let i = ctx.i();

    let qd = QuantumDilog::new(&gamma, ctx)?;

    // head: 1 + sum_{k=1}^{K-1}, K the first k whose tan pole (2k+1)/(2(M+a))
    // lies right of eps, i.e. K = floor(a - 1/4) + 1 clamped at >= 1
    let k_split = {
        let t = (a - 0.25).floor() as i64 + 1;
        t.max(1) as u32
    };
    let one = Complex::with_val(p, (1, 0));
    let mut head = one.clone();
    {
        let q_inv = q.clone().recip();
        let mut q_pow_minus_m = one.clone();
        for _ in 0..m {
            q_pow_minus_m *= &q_inv;
        }
        let mut q_m = one.clone();
        for _ in 0..m {
            q_m *= &q;
        }
        let mut q_down = Complex::with_val(p, &q_m * &q_inv);
        let mut q_up = Complex::with_val(p, &q_m * &q);
        let mut product = one.clone();
        let mut weight = one.clone();
        for _k in 1..k_split {
            weight *= &q_pow_minus_m;
            let f1 = Complex::with_val(p, &one - &q_down);
            let f2 = Complex::with_val(p, &one - &q_up);
            product *= Complex::with_val(p, f1 * f2);
            head += Complex::with_val(p, &weight * &product);
            q_down *= &q_inv;
            q_up *= &q;
        }
    }

    // S-ratio prefactor via the quadrature route (not the closed form: this
    // oracle is what the closed forms are checked against)
    let ratio = {
        let minus_iu = Complex::with_val(p, &i * &creal(ctx.float(-u)));
        let za = Complex::with_val(
            p,
            -creal(ctx.pi()) + &minus_iu
                - Complex::with_val(p, &gamma * &creal(ctx.float(2.0 * a - 1.0))),
        );
        let zb = Complex::with_val(
            p,
            creal(ctx.pi()) + &minus_iu
                - Complex::with_val(p, &gamma * &creal(ctx.float(2.0 * a + 1.0))),
        );
        qd.ratio(&za, &zb)?
    };

    // g_M(z) = exp(-(M+a) u z + a xi z) * S(A)/S(B)
    let lin_coeff = {
        let a_xi = Complex::with_val(p, &xi * &creal(ctx.float(a)));
        Complex::with_val(p, a_xi - creal(ord.clone() * ctx.float(u)))
    };
    let i_xi = Complex::with_val(p, &i * &xi);
    let base_a = Complex::with_val(
        p,
        creal(ctx.pi())
            + Complex::with_val(p, &i * &creal(ctx.float(-u)))
            + Complex::with_val(p, &i_xi * &creal(ctx.float(a) / &ord)),
    );
    let base_b = Complex::with_val(
        p,
        -creal(ctx.pi())
            + Complex::with_val(p, &i * &creal(ctx.float(-u)))
            + Complex::with_val(p, &i_xi * &creal(ctx.float(a) / &ord)),
    );

    let ord_pi = creal(ord.clone() * ctx.pi());
    let integrand = |z: &Complex| -> Result<Complex> {
        let arg_a = Complex::with_val(p, &base_a + &Complex::with_val(p, &i_xi * z));
        let arg_b = Complex::with_val(p, &base_b - &Complex::with_val(p, &i_xi * z));
        let log_g =
            Complex::with_val(p, &lin_coeff * z) + qd.log_eval(&arg_a)? - qd.log_eval(&arg_b)?;
        let tan = Complex::with_val(p, &ord_pi * z).tan();
        Ok(Complex::with_val(p, tan * log_g.exp()))
    };

    let c_plus = Contour::c_plus(&eps, u, ctx);
    let c_minus = Contour::c_minus(&eps, u, ctx);
    let int_plus = quad::integrate_polyline(&integrand, &c_plus.vertices, ctx.quad_tol(), p)?;
    let int_minus = quad::integrate_polyline(&integrand, &c_minus.vertices, ctx.quad_tol(), p)?;
    let total_integral = int_plus + int_minus;

    // prefactor (M+a) i/2 * exp(u/2 - a xi/(2(M+a)))
    let osc = Complex::with_val(
        p,
        creal(ctx.float(u) / 2u32)
            - Complex::with_val(p, &xi * &creal(ctx.float(a) / (ord.clone() * 2u32))),
    )
    .exp();
    let prefactor = Complex::with_val(p, &i * &creal(ord)) / 2u32 * osc;

    Ok(head + Complex::with_val(p, &ratio * &prefactor) * total_integral)
}

/// Leading-order saddle approximation
/// sqrt(2 pi / (scale (-Phi''(z_s)))) f(z_s) exp(scale Phi(z_s)).
/// Fails with a hypothesis error unless |arg sqrt(-Phi'')| < pi/4.
pub fn laplace_estimate(
    saddle: &SaddleSolution,
    f_at_saddle: &Complex,
    scale: f64,
    ctx: &PrecisionContext,
) -> Result<LogComplex> {
    let p = ctx.bits();
    let minus_d2 = Complex::with_val(p, -saddle.second_derivative.clone());
    let root = minus_d2.sqrt();
    let arg = Float::with_val(p, root.imag()).atan2(&Float::with_val(p, root.real()));
    let quarter_pi = ctx.pi() / 4u32;
    if arg.clone().abs() >= quarter_pi {
        return Err(Error::Hypothesis(format!(
            "|arg sqrt(-Phi'')| = {} >= pi/4",
            arg.to_f64()
        )));
    }
    let amp = Complex::with_val(p, (ctx.two_pi() / ctx.float(scale), Float::new(p))).sqrt() / root
        * f_at_saddle;
    let exponent = Complex::with_val(p, &saddle.potential_value * &creal(ctx.float(scale)));
    Ok(LogComplex::from_complex(&amp).mul(&LogComplex::exp_of(&exponent)))
}

/// Integral of exp(scale * Phi(z)) along a polyline, for comparing against
/// [`laplace_estimate`].
pub fn integrate_exp_family(
    family: &Potential,
    vertices: &[Complex],
    scale: f64,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    let p = ctx.bits();
    let f = |z: &Complex| -> Result<Complex> {
        let v = family.value(z, ctx)?;
        Ok(Complex::with_val(p, &v * &creal(ctx.float(scale))).exp())
    };
    quad::integrate_polyline(&f, vertices, ctx.quad_tol(), p)
}

/// Steepest-descent polyline through a saddle: short straight seed along the
/// descent direction 1/sqrt(-Phi''), then gradient descent on Re Phi
/// (z' = -conj(Phi')) marched on both sides until Re Phi has dropped by
/// `drop`. Points are returned in path order.
pub fn descent_path(
    family: &Potential,
    saddle: &SaddleSolution,
    drop: f64,
    ctx: &PrecisionContext,
) -> Result<Vec<Complex>> {
    let p = ctx.bits();
    let minus_d2 = Complex::with_val(p, -saddle.second_derivative.clone());
    let dir = minus_d2.sqrt().recip();
    let dir = {
        let n = cabs(&dir);
        Complex::with_val(p, &dir / &creal(n))
    };
    let re0 = Float::with_val(p, saddle.potential_value.real());
    let target = re0.clone() - ctx.float(drop);
    let step = ctx.float(0.02);

    let march = |sign: f64| -> Result<Vec<Complex>> {
        let mut z = Complex::with_val(
            p,
            &saddle.z + &Complex::with_val(p, &dir * &creal(step.clone() * ctx.float(sign))),
        );
        let mut pts = vec![z.clone()];
        for _ in 0..2000 {
            let d1 = family.d1(&z, ctx)?;
            let g = cabs(&d1);
            if g.to_f64() < 1e-30 {
                break;
            }
            // unit-speed descent of Re Phi: dz = -conj(Phi') / |Phi'| ds
            let conj = Complex::with_val(
                p,
                (
                    Float::with_val(p, d1.real()),
                    -Float::with_val(p, d1.imag()),
                ),
            );
            z -= Complex::with_val(p, &conj / &creal(g)) * &creal(step.clone());
            pts.push(z.clone());
            let re = Float::with_val(p, family.value(&z, ctx)?.real());
            if re < target {
                break;
            }
        }
        Ok(pts)
    };

    let mut left = march(-1.0)?;
    let right = march(1.0)?;
    left.reverse();
    left.push(saddle.z.clone());
    left.extend(right);
    Ok(left)
}

/// Riemann sum versus integral of h(x) |exp((N + 1/2) f(x))| over [a, b]
/// with nodes a + (2k+1)/(2N+1). Rejects a boundary maximum of Re f unless
/// `boundary_max` is set (the half-Gaussian case carries an extra 1/2 in the
/// Laplace prediction, see [`laplace_boundary_prediction`]).
pub fn riemann_vs_integral<F, H>(
    f: &F,
    h: &H,
    a: f64,
    b: f64,
    n: u32,
    boundary_max: bool,
    ctx: &PrecisionContext,
) -> Result<(Float, Float, Float)>
where
    F: Fn(&Float) -> Result<Complex>,
    H: Fn(&Float) -> Result<Float>,
{
    let p = ctx.bits();
    let half_n = ctx.float(n as f64 + 0.5);

    // locate the maximum of Re f on a scan grid
    let scan = 257;
    let mut best_idx = 0usize;
    let mut best = Float::with_val(p, f64::NEG_INFINITY);
    for idx in 0..scan {
        let x = ctx.float(a + (b - a) * idx as f64 / (scan - 1) as f64);
        let v = Float::with_val(p, f(&x)?.real());
        if v > best {
            best = v;
            best_idx = idx;
        }
    }
    if (best_idx == 0 || best_idx == scan - 1) && !boundary_max {
        return Err(Error::Hypothesis(
            "Re f attains its maximum at the boundary; pass boundary_max to accept".into(),
        ));
    }

    let mut sum = Float::new(p);
    let r = 2 * n as u64 + 1;
    let mut k = 1u64;
    loop {
        if a + 2.0 * k as f64 / r as f64 > b {
            break;
        }
        let x = ctx.float(a + (2 * k + 1) as f64 / r as f64);
        let re_f = Float::with_val(p, f(&x)?.real());
        sum += h(&x)? * Float::with_val(p, re_f * &half_n).exp() / &half_n;
        k += 1;
    }

    let g = |x: &Float| -> Result<Complex> {
        let re_f = Float::with_val(p, f(x)?.real());
        Ok(creal(h(x)? * Float::with_val(p, re_f * &half_n).exp()))
    };
    let integral = Float::with_val(
        p,
        quad::integrate(&g, &ctx.float(a), &ctx.float(b), ctx.quad_tol(), p)?.real(),
    );
    let ratio = sum.clone() / &integral;
    Ok((sum, integral, ratio))
}

/// Laplace prediction for the integral above at an interior (or, with
/// `boundary`, endpoint) maximum x_crit with (Re f)''(x_crit) < 0:
/// h(x_crit) sqrt(2 pi / ((N+1/2) |Re f''|)) exp((N+1/2) Re f(x_crit)),
/// halved at a boundary maximum.
pub fn laplace_boundary_prediction<F, H>(
    f: &F,
    h: &H,
    x_crit: f64,
    n: u32,
    boundary: bool,
    ctx: &PrecisionContext,
) -> Result<Float>
where
    F: Fn(&Float) -> Result<Complex>,
    H: Fn(&Float) -> Result<Float>,
{
    let p = ctx.bits();
    let half_n = ctx.float(n as f64 + 0.5);
    let x = ctx.float(x_crit);
    let hstep = ctx.float(1e-5);
    let fm = Float::with_val(p, f(&(x.clone() - &hstep))?.real());
    let f0 = Float::with_val(p, f(&x)?.real());
    let fp = Float::with_val(p, f(&(x.clone() + &hstep))?.real());
    let second = (fm + fp - f0.clone() * 2u32) / (hstep.clone() * &hstep);
    if !second.is_sign_negative() {
        return Err(Error::Hypothesis(
            "(Re f)'' >= 0 at the stated maximum".into(),
        ));
    }
    let amp = (ctx.two_pi() / (half_n.clone() * second.abs())).sqrt();
    let mut out = h(&x)? * amp * Float::with_val(p, f0 * &half_n).exp();
    if boundary {
        out /= 2u32;
    }
    Ok(out)
}

/// Window sums at r = 2N+1 against their closed-form Laplace predictions.
#[derive(Clone, Debug)]
pub struct WindowReport {
    pub r: u64,
    /// log of the s ~ 1 window sum of |J_M|^2 (no eta'^2 factor).
    pub sum_one_log: Float,
    pub sum_half_log: Float,
    pub bulk_log: Float,
    /// log of the closed-form predictions for the two windows.
    pub pred_one_log: Float,
    pub pred_half_log: Float,
    /// empirical log-ratio (s ~ 1 over s ~ 1/2).
    pub empirical_ratio_log: Float,
    /// log of the 4 (N+1/2)^2 reference scaling.
    pub four_n_sq_log: Float,
}

/// Computes the s ~ 1 and s ~ 1/2 window sums, their Laplace predictions
///   (2N+1)^{3/2}/2 * pi^{3/2}/sqrt2 * (2 pi sqrt3)^{-3/2} (N+1/2)^2 e^{(2N+1)V/2pi}
///   (2N+1)^{3/2}   * pi^{3/2}/sqrt2 * (2 pi sqrt3)^{-3/2} (1/4)     e^{(2N+1)V/2pi}
/// and the ratio diagnostics.
pub fn window_dominance_report(
    r: u64,
    zeta: f64,
    delta: f64,
    ctx: &PrecisionContext,
) -> Result<WindowReport> {
    let tv = tv_invariant(r, zeta, delta, ctx)?;
    let n = (r - 1) / 2;
    let p = ctx.bits();
    let eta = eta_prime(r, ctx)?;
    let log_eta2 = eta.ln() * 2u32;
    let sum_one = tv.window_sums.s_near_one.log_mag().clone() - &log_eta2;
    let sum_half = tv.window_sums.s_near_half.log_mag().clone() - &log_eta2;
    let bulk = tv.window_sums.bulk.log_mag().clone() - &log_eta2;

    let vol = crate::jones::fig8_volume(ctx);
    let half_n = ctx.float(n as f64 + 0.5);
    let rf = ctx.float(r);
    let growth = Float::with_val(p, rf.clone() * &vol) / ctx.two_pi();
    let common = Float::with_val(p, rf.ln() * 1.5f64) + Float::with_val(p, ctx.pi().ln() * 1.5f64)
        - Float::with_val(p, 2).ln() / 2u32
        - Float::with_val(p, (ctx.two_pi() * ctx.float(3).sqrt()).ln() * 1.5f64)
        + &growth;
    let pred_one = common.clone() - Float::with_val(p, 2).ln() + half_n.clone().ln() * 2u32;
    let pred_half = common - Float::with_val(p, 4).ln();

    let four_n_sq = ctx.float(4).ln() + half_n.ln() * 2u32;
    Ok(WindowReport {
        r,
        empirical_ratio_log: sum_one.clone() - &sum_half,
        sum_one_log: sum_one,
        sum_half_log: sum_half,
        bulk_log: bulk,
        pred_one_log: pred_one,
        pred_half_log: pred_half,
        four_n_sq_log: four_n_sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{solve_saddle_quadratic, FamilyKind};

    fn ctx() -> PrecisionContext {
        PrecisionContext::standard()
    }

    #[test]
    fn contour_lengths_bounded() {
        let c = ctx();
        let eps = c.float(0.1);
        for u in [0.0, 0.3, 0.9] {
            let plus = Contour::c_plus(&eps, u, &c);
            let minus = Contour::c_minus(&eps, u, &c);
            assert!(plus.length(&c).to_f64() < 8.0);
            assert!(minus.length(&c).to_f64() < 8.0);
            assert_eq!(plus.vertices.len(), 4);
            assert_eq!(minus.vertices.len(), 4);
        }
    }

    #[test]
    fn laplace_gaussian_sanity() {
        // Phi(z) = -z^2/2 on the real axis, f = 1, scale = 100:
        // integral over a long real segment ~ sqrt(2 pi / 100).
        let c = ctx();
        let p = 256;
        // hand-made saddle at 0 with Phi'' = -1
        let saddle = SaddleSolution {
            z: c.complex_zero(),
            omega: c.complex(1.0, 0.0),
            potential_value: c.complex_zero(),
            second_derivative: c.complex(-1.0, 0.0),
            residual: c.float(0),
            branch: crate::potentials::Branch::MinusRoot,
        };
        let est = laplace_estimate(&saddle, &c.complex(1.0, 0.0), 100.0, &c).unwrap();
        let expect = (c.two_pi() / c.float(100)).sqrt();
        let got = est.to_complex();
        let dev = cabs(&Complex::with_val(p, got - creal(expect.clone())));
        assert!(dev < expect * 1e-4, "dev = {dev}");
    }

    #[test]
    fn laplace_hypothesis_failure() {
        let c = ctx();
        // -Phi'' on the negative real axis: arg sqrt = pi/2 > pi/4
        let saddle = SaddleSolution {
            z: c.complex_zero(),
            omega: c.complex(1.0, 0.0),
            potential_value: c.complex_zero(),
            second_derivative: c.complex(1.0, 0.0),
            residual: c.float(0),
            branch: crate::potentials::Branch::MinusRoot,
        };
        assert!(matches!(
            laplace_estimate(&saddle, &c.complex(1.0, 0.0), 50.0, &c),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn riemann_interior_maximum_converges() {
        let c = ctx();
        let f = |x: &Float| -> Result<Complex> {
            let d = x.clone() - Float::with_val(256, 0.4f64);
            Ok(creal(-(d.clone() * d)))
        };
        let h = |_x: &Float| -> Result<Float> { Ok(c.float(1)) };
        let (_, _, r100) = riemann_vs_integral(&f, &h, 0.0, 1.0, 100, false, &c).unwrap();
        let (_, _, r400) = riemann_vs_integral(&f, &h, 0.0, 1.0, 400, false, &c).unwrap();
        let d100 = (r100 - 1u32).abs().to_f64();
        let d400 = (r400 - 1u32).abs().to_f64();
        assert!(d400 < d100, "d100 = {d100}, d400 = {d400}");
    }

    #[test]
    fn riemann_boundary_needs_flag() {
        let c = ctx();
        let f = |x: &Float| -> Result<Complex> {
            let d = Float::with_val(256, 1.0f64) - x;
            Ok(creal(-(d.clone() * d)))
        };
        let h = |_x: &Float| -> Result<Float> { Ok(c.float(1)) };
        assert!(matches!(
            riemann_vs_integral(&f, &h, 0.0, 1.0, 50, false, &c),
            Err(Error::Hypothesis(_))
        ));
        // with the flag, the integral matches half the interior Laplace value
        let (_, integral, _) = riemann_vs_integral(&f, &h, 0.0, 1.0, 200, true, &c).unwrap();
        let pred = laplace_boundary_prediction(&f, &h, 1.0, 200, true, &c).unwrap();
        let rel = ((integral.clone() - &pred) / integral).abs().to_f64();
        assert!(rel < 0.02, "rel = {rel}");
    }

    #[test]
    fn riemann_h_linearity() {
        let c = ctx();
        let f = |x: &Float| -> Result<Complex> {
            let d = x.clone() - Float::with_val(256, 0.5f64);
            Ok(creal(-(d.clone() * d)))
        };
        let h1 = |_x: &Float| -> Result<Float> { Ok(c.float(1)) };
        let h2 = |_x: &Float| -> Result<Float> { Ok(c.float(2)) };
        let (s1, i1, r1) = riemann_vs_integral(&f, &h1, 0.0, 1.0, 60, false, &c).unwrap();
        let (s2, i2, r2) = riemann_vs_integral(&f, &h2, 0.0, 1.0, 60, false, &c).unwrap();
        assert!((s2 - s1 * 2u32).abs() < 1e-55);
        assert!((i2 - i1 * 2u32).abs() < 1e-55);
        assert!((r2 - r1).abs() < 1e-55);
    }

    #[test]
    fn descent_path_from_limit_saddle_tracks_real_axis() {
        let c = ctx();
        let fam = Potential::new(FamilyKind::LimitS { s: 1.0 }).unwrap();
        let saddle = solve_saddle_quadratic(FamilyKind::LimitS { s: 1.0 }, &c).unwrap();
        let path = descent_path(&fam, &saddle, 0.15, &c).unwrap();
        assert!(path.len() > 10);
        for z in &path {
            // the s = 1 descent path is the real segment
            assert!(Float::with_val(256, z.imag()).abs().to_f64() < 1e-6);
            let re = Float::with_val(256, z.real()).to_f64();
            assert!((0.0..=1.0).contains(&re));
        }
    }
}
