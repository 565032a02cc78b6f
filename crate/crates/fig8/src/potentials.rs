//! Potential functions, their saddle points, and the geometric quantities
//! carried by the asymptotic expansions.
//!
//! Five families share one evaluation engine:
//! - fixed shift: Phi_M(z) = (1/xi)[Li2(e^{u-(z+y)xi}) - Li2(e^{u+(z-y)xi})] - uz,
//!   y = a/(M+a), including the a = 0 limit Phi_0;
//! - half-odd root: Phi~_M(z) with the 2 pi i (1 - M/(N+1/2)) z linear term,
//!   and its limit in the ratio s;
//! - shifted window: chi_M(x) and its limit, the s ~ 1/2 analogue.
//!
//! All first and second derivatives use d Li2(e^mu)/d mu = -log(1 - e^mu); the
//! closures are exact, not finite differences.

use crate::dilog::{dilog, fig8_volume};
use crate::error::{Error, Result};
use crate::jones::u_max;
use crate::prec::{cabs, cpx, creal, PrecisionContext};
use rug::{Complex, Float};

// ---------------------------------------------------------------------------
// scalar functions of the deformation u
// ---------------------------------------------------------------------------

/// phi(u) = arccosh(cosh u - 1/2) on the branch continuous in u with
/// phi(0) = -5 pi i / 3.
pub fn phi_u(u: f64, ctx: &PrecisionContext) -> Result<Complex> {
    if !(0.0..u_max()).contains(&u) {
        return Err(Error::Domain(format!(
            "u = {u} outside [0, log((3+sqrt5)/2))"
        )));
    }
    let p = ctx.bits();
    let w = ctx.float(u).cosh() - ctx.float(0.5);
    // w in [1/2, 1): arccosh is purely imaginary; pick -i (2 pi - arccos w).
    let alpha = w.acos();
    let im = -(ctx.two_pi() - alpha);
    Ok(Complex::with_val(p, (Float::new(p), im)))
}

/// S(u) = Li2(e^{u - phi(u)}) - Li2(e^{u + phi(u)}) - u phi(u), evaluated on
/// the same phi branch. The growth exponent used by the asymptotic formulas
/// is Phi_0 at the growth saddle, which equals -S(u)/xi on this branch; see
/// [`solve_saddle_quadratic`].
pub fn chern_simons_s(u: f64, ctx: &PrecisionContext) -> Result<Complex> {
    let p = ctx.bits();
    let phi = phi_u(u, ctx)?;
    let uu = creal(ctx.float(u));
    let arg_minus = Complex::with_val(p, &uu - &phi).exp();
    let arg_plus = Complex::with_val(p, &uu + &phi).exp();
    let li_minus = dilog(&arg_minus, ctx)?;
    let li_plus = dilog(&arg_plus, ctx)?;
    Ok(li_minus - li_plus - Complex::with_val(p, &uu * &phi))
}

/// Twisted Reidemeister torsion
/// T(u) = 2 / sqrt((e^u + e^{-u} + 1)(e^u + e^{-u} - 3)), principal root.
/// The radicand is negative on the whole u-interval, so T is purely
/// imaginary with |T(0)| = 2/sqrt(3).
pub fn torsion_t(u: f64, ctx: &PrecisionContext) -> Result<Complex> {
    if !(0.0..u_max()).contains(&u) {
        return Err(Error::Domain(format!(
            "u = {u} outside [0, log((3+sqrt5)/2))"
        )));
    }
    let p = ctx.bits();
    let two_cosh = ctx.float(u).cosh() * 2u32;
    let radicand = (two_cosh.clone() + 1u32) * (two_cosh - 3u32);
    if radicand.clone().abs() < 1e-30 {
        return Err(Error::Domain(
            "torsion pole at the boundary of the u-interval".into(),
        ));
    }
    let root = creal(radicand).sqrt();
    Ok(Complex::with_val(p, (2, 0)) / root)
}

// ---------------------------------------------------------------------------
// potential families
// ---------------------------------------------------------------------------

/// Which potential family to build.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyKind {
    /// Phi_M at deformation u with fixed shift a (a = 0 gives the limit Phi_0).
    FixedA { u: f64, a: f64, m: u32 },
    /// Phi~^(s)_M at the half-odd root, s' = M/(N + 1/2).
    SFamily { m: u32, n: u32 },
    /// chi^(s)_M, the shifted window family, s' = M/(N + 1/2).
    HalfFamily { m: u32, n: u32 },
    /// Limit of the half-odd family at ratio s.
    LimitS { s: f64 },
    /// Limit of the shifted window family at ratio s.
    LimitHalf { s: f64 },
}

/// A potential with exact value / first / second derivative closures.
#[derive(Clone, Debug)]
pub struct Potential {
    kind: FamilyKind,
}

impl Potential {
    pub fn new(kind: FamilyKind) -> Result<Self> {
        match kind {
            FamilyKind::FixedA { u, a, m } => {
                if !(0.0..u_max()).contains(&u) || a < 0.0 || m < 1 {
                    return Err(Error::Domain(format!("bad fixed-a family ({u}, {a}, {m})")));
                }
            }
            FamilyKind::SFamily { m, n } | FamilyKind::HalfFamily { m, n } => {
                if m < 1 || m > n {
                    return Err(Error::Domain(format!("need 1 <= M <= N, got ({m}, {n})")));
                }
            }
            FamilyKind::LimitS { s } => {
                if !(0.6..1.4).contains(&s) {
                    return Err(Error::Domain(format!(
                        "limit family ratio s = {s} out of range"
                    )));
                }
            }
            FamilyKind::LimitHalf { s } => {
                if !(0.25..0.75).contains(&s) {
                    return Err(Error::Domain(format!(
                        "half-window ratio s = {s} out of range"
                    )));
                }
            }
        }
        Ok(Self { kind })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    /// The ratio parameter of the family, where one exists.
    fn s_param(&self, ctx: &PrecisionContext) -> Option<Float> {
        match self.kind {
            FamilyKind::SFamily { m, n } | FamilyKind::HalfFamily { m, n } => {
                Some(ctx.float(m) / ctx.float(n as f64 + 0.5))
            }
            FamilyKind::LimitS { s } | FamilyKind::LimitHalf { s } => Some(ctx.float(s)),
            FamilyKind::FixedA { .. } => None,
        }
    }

    /// The two Li2 exponents (g-minus, g-plus) at z, plus the scale factor
    /// in front of the bracket and the derivative step of each exponent.
    fn exponents(
        &self,
        z: &Complex,
        ctx: &PrecisionContext,
    ) -> (Complex, Complex, Complex, Complex) {
        let p = ctx.bits();
        let two_pi_i = cpx(Float::new(p), ctx.two_pi());
        match self.kind {
            FamilyKind::FixedA { u, a, m } => {
                let xi = cpx(ctx.float(u), ctx.two_pi());
                let y = creal(ctx.float(a) / (ctx.float(m) + ctx.float(a)));
                let uu = creal(ctx.float(u));
                let g1 = Complex::with_val(
                    p,
                    &uu - &Complex::with_val(p, Complex::with_val(p, z + &y) * &xi),
                );
                let g2 = Complex::with_val(
                    p,
                    &uu + &Complex::with_val(p, Complex::with_val(p, z - &y) * &xi),
                );
                (g1, g2, xi.clone(), xi)
            }
            FamilyKind::SFamily { .. } | FamilyKind::LimitS { .. } => {
                let s = creal(self.s_param(ctx).unwrap());
                let g1 = Complex::with_val(p, &two_pi_i * &Complex::with_val(p, &s - z));
                let g2 = Complex::with_val(p, &two_pi_i * &Complex::with_val(p, &s + z));
                (g1, g2, two_pi_i.clone(), two_pi_i)
            }
            FamilyKind::HalfFamily { .. } | FamilyKind::LimitHalf { .. } => {
                let s = creal(self.s_param(ctx).unwrap());
                let half = creal(ctx.float(0.5));
                let sigma = Complex::with_val(p, &s - &half);
                let zh = Complex::with_val(p, z + &half);
                let g1 = Complex::with_val(p, &two_pi_i * &Complex::with_val(p, &sigma - &zh));
                let g2 = Complex::with_val(p, &two_pi_i * &Complex::with_val(p, &sigma + &zh));
                (g1, g2, two_pi_i.clone(), two_pi_i)
            }
        }
    }

    /// Family value at z.
    pub fn value(&self, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
        let p = ctx.bits();
        let (g1, g2, scale, _) = self.exponents(z, ctx);
        let li1 = dilog(&g1.exp(), ctx)?;
        let li2v = dilog(&g2.exp(), ctx)?;
        let bracket = Complex::with_val(p, li1 - li2v) / scale;
        Ok(match self.kind {
            FamilyKind::FixedA { u, .. } => {
                bracket - Complex::with_val(p, z * &creal(ctx.float(u)))
            }
            FamilyKind::SFamily { .. } | FamilyKind::LimitS { .. } => {
                let s = self.s_param(ctx).unwrap();
                let lin = cpx(Float::new(p), ctx.two_pi() * (ctx.float(1) - s));
                bracket + Complex::with_val(p, &lin * z)
            }
            FamilyKind::HalfFamily { .. } | FamilyKind::LimitHalf { .. } => bracket,
        })
    }

    /// First derivative: log(1 - e^{g1}) + log(1 - e^{g2}) plus the family's
    /// linear term derivative.
    pub fn d1(&self, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
        let p = ctx.bits();
        let (g1, g2, _, _) = self.exponents(z, ctx);
        let one = Complex::with_val(p, (1, 0));
        let l1 = Complex::with_val(p, &one - &g1.exp()).ln();
        let l2 = Complex::with_val(p, &one - &g2.exp()).ln();
        let logs = Complex::with_val(p, l1 + l2);
        Ok(match self.kind {
            FamilyKind::FixedA { u, .. } => logs - creal(ctx.float(u)),
            FamilyKind::SFamily { .. } | FamilyKind::LimitS { .. } => {
                let s = self.s_param(ctx).unwrap();
                logs + cpx(Float::new(p), ctx.two_pi() * (ctx.float(1) - s))
            }
            FamilyKind::HalfFamily { .. } | FamilyKind::LimitHalf { .. } => logs,
        })
    }

    /// Second derivative: step * (e^{g1}/(1-e^{g1}) - e^{g2}/(1-e^{g2})),
    /// step = xi or 2 pi i.
    pub fn d2(&self, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
        let p = ctx.bits();
        let (g1, g2, _, step) = self.exponents(z, ctx);
        let one = Complex::with_val(p, (1, 0));
        let e1 = g1.exp();
        let e2 = g2.exp();
        let t1 = Complex::with_val(p, &e1 / &Complex::with_val(p, &one - &e1));
        let t2 = Complex::with_val(p, &e2 / &Complex::with_val(p, &one - &e2));
        Ok(Complex::with_val(p, t1 - t2) * step)
    }
}

// ---------------------------------------------------------------------------
// saddle points
// ---------------------------------------------------------------------------

/// Which quadratic root (plus continuation data) a saddle came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Growth branch: positive real part of the potential (z(1) = 5/6).
    MinusRoot,
    /// Mirror branch: the conjugate root with negative real part.
    PlusRoot,
    /// Real critical point of the window family.
    HalfReal,
}

/// A solved saddle: location, omega = e^{2 pi i z} (or e^{z xi}), potential
/// value, exact second derivative, residual |d Phi/dz| and the branch tag.
#[derive(Clone, Debug)]
pub struct SaddleSolution {
    pub z: Complex,
    pub omega: Complex,
    pub potential_value: Complex,
    pub second_derivative: Complex,
    pub residual: Float,
    pub branch: Branch,
}

fn newton_refine(
    family: &Potential,
    z0: &Complex,
    ctx: &PrecisionContext,
) -> Result<(Complex, Float)> {
    let p = ctx.bits();
    let mut z = Complex::with_val(p, z0);
    for _ in 0..12 {
        let d1 = family.d1(&z, ctx)?;
        let d2 = family.d2(&z, ctx)?;
        if cabs(&d2).to_f64() < 1e-8 {
            return Err(Error::Branch(
                "degenerate second derivative during refinement".into(),
            ));
        }
        let step = Complex::with_val(p, &d1 / &d2);
        z -= &step;
        if cabs(&step).to_f64() < 1e-60 {
            break;
        }
    }
    let residual = cabs(&family.d1(&z, ctx)?);
    Ok((z, residual))
}

/// omega candidates: both roots of the family's quadratic saddle equation.
fn quadratic_roots(kind: FamilyKind, ctx: &PrecisionContext) -> Result<(Complex, Complex)> {
    let p = ctx.bits();
    match kind {
        FamilyKind::FixedA { u, a, m } => {
            // alpha B w^2 - (alpha^2 + B^2 - alpha B^2) w + alpha B = 0,
            // alpha = e^u, B = e^{a xi/(M+a)}
            let xi = cpx(ctx.float(u), ctx.two_pi());
            let alpha = creal(ctx.float(u).exp());
            let y = creal(ctx.float(a) / (ctx.float(m) + ctx.float(a)));
            let big_b = Complex::with_val(p, &y * &xi).exp();
            let ab = Complex::with_val(p, &alpha * &big_b);
            let b2 = Complex::with_val(p, &big_b * &big_b);
            let c =
                Complex::with_val(p, &alpha * &alpha) + &b2 - Complex::with_val(p, &alpha * &b2);
            let disc = Complex::with_val(p, &c * &c) - Complex::with_val(p, &ab * &ab) * 4u32;
            let sq = disc.sqrt();
            let w1 = Complex::with_val(p, &c - &sq) / (ab * 2u32);
            let w2 = w1.clone().recip(); // product of roots is 1
            Ok((w1, w2))
        }
        FamilyKind::SFamily { .. } | FamilyKind::LimitS { .. } => {
            let fam = Potential::new(kind)?;
            let s = fam.s_param(ctx).unwrap();
            let i = ctx.i();
            let beta = Complex::with_val(p, &i * &creal(ctx.two_pi() * &s)).exp();
            let c = Complex::with_val(p, &beta * &beta) + Complex::with_val(p, (1, 0)) - &beta;
            let disc = Complex::with_val(p, &c * &c) - Complex::with_val(p, &beta * &beta) * 4u32;
            let sq = disc.sqrt();
            let w1 = Complex::with_val(p, &c - &sq) / (beta * 2u32);
            let w2 = w1.clone().recip();
            Ok((w1, w2))
        }
        _ => Err(Error::Domain(
            "quadratic saddle is defined for the fixed-a and s families".into(),
        )),
    }
}

/// Saddle locations from omega, restricted to the open contour strip
/// Re z in (0, 1). The log sheet matters for the fixed-a family (shifts by
/// 2 pi i / xi move the real part by almost 1), so several sheets are tried.
fn z_candidates(kind: FamilyKind, omega: &Complex, ctx: &PrecisionContext) -> Vec<Complex> {
    let p = ctx.bits();
    let ln = omega.clone().ln();
    match kind {
        FamilyKind::FixedA { u, .. } => {
            let xi = cpx(ctx.float(u), ctx.two_pi());
            let two_pi_i = cpx(Float::new(p), ctx.two_pi());
            let mut out = Vec::new();
            for k in -2i32..=2 {
                let zc = Complex::with_val(
                    p,
                    &ln + &Complex::with_val(p, &two_pi_i * &creal(ctx.float(k))),
                ) / &xi;
                let re = Float::with_val(p, zc.real()).to_f64();
                if (0.02..=0.98).contains(&re) {
                    out.push(zc);
                }
            }
            out
        }
        _ => {
            let two_pi_i = cpx(Float::new(p), ctx.two_pi());
            let mut z = Complex::with_val(p, &ln / &two_pi_i);
            if Float::with_val(p, z.real()).to_f64() < 0.0 {
                z += 1u32;
            }
            vec![z]
        }
    }
}

/// Solve the quadratic saddle equation of a fixed-a or s family and return
/// both branches, growth first. The growth branch is selected by maximal
/// real part of the potential; it must be positive.
pub fn solve_saddle_roots(
    kind: FamilyKind,
    ctx: &PrecisionContext,
) -> Result<(SaddleSolution, SaddleSolution)> {
    let family = Potential::new(kind)?;
    let (w1, w2) = quadratic_roots(kind, ctx)?;
    let mut refined: Vec<SaddleSolution> = Vec::new();
    for omega in [w1, w2] {
        for z0 in z_candidates(kind, &omega, ctx) {
            // screen out branch-cut impostors before refining
            let d1 = family.d1(&z0, ctx)?;
            if cabs(&d1).to_f64() > 1e-3 {
                continue;
            }
            let (z, residual) = newton_refine(&family, &z0, ctx)?;
            let value = family.value(&z, ctx)?;
            let d2 = family.d2(&z, ctx)?;
            refined.push(SaddleSolution {
                omega: omega.clone(),
                z,
                potential_value: value,
                second_derivative: d2,
                residual,
                branch: Branch::PlusRoot, // retagged below
            });
        }
    }
    // collapse duplicates picked up on neighboring log sheets
    let mut distinct: Vec<SaddleSolution> = Vec::new();
    for cand in refined {
        let dup = distinct.iter().any(|s| {
            cabs(&Complex::with_val(ctx.bits(), &s.z - &cand.z)).to_f64() < 1e-18
                && cabs(&Complex::with_val(
                    ctx.bits(),
                    &s.potential_value - &cand.potential_value,
                ))
                .to_f64()
                    < 1e-18
        });
        if !dup {
            distinct.push(cand);
        }
    }
    if distinct.len() < 2 {
        return Err(Error::Branch(format!(
            "expected two principal-branch saddles in the strip, found {}",
            distinct.len()
        )));
    }
    distinct.sort_by(|a, b| {
        let ra = Float::with_val(64, a.potential_value.real());
        let rb = Float::with_val(64, b.potential_value.real());
        rb.partial_cmp(&ra).unwrap()
    });
    let mut growth = distinct.remove(0);
    growth.branch = Branch::MinusRoot;
    let mirror = distinct.remove(0);
    if *growth.potential_value.real() <= 0f64 {
        return Err(Error::Branch(
            "no saddle branch with positive real potential".into(),
        ));
    }
    Ok((growth, mirror))
}

/// The growth saddle of a fixed-a or s family.
pub fn solve_saddle_quadratic(kind: FamilyKind, ctx: &PrecisionContext) -> Result<SaddleSolution> {
    Ok(solve_saddle_roots(kind, ctx)?.0)
}

/// Real saddle x of the window family on [0, 5/12]:
/// |sin(A + B) sin(-A + B)| = 1/4 with A = pi (x + 1/2), B = pi (s' - 1/2).
/// Solved as sin^2 A - sin^2 B = 1/4 (the product is negative throughout the
/// window), bisection bracket then Newton.
pub fn solve_saddle_half(kind: FamilyKind, ctx: &PrecisionContext) -> Result<SaddleSolution> {
    let family = Potential::new(kind)?;
    let s = match kind {
        FamilyKind::HalfFamily { .. } | FamilyKind::LimitHalf { .. } => {
            family.s_param(ctx).unwrap()
        }
        _ => {
            return Err(Error::Domain(
                "half-window saddle needs a window family".into(),
            ))
        }
    };
    let p = ctx.bits();
    let half = ctx.float(0.5);
    let b_angle = ctx.pi() * (s.clone() - &half);
    let sin_b2 = {
        let sb = b_angle.clone().sin();
        sb.clone() * sb
    };
    let f = |x: &Float| -> Float {
        let a_angle = ctx.pi() * (x.clone() + &half);
        let sa = a_angle.sin();
        sa.clone() * sa - &sin_b2 - ctx.float(0.25)
    };
    let mut lo = ctx.float(0);
    let mut hi = ctx.float(5) / 12u32;
    let (flo, fhi) = (f(&lo), f(&hi));
    if flo.clone() * fhi > 0u32 {
        return Err(Error::NoRoot(format!(
            "no sign change on [0, 5/12] at s = {}",
            s.to_f64()
        )));
    }
    for _ in 0..80 {
        let mid = Float::with_val(p, &lo + &hi) / 2u32;
        if f(&mid).is_sign_positive() == flo.is_sign_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton: f'(x) = pi sin(2A)
    let mut x = Float::with_val(p, &lo + &hi) / 2u32;
    for _ in 0..8 {
        let a_angle = ctx.pi() * (x.clone() + &half);
        let fp = ctx.pi() * Float::with_val(p, a_angle * 2u32).sin();
        x -= f(&x) / fp;
    }

    let a_angle = ctx.pi() * (x.clone() + &half);
    let prod = Float::with_val(p, a_angle.clone() + &b_angle).sin()
        * Float::with_val(p, b_angle.clone() - &a_angle).sin();
    let residual = (prod.abs() - ctx.float(0.25)).abs();

    let z = creal(x.clone());
    let value = family.value(&z, ctx)?;
    let d2 = family.d2(&z, ctx)?;
    let omega = {
        let i = ctx.i();
        Complex::with_val(p, &i * &creal(ctx.two_pi() * &x)).exp()
    };
    Ok(SaddleSolution {
        z,
        omega,
        potential_value: value,
        second_derivative: d2,
        residual,
        branch: Branch::HalfReal,
    })
}

// ---------------------------------------------------------------------------
// the window functions Theta, Xi, Psi, Upsilon
// ---------------------------------------------------------------------------

/// Theta(s) = Phi~^(s)_0 at the growth saddle z(s); Theta(1) = Vol / 2 pi.
pub fn theta_s(s: f64, ctx: &PrecisionContext) -> Result<Complex> {
    let saddle = solve_saddle_quadratic(FamilyKind::LimitS { s }, ctx)?;
    Ok(saddle.potential_value)
}

/// Xi(s) = 2 pi i (e^{2 pi i z(s)} - e^{-2 pi i z(s)}), the second-derivative
/// magnitude carrier of the s ~ 1 expansion; Xi(1) = 2 pi sqrt(3).
///
/// At the growth saddle the exact second derivative is the negative of this,
/// so Xi(s) = -Phi~''(z(s)); the asymptotic formulas only consume sqrt(Xi),
/// which is exactly the sqrt(-Phi'') the saddle-point theorem wants.
pub fn xi_s(s: f64, ctx: &PrecisionContext) -> Result<Complex> {
    let saddle = solve_saddle_quadratic(FamilyKind::LimitS { s }, ctx)?;
    Ok(-saddle.second_derivative)
}

/// Psi(s) = Re chi^(s)_0(x(s)); Psi(1/2) = Vol / 2 pi.
pub fn psi_s(s: f64, ctx: &PrecisionContext) -> Result<Float> {
    let saddle = solve_saddle_half(FamilyKind::LimitHalf { s }, ctx)?;
    Ok(Float::with_val(ctx.bits(), saddle.potential_value.real()))
}

/// Upsilon(s) = 2 pi i e^{2 pi i (s - 1/2)} (e^{-2 pi i x(s)} - e^{2 pi i x(s)});
/// Upsilon(1/2) = 2 pi sqrt(3).
pub fn upsilon_s(s: f64, ctx: &PrecisionContext) -> Result<Complex> {
    let p = ctx.bits();
    let saddle = solve_saddle_half(FamilyKind::LimitHalf { s }, ctx)?;
    let x = Float::with_val(p, saddle.z.real());
    let i = ctx.i();
    let phase = Complex::with_val(p, &i * &creal(ctx.two_pi() * ctx.float(s - 0.5))).exp();
    let wx = Complex::with_val(p, &i * &creal(ctx.two_pi() * &x)).exp();
    let diff = wx.clone().recip() - wx;
    let two_pi_i = cpx(Float::new(p), ctx.two_pi());
    Ok(Complex::with_val(p, &two_pi_i * &phase) * diff)
}

/// H(x, y) = Li2(1/(xy)) - Li2(x/y) + log x log y (principal logs).
pub fn h_function(x: &Complex, y: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let p = ctx.bits();
    let xy = Complex::with_val(p, x * y);
    let li1 = dilog(&xy.recip(), ctx)?;
    let li2v = dilog(&Complex::with_val(p, x / y), ctx)?;
    let logs = Complex::with_val(p, x.clone().ln() * y.clone().ln());
    Ok(li1 - li2v + logs)
}

/// One row of the finite-shift comparison table.
#[derive(Clone, Debug)]
pub struct DiffRow {
    pub m: u32,
    /// |(M+a)(Phi_M(z) - Phi_0(z)) - a [log(1-e^{u-z xi}) - log(1-e^{u+z xi})]|
    pub first_dev: Float,
    /// |(M+a)(Phi_0(z_M) - Phi_0(z_0))|
    pub second_mag: Float,
}

/// Tabulates the two finite-shift limits at a fixed probe point z, both of
/// which must decay toward 0 as M grows (identically 0 at a = 0).
pub fn diff_lemma_checks(
    u: f64,
    a: f64,
    z_probe: &Complex,
    m_list: &[u32],
    ctx: &PrecisionContext,
) -> Result<Vec<DiffRow>> {
    let p = ctx.bits();
    let xi = cpx(ctx.float(u), ctx.two_pi());
    let uu = creal(ctx.float(u));
    let limit = {
        let one = Complex::with_val(p, (1, 0));
        let zxi = Complex::with_val(p, z_probe * &xi);
        let l1 = Complex::with_val(p, &one - &Complex::with_val(p, &uu - &zxi).exp()).ln();
        let l2 = Complex::with_val(p, &one - &Complex::with_val(p, &uu + &zxi).exp()).ln();
        Complex::with_val(p, l1 - l2) * &creal(ctx.float(a))
    };
    let base = Potential::new(FamilyKind::FixedA { u, a: 0.0, m: 1 })?;
    let z0 = solve_saddle_quadratic(FamilyKind::FixedA { u, a: 0.0, m: 1 }, ctx)?;
    let mut rows = Vec::new();
    for &m in m_list {
        let fam = Potential::new(FamilyKind::FixedA { u, a, m })?;
        let ord = creal(ctx.float(m) + ctx.float(a));
        let dv = Complex::with_val(p, fam.value(z_probe, ctx)? - base.value(z_probe, ctx)?);
        let first_dev = cabs(&Complex::with_val(
            p,
            Complex::with_val(p, &dv * &ord) - &limit,
        ));
        let zm = solve_saddle_quadratic(FamilyKind::FixedA { u, a, m }, ctx)?;
        let dv0 = Complex::with_val(p, base.value(&zm.z, ctx)? - base.value(&z0.z, ctx)?);
        let second_mag = cabs(&Complex::with_val(p, dv0 * &ord));
        rows.push(DiffRow {
            m,
            first_dev,
            second_mag,
        });
    }
    Ok(rows)
}

/// Volume, torsion magnitude and the second-derivative constant.
#[derive(Clone, Debug)]
pub struct GeometricConstants {
    pub vol: Float,
    pub torsion_mag: Float,
    pub xi_at_1: Float,
}

impl GeometricConstants {
    pub fn compute(ctx: &PrecisionContext) -> Self {
        let vol = fig8_volume(ctx);
        let torsion_mag = ctx.float(2) / ctx.float(3).sqrt();
        let xi_at_1 = ctx.two_pi() * ctx.float(3).sqrt();
        Self {
            vol,
            torsion_mag,
            xi_at_1,
        }
    }
}
