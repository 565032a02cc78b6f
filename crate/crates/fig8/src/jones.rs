//! Exact colored Jones polynomial of the figure-eight knot and the
//! term-magnitude analysis of its Habiro sum.

use crate::error::{Error, Result};
use crate::logcx::LogComplex;
use crate::prec::{cpx, creal, PrecisionContext};
use crate::{dilog, lobachevsky};
use rug::{Complex, Float};

/// Maximum deformation: u < log((3 + sqrt 5)/2).
pub fn u_max() -> f64 {
    ((3.0 + 5.0f64.sqrt()) / 2.0).ln()
}

/// Evaluation-point parameters: color M, shift a and deformation u, with
/// q = exp((2 pi i + u) / (M + a)).
#[derive(Clone, Debug)]
pub struct RootSpec {
    m: u32,
    a: f64,
    u: f64,
    n: Option<u32>,
}

impl RootSpec {
    pub fn new(m: u32, a: f64, u: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::Domain("color M must be >= 1".into()));
        }
        if a < 0.0 || !a.is_finite() {
            return Err(Error::Domain(format!("shift a = {a} must be >= 0")));
        }
        if !(0.0..u_max()).contains(&u) {
            return Err(Error::Domain(format!(
                "deformation u = {u} outside [0, log((3+sqrt5)/2))"
            )));
        }
        Ok(Self { m, a, u, n: None })
    }

    /// Kashaev point: q = e^{(2 pi i + u)/N} for color M <= N (a = N - M).
    pub fn kashaev(m: u32, n: u32) -> Result<Self> {
        if n < m {
            return Err(Error::Domain(format!("need N >= M, got M={m}, N={n}")));
        }
        let mut s = Self::new(m, (n - m) as f64, 0.0)?;
        s.n = Some(n);
        Ok(s)
    }

    /// Half-odd root: q = e^{2 pi i/(N + 1/2)}, i.e. a = N - M + 1/2.
    pub fn half_odd(m: u32, n: u32) -> Result<Self> {
        if n < m {
            return Err(Error::Domain(format!("need N >= M, got M={m}, N={n}")));
        }
        let mut s = Self::new(m, (n - m) as f64 + 0.5, 0.0)?;
        s.n = Some(n);
        Ok(s)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn n(&self) -> Option<u32> {
        self.n
    }

    /// M + a.
    pub fn order(&self, ctx: &PrecisionContext) -> Float {
        ctx.float(self.m) + ctx.float(self.a)
    }

    /// Limiting ratio s = M/(N + 1/2) for half-odd specs.
    pub fn s_ratio(&self, ctx: &PrecisionContext) -> Option<Float> {
        self.n
            .map(|n| ctx.float(self.m) / ctx.float(n as f64 + 0.5))
    }

    /// xi = 2 pi i + u.
    pub fn xi(&self, ctx: &PrecisionContext) -> Complex {
        cpx(ctx.float(self.u), ctx.two_pi())
    }

    /// gamma = (2 pi - i u) / (2 (M + a)).
    pub fn gamma(&self, ctx: &PrecisionContext) -> Complex {
        let denom = self.order(ctx) * 2u32;
        cpx(ctx.two_pi() / &denom, ctx.float(-self.u) / &denom)
    }

    /// q = exp(xi / (M + a)).
    pub fn q(&self, ctx: &PrecisionContext) -> Complex {
        let ord = self.order(ctx);
        (self.xi(ctx) / &creal(ord)).exp()
    }
}

/// Exact value of the Habiro sum together with its log form.
#[derive(Clone, Debug)]
pub struct JonesValue {
    pub value: Complex,
    pub log_form: LogComplex,
    pub term_count: u32,
}

/// Working precision policy for exact Jones sums: at least
/// max(128, 2 M + 64) bits regardless of the requested output precision.
pub fn jones_min_bits(m: u32) -> u32 {
    (2 * m + 64).max(128)
}

/// J_M(4_1; q) = sum_{k=0}^{M-1} q^{-kM} prod_{l=1}^{k} (1 - q^{M-l})(1 - q^{M+l}),
/// evaluated left to right with an incremental product update. Internal
/// precision is elevated to the jones_min_bits policy and the result rounded
/// back to the context precision.
pub fn colored_jones_exact(spec: &RootSpec, ctx: &PrecisionContext) -> Result<JonesValue> {
    let work = ctx.with_bits(ctx.bits().max(jones_min_bits(spec.m)));
    let p = work.bits();
    let m = spec.m;

    let q = spec.q(&work);
    let q_inv = q.clone().recip();
    let one = Complex::with_val(p, (1, 0));

    // q^{-M}, stepped by repeated multiplication below
    let mut q_pow_minus_m = one.clone();
    for _ in 0..m {
        q_pow_minus_m *= &q_inv;
    }

    // q^{M-l} and q^{M+l} starting at l = 1
    let mut q_m = one.clone();
    for _ in 0..m {
        q_m *= &q;
    }
    let mut q_down = Complex::with_val(p, &q_m * &q_inv);
    let mut q_up = Complex::with_val(p, &q_m * &q);

    let mut total = one.clone(); // k = 0 term
    let mut product = one.clone();
    let mut weight = one.clone(); // q^{-kM}
    for _k in 1..m {
        weight *= &q_pow_minus_m;
        let f1 = Complex::with_val(p, &one - &q_down);
        let f2 = Complex::with_val(p, &one - &q_up);
        product *= Complex::with_val(p, f1 * f2);
        total += Complex::with_val(p, &weight * &product);
        q_down *= &q_inv;
        q_up *= &q;
    }

    let out_p = ctx.bits();
    let value = Complex::with_val(out_p, &total);
    if !value.real().is_finite() || !value.imag().is_finite() {
        return Err(Error::Precision(
            "Jones sum produced a non-finite value".into(),
        ));
    }
    let log_form = LogComplex::from_complex(&total);
    Ok(JonesValue {
        value,
        log_form,
        term_count: m,
    })
}

/// g_M(k) = prod_{l=1}^{k} |(q^{(M-l)/2} - q^{-(M-l)/2})(q^{(M+l)/2} - q^{-(M+l)/2})|
/// at u = 0, where each factor is 4 |sin(pi (M-l)/(M+a)) sin(pi (M+l)/(M+a))|.
pub fn g_product(spec: &RootSpec, k: u32, ctx: &PrecisionContext) -> Result<Float> {
    if spec.u != 0.0 {
        return Err(Error::Domain("g_M(k) is defined at u = 0".into()));
    }
    if k < 1 || k > spec.m.saturating_sub(1) {
        return Err(Error::Domain(format!(
            "need 1 <= k <= M-1, got k={k}, M={}",
            spec.m
        )));
    }
    let p = ctx.bits();
    let ord = spec.order(ctx);
    let step = ctx.pi() / &ord;
    let mut acc = Float::with_val(p, 1);
    for l in 1..=k {
        let down = Float::with_val(p, &step * &ctx.float(spec.m - l)).sin();
        let up = Float::with_val(p, &step * &ctx.float(spec.m + l)).sin();
        acc *= Float::with_val(p, down * up).abs() * 4u32;
    }
    Ok(acc)
}

/// Exhaustive scan of g_M(k) over k in {1, ..., M-1}; ties break toward
/// smaller k.
pub fn g_maximizer(spec: &RootSpec, ctx: &PrecisionContext) -> Result<(u32, Float)> {
    if spec.u != 0.0 {
        return Err(Error::Domain("g maximizer is defined at u = 0".into()));
    }
    if spec.m < 2 {
        return Err(Error::Domain("need M >= 2".into()));
    }
    let p = ctx.bits();
    let ord = spec.order(ctx);
    let step = ctx.pi() / &ord;
    let mut acc = Float::with_val(p, 1);
    let mut best_k = 1u32;
    let mut best = Float::with_val(p, -1);
    for l in 1..spec.m {
        let down = Float::with_val(p, &step * &ctx.float(spec.m - l)).sin();
        let up = Float::with_val(p, &step * &ctx.float(spec.m + l)).sin();
        acc *= Float::with_val(p, down * up).abs() * 4u32;
        if acc > best {
            best = acc.clone();
            best_k = l;
        }
    }
    Ok((best_k, best))
}

/// Lobachevsky bound -(1/2pi) (L(2 pi (k_d - d)) + L(2 pi (k_d + d))) on the
/// exponential growth rate of g_M; at the equality points it evaluates to
/// Vol(S^3 \ 4_1) / (4 pi).
pub fn growth_rate_bound(d: f64, k_d: f64, ctx: &PrecisionContext) -> Result<Float> {
    if !d.is_finite() || !k_d.is_finite() {
        return Err(Error::Domain("need finite (d, k_d)".into()));
    }
    let minus = ctx.two_pi() * ctx.float(k_d - d);
    let plus = ctx.two_pi() * ctx.float(k_d + d);
    let sum = lobachevsky(&minus, ctx)? + lobachevsky(&plus, ctx)?;
    Ok(-(sum / ctx.two_pi()))
}

/// No factor -4 sin(pi (N+j)/(N+1/2)) sin(pi (N-j)/(N+1/2)) vanishes for
/// 1 <= j <= N-1; returns the check plus the minimum factor magnitude found.
pub fn gj_nonvanishing_check(n: u32, ctx: &PrecisionContext) -> Result<(bool, Float)> {
    if n < 2 {
        return Err(Error::Domain("need N >= 2".into()));
    }
    let p = ctx.bits();
    let half = ctx.float(n as f64 + 0.5);
    let mut min_mag = Float::with_val(p, f64::INFINITY);
    for j in 1..n {
        let s1 = Float::with_val(p, ctx.pi() * ctx.float(n + j) / &half).sin();
        let s2 = Float::with_val(p, ctx.pi() * ctx.float(n - j) / &half).sin();
        let mag = Float::with_val(p, s1 * s2).abs() * 4u32;
        if mag < min_mag {
            min_mag = mag;
        }
    }
    Ok((min_mag > 1e-6, min_mag))
}

/// Volume of the figure-eight knot complement (re-exported convenience).
pub fn fig8_volume(ctx: &PrecisionContext) -> Float {
    dilog::fig8_volume(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prec::cabs;

    fn ctx() -> PrecisionContext {
        PrecisionContext::standard()
    }

    #[test]
    fn color_one_is_unknot_normalized() {
        let c = ctx();
        let spec = RootSpec::new(1, 0.7, 0.2).unwrap();
        let j = colored_jones_exact(&spec, &c).unwrap();
        let dev = cabs(&Complex::with_val(256, &j.value - &c.complex(1.0, 0.0)));
        assert!(dev < 1e-70);
        assert_eq!(j.term_count, 1);
    }

    #[test]
    fn color_two_matches_direct_expansion() {
        // J_2 = 1 + q^{-2}(1-q)(1-q^3)
        let c = ctx();
        let spec = RootSpec::new(2, 0.3, 0.4).unwrap();
        let j = colored_jones_exact(&spec, &c).unwrap();
        let q = spec.q(&c);
        let p = 256;
        let q2 = Complex::with_val(p, &q * &q);
        let q3 = Complex::with_val(p, &q2 * &q);
        let one = Complex::with_val(p, (1, 0));
        let direct =
            one.clone() + Complex::with_val(p, &one - &q) * Complex::with_val(p, &one - &q3) / q2;
        let dev = cabs(&Complex::with_val(p, &j.value - &direct));
        assert!(dev < 1e-68, "dev = {dev}");
    }

    #[test]
    fn kashaev_point_color_three_is_thirteen() {
        // brute-force oracle: 1 + |1-q|^2 + |1-q|^2 |1-q^2|^2 = 1 + 3 + 9
        let c = ctx();
        let spec = RootSpec::kashaev(3, 3).unwrap();
        let j = colored_jones_exact(&spec, &c).unwrap();
        let dev = cabs(&Complex::with_val(256, &j.value - &c.complex(13.0, 0.0)));
        assert!(dev < 1e-66, "J_3 = {:?}", j.value);

        let brute = crate::reference::jones_bruteforce(3, &spec.q(&c), &c);
        let dev2 = cabs(&Complex::with_val(256, &j.value - &brute));
        assert!(dev2 < 1e-60);
    }

    #[test]
    fn kashaev_values_positive_real() {
        let c = ctx();
        for n in [5u32, 17, 40] {
            let spec = RootSpec::kashaev(n, n).unwrap();
            let j = colored_jones_exact(&spec, &c).unwrap();
            assert!(Float::with_val(256, j.value.imag()).abs() < 1e-55, "N={n}");
            assert!(*j.value.real() >= 1.0, "N={n}");
        }
    }

    #[test]
    fn conjugation_symmetry_at_u0() {
        // |J_M(q)| = |J_M(qbar)|: the sum has integer coefficients in q, 1/q.
        let c = ctx();
        for (m, n) in [(4u32, 7u32), (6, 9), (9, 12)] {
            let spec = RootSpec::half_odd(m, n).unwrap();
            let j = colored_jones_exact(&spec, &c).unwrap();
            let q = spec.q(&c);
            let qbar = Complex::with_val(
                256,
                (
                    Float::with_val(256, q.real()),
                    -Float::with_val(256, q.imag()),
                ),
            );
            let brute = crate::reference::jones_bruteforce(m, &qbar, &c);
            let dev = (cabs(&j.value) - cabs(&brute)).abs();
            assert!(dev < 1e-50, "M={m} N={n} dev={dev}");
        }
    }

    #[test]
    fn precision_doubling_agrees() {
        let c = PrecisionContext::new(192, 1e-30).unwrap();
        let spec = RootSpec::half_odd(23, 30).unwrap();
        let j1 = colored_jones_exact(&spec, &c).unwrap();
        let c2 = c.with_bits(384);
        let j2 = colored_jones_exact(&spec, &c2).unwrap();
        let dev = cabs(&Complex::with_val(
            384,
            &j2.value - &Complex::with_val(384, &j1.value),
        ));
        let rel = dev / cabs(&j2.value);
        // at least half the working mantissa agrees
        assert!(rel.to_f64() < 2f64.powi(-96), "rel = {rel}");
    }

    #[test]
    fn g_product_single_factor() {
        // M=5, N=9: g_5(1) = 4 |sin(4 pi / 9.5) sin(6 pi / 9.5)|
        let c = ctx();
        let spec = RootSpec::half_odd(5, 9).unwrap();
        let g = g_product(&spec, 1, &c).unwrap();
        let expect = {
            let s1 = Float::with_val(256, c.pi() * 4u32 / c.float(9.5)).sin();
            let s2 = Float::with_val(256, c.pi() * 6u32 / c.float(9.5)).sin();
            Float::with_val(256, s1 * s2).abs() * 4u32
        };
        assert!((g - expect).abs() < 1e-70);
    }

    #[test]
    fn g_product_rejects_out_of_range() {
        let c = ctx();
        let spec = RootSpec::half_odd(5, 9).unwrap();
        assert!(g_product(&spec, 0, &c).is_err());
        assert!(g_product(&spec, 5, &c).is_err());
    }

    #[test]
    fn maximizer_trivial_m2() {
        let c = ctx();
        let spec = RootSpec::half_odd(2, 5).unwrap();
        let (k, _) = g_maximizer(&spec, &c).unwrap();
        assert_eq!(k, 1);
    }

    #[test]
    fn growth_rate_bound_zero_at_origin() {
        let c = ctx();
        let b = growth_rate_bound(0.0, 0.0, &c).unwrap();
        assert!(b.abs() < 1e-70);
    }

    #[test]
    fn root_spec_derived_quantities() {
        let c = ctx();
        // |q| = exp(u/(M+a)); u = 0 puts q on the unit circle
        let spec = RootSpec::new(7, 0.5, 0.4).unwrap();
        let q = spec.q(&c);
        let expect = (c.float(0.4) / spec.order(&c)).exp();
        assert!((cabs(&q) - expect).abs() < 1e-70);
        let on_circle = RootSpec::half_odd(7, 9).unwrap().q(&c);
        assert!((cabs(&on_circle) - 1u32).abs() < 1e-70);
        // (M, N) constructor: a = N - M + 1/2, so q = e^{2 pi i/(N + 1/2)}
        let spec = RootSpec::half_odd(3, 9).unwrap();
        assert_eq!(spec.a(), 6.5);
        let q = spec.q(&c);
        let theta = c.two_pi() / c.float(9.5);
        let dev = cabs(&Complex::with_val(
            256,
            q - crate::prec::unit_circle(&theta),
        ));
        assert!(dev < 1e-70);
        // xi/(M+a) = 2 i gamma
        let spec = RootSpec::new(5, 1.5, 0.3).unwrap();
        let lhs = spec.xi(&c) / &creal(spec.order(&c));
        let rhs = Complex::with_val(256, &c.i() * &spec.gamma(&c)) * 2u32;
        assert!(cabs(&Complex::with_val(256, lhs - rhs)) < 1e-70);
    }

    #[test]
    fn nonvanishing_small_and_large() {
        let c = ctx();
        assert!(gj_nonvanishing_check(5, &c).unwrap().0);
        assert!(gj_nonvanishing_check(100, &c).unwrap().0);
        let (ok, min_mag) = gj_nonvanishing_check(10, &c).unwrap();
        assert!(ok && min_mag > 0.0);
    }
}
