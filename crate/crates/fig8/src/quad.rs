//! Adaptive Gauss-Legendre quadrature at arbitrary precision.
//!
//! Panels are estimated with an n-point rule and checked against the 2n-point
//! rule; panels that disagree are bisected. Nodes and weights are computed by
//! Newton refinement of float64 seeds and cached per (order, precision).

use crate::error::{Error, Result};
use rug::{Complex, Float};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Gauss-Legendre nodes and weights on [-1, 1].
pub struct GlRule {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

type RuleCache = Mutex<HashMap<(usize, u32), Arc<GlRule>>>;

fn rule_cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_with_deriv(n: usize, x: &Float) -> (Float, Float) {
    let p = x.prec();
    let mut p_prev = Float::with_val(p, 1);
    let mut p_cur = x.clone();
    for k in 2..=n {
        let next = (Float::with_val(p, 2 * k as u32 - 1) * x * &p_cur
            - Float::with_val(p, k as u32 - 1) * &p_prev)
            / Float::with_val(p, k as u32);
        p_prev = p_cur;
        p_cur = next;
    }
    // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let denom = x.clone() * x - 1u32;
    let deriv = Float::with_val(p, n as u32) * (x.clone() * &p_cur - &p_prev) / denom;
    (p_cur, deriv)
}

/// Cached n-point Gauss-Legendre rule at the given precision.
pub fn gl_rule(n: usize, prec: u32) -> Arc<GlRule> {
    if let Some(r) = rule_cache().lock().unwrap().get(&(n, prec)) {
        return r.clone();
    }
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let pi64 = std::f64::consts::PI;
    for i in 0..n {
        // Chebyshev-like seed, then Newton at full precision.
        let seed = (pi64 * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(prec, seed);
        // Quadratic convergence: ~5 iterations carry 1e-16 seeds past 256 bits.
        let iters = 6 + (prec / 48) as usize;
        for _ in 0..iters {
            let (pn, dpn) = legendre_with_deriv(n, &x);
            x -= pn / dpn;
        }
        let (_, dpn) = legendre_with_deriv(n, &x);
        let w = Float::with_val(prec, 2)
            / ((Float::with_val(prec, 1) - x.clone() * &x) * dpn.clone() * dpn);
        nodes.push(x);
        weights.push(w);
    }
    nodes.reverse();
    weights.reverse();
    let rule = Arc::new(GlRule { nodes, weights });
    rule_cache().lock().unwrap().insert((n, prec), rule.clone());
    rule
}

/// Nodes and weights of the n-point rule mapped to the real segment [a, b].
pub fn gl_nodes_on(n: usize, a: &Float, b: &Float, prec: u32) -> Vec<(Float, Float)> {
    let rule = gl_rule(n, prec);
    let half = Float::with_val(prec, b - a) / 2u32;
    let mid = Float::with_val(prec, a + b) / 2u32;
    rule.nodes
        .iter()
        .zip(rule.weights.iter())
        .map(|(x, w)| (mid.clone() + half.clone() * x, w.clone() * &half))
        .collect()
}

struct Panel {
    a: Float,
    b: Float,
    depth: u32,
}

/// Adaptive integral of a complex-valued function of a real parameter over
/// [a, b]. `rel_tol` is relative to the accumulated magnitude of the result.
pub fn integrate<F>(f: &F, a: &Float, b: &Float, rel_tol: f64, prec: u32) -> Result<Complex>
where
    F: Fn(&Float) -> Result<Complex>,
{
    let lo = 16usize;
    let eval_panel = |pa: &Float, pb: &Float, n: usize| -> Result<Complex> {
        let mut acc = Complex::with_val(prec, (0, 0));
        for (t, w) in gl_nodes_on(n, pa, pb, prec) {
            acc += f(&t)? * w;
        }
        Ok(acc)
    };

    // Initial scale estimate from a coarse pass over the whole interval.
    let coarse = eval_panel(a, b, 2 * lo)?;
    let mut scale = Float::with_val(prec, coarse.abs_ref());
    if scale.is_zero() {
        scale = Float::with_val(prec, 1e-300);
    }

    let mut total = Complex::with_val(prec, (0, 0));
    let mut stack = vec![Panel {
        a: a.clone(),
        b: b.clone(),
        depth: 0,
    }];
    let mut evals: usize = 0;
    while let Some(panel) = stack.pop() {
        evals += 3 * lo;
        if evals > 6_000_000 {
            return Err(Error::Quadrature("evaluation budget exhausted".into()));
        }
        let i1 = eval_panel(&panel.a, &panel.b, lo)?;
        let i2 = eval_panel(&panel.a, &panel.b, 2 * lo)?;
        let err = Float::with_val(prec, Complex::with_val(prec, &i2 - &i1).abs_ref());
        let frac = {
            let len = Float::with_val(prec, &panel.b - &panel.a);
            let tot = Float::with_val(prec, b - a);
            len / tot
        };
        let allowed = Float::with_val(prec, rel_tol) * &scale * frac;
        if err <= allowed || panel.depth >= 48 {
            if panel.depth >= 48 && err > allowed * 16u32 {
                return Err(Error::Quadrature(format!(
                    "panel [{}, {}] failed to converge",
                    panel.a.to_f64(),
                    panel.b.to_f64()
                )));
            }
            total += i2;
            let tot_abs = Float::with_val(prec, total.abs_ref());
            if tot_abs > scale {
                scale = tot_abs;
            }
        } else {
            let mid = Float::with_val(prec, &panel.a + &panel.b) / 2u32;
            stack.push(Panel {
                a: panel.a,
                b: mid.clone(),
                depth: panel.depth + 1,
            });
            stack.push(Panel {
                a: mid,
                b: panel.b,
                depth: panel.depth + 1,
            });
        }
    }
    Ok(total)
}

/// Adaptive integral of a complex function along the straight segment
/// from z0 to z1.
pub fn integrate_segment<F>(
    f: &F,
    z0: &Complex,
    z1: &Complex,
    rel_tol: f64,
    prec: u32,
) -> Result<Complex>
where
    F: Fn(&Complex) -> Result<Complex>,
{
    let dz = Complex::with_val(prec, z1 - z0);
    let g = |t: &Float| -> Result<Complex> {
        let z = Complex::with_val(prec, z0 + Complex::with_val(prec, &dz * t));
        f(&z)
    };
    let zero = Float::new(prec);
    let one = Float::with_val(prec, 1);
    Ok(integrate(&g, &zero, &one, rel_tol, prec)? * dz)
}

/// Adaptive integral along a polyline through the given vertices.
pub fn integrate_polyline<F>(
    f: &F,
    vertices: &[Complex],
    rel_tol: f64,
    prec: u32,
) -> Result<Complex>
where
    F: Fn(&Complex) -> Result<Complex>,
{
    let mut total = Complex::with_val(prec, (0, 0));
    for pair in vertices.windows(2) {
        total += integrate_segment(f, &pair[0], &pair[1], rel_tol, prec)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prec::PrecisionContext;

    #[test]
    fn gl_rule_integrates_polynomials_exactly() {
        // 16-point rule is exact through degree 31.
        let prec = 256;
        let rule = gl_rule(16, prec);
        let mut acc = Float::new(prec);
        for (x, w) in rule.nodes.iter().zip(rule.weights.iter()) {
            let x30 = Float::with_val(prec, rug::ops::Pow::pow(x, 30u32));
            acc += x30 * w;
        }
        // int_{-1}^{1} x^30 dx = 2/31
        let exact = Float::with_val(prec, 2) / 31u32;
        assert!((acc - exact).abs() < Float::with_val(prec, 1e-70));
    }

    #[test]
    fn weights_sum_to_two() {
        for n in [16usize, 32, 48] {
            let rule = gl_rule(n, 192);
            let s: Float = rule.weights.iter().fold(Float::new(192), |a, w| a + w);
            assert!((s - 2u32).abs() < 1e-50, "n = {n}");
        }
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        let ctx = PrecisionContext::standard();
        // int_0^1 1/sqrt(x + 1e-6) dx = 2 (sqrt(1 + 1e-6) - 1e-3)
        let f = |t: &Float| -> crate::error::Result<Complex> {
            let v = (t.clone() + Float::with_val(256, 1e-6f64)).sqrt().recip();
            Ok(crate::prec::creal(v))
        };
        let got = integrate(&f, &ctx.float(0), &ctx.float(1), 1e-40, 256).unwrap();
        let eps = Float::with_val(256, 1e-6f64);
        let exact = ((eps.clone() + 1u32).sqrt() - eps.sqrt()) * 2u32;
        let dev = (Float::with_val(256, got.real()) - exact).abs();
        assert!(dev < 1e-38, "dev = {dev}");
    }

    #[test]
    fn segment_orientation() {
        let ctx = PrecisionContext::standard();
        // int of z dz from 0 to 1+i is (1+i)^2/2 = i
        let f = |z: &Complex| -> crate::error::Result<Complex> { Ok(z.clone()) };
        let got = integrate_segment(
            &f,
            &ctx.complex(0.0, 0.0),
            &ctx.complex(1.0, 1.0),
            1e-40,
            256,
        )
        .unwrap();
        let dev = crate::prec::cabs(&Complex::with_val(256, &got - &ctx.complex(0.0, 1.0)));
        assert!(dev < 1e-60);
    }
}
