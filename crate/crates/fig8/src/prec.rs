//! Working precision and tolerance settings shared by every numeric operation.

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::{Complex, Float};

/// Precision context: mantissa bits, quadrature tolerance and the contour
/// radius policy for the quantum dilogarithm.
///
/// All operations in this crate are pure functions of their arguments plus a
/// `PrecisionContext`; identical inputs and context give bit-identical
/// results.
#[derive(Clone, Debug)]
pub struct PrecisionContext {
    bits: u32,
    quad_tol: f64,
    /// Absolute contour radius override; `None` selects 0.5 * min(pi/|gamma|, 1)
    /// at each use site.
    contour_r: Option<f64>,
}

impl PrecisionContext {
    /// New context with the given mantissa precision and quadrature tolerance.
    pub fn new(bits: u32, quad_tol: f64) -> Result<Self> {
        if bits < 64 {
            return Err(Error::Config(format!("precision_bits = {bits} < 64")));
        }
        if !(quad_tol > 0.0 && quad_tol < 1.0) {
            return Err(Error::Config(format!(
                "quad_tol = {quad_tol} not in (0, 1)"
            )));
        }
        Ok(Self {
            bits,
            quad_tol,
            contour_r: None,
        })
    }

    /// Default working context: 256 bits, 1e-30 relative quadrature tolerance.
    pub fn standard() -> Self {
        Self {
            bits: 256,
            quad_tol: 1e-30,
            contour_r: None,
        }
    }

    /// Pin the C_R contour radius to an absolute value. Validated against
    /// `0 < R < min(pi/|gamma|, 1)` whenever a quantum-dilogarithm contour is
    /// built.
    pub fn with_contour_r(mut self, r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::Config(format!("contour_R = {r} not in (0, 1)")));
        }
        self.contour_r = Some(r);
        Ok(self)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn quad_tol(&self) -> f64 {
        self.quad_tol
    }

    /// Same tolerances at a different precision.
    pub fn with_bits(&self, bits: u32) -> Self {
        Self {
            bits: bits.max(64),
            quad_tol: self.quad_tol,
            contour_r: self.contour_r,
        }
    }

    /// Contour radius for a given gamma, defaulting to half of the legal bound.
    pub fn contour_radius(&self, gamma: &Complex) -> Result<Float> {
        let p = self.bits;
        let abs_gamma = Float::with_val(p, gamma.abs_ref());
        let bound = {
            let b = self.pi() / &abs_gamma;
            if b < 1u32 {
                b
            } else {
                Float::with_val(p, 1)
            }
        };
        match self.contour_r {
            None => Ok(bound / 2u32),
            Some(r) => {
                let rf = Float::with_val(p, r);
                if rf >= bound {
                    Err(Error::Domain(format!(
                        "contour_R = {r} not inside (0, min(pi/|gamma|, 1))"
                    )))
                } else {
                    Ok(rf)
                }
            }
        }
    }

    pub fn float<T>(&self, x: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits, x)
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.bits, (re, im))
    }

    pub fn complex_zero(&self) -> Complex {
        Complex::with_val(self.bits, (0, 0))
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits, Constant::Pi)
    }

    pub fn two_pi(&self) -> Float {
        Float::with_val(self.bits, Constant::Pi) * 2u32
    }

    /// i * pi at working precision.
    pub fn i_pi(&self) -> Complex {
        Complex::with_val(self.bits, (Float::new(self.bits), self.pi()))
    }

    /// The unit imaginary at working precision.
    pub fn i(&self) -> Complex {
        Complex::with_val(self.bits, (0, 1))
    }

    /// Relative rounding granularity 2^(8 - bits) used in self-consistency
    /// assertions.
    pub fn eps(&self) -> Float {
        Float::with_val(self.bits, Float::i_exp(1, 8 - self.bits as i32))
    }
}

/// |z| at the precision of z.
pub fn cabs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// Complex from real and imaginary `Float` parts.
pub fn cpx(re: Float, im: Float) -> Complex {
    let p = re.prec().max(im.prec());
    Complex::with_val(p, (re, im))
}

/// Complex from a real `Float`.
pub fn creal(re: Float) -> Complex {
    let p = re.prec();
    Complex::with_val(p, (re, Float::new(p)))
}

/// e^{i theta} for real theta.
pub fn unit_circle(theta: &Float) -> Complex {
    let p = theta.prec();
    let (s, c) = theta.clone().sin_cos(Float::new(p));
    Complex::with_val(p, (c, s))
}

/// Wrap a real angle into (-pi, pi].
pub fn wrap_angle(theta: Float) -> Float {
    let p = theta.prec();
    let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
    let mut k = Float::with_val(p, &theta / &two_pi);
    k.round_mut();
    let mut out = theta - k * &two_pi;
    let pi = Float::with_val(p, Constant::Pi);
    if out > pi {
        out -= &two_pi;
    } else if out <= -pi.clone() {
        out += &two_pi;
    }
    out
}
