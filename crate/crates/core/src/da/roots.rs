//! Complex arithmetic over MPFR floats and simultaneous polynomial root
//! finding (Aberth-Ehrlich iteration).

use std::fmt;
use std::ops::{Add, Mul, Sub};

use rug::float::Constant;
use rug::Float;

/// A complex number as a pair of MPFR floats.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    pub re: Float,
    pub im: Float,
}

impl Cx {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn real(re: Float) -> Self {
        let prec = re.prec();
        Self { re, im: Float::new(prec) }
    }

    pub fn zero(prec: u32) -> Self {
        Self { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn norm(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn div(&self, o: &Cx) -> Cx {
        let p = self.prec();
        let d = Float::with_val(p, o.re.square_ref()) + Float::with_val(p, o.im.square_ref());
        let re = Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im);
        Cx { re: re / &d, im: im / &d }
    }

    pub fn recip(&self) -> Cx {
        Cx::real(Float::with_val(self.prec(), 1u32)).div(self)
    }

    pub fn scale(&self, k: &Float) -> Cx {
        let p = self.prec();
        Cx { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }
}

impl Add for &Cx {
    type Output = Cx;
    fn add(self, o: &Cx) -> Cx {
        let p = self.prec();
        Cx { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl Sub for &Cx {
    type Output = Cx;
    fn sub(self, o: &Cx) -> Cx {
        let p = self.prec();
        Cx { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl Mul for &Cx {
    type Output = Cx;
    fn mul(self, o: &Cx) -> Cx {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Cx { re, im }
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(12);
        write!(
            f,
            "{}{}{}i",
            crate::analysis::format_fixed(&self.re, d as u32),
            if self.im.is_sign_negative() { "" } else { "+" },
            crate::analysis::format_fixed(&self.im, d as u32)
        )
    }
}

/// `(p(z), p'(z))` by Horner's rule; `coeffs[j]` multiplies `z^j`.
pub fn eval_with_derivative(coeffs: &[Float], z: &Cx) -> (Cx, Cx) {
    let prec = z.prec();
    let mut p = Cx::zero(prec);
    let mut dp = Cx::zero(prec);
    for c in coeffs.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &(&p * z) + &Cx::real(Float::with_val(prec, c));
    }
    (p, dp)
}

pub fn eval(coeffs: &[Float], z: &Cx) -> Cx {
    eval_with_derivative(coeffs, z).0
}

/// Outcome of [`aberth_roots`].
pub struct Roots {
    pub roots: Vec<Cx>,
    pub converged: bool,
    pub iterations: usize,
}

/// All roots of the polynomial with coefficients `coeffs` (constant term
/// first, nonzero leading coefficient). Starting points lie on a circle whose
/// radius comes from the coefficient magnitudes, at irregular angles so
/// that symmetric polynomials do not stall the iteration.
pub fn aberth_roots(coeffs: &[Float], max_iter: usize) -> Roots {
    let deg = coeffs.len().saturating_sub(1);
    let prec = coeffs.first().map_or(64, Float::prec);
    if deg == 0 {
        return Roots { roots: Vec::new(), converged: true, iterations: 0 };
    }
    let lead = Float::with_val(prec, coeffs[deg].abs_ref());
    // Geometric mean of |c_0 / c_n|^(1/n) as a radius guess.
    let radius = if coeffs[0].is_zero() {
        Float::with_val(prec, 1u32)
    } else {
        let q = Float::with_val(prec, coeffs[0].abs_ref()) / &lead;
        (q.ln() / deg as u32).exp()
    };
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let mut z: Vec<Cx> = (0..deg)
        .map(|k| {
            let angle: Float = Float::with_val(prec, &two_pi * k as u32) / deg as u32 + 0.4;
            let (s, c) = angle.sin_cos(Float::new(prec));
            Cx::new(c * &radius, s * &radius)
        })
        .collect();
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 12));
    for it in 0..max_iter {
        let mut max_step = Float::new(prec);
        for i in 0..deg {
            let (p, dp) = eval_with_derivative(coeffs, &z[i]);
            if p.is_zero() {
                continue;
            }
            let ratio = p.div(&dp);
            let mut sum = Cx::zero(prec);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let d = &z[i] - zj;
                    if !d.is_zero() {
                        sum = &sum + &d.recip();
                    }
                }
            }
            let one = Cx::real(Float::with_val(prec, 1u32));
            let denom = &one - &(&ratio * &sum);
            let step = ratio.div(&denom);
            let size = step.norm() / Float::with_val(prec, z[i].norm().max(&Float::with_val(prec, 1u32)));
            if size > max_step {
                max_step = size;
            }
            z[i] = &z[i] - &step;
        }
        if max_step <= tol {
            return Roots { roots: z, converged: true, iterations: it + 1 };
        }
    }
    Roots { roots: z, converged: false, iterations: max_iter }
}
