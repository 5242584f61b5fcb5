//! Constants the growth estimates are compared against.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::float::Constant;
use rug::Float;

use super::real::bits_for_digits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReferenceConstant {
    /// Growth constant of the e.g.f. of ascent sequences.
    SixOverPiSquared,
    /// Conjectured e.g.f. growth constant of 000-avoiders.
    EightOverThreePiSquared,
    /// Largest root of `x^3 - 8x^2 + 5x + 1`.
    CubicRoot120,
    /// `12 sqrt(3) e^{pi^2/12} / pi^{5/2}`, the amplitude of the ascent numbers.
    AscentAmplitude,
}

impl ReferenceConstant {
    pub const ALL: [ReferenceConstant; 4] = [
        Self::SixOverPiSquared,
        Self::EightOverThreePiSquared,
        Self::CubicRoot120,
        Self::AscentAmplitude,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::SixOverPiSquared => "six_over_pi2",
            Self::EightOverThreePiSquared => "eight_over_3pi2",
            Self::CubicRoot120 => "cubic_root_120",
            Self::AscentAmplitude => "ascent_amplitude",
        }
    }

    pub fn value(self, digits: u32) -> Float {
        let prec = bits_for_digits(digits);
        let pi = Float::with_val(prec, Constant::Pi);
        let pi2 = Float::with_val(prec, &pi * &pi);
        match self {
            Self::SixOverPiSquared => Float::with_val(prec, 6u32) / pi2,
            Self::EightOverThreePiSquared => Float::with_val(prec, 8u32) / (pi2 * 3u32),
            Self::CubicRoot120 => cubic_root(prec),
            Self::AscentAmplitude => {
                let num = Float::with_val(prec, 3u32).sqrt() * 12u32 * (pi2 / 12u32).exp();
                num / pi.pow(Float::with_val(prec, 2.5))
            }
        }
    }
}

impl fmt::Display for ReferenceConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReferenceConstant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown constant {s:?}"))
    }
}

/// Newton iteration on `x^3 - 8x^2 + 5x + 1` from 7.3.
fn cubic_root(prec: u32) -> Float {
    let mut x = Float::with_val(prec, 7.3);
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 4));
    for _ in 0..200 {
        let p = Float::with_val(prec, ((x.clone() - 8u32) * &x + 5u32) * &x + 1u32);
        let dp = Float::with_val(prec, (x.clone() * 3u32 - 16u32) * &x + 5u32);
        let step = p / dp;
        x -= &step;
        if step.abs() <= tol {
            break;
        }
    }
    x
}

/// All reference constants at one precision.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceConstants {
    pub six_over_pi2: Float,
    pub eight_over_3pi2: Float,
    pub cubic_root_120: Float,
    pub ascent_amplitude: Float,
}

impl ReferenceConstants {
    pub fn new(digits: u32) -> Self {
        Self {
            six_over_pi2: ReferenceConstant::SixOverPiSquared.value(digits),
            eight_over_3pi2: ReferenceConstant::EightOverThreePiSquared.value(digits),
            cubic_root_120: ReferenceConstant::CubicRoot120.value(digits),
            ascent_amplitude: ReferenceConstant::AscentAmplitude.value(digits),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::real::format_fixed;

    #[test]
    fn published_digits() {
        let k = ReferenceConstants::new(60);
        assert!(format_fixed(&k.cubic_root_120, 20).starts_with("7.2958969432397"));
        assert!(format_fixed(&k.eight_over_3pi2, 20).starts_with("0.2701898"));
        let x = &k.cubic_root_120;
        let p = Float::with_val(x.prec(), ((x.clone() - 8u32) * x + 5u32) * x + 1u32);
        assert!(p.abs() < 1e-55);
    }

    #[test]
    fn names_round_trip() {
        for c in ReferenceConstant::ALL {
            assert_eq!(c.name().parse::<ReferenceConstant>(), Ok(c));
        }
    }
}
