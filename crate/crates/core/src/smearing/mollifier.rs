use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::geometry::FourVector;
use crate::quadrature::{composite_gauss_legendre, refine_breaks, Rule};

/// Normalized, even, product-form test function on R^4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mollifier {
    /// `(2 pi w^2)^-2 exp(-|x|^2 / (2 w^2))` with the Euclidean norm.
    Gaussian { width: f64 },
    /// Product of one-dimensional bumps `exp(-1 / (1 - (x/r)^2))`, supported in `[-r, r]^4`.
    Bump { radius: f64 },
}

/// Relative mass of a gaussian outside `GAUSSIAN_REACH * width`.
pub const GAUSSIAN_REACH: f64 = 8.0;

fn bump_profile(y: f64) -> f64 {
    if y.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - y * y)).exp()
    }
}

fn bump_rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| composite_gauss_legendre(&refine_breaks(&[-1.0, 1.0], 32), 16))
}

/// `∫_{-1}^{1} exp(-1/(1-y^2)) dy`.
fn bump_norm() -> f64 {
    static NORM: OnceLock<f64> = OnceLock::new();
    *NORM.get_or_init(|| bump_rule().integrate(bump_profile))
}

impl Mollifier {
    pub fn gaussian(width: f64) -> Result<Self> {
        let m = Mollifier::Gaussian { width };
        m.validate()?;
        Ok(m)
    }

    pub fn bump(radius: f64) -> Result<Self> {
        let m = Mollifier::Bump { radius };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let w = self.scale();
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::Precondition(format!("mollifier scale must be positive, got {w}")));
        }
        Ok(())
    }

    /// Width or radius.
    pub fn scale(&self) -> f64 {
        match *self {
            Mollifier::Gaussian { width } => width,
            Mollifier::Bump { radius } => radius,
        }
    }

    /// Euclidean radius outside which the function is negligible (gaussian)
    /// or zero (bump: the circumscribed ball of the support cube).
    pub fn effective_radius(&self) -> f64 {
        match *self {
            Mollifier::Gaussian { width } => GAUSSIAN_REACH * width,
            Mollifier::Bump { radius } => 2.0 * radius,
        }
    }

    /// One-dimensional factor.
    pub fn value_1d(&self, x: f64) -> f64 {
        match *self {
            Mollifier::Gaussian { width } => {
                (-0.5 * (x / width).powi(2)).exp() / ((2.0 * PI).sqrt() * width)
            }
            Mollifier::Bump { radius } => bump_profile(x / radius) / (bump_norm() * radius),
        }
    }

    /// `∫_{-∞}^{x}` of the one-dimensional factor.
    pub fn cumulative_1d(&self, x: f64) -> f64 {
        match *self {
            Mollifier::Gaussian { width } => 0.5 * (1.0 + erf(x / (width * 2f64.sqrt()))),
            Mollifier::Bump { radius } => {
                let y = x / radius;
                if y <= -1.0 {
                    0.0
                } else if y >= 1.0 {
                    1.0
                } else {
                    let rule = composite_gauss_legendre(&refine_breaks(&[-1.0, y], 8), 16);
                    rule.integrate(bump_profile) / bump_norm()
                }
            }
        }
    }

    pub fn value(&self, x: FourVector) -> f64 {
        match *self {
            Mollifier::Gaussian { width } => {
                let r2 = x.0.iter().map(|c| c * c).sum::<f64>();
                (-0.5 * r2 / (width * width)).exp() / (2.0 * PI * width * width).powi(2)
            }
            Mollifier::Bump { .. } => x.0.iter().map(|&c| self.value_1d(c)).product(),
        }
    }

    /// One-dimensional cosine transform `∫ s1(x) e^{iqx} dx`.
    pub fn fourier_1d(&self, q: f64) -> f64 {
        match *self {
            Mollifier::Gaussian { width } => (-0.5 * (width * q).powi(2)).exp(),
            Mollifier::Bump { radius } => {
                let a = (q * radius).abs();
                let rule = if a < 20.0 {
                    bump_rule().clone()
                } else {
                    let panels = (a / 2.0).ceil() as usize;
                    composite_gauss_legendre(&refine_breaks(&[-1.0, 1.0], panels), 16)
                };
                rule.integrate(|y| bump_profile(y) * (a * y).cos()) / bump_norm()
            }
        }
    }

    /// `ŝ(p) = ∫ s(x) e^{i p·x} d^4x`; real because `s` is even.
    pub fn fourier(&self, p: FourVector) -> f64 {
        match *self {
            Mollifier::Gaussian { width } => {
                let r2 = p.0.iter().map(|c| c * c).sum::<f64>();
                (-0.5 * width * width * r2).exp()
            }
            Mollifier::Bump { .. } => p.0.iter().map(|&c| self.fourier_1d(c)).product(),
        }
    }

    /// Upper bound of `|ŝ(p)|` on the light cone `|p0| = |p| = k`.
    pub fn shell_envelope(&self, k: f64) -> f64 {
        match *self {
            Mollifier::Gaussian { width } => (-(width * k).powi(2)).exp(),
            Mollifier::Bump { .. } => {
                // slowest decay is along a coordinate axis; sample a few directions
                let dirs: [[f64; 3]; 3] = [
                    [1.0, 0.0, 0.0],
                    [1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt(), 0.0],
                    [1.0 / 3f64.sqrt(); 3],
                ];
                dirs.iter()
                    .map(|d| {
                        self.fourier(FourVector::new(k, k * d[0], k * d[1], k * d[2]))
                            .abs()
                    })
                    .fold(0.0, f64::max)
                    .max(envelope_1d_tail(self, k))
            }
        }
    }
}

/// Running maximum of the one-dimensional transform beyond `k`, which
/// covers the zeros of the oscillating bump transform.
fn envelope_1d_tail(m: &Mollifier, k: f64) -> f64 {
    let r = m.scale();
    let mut best: f64 = 0.0;
    for j in 0..8 {
        let q = k + j as f64 * 0.4 / r;
        best = best.max(m.fourier_1d(q).abs() * m.fourier_1d(q).abs());
    }
    best
}

pub use libm::erf;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre;

    #[test]
    fn erf_reference_values() {
        let cases = [
            (0.0, 0.0),
            (0.5, 0.520_499_877_813_046_5),
            (1.0, 0.842_700_792_949_714_9),
            (2.5, 0.999_593_047_982_555),
            (-3.0, -0.999_977_909_503_001_4),
        ];
        for (x, want) in cases {
            assert!((erf(x) - want).abs() < 1e-14, "erf({x})");
        }
    }

    #[test]
    fn one_dimensional_factors_are_normalized() {
        for m in [Mollifier::Gaussian { width: 0.3 }, Mollifier::Bump { radius: 0.4 }] {
            let r = m.effective_radius();
            let rule = composite_gauss_legendre(&refine_breaks(&[-r, r], 40), 16);
            assert!((rule.integrate(|x| m.value_1d(x)) - 1.0).abs() < 1e-10, "{m:?}");
            assert!((m.cumulative_1d(r) - 1.0).abs() < 1e-10);
            assert!(m.cumulative_1d(-r).abs() < 1e-10);
            assert!((m.cumulative_1d(0.0) - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn cosine_transform_matches_quadrature() {
        let m = Mollifier::Bump { radius: 0.5 };
        let rule = gauss_legendre(-0.5, 0.5, 400);
        for q in [0.0, 3.0, 17.0, 60.0] {
            let direct = rule.integrate(|x| m.value_1d(x) * (q * x).cos());
            assert!((direct - m.fourier_1d(q)).abs() < 1e-10, "q = {q}");
        }
    }

    #[test]
    fn gaussian_4d_is_product_of_factors() {
        let m = Mollifier::Gaussian { width: 0.7 };
        let x = FourVector::new(0.1, -0.4, 0.3, 0.9);
        let prod: f64 = x.0.iter().map(|&c| m.value_1d(c)).product();
        assert!((m.value(x) - prod).abs() < 1e-14 * prod);
    }
}
