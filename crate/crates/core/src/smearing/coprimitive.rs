use super::fields::{OneFormField, TwoFormField};
use super::mollifier::Mollifier;
use super::profile::Profile;
use crate::error::{Error, Result};
use crate::geometry::{Bivector, FourVector, ParamLoop};
use crate::quadrature::{gauss_legendre, Rule};

/// `h_y(x) = h(x - y)`.
pub struct Translated<'a, H: ?Sized> {
    pub h: &'a H,
    pub y: FourVector,
}

impl<H: OneFormField + ?Sized> OneFormField for Translated<'_, H> {
    fn eval(&self, x: FourVector) -> [f64; 4] {
        self.h.eval(x - self.y)
    }
}

/// `f^{μν}(x) = ½ ∫_0^1 (y^ν h^μ - y^μ h^ν)(x - u y) du`, so that
/// `δf = h - h_y` for co-closed `h`. Supported in `supp(h) + [0,1] y`.
pub struct TranslationCoprimitive<'a, H: ?Sized> {
    h: &'a H,
    y: FourVector,
    rule: Rule,
}

impl<'a, H: OneFormField + ?Sized> TranslationCoprimitive<'a, H> {
    pub fn new(h: &'a H, y: FourVector, nodes: usize) -> Self {
        TranslationCoprimitive {
            h,
            y,
            rule: gauss_legendre(0.0, 1.0, nodes),
        }
    }
}

impl<H: OneFormField + ?Sized> TwoFormField for TranslationCoprimitive<'_, H> {
    fn eval(&self, x: FourVector) -> Bivector {
        let mut out = [[0.0; 4]; 4];
        if self.y == FourVector::ZERO {
            return out;
        }
        for (u, w) in self.rule.iter() {
            let h = self.h.eval(x - self.y * u);
            for m in 0..4 {
                for n in 0..4 {
                    out[m][n] += 0.5 * w * (self.y[n] * h[m] - self.y[m] * h[n]);
                }
            }
        }
        out
    }
}

/// Vector field `h` with `∂_k h^k = s - κ ŝ` for a product mollifier `s` of
/// moment `κ` and a normalized reference mollifier `ŝ`, built by
/// telescoping one-dimensional cumulative integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarCoprimitive {
    pub kappa: f64,
    pub s: Mollifier,
    pub reference: Mollifier,
}

/// Checks the moment of `s` against `κ` and returns the scalar co-primitive.
pub fn scalar_coprimitive(s: &Profile, kappa: f64, reference: Mollifier) -> Result<ScalarCoprimitive> {
    let (c, m) = s
        .single()
        .ok_or_else(|| Error::Precondition("scalar co-primitive needs a single-term profile".into()))?;
    if (c - kappa).abs() > 1e-12 * kappa.abs().max(1.0) {
        return Err(Error::MomentMismatch {
            expected: kappa,
            found: c,
        });
    }
    Ok(ScalarCoprimitive {
        kappa,
        s: m,
        reference,
    })
}

impl OneFormField for ScalarCoprimitive {
    fn eval(&self, x: FourVector) -> [f64; 4] {
        let a: [f64; 4] = std::array::from_fn(|i| self.s.value_1d(x[i]));
        let b: [f64; 4] = std::array::from_fn(|i| self.reference.value_1d(x[i]));
        std::array::from_fn(|k| {
            let before: f64 = b[..k].iter().product();
            let after: f64 = a[k + 1..].iter().product();
            let diff = self.s.cumulative_1d(x[k]) - self.reference.cumulative_1d(x[k]);
            self.kappa * before * diff * after
        })
    }
}

impl ScalarCoprimitive {
    /// `s(x) - κ ŝ(x)`.
    pub fn source(&self, x: FourVector) -> f64 {
        self.kappa * (self.s.value(x) - self.reference.value(x))
    }
}

/// `f^{μν}(x) = -½ ∫ (h^μ γ̇^ν - h^ν γ̇^μ)(x + γ(u)) du` with `h` a scalar
/// co-primitive; `δf = l_{s,γ} - κ l_{ŝ,γ}`.
pub struct LoopTransportCoprimitive {
    pub h: ScalarCoprimitive,
    pub path: ParamLoop,
    rule: Rule,
}

impl LoopTransportCoprimitive {
    pub fn new(h: ScalarCoprimitive, path: ParamLoop, nodes: usize) -> Self {
        let rule = path.rule(nodes);
        LoopTransportCoprimitive { h, path, rule }
    }
}

impl TwoFormField for LoopTransportCoprimitive {
    fn eval(&self, x: FourVector) -> Bivector {
        let mut out = [[0.0; 4]; 4];
        for (u, w) in self.rule.iter() {
            let h = self.h.eval(x + self.path.position(u));
            let t = self.path.tangent(u);
            for m in 0..4 {
                for n in 0..4 {
                    out[m][n] -= 0.5 * w * (h[m] * t[n] - h[n] * t[m]);
                }
            }
        }
        out
    }
}
