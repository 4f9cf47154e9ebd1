use num_complex::Complex64;
use rand::Rng;

use super::tensor::levi_civita;
use crate::error::Result;
use crate::geometry::{minkowski_inner, Bivector, FourVector, METRIC};
use crate::smearing::{Blob, CBivector, Mollifier, Profile, Reach, TwoFormField, TwoFormSpectrum};

/// Three-form `t^{ρμν} = Σ_j ε^{ρμνσ} v_{jσ} s_j(x - x_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlobThreeForm {
    pub blobs: Vec<Blob<[f64; 4]>>,
}

impl BlobThreeForm {
    pub fn random(rng: &mut impl Rng, count: usize, center: FourVector, spread: f64, width: f64) -> Result<Self> {
        let m = Mollifier::gaussian(width)?;
        let blobs = (0..count.max(1))
            .map(|_| {
                let mut c = center;
                for mu in 0..4 {
                    c[mu] += rng.gen_range(-spread..spread);
                }
                Blob {
                    center: c,
                    amplitude: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)),
                    mollifier: m,
                }
            })
            .collect();
        Ok(BlobThreeForm { blobs })
    }

    /// Totally antisymmetric amplitude `ε^{ρμνσ} v_σ`.
    fn tensor(v: &[f64; 4]) -> [[[f64; 4]; 4]; 4] {
        std::array::from_fn(|r| {
            std::array::from_fn(|m| {
                std::array::from_fn(|n| (0..4).map(|s| levi_civita([r, m, n, s]) * METRIC[s] * v[s]).sum())
            })
        })
    }

    pub fn eval(&self, x: FourVector) -> [[[f64; 4]; 4]; 4] {
        let mut out = [[[0.0; 4]; 4]; 4];
        for b in &self.blobs {
            let s = b.mollifier.value(x - b.center);
            if s == 0.0 {
                continue;
            }
            let t = Self::tensor(&b.amplitude);
            for r in 0..4 {
                for m in 0..4 {
                    for n in 0..4 {
                        out[r][m][n] += s * t[r][m][n];
                    }
                }
            }
        }
        out
    }
}

/// `∂_ρ t^{ρμν}` at `x` by central differences.
pub fn three_form_divergence(t: &BlobThreeForm, x: FourVector, step: f64) -> Bivector {
    let mut out = [[0.0; 4]; 4];
    for r in 0..4 {
        let (mut xp, mut xm) = (x, x);
        xp[r] += step;
        xm[r] -= step;
        let (a, b) = (t.eval(xp), t.eval(xm));
        for m in 0..4 {
            for n in 0..4 {
                out[m][n] += (a[r][m][n] - b[r][m][n]) / (2.0 * step);
            }
        }
    }
    out
}

/// The co-exact two-form `f = ∂_ρ t^{ρ··}`: finite-difference sampler in
/// position space, exact transform `-i p_ρ t̂^{ρμν}` in momentum space.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeFormDivergence {
    pub t: BlobThreeForm,
    pub step: f64,
}

impl ThreeFormDivergence {
    pub fn new(t: BlobThreeForm) -> Self {
        ThreeFormDivergence { t, step: 1e-4 }
    }
}

impl TwoFormField for ThreeFormDivergence {
    fn eval(&self, x: FourVector) -> Bivector {
        three_form_divergence(&self.t, x, self.step)
    }
}

impl TwoFormSpectrum for ThreeFormDivergence {
    fn spectrum(&self, p: FourVector) -> CBivector {
        let pl = p.lower();
        let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
        for b in &self.t.blobs {
            let e = Complex64::from_polar(b.mollifier.fourier(p), minkowski_inner(p, b.center));
            let t = BlobThreeForm::tensor(&b.amplitude);
            for m in 0..4 {
                for n in 0..4 {
                    let c: f64 = (0..4).map(|r| pl[r] * t[r][m][n]).sum();
                    out[m][n] += Complex64::new(0.0, -c) * e;
                }
            }
        }
        out
    }

    fn reach(&self) -> Reach {
        let m = self.t.blobs.first().map(|b| b.mollifier).unwrap_or(Mollifier::Gaussian { width: 1.0 });
        Reach {
            anchors: self.t.blobs.iter().map(|b| -b.center).collect(),
            profile: Profile::from(m),
        }
    }
}
