use num_complex::Complex64;

use super::fields::{OneFormField, OneFormSpectrum, Reach};
use super::mollifier::Mollifier;
use super::profile::Profile;
use crate::error::Result;
use crate::geometry::{minkowski_inner, FourVector, ParamLoop};

/// Loop function `l^μ(x) = ∫ s(x + γ(u)) γ̇^μ(u) du`; the moment of `s` is
/// the normalization `κ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopSmearing {
    pub profile: Profile,
    pub path: ParamLoop,
    /// Fixed number of loop nodes in position space; chosen from the
    /// mollifier width when `None`.
    pub nodes: Option<usize>,
}

impl LoopSmearing {
    pub fn new(mollifier: Mollifier, path: ParamLoop) -> Self {
        LoopSmearing {
            profile: mollifier.into(),
            path,
            nodes: None,
        }
    }

    pub fn with_profile(profile: Profile, path: ParamLoop) -> Self {
        LoopSmearing {
            profile,
            path,
            nodes: None,
        }
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        self.profile = self.profile.scaled(factor);
        self
    }

    pub fn kappa(&self) -> f64 {
        self.profile.integral()
    }

    pub fn validate(&self) -> Result<()> {
        self.path.validate()?;
        for (_, m) in self.profile.terms() {
            m.validate()?;
        }
        Ok(())
    }

    fn position_nodes(&self) -> usize {
        self.nodes.unwrap_or_else(|| {
            let n = 8.0 * self.path.length() / self.profile.min_scale();
            (n.ceil() as usize).max(64)
        })
    }

    /// Support of the loop function: `supp(s) - γ`, the reflected loop.
    pub fn anchors(&self) -> Vec<FourVector> {
        self.path.sample(128).into_iter().map(|p| -p).collect()
    }

    /// Precomputes the loop rule for transforms up to Euclidean momentum `p_max`.
    pub fn spectrum(&self, p_max: f64) -> LoopSpectrum {
        let len = self.path.length();
        let n = (p_max * len / std::f64::consts::PI).ceil() as usize + 48;
        LoopSpectrum::with_nodes(self, n)
    }
}

impl LoopSmearing {
    /// Position-space sampler with the loop rule built once.
    pub fn sampler(&self) -> LoopSampler {
        let rule = self.path.rule(self.position_nodes());
        LoopSampler {
            profile: self.profile.clone(),
            nodes: rule
                .iter()
                .map(|(u, w)| Node {
                    pos: self.path.position(u),
                    tangent_w: self.path.tangent(u) * w,
                })
                .collect(),
        }
    }
}

impl OneFormField for LoopSmearing {
    fn eval(&self, x: FourVector) -> [f64; 4] {
        self.sampler().eval(x)
    }
}

/// Precomputed position-space loop function.
#[derive(Debug, Clone)]
pub struct LoopSampler {
    profile: Profile,
    nodes: Vec<Node>,
}

impl OneFormField for LoopSampler {
    fn eval(&self, x: FourVector) -> [f64; 4] {
        let mut out = [0.0; 4];
        for n in &self.nodes {
            let s = self.profile.value(x + n.pos);
            if s == 0.0 {
                continue;
            }
            for mu in 0..4 {
                out[mu] += s * n.tangent_w[mu];
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
struct Node {
    pos: FourVector,
    tangent_w: FourVector,
}

/// Semi-analytic transform `l̂(p) = ŝ(p) ∫ e^{-i p·γ(u)} γ̇(u) du`.
#[derive(Debug, Clone)]
pub struct LoopSpectrum {
    profile: Profile,
    nodes: Vec<Node>,
    time_zero: bool,
    anchors: Vec<FourVector>,
}

impl LoopSpectrum {
    pub fn with_nodes(l: &LoopSmearing, n: usize) -> Self {
        let rule = l.path.rule(n);
        let nodes: Vec<Node> = rule
            .iter()
            .map(|(u, w)| Node {
                pos: l.path.position(u),
                tangent_w: l.path.tangent(u) * w,
            })
            .collect();
        let time_zero = nodes.iter().all(|n| n.pos.t() == 0.0 && n.tangent_w.t() == 0.0);
        LoopSpectrum {
            profile: l.profile.clone(),
            nodes,
            time_zero,
            anchors: l.anchors(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// `∫ e^{-i p·γ} γ̇ du` without the mollifier factor.
    pub fn bare(&self, p: FourVector) -> [Complex64; 4] {
        let mut acc = [Complex64::new(0.0, 0.0); 4];
        for n in &self.nodes {
            let e = Complex64::from_polar(1.0, -minkowski_inner(p, n.pos));
            for mu in 0..4 {
                acc[mu] += e * n.tangent_w[mu];
            }
        }
        acc
    }
}

impl OneFormSpectrum for LoopSpectrum {
    fn spectrum(&self, p: FourVector) -> [Complex64; 4] {
        let s = self.profile.fourier(p);
        self.bare(p).map(|c| c * s)
    }

    fn spectrum_pm(&self, omega: f64, k: [f64; 3]) -> ([Complex64; 4], [Complex64; 4]) {
        let zero = Complex64::new(0.0, 0.0);
        let (mut plus, mut minus) = ([zero; 4], [zero; 4]);
        for n in &self.nodes {
            // -i p·γ = -i ω γ0 + i k·γ
            let sp = n.pos.spatial();
            let base = Complex64::from_polar(1.0, k[0] * sp[0] + k[1] * sp[1] + k[2] * sp[2]);
            if self.time_zero {
                for mu in 1..4 {
                    plus[mu] += base * n.tangent_w[mu];
                }
            } else {
                let time = Complex64::from_polar(1.0, -omega * n.pos.t());
                let (ep, em) = (base * time, base * time.conj());
                for mu in 0..4 {
                    plus[mu] += ep * n.tangent_w[mu];
                    minus[mu] += em * n.tangent_w[mu];
                }
            }
        }
        if self.time_zero {
            minus = plus;
        }
        let s = self.profile.fourier(FourVector::from_parts(omega, k));
        (plus.map(|c| c * s), minus.map(|c| c * s))
    }

    fn reach(&self) -> Reach {
        Reach {
            anchors: self.anchors.clone(),
            profile: self.profile.clone(),
        }
    }
}
