use num_complex::Complex64;

use super::fields::{CBivector, Reach, TwoFormField, TwoFormSpectrum, CZERO_BIVECTOR};
use super::loopfn::LoopSmearing;
use super::mollifier::Mollifier;
use super::profile::Profile;
use crate::error::Result;
use crate::geometry::{minkowski_inner, wedge, Bivector, FourVector, ParamLoop, ParamSurface};

/// Surface function `f^{μν}(x) = -½ ∬ s(x + σ(u,v)) σ^{μν}(u,v) du dv`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSmearing {
    pub profile: Profile,
    pub surface: ParamSurface,
    /// Fixed `(u, v)` node counts in position space; chosen from the
    /// mollifier width when `None`.
    pub nodes: Option<(usize, usize)>,
}

/// Cone over `γ` with the given apex: a co-primitive of the loop function.
pub fn cone_surface(apex: FourVector, path: ParamLoop) -> ParamSurface {
    ParamSurface::cone(apex, path)
}

/// Mean of loop samples; the default cone apex.
pub fn centroid(path: &ParamLoop) -> FourVector {
    let pts = path.sample(256);
    let n = pts.len() as f64;
    pts.into_iter().fold(FourVector::ZERO, |a, p| a + p) * (1.0 / n)
}

impl SurfaceSmearing {
    pub fn new(mollifier: Mollifier, surface: ParamSurface) -> Self {
        SurfaceSmearing {
            profile: mollifier.into(),
            surface,
            nodes: None,
        }
    }

    pub fn with_profile(profile: Profile, surface: ParamSurface) -> Self {
        SurfaceSmearing {
            profile,
            surface,
            nodes: None,
        }
    }

    /// `f_{s,σ}` for the cone over the loop of `l`, so that `δf = l`.
    pub fn cone_coprimitive(l: &LoopSmearing, apex: FourVector) -> Self {
        SurfaceSmearing {
            profile: l.profile.clone(),
            surface: cone_surface(apex, l.path.clone()),
            nodes: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.surface.validate()
    }

    fn boundary_length(&self) -> f64 {
        match &self.surface {
            ParamSurface::Cone { base, .. } => base.length(),
            ParamSurface::Ruled { a, b } => a.length().max(b.length()),
        }
    }

    fn diameter(&self) -> f64 {
        let pts = self.anchors();
        let mut d: f64 = 0.0;
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                d = d.max((*p - *q).euclidean_norm());
            }
        }
        d
    }

    fn position_nodes(&self) -> (usize, usize) {
        self.nodes.unwrap_or_else(|| {
            let w = self.profile.min_scale();
            let nu = (6.0 * self.diameter() / w).ceil() as usize;
            let nv = (8.0 * self.boundary_length() / w).ceil() as usize;
            (nu.max(16), nv.max(64))
        })
    }

    /// Points spanning the reflected support `supp(s) - σ`.
    pub fn anchors(&self) -> Vec<FourVector> {
        let mut pts = Vec::new();
        for i in 0..=8 {
            for j in 0..32 {
                pts.push(-self.surface.position(i as f64 / 8.0, j as f64 / 32.0));
            }
        }
        pts
    }

    /// Generic two-dimensional transform, valid for any surface kind.
    pub fn spectrum(&self, p_max: f64) -> SurfaceSpectrum {
        let d = self.diameter();
        let nu = (p_max * d / std::f64::consts::PI).ceil() as usize + 16;
        let nv = (p_max * self.boundary_length() / std::f64::consts::PI).ceil() as usize + 48;
        SurfaceSpectrum::with_nodes(self, nu, nv)
    }
}

impl SurfaceSmearing {
    /// Position-space sampler with the surface rule built once.
    pub fn sampler(&self) -> SurfaceSampler {
        let (nu, nv) = self.position_nodes();
        let nodes = self
            .surface
            .rule(nu, nv)
            .into_iter()
            .map(|n| {
                let b = self.surface.bivector(n.u, n.v);
                (self.surface.position(n.u, n.v), b.map(|r| r.map(|c| -0.5 * n.weight * c)))
            })
            .collect();
        SurfaceSampler {
            profile: self.profile.clone(),
            nodes,
        }
    }
}

impl TwoFormField for SurfaceSmearing {
    fn eval(&self, x: FourVector) -> Bivector {
        self.sampler().eval(x)
    }
}

/// Precomputed position-space surface function.
#[derive(Debug, Clone)]
pub struct SurfaceSampler {
    profile: Profile,
    nodes: Vec<(FourVector, Bivector)>,
}

impl TwoFormField for SurfaceSampler {
    fn eval(&self, x: FourVector) -> Bivector {
        let mut out = [[0.0; 4]; 4];
        for (pos, b) in &self.nodes {
            let s = self.profile.value(x + *pos);
            if s == 0.0 {
                continue;
            }
            for m in 0..4 {
                for k in 0..4 {
                    out[m][k] += s * b[m][k];
                }
            }
        }
        out
    }
}

/// Generic transform `f̂(p) = -½ ŝ(p) ∬ e^{-i p·σ} σ^{μν}`.
#[derive(Debug, Clone)]
pub struct SurfaceSpectrum {
    profile: Profile,
    nodes: Vec<(FourVector, Bivector)>,
    anchors: Vec<FourVector>,
}

impl SurfaceSpectrum {
    pub fn with_nodes(f: &SurfaceSmearing, nu: usize, nv: usize) -> Self {
        let nodes = f
            .surface
            .rule(nu, nv)
            .into_iter()
            .map(|n| {
                let b = f.surface.bivector(n.u, n.v);
                let bw = b.map(|row| row.map(|c| c * n.weight));
                (f.surface.position(n.u, n.v), bw)
            })
            .collect();
        SurfaceSpectrum {
            profile: f.profile.clone(),
            nodes,
            anchors: f.anchors(),
        }
    }
}

impl TwoFormSpectrum for SurfaceSpectrum {
    fn spectrum(&self, p: FourVector) -> CBivector {
        let mut acc = CZERO_BIVECTOR;
        for (pos, b) in &self.nodes {
            let e = Complex64::from_polar(1.0, -minkowski_inner(p, *pos));
            for m in 0..4 {
                for k in 0..4 {
                    acc[m][k] += e * b[m][k];
                }
            }
        }
        let s = -0.5 * self.profile.fourier(p);
        acc.map(|row| row.map(|c| c * s))
    }

    fn reach(&self) -> Reach {
        Reach {
            anchors: self.anchors.clone(),
            profile: self.profile.clone(),
        }
    }
}

/// Index pairs of the independent components of a bivector.
pub(crate) const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub(crate) fn expand(c: &[Complex64; 6]) -> CBivector {
    let mut b = CZERO_BIVECTOR;
    for (i, &(m, n)) in PAIRS.iter().enumerate() {
        b[m][n] = c[i];
        b[n][m] = -c[i];
    }
    b
}

/// `e^{-i p·a} ∫_0^1 v e^{-i v ψ} dv` given `e^{-i p·γ}`, `e^{-i p·a}` and
/// `ψ = p·(γ - a)`.
#[inline]
pub(crate) fn cone_kernel(e_gamma: Complex64, e_apex: Complex64, psi: f64) -> Complex64 {
    if psi.abs() < 0.5 {
        // Σ (-iψ)^n / (n! (n + 2))
        let z = Complex64::new(0.0, -psi);
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.5, 0.0);
        for n in 1..16 {
            term = term * z / n as f64;
            sum += term / (n + 2) as f64;
        }
        e_apex * sum
    } else {
        let inv = 1.0 / psi;
        Complex64::new(0.0, inv) * e_gamma + (e_gamma - e_apex) * (inv * inv)
    }
}

struct ConeNode {
    pos: FourVector,
    /// `w (γ - a) ∧ γ̇` per apex, independent components only.
    area: Vec<[f64; 6]>,
}

/// Semi-analytic transform of cone surface functions: the radial integral
/// is done in closed form, leaving a single loop quadrature. Several apexes
/// share the loop phases.
pub struct ConeSpectrum {
    profile: Profile,
    apexes: Vec<FourVector>,
    nodes: Vec<ConeNode>,
    time_zero: bool,
    anchors: Vec<FourVector>,
}

impl ConeSpectrum {
    pub fn new(profile: Profile, path: &ParamLoop, apexes: &[FourVector], p_max: f64) -> Self {
        let n = (p_max * path.length() / std::f64::consts::PI).ceil() as usize + 48;
        Self::with_nodes(profile, path, apexes, n)
    }

    pub fn with_nodes(profile: Profile, path: &ParamLoop, apexes: &[FourVector], n: usize) -> Self {
        let rule = path.rule(n);
        let nodes: Vec<ConeNode> = rule
            .iter()
            .map(|(v, w)| {
                let g = path.position(v);
                let t = path.tangent(v);
                let area = apexes
                    .iter()
                    .map(|&a| {
                        let b = wedge(g - a, t);
                        std::array::from_fn(|i| w * b[PAIRS[i].0][PAIRS[i].1])
                    })
                    .collect();
                ConeNode { pos: g, area }
            })
            .collect();
        let time_zero = nodes.iter().all(|n| n.pos.t() == 0.0);
        let mut anchors: Vec<FourVector> = path.sample(128).into_iter().map(|p| -p).collect();
        anchors.extend(apexes.iter().map(|&a| -a));
        ConeSpectrum {
            profile,
            apexes: apexes.to_vec(),
            nodes,
            time_zero,
            anchors,
        }
    }

    pub fn apex_count(&self) -> usize {
        self.apexes.len()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Transforms at `(±ω, k)` for every apex.
    pub fn spectrum_pm_all(&self, omega: f64, k: [f64; 3]) -> Vec<(CBivector, CBivector)> {
        let na = self.apexes.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut plus = vec![[zero; 6]; na];
        let mut minus = vec![[zero; 6]; na];
        let apex_phase: Vec<(f64, Complex64, f64, Complex64)> = self
            .apexes
            .iter()
            .map(|a| {
                let kx = k[0] * a[1] + k[1] * a[2] + k[2] * a[3];
                let (pa_p, pa_m) = (omega * a.t() - kx, -omega * a.t() - kx);
                (
                    pa_p,
                    Complex64::from_polar(1.0, -pa_p),
                    pa_m,
                    Complex64::from_polar(1.0, -pa_m),
                )
            })
            .collect();
        for n in &self.nodes {
            let kx = k[0] * n.pos[1] + k[1] * n.pos[2] + k[2] * n.pos[3];
            let base = Complex64::from_polar(1.0, kx);
            let (eg_p, eg_m) = if self.time_zero {
                (base, base)
            } else {
                let time = Complex64::from_polar(1.0, -omega * n.pos.t());
                (base * time, base * time.conj())
            };
            let (pg_p, pg_m) = (omega * n.pos.t() - kx, -omega * n.pos.t() - kx);
            for (j, &(pa_p, ea_p, pa_m, ea_m)) in apex_phase.iter().enumerate() {
                let kp = cone_kernel(eg_p, ea_p, pg_p - pa_p);
                let km = cone_kernel(eg_m, ea_m, pg_m - pa_m);
                let area = &n.area[j];
                for i in 0..6 {
                    plus[j][i] += kp * area[i];
                    minus[j][i] += km * area[i];
                }
            }
        }
        let s = -0.5 * self.profile.fourier(FourVector::from_parts(omega, k));
        (0..na)
            .map(|j| {
                (
                    expand(&plus[j].map(|c| c * s)),
                    expand(&minus[j].map(|c| c * s)),
                )
            })
            .collect()
    }

    /// Transform at an arbitrary momentum for apex `j`.
    pub fn spectrum_for(&self, p: FourVector, j: usize) -> CBivector {
        let a = self.apexes[j];
        let pa = minkowski_inner(p, a);
        let ea = Complex64::from_polar(1.0, -pa);
        let zero = Complex64::new(0.0, 0.0);
        let mut acc = [zero; 6];
        for n in &self.nodes {
            let pg = minkowski_inner(p, n.pos);
            let kern = cone_kernel(Complex64::from_polar(1.0, -pg), ea, pg - pa);
            for i in 0..6 {
                acc[i] += kern * n.area[j][i];
            }
        }
        let s = -0.5 * self.profile.fourier(p);
        expand(&acc.map(|c| c * s))
    }
}

impl TwoFormSpectrum for ConeSpectrum {
    fn spectrum(&self, p: FourVector) -> CBivector {
        self.spectrum_for(p, 0)
    }

    fn spectrum_pm(&self, omega: f64, k: [f64; 3]) -> (CBivector, CBivector) {
        if self.apexes.len() == 1 {
            self.spectrum_pm_all(omega, k).pop().expect("one apex")
        } else {
            (
                self.spectrum_for(FourVector::from_parts(omega, k), 0),
                self.spectrum_for(FourVector::from_parts(-omega, k), 0),
            )
        }
    }

    fn reach(&self) -> Reach {
        Reach {
            anchors: self.anchors.clone(),
            profile: self.profile.clone(),
        }
    }
}

/// Position-space sampler of the loop function on the boundary of a surface.
pub fn boundary_loop_function(f: &SurfaceSmearing) -> LoopSmearing {
    LoopSmearing::with_profile(f.profile.clone(), f.surface.boundary())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_branches_agree_at_switch() {
        let a = Complex64::from_polar(1.0, 0.3);
        for psi in [0.49999999, 0.5, -0.5000001] {
            let g = a * Complex64::from_polar(1.0, -psi);
            let series = {
                let z = Complex64::new(0.0, -psi);
                let mut t = Complex64::new(1.0, 0.0);
                let mut s = Complex64::new(0.5, 0.0);
                for n in 1..16 {
                    t = t * z / n as f64;
                    s += t / (n + 2) as f64;
                }
                a * s
            };
            let closed = Complex64::new(0.0, 1.0 / psi) * g + (g - a) / (psi * psi);
            assert!((series - closed).norm() < 1e-14);
            assert!((cone_kernel(g, a, psi) - closed).norm() < 1e-14);
        }
    }

    #[test]
    fn cone_transform_matches_generic_surface_transform() {
        let path = ParamLoop::circle(FourVector::new(0.1, 0.0, 0.0, 0.0), [1.0, 0.0, 0.0], [0.0, 0.6, 0.8], 0.7)
            .unwrap()
            .time_tilted([0.1, -0.2, 0.0]);
        let apex = FourVector::new(0.0, 0.2, -0.1, 0.3);
        let m = Mollifier::Gaussian { width: 0.2 };
        let generic = SurfaceSmearing::new(m, cone_surface(apex, path.clone())).spectrum(15.0);
        let cone = ConeSpectrum::new(m.into(), &path, &[apex, FourVector::ZERO], 15.0);
        for p in [
            FourVector::new(0.0, 0.0, 0.0, 0.0),
            FourVector::new(1.0, 2.0, -3.0, 0.5),
            FourVector::new(-4.0, 0.1, 2.0, 6.0),
        ] {
            let (a, b) = (generic.spectrum(p), cone.spectrum(p));
            for m in 0..4 {
                for n in 0..4 {
                    assert!((a[m][n] - b[m][n]).norm() < 1e-12, "{p:?}");
                }
            }
        }
        let (w, k) = (3.0, [1.0, -2.0, 2.0]);
        let all = cone.spectrum_pm_all(w, k);
        let direct = cone.spectrum_for(FourVector::from_parts(-w, k), 0);
        assert!((all[0].1[1][2] - direct[1][2]).norm() < 1e-13);
    }
}
