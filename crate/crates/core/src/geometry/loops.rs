use std::f64::consts::TAU;

use super::surface::ParamSurface;
use super::vector::{norm3, FourVector};
use crate::error::{Error, Result};
use crate::quadrature::{composite_gauss_legendre, periodic_trapezoid, refine_breaks, Rule};

/// Gauss–Legendre order used on every panel of a piecewise-smooth loop.
pub const PANEL_ORDER: usize = 8;

/// Monotone reparametrization `u -> phi(u)` of `[0, 1]` onto itself.
#[derive(Debug, Clone, PartialEq)]
pub enum Reparam {
    /// `phi(u) = u^p` with `p >= 1`.
    Power(f64),
    /// `phi(u) = u + a sin(2 pi u) / (2 pi)` with `|a| < 1`; keeps periodic smoothness.
    Warp(f64),
    /// `phi(u) = 1 - u`.
    Reverse,
}

impl Reparam {
    fn phi(&self, u: f64) -> f64 {
        match *self {
            Reparam::Power(p) => u.powf(p),
            Reparam::Warp(a) => u + a * (TAU * u).sin() / TAU,
            Reparam::Reverse => 1.0 - u,
        }
    }

    fn dphi(&self, u: f64) -> f64 {
        match *self {
            Reparam::Power(p) => p * u.powf(p - 1.0),
            Reparam::Warp(a) => 1.0 + a * (TAU * u).cos(),
            Reparam::Reverse => -1.0,
        }
    }

    fn inverse(&self, y: f64) -> f64 {
        match *self {
            Reparam::Power(p) => y.powf(1.0 / p),
            Reparam::Reverse => 1.0 - y,
            Reparam::Warp(_) => {
                let (mut lo, mut hi) = (0.0, 1.0);
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    if self.phi(mid) < y {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Reparam::Power(p) if !(p >= 1.0 && p.is_finite()) => Err(Error::DegenerateGeometry(
                format!("power reparametrization needs p >= 1, got {p}"),
            )),
            Reparam::Warp(a) if !(a.abs() < 1.0) => Err(Error::DegenerateGeometry(format!(
                "warp amplitude must satisfy |a| < 1, got {a}"
            ))),
            _ => Ok(()),
        }
    }
}

/// Closed parametrized curve `[0, 1] -> R^4`.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamLoop {
    /// `center + radius (cos(2 pi n u) e1 + sin(2 pi n u) e2)` with `n = turns`.
    Circle {
        center: FourVector,
        e1: [f64; 3],
        e2: [f64; 3],
        radius: f64,
        turns: i32,
    },
    /// `mean + sum_n cos[n-1] cos(2 pi n u) + sin[n-1] sin(2 pi n u)`.
    Fourier {
        mean: FourVector,
        cos: Vec<FourVector>,
        sin: Vec<FourVector>,
    },
    /// Closed polygon, uniformly parametrized; the first vertex is not repeated.
    Polyline { vertices: Vec<FourVector> },
    Reparametrized { base: Box<ParamLoop>, map: Reparam },
    /// `linear * base(u) + offset`.
    Affine {
        base: Box<ParamLoop>,
        linear: [[f64; 4]; 4],
        offset: FourVector,
    },
    /// Boundary of a parametrized square, traversed counterclockwise in `(u, v)`.
    SurfaceBoundary(Box<ParamSurface>),
}

impl ParamLoop {
    /// Circle with an orthonormalized spatial frame.
    pub fn circle(center: FourVector, e1: [f64; 3], e2: [f64; 3], radius: f64) -> Result<Self> {
        let n1 = norm3(e1);
        if !(radius > 0.0 && radius.is_finite()) || n1 < 1e-12 {
            return Err(Error::DegenerateGeometry(format!(
                "circle needs positive radius and nonzero frame (radius {radius})"
            )));
        }
        let e1 = e1.map(|c| c / n1);
        let proj = super::vector::dot3(e1, e2);
        let e2 = [e2[0] - proj * e1[0], e2[1] - proj * e1[1], e2[2] - proj * e1[2]];
        let n2 = norm3(e2);
        if n2 < 1e-12 {
            return Err(Error::DegenerateGeometry("circle frame vectors are parallel".into()));
        }
        Ok(ParamLoop::Circle {
            center,
            e1,
            e2: e2.map(|c| c / n2),
            radius,
            turns: 1,
        })
    }

    /// The same loop traversed `turns` times (negative reverses it).
    pub fn with_turns(self, turns: i32) -> Result<Self> {
        match self {
            ParamLoop::Circle { center, e1, e2, radius, .. } if turns != 0 => Ok(ParamLoop::Circle {
                center,
                e1,
                e2,
                radius,
                turns,
            }),
            _ => Err(Error::Precondition("turns must be nonzero and apply to circles".into())),
        }
    }

    pub fn polyline(vertices: Vec<FourVector>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegenerateGeometry("polyline needs at least 3 vertices".into()));
        }
        let n = vertices.len();
        for k in 0..n {
            if (vertices[(k + 1) % n] - vertices[k]).euclidean_norm() < 1e-14 {
                return Err(Error::DegenerateGeometry(format!("repeated polyline vertex {k}")));
            }
        }
        Ok(ParamLoop::Polyline { vertices })
    }

    pub fn reparametrized(self, map: Reparam) -> Result<Self> {
        map.validate()?;
        Ok(ParamLoop::Reparametrized { base: Box::new(self), map })
    }

    pub fn affine(self, linear: [[f64; 4]; 4], offset: FourVector) -> Self {
        ParamLoop::Affine {
            base: Box::new(self),
            linear,
            offset,
        }
    }

    pub fn translated(self, offset: FourVector) -> Self {
        let id = std::array::from_fn(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 }));
        self.affine(id, offset)
    }

    /// Adds `t += b · x` to every point, tilting the loop in time.
    pub fn time_tilted(self, b: [f64; 3]) -> Self {
        let lin = [
            [1.0, b[0], b[1], b[2]],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ];
        self.affine(lin, FourVector::ZERO)
    }

    /// `u -> gamma(1 - u)`.
    pub fn reversed(&self) -> Self {
        match self {
            ParamLoop::Circle { center, e1, e2, radius, turns } => ParamLoop::Circle {
                center: *center,
                e1: *e1,
                e2: *e2,
                radius: *radius,
                turns: -turns,
            },
            ParamLoop::Fourier { mean, cos, sin } => ParamLoop::Fourier {
                mean: *mean,
                cos: cos.clone(),
                sin: sin.iter().map(|&s| -s).collect(),
            },
            ParamLoop::Polyline { vertices } => {
                let mut v = Vec::with_capacity(vertices.len());
                v.push(vertices[0]);
                v.extend(vertices[1..].iter().rev());
                ParamLoop::Polyline { vertices: v }
            }
            other => ParamLoop::Reparametrized {
                base: Box::new(other.clone()),
                map: Reparam::Reverse,
            },
        }
    }

    pub fn position(&self, u: f64) -> FourVector {
        match self {
            ParamLoop::Circle { center, e1, e2, radius, turns } => {
                let (s, c) = (TAU * *turns as f64 * u).sin_cos();
                let sp: [f64; 3] = std::array::from_fn(|i| radius * (c * e1[i] + s * e2[i]));
                *center + FourVector::from_parts(0.0, sp)
            }
            ParamLoop::Fourier { mean, cos, sin } => {
                let mut p = *mean;
                for (k, (a, b)) in cos.iter().zip(sin.iter()).enumerate() {
                    let (s, c) = (TAU * (k + 1) as f64 * u).sin_cos();
                    p += *a * c + *b * s;
                }
                p
            }
            ParamLoop::Polyline { vertices } => {
                let n = vertices.len();
                let (k, t) = polyline_segment(n, u);
                vertices[k] + (vertices[(k + 1) % n] - vertices[k]) * t
            }
            ParamLoop::Reparametrized { base, map } => base.position(map.phi(u)),
            ParamLoop::Affine { base, linear, offset } => apply(linear, base.position(u)) + *offset,
            ParamLoop::SurfaceBoundary(s) => {
                let (uu, vv, _, _) = boundary_point(u);
                s.position(uu, vv)
            }
        }
    }

    pub fn tangent(&self, u: f64) -> FourVector {
        match self {
            ParamLoop::Circle { e1, e2, radius, turns, .. } => {
                let w = TAU * *turns as f64;
                let (s, c) = (w * u).sin_cos();
                let sp: [f64; 3] = std::array::from_fn(|i| radius * w * (-s * e1[i] + c * e2[i]));
                FourVector::from_parts(0.0, sp)
            }
            ParamLoop::Fourier { cos, sin, .. } => {
                let mut p = FourVector::ZERO;
                for (k, (a, b)) in cos.iter().zip(sin.iter()).enumerate() {
                    let w = TAU * (k + 1) as f64;
                    let (s, c) = (w * u).sin_cos();
                    p += *a * (-w * s) + *b * (w * c);
                }
                p
            }
            ParamLoop::Polyline { vertices } => {
                let n = vertices.len();
                let (k, _) = polyline_segment(n, u);
                (vertices[(k + 1) % n] - vertices[k]) * n as f64
            }
            ParamLoop::Reparametrized { base, map } => base.tangent(map.phi(u)) * map.dphi(u),
            ParamLoop::Affine { base, linear, .. } => apply(linear, base.tangent(u)),
            ParamLoop::SurfaceBoundary(s) => {
                let (uu, vv, du, dv) = boundary_point(u);
                let (su, sv) = s.partials(uu, vv);
                su * du + sv * dv
            }
        }
    }

    /// Parameter values where the tangent may jump, including 0 and 1.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            ParamLoop::Circle { .. } | ParamLoop::Fourier { .. } => vec![0.0, 1.0],
            ParamLoop::Polyline { vertices } => {
                let n = vertices.len();
                (0..=n).map(|k| k as f64 / n as f64).collect()
            }
            ParamLoop::Reparametrized { base, map } => {
                let mut b: Vec<f64> = base.breakpoints().iter().map(|&y| map.inverse(y)).collect();
                b.sort_by(|a, c| a.partial_cmp(c).expect("finite breakpoints"));
                b
            }
            ParamLoop::Affine { base, .. } => base.breakpoints(),
            ParamLoop::SurfaceBoundary(s) => {
                let mut b = Vec::new();
                for edge in 0..4 {
                    let inner = s.edge_breakpoints(edge);
                    for (i, &t) in inner.iter().enumerate() {
                        if edge > 0 && i == 0 {
                            continue;
                        }
                        b.push(0.25 * (edge as f64 + t));
                    }
                }
                b
            }
        }
    }

    /// True when the loop is smooth as a periodic function, so the
    /// trapezoid rule converges spectrally.
    pub fn is_smooth_periodic(&self) -> bool {
        match self {
            ParamLoop::Circle { .. } | ParamLoop::Fourier { .. } => true,
            ParamLoop::Reparametrized { base, map } => {
                matches!(map, Reparam::Warp(_) | Reparam::Reverse) && base.is_smooth_periodic()
            }
            ParamLoop::Affine { base, .. } => base.is_smooth_periodic(),
            ParamLoop::Polyline { .. } | ParamLoop::SurfaceBoundary(_) => false,
        }
    }

    /// Frequency content of a smooth periodic loop, used to size rules.
    fn bandwidth(&self) -> usize {
        match self {
            ParamLoop::Circle { turns, .. } => turns.unsigned_abs() as usize,
            ParamLoop::Fourier { cos, .. } => cos.len().max(1),
            ParamLoop::Reparametrized { base, map } => match map {
                Reparam::Warp(a) => base.bandwidth() * (1 + (4.0 / (1.0 - a.abs())) as usize),
                _ => base.bandwidth(),
            },
            ParamLoop::Affine { base, .. } => base.bandwidth(),
            _ => 1,
        }
    }

    /// Quadrature rule on `[0, 1]` with at least `min_nodes` nodes.
    pub fn rule(&self, min_nodes: usize) -> Rule {
        if self.is_smooth_periodic() {
            let n = min_nodes.max(8 * self.bandwidth());
            periodic_trapezoid(n.div_ceil(2) * 2)
        } else {
            let base = self.breakpoints();
            let intervals = base.len() - 1;
            let per = (min_nodes.div_ceil(PANEL_ORDER * intervals)).max(1);
            composite_gauss_legendre(&refine_breaks(&base, per), PANEL_ORDER)
        }
    }

    /// Rule with `panels` nodes-per-unit blocks: at least `8 * panels` nodes.
    pub fn nodes(&self, panels: usize) -> Rule {
        self.rule(PANEL_ORDER * panels.max(1))
    }

    pub fn sample(&self, n: usize) -> Vec<FourVector> {
        (0..n).map(|j| self.position(j as f64 / n as f64)).collect()
    }

    /// Euclidean length in R^4.
    pub fn length(&self) -> f64 {
        self.rule(512)
            .iter()
            .map(|(u, w)| w * self.tangent(u).euclidean_norm())
            .sum()
    }

    /// Closed polygon through `n` points, keeping existing vertices.
    pub fn to_polyline(&self, n: usize) -> Result<ParamLoop> {
        let base = self.breakpoints();
        let intervals = base.len() - 1;
        let per = n.div_ceil(intervals).max(1);
        let params = refine_breaks(&base, per);
        let vertices = params[..params.len() - 1].iter().map(|&u| self.position(u)).collect();
        ParamLoop::polyline(vertices)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ParamLoop::Circle { radius, turns, center, e1, e2 } => {
                if !(*radius > 0.0) || *turns == 0 || !center.is_finite() {
                    return Err(Error::DegenerateGeometry("invalid circle".into()));
                }
                if (norm3(*e1) - 1.0).abs() > 1e-9
                    || (norm3(*e2) - 1.0).abs() > 1e-9
                    || super::vector::dot3(*e1, *e2).abs() > 1e-9
                {
                    return Err(Error::DegenerateGeometry("circle frame is not orthonormal".into()));
                }
            }
            ParamLoop::Fourier { cos, sin, mean } => {
                if cos.len() != sin.len() || cos.is_empty() || !mean.is_finite() {
                    return Err(Error::DegenerateGeometry(
                        "fourier loop needs matching, nonempty coefficient lists".into(),
                    ));
                }
            }
            ParamLoop::Polyline { vertices } => {
                ParamLoop::polyline(vertices.clone())?;
            }
            ParamLoop::Reparametrized { base, map } => {
                map.validate()?;
                base.validate()?;
            }
            ParamLoop::Affine { base, .. } => base.validate()?,
            ParamLoop::SurfaceBoundary(s) => s.validate()?,
        }
        let pts = self.sample(64);
        if pts.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegenerateGeometry("loop has non-finite points".into()));
        }
        if self.length() < 1e-12 {
            return Err(Error::DegenerateGeometry("loop has zero length".into()));
        }
        Ok(())
    }
}

fn apply(m: &[[f64; 4]; 4], v: FourVector) -> FourVector {
    FourVector(std::array::from_fn(|i| (0..4).map(|j| m[i][j] * v.0[j]).sum()))
}

fn polyline_segment(n: usize, u: f64) -> (usize, f64) {
    let s = u.rem_euclid(1.0) * n as f64;
    let k = (s.floor() as usize).min(n - 1);
    (k, s - k as f64)
}

/// Maps the loop parameter to a point on the boundary of the unit square,
/// returning `(u, v, du/dt, dv/dt)`.
fn boundary_point(t: f64) -> (f64, f64, f64, f64) {
    let s = 4.0 * t.clamp(0.0, 1.0);
    let edge = (s.floor() as usize).min(3);
    let r = s - edge as f64;
    match edge {
        0 => (r, 0.0, 4.0, 0.0),
        1 => (1.0, r, 0.0, 4.0),
        2 => (1.0 - r, 1.0, -4.0, 0.0),
        _ => (0.0, 1.0 - r, 0.0, -4.0),
    }
}
