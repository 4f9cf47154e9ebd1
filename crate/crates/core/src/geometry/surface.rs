use super::loops::{ParamLoop, PANEL_ORDER};
use super::vector::{wedge, Bivector, FourVector};
use crate::error::{Error, Result};
use crate::quadrature::{composite_gauss_legendre, periodic_trapezoid, refine_breaks, Rule};

/// Parametrized surface `[0, 1]^2 -> R^4` whose boundary is a loop.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamSurface {
    /// `apex + u (base(v) - apex)`; boundary is `base`.
    Cone { apex: FourVector, base: ParamLoop },
    /// `(1 - u) a(v) + u b(v)`; boundary is `b - a`.
    Ruled { a: ParamLoop, b: ParamLoop },
}

/// Product quadrature node on the parameter square.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceNode {
    pub u: f64,
    pub v: f64,
    pub weight: f64,
}

impl ParamSurface {
    pub fn cone(apex: FourVector, base: ParamLoop) -> Self {
        ParamSurface::Cone { apex, base }
    }

    pub fn ruled(a: ParamLoop, b: ParamLoop) -> Self {
        ParamSurface::Ruled { a, b }
    }

    pub fn position(&self, u: f64, v: f64) -> FourVector {
        match self {
            ParamSurface::Cone { apex, base } => *apex + (base.position(v) - *apex) * u,
            ParamSurface::Ruled { a, b } => a.position(v) * (1.0 - u) + b.position(v) * u,
        }
    }

    /// `(d sigma / du, d sigma / dv)`.
    pub fn partials(&self, u: f64, v: f64) -> (FourVector, FourVector) {
        match self {
            ParamSurface::Cone { apex, base } => (base.position(v) - *apex, base.tangent(v) * u),
            ParamSurface::Ruled { a, b } => (
                b.position(v) - a.position(v),
                a.tangent(v) * (1.0 - u) + b.tangent(v) * u,
            ),
        }
    }

    /// Oriented area element `sigma_u ∧ sigma_v`.
    pub fn bivector(&self, u: f64, v: f64) -> Bivector {
        let (su, sv) = self.partials(u, v);
        wedge(su, sv)
    }

    /// The counterclockwise boundary of the parameter square, as a loop.
    pub fn boundary(&self) -> ParamLoop {
        ParamLoop::SurfaceBoundary(Box::new(self.clone()))
    }

    /// Breakpoints of the `edge`-th boundary side in its own parameter.
    pub(crate) fn edge_breakpoints(&self, edge: usize) -> Vec<f64> {
        let reversed = |b: Vec<f64>| {
            let mut r: Vec<f64> = b.iter().map(|t| 1.0 - t).collect();
            r.reverse();
            r
        };
        match (self, edge) {
            (ParamSurface::Cone { base, .. }, 1) => base.breakpoints(),
            (ParamSurface::Ruled { b, .. }, 1) => b.breakpoints(),
            (ParamSurface::Ruled { a, .. }, 3) => reversed(a.breakpoints()),
            _ => vec![0.0, 1.0],
        }
    }

    fn loop_breakpoints(&self) -> Vec<f64> {
        let mut b = match self {
            ParamSurface::Cone { base, .. } => base.breakpoints(),
            ParamSurface::Ruled { a, b } => {
                let mut x = a.breakpoints();
                x.extend(b.breakpoints());
                x
            }
        };
        b.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
        b.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
        b
    }

    fn loops_smooth(&self) -> bool {
        match self {
            ParamSurface::Cone { base, .. } => base.is_smooth_periodic(),
            ParamSurface::Ruled { a, b } => a.is_smooth_periodic() && b.is_smooth_periodic(),
        }
    }

    /// Rule along the loop direction `v` with at least `min_nodes` nodes.
    pub fn v_rule(&self, min_nodes: usize) -> Rule {
        if self.loops_smooth() {
            let probe = match self {
                ParamSurface::Cone { base, .. } => base.rule(min_nodes).len(),
                ParamSurface::Ruled { a, b } => a.rule(min_nodes).len().max(b.rule(min_nodes).len()),
            };
            periodic_trapezoid(probe)
        } else {
            let base = self.loop_breakpoints();
            let per = min_nodes.div_ceil(PANEL_ORDER * (base.len() - 1)).max(1);
            composite_gauss_legendre(&refine_breaks(&base, per), PANEL_ORDER)
        }
    }

    /// Product rule: Gauss–Legendre in `u`, loop rule in `v`.
    pub fn rule(&self, u_nodes: usize, v_nodes: usize) -> Vec<SurfaceNode> {
        let ur = composite_gauss_legendre(
            &refine_breaks(&[0.0, 1.0], u_nodes.div_ceil(PANEL_ORDER).max(1)),
            PANEL_ORDER,
        );
        let vr = self.v_rule(v_nodes);
        let mut out = Vec::with_capacity(ur.len() * vr.len());
        for (u, wu) in ur.iter() {
            for (v, wv) in vr.iter() {
                out.push(SurfaceNode { u, v, weight: wu * wv });
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ParamSurface::Cone { apex, base } => {
                if !apex.is_finite() {
                    return Err(Error::DegenerateGeometry("cone apex is not finite".into()));
                }
                base.validate()
            }
            ParamSurface::Ruled { a, b } => {
                a.validate()?;
                b.validate()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_circle() -> ParamLoop {
        ParamLoop::circle(FourVector::ZERO, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 1.0).unwrap()
    }

    #[test]
    fn disk_area_from_bivector() {
        let disk = ParamSurface::cone(FourVector::ZERO, unit_circle());
        let area: f64 = disk
            .rule(16, 64)
            .iter()
            .map(|n| n.weight * disk.bivector(n.u, n.v)[1][2])
            .sum();
        assert!((area - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn boundary_of_cone_is_the_base_loop() {
        let apex = FourVector::new(0.0, 0.2, -0.1, 0.5);
        let s = ParamSurface::cone(apex, unit_circle());
        let b = s.boundary();
        // the u = 1 edge is the second quarter of the boundary loop
        for &t in &[0.1, 0.5, 0.8] {
            let p = b.position(0.25 + 0.25 * t);
            assert!((p - unit_circle().position(t)).euclidean_norm() < 1e-12);
        }
        let rule = b.rule(256);
        let mut circ = FourVector::ZERO;
        for (u, w) in rule.iter() {
            circ += b.tangent(u) * w;
        }
        assert!(circ.euclidean_norm() < 1e-12);
    }

    #[test]
    fn ruled_surface_boundary_has_kinks_of_both_loops() {
        let a = unit_circle();
        let b = unit_circle().translated(FourVector::new(0.0, 0.0, 0.0, 1.0));
        let s = ParamSurface::ruled(a, b);
        let bp = s.boundary().breakpoints();
        assert_eq!(bp, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
