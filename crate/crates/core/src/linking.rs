//! Linking numbers of spatial loop pairs: Gauss double integral, signed
//! crossing count of a planar projection, and their combination for loops
//! that are merely spacelike.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{
    causal_projection, cross3, det3, dot3, is_spatial, is_time_zero, loop_separation_margin, norm3,
    spatial_distance, sub3, ParamLoop,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussOptions {
    /// Minimum number of nodes per loop on the coarse level.
    pub min_nodes: usize,
    /// Refuse when `d_min / diameter` is below this.
    pub distance_threshold: f64,
    /// Nodes per loop are at least `resolution * length / d_min`.
    pub resolution: f64,
}

impl Default for GaussOptions {
    fn default() -> Self {
        GaussOptions {
            min_nodes: 64,
            distance_threshold: 1e-2,
            resolution: 6.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussLinking {
    pub value: f64,
    /// Difference between two quadrature levels.
    pub error_estimate: f64,
    pub d_min: f64,
    pub nodes: (usize, usize),
}

fn gauss_sum(a: &ParamLoop, b: &ParamLoop, na: usize, nb: usize) -> (f64, usize, usize) {
    let (ra, rb) = (a.rule(na), b.rule(nb));
    let pb: Vec<([f64; 3], [f64; 3], f64)> = rb
        .iter()
        .map(|(v, w)| (b.position(v).spatial(), b.tangent(v).spatial(), w))
        .collect();
    let mut total = 0.0;
    for (u, wu) in ra.iter() {
        let (x, dx) = (a.position(u).spatial(), a.tangent(u).spatial());
        let mut inner = 0.0;
        for &(y, dy, wv) in &pb {
            let d = sub3(x, y);
            let r = norm3(d);
            inner += wv * det3(dx, dy, d) / (r * r * r);
        }
        total += wu * inner;
    }
    (total / (4.0 * PI), ra.len(), rb.len())
}

fn diameter(l: &ParamLoop) -> f64 {
    let pts = l.sample(128);
    let mut d: f64 = 0.0;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            d = d.max(norm3(sub3(p.spatial(), q.spatial())));
        }
    }
    d
}

/// Gauss linking integral of two disjoint loops lying in the `t = 0` plane.
pub fn gauss_linking(a: &ParamLoop, b: &ParamLoop, opts: &GaussOptions) -> Result<GaussLinking> {
    a.validate()?;
    b.validate()?;
    if !is_time_zero(a, 1e-12) || !is_time_zero(b, 1e-12) {
        return Err(Error::Precondition("gauss linking needs loops in the t = 0 plane".into()));
    }
    let d_min = spatial_distance(a, b);
    let scale = diameter(a).max(diameter(b));
    if d_min < opts.distance_threshold * scale {
        return Err(Error::DistanceTooSmall {
            d_min,
            threshold: opts.distance_threshold * scale,
        });
    }
    let count = |l: &ParamLoop| {
        let n = (opts.resolution * l.length() / d_min).ceil() as usize;
        n.max(opts.min_nodes)
    };
    let (na, nb) = (count(a), count(b));
    let (coarse, ..) = gauss_sum(a, b, na, nb);
    let (fine, fa, fb) = gauss_sum(a, b, 2 * na, 2 * nb);
    Ok(GaussLinking {
        value: fine,
        error_estimate: (fine - coarse).abs(),
        d_min,
        nodes: (fa, fb),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingOptions {
    /// Initial projection direction; perturbed on degeneracy.
    pub direction: [f64; 3],
    pub max_attempts: usize,
    /// Relative tolerance for near-degenerate crossings.
    pub eps: f64,
}

impl Default for CrossingOptions {
    fn default() -> Self {
        CrossingOptions {
            direction: [0.1093, 0.2417, 0.9642],
            max_attempts: 10,
            eps: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingLinking {
    pub value: i64,
    pub direction: [f64; 3],
    pub crossings: usize,
    pub attempts: usize,
}

enum Count {
    Ok(i64, usize),
    Degenerate,
}

fn orthonormal_frame(d: [f64; 3]) -> ([f64; 3], [f64; 3], [f64; 3]) {
    let n = norm3(d);
    let d = d.map(|c| c / n);
    let seed = if d[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = cross3(d, seed);
    let n1 = norm3(e1);
    let e1 = e1.map(|c| c / n1);
    (e1, cross3(d, e1), d)
}

fn count_crossings(p: &[[f64; 3]], q: &[[f64; 3]], dir: [f64; 3], eps: f64) -> Count {
    let (e1, e2, d) = orthonormal_frame(dir);
    let proj = |x: [f64; 3]| (dot3(x, e1), dot3(x, e2));
    let (np, nq) = (p.len(), q.len());
    let mut twice = 0i64;
    let mut crossings = 0usize;
    for i in 0..np {
        let (a0, a1) = (p[i], p[(i + 1) % np]);
        let (pa0, pa1) = (proj(a0), proj(a1));
        let da = (pa1.0 - pa0.0, pa1.1 - pa0.1);
        let la = (da.0 * da.0 + da.1 * da.1).sqrt();
        for j in 0..nq {
            let (b0, b1) = (q[j], q[(j + 1) % nq]);
            let (pb0, pb1) = (proj(b0), proj(b1));
            let db = (pb1.0 - pb0.0, pb1.1 - pb0.1);
            let lb = (db.0 * db.0 + db.1 * db.1).sqrt();
            let den = da.0 * db.1 - da.1 * db.0;
            let r = (pb0.0 - pa0.0, pb0.1 - pa0.1);
            if den.abs() <= eps * la * lb {
                // parallel projections: degenerate only if collinear and overlapping
                let off = (r.0 * da.1 - r.1 * da.0).abs();
                if off <= eps * la * la.max(lb).max(1.0) {
                    let t0 = (r.0 * da.0 + r.1 * da.1) / (la * la);
                    let t1 = t0 + (db.0 * da.0 + db.1 * da.1) / (la * la);
                    if t0.max(t1) >= -eps && t0.min(t1) <= 1.0 + eps {
                        return Count::Degenerate;
                    }
                }
                continue;
            }
            let s = (r.0 * db.1 - r.1 * db.0) / den;
            let t = (r.0 * da.1 - r.1 * da.0) / den;
            let inside = |x: f64| x > -eps && x < 1.0 + eps;
            if !(inside(s) && inside(t)) {
                continue;
            }
            if s < eps || s > 1.0 - eps || t < eps || t > 1.0 - eps {
                return Count::Degenerate;
            }
            let xa = lerp(a0, a1, s);
            let xb = lerp(b0, b1, t);
            let delta = sub3(xa, xb);
            let height = dot3(delta, d);
            if height.abs() <= eps * (la + lb) {
                return Count::Degenerate;
            }
            let ta = sub3(a1, a0);
            let tb = sub3(b1, b0);
            twice += det3(ta, tb, delta).signum() as i64;
            crossings += 1;
        }
    }
    if twice % 2 != 0 {
        return Count::Degenerate;
    }
    Count::Ok(twice / 2, crossings)
}

fn lerp(a: [f64; 3], b: [f64; 3], s: f64) -> [f64; 3] {
    std::array::from_fn(|i| a[i] + s * (b[i] - a[i]))
}

/// Deterministic sequence of well-spread directions (golden-angle spiral).
fn perturbed_direction(base: [f64; 3], k: usize) -> [f64; 3] {
    if k == 0 {
        return base;
    }
    let golden = PI * (3.0 - 5f64.sqrt());
    let z = 1.0 - (2.0 * k as f64 + 1.0) / 23.0;
    let r = (1.0 - z * z).sqrt();
    let phi = golden * k as f64 + 0.37;
    let (e1, e2, d) = orthonormal_frame(base);
    std::array::from_fn(|i| z * d[i] + r * (phi.cos() * e1[i] + phi.sin() * e2[i]))
}

/// Signed crossing count `½ Σ ε` of two closed polygons (spatial parts of
/// the vertices). Sign convention agrees with [`gauss_linking`].
pub fn crossing_sign_linking_vertices(
    p: &[[f64; 3]],
    q: &[[f64; 3]],
    opts: &CrossingOptions,
) -> Result<CrossingLinking> {
    if p.len() < 3 || q.len() < 3 {
        return Err(Error::DegenerateGeometry("polygons need at least 3 vertices".into()));
    }
    for k in 0..opts.max_attempts.max(1) {
        let dir = perturbed_direction(opts.direction, k);
        if let Count::Ok(value, crossings) = count_crossings(p, q, dir, opts.eps) {
            return Ok(CrossingLinking {
                value,
                direction: dir,
                crossings,
                attempts: k + 1,
            });
        }
    }
    Err(Error::DegenerateProjection {
        attempts: opts.max_attempts,
    })
}

/// Crossing count of two polyline loops.
pub fn crossing_sign_linking(a: &ParamLoop, b: &ParamLoop, opts: &CrossingOptions) -> Result<CrossingLinking> {
    let verts = |l: &ParamLoop| match l {
        ParamLoop::Polyline { vertices } => Ok(vertices.iter().map(|v| v.spatial()).collect::<Vec<_>>()),
        _ => Err(Error::Precondition("crossing count needs polyline loops".into())),
    };
    crossing_sign_linking_vertices(&verts(a)?, &verts(b)?, opts)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausalLinking {
    pub value: i64,
    pub gauss: GaussLinking,
    pub crossing: CrossingLinking,
    pub vertices: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausalLinkingOptions {
    pub gauss: GaussOptions,
    pub crossing: CrossingOptions,
    pub min_vertices: usize,
    pub refinements: usize,
    /// Allowed `|gauss - crossing|`.
    pub agreement: f64,
}

impl Default for CausalLinkingOptions {
    fn default() -> Self {
        CausalLinkingOptions {
            gauss: GaussOptions::default(),
            crossing: CrossingOptions::default(),
            min_vertices: 64,
            refinements: 5,
            agreement: 1e-3,
        }
    }
}

/// Linking number of two spacelike separated spatial loops: project to the
/// `t = 0` plane along the causal homotopy, then require the Gauss integral
/// and the crossing count of polygonal approximations to agree.
pub fn causal_linking_number(
    a: &ParamLoop,
    b: &ParamLoop,
    opts: &CausalLinkingOptions,
) -> Result<CausalLinking> {
    if !is_spatial(a, 1e-9) || !is_spatial(b, 1e-9) {
        return Err(Error::Precondition("loops must be spatial".into()));
    }
    if loop_separation_margin(a, b) <= 0.0 {
        return Err(Error::Precondition("loops must be spacelike separated".into()));
    }
    let (pa, pb) = (causal_projection(a, 1.0), causal_projection(b, 1.0));
    let gauss = gauss_linking(&pa, &pb, &opts.gauss)?;
    let mut n = opts.min_vertices.max(3);
    let mut last = None;
    for _ in 0..=opts.refinements {
        let (qa, qb) = (pa.to_polyline(n)?, pb.to_polyline(n)?);
        let crossing = crossing_sign_linking(&qa, &qb, &opts.crossing)?;
        if (gauss.value - crossing.value as f64).abs() < opts.agreement {
            return Ok(CausalLinking {
                value: crossing.value,
                gauss,
                crossing,
                vertices: n,
            });
        }
        last = Some(crossing.value);
        n *= 2;
    }
    Err(Error::OracleDisagreement {
        gauss: gauss.value,
        crossing: last.unwrap_or(0) as f64,
    })
}
