use super::loops::ParamLoop;
use super::vector::FourVector;

/// Number of samples used by the pairwise causal predicates.
pub const CAUSAL_SAMPLES: usize = 384;

/// `min |Δx| - |Δt|` over all pairs; positive means spacelike separated.
pub fn separation_margin(a: &[FourVector], b: &[FourVector]) -> f64 {
    let mut best = f64::INFINITY;
    for p in a {
        for q in b {
            let d = *p - *q;
            best = best.min(d.spatial_norm() - d.t().abs());
        }
    }
    best
}

pub fn loop_separation_margin(a: &ParamLoop, b: &ParamLoop) -> f64 {
    separation_margin(&a.sample(CAUSAL_SAMPLES), &b.sample(CAUSAL_SAMPLES))
}

pub fn spacelike_separated(a: &ParamLoop, b: &ParamLoop) -> bool {
    loop_separation_margin(a, b) > 0.0
}

/// Minimum spatial distance between two loops.
pub fn spatial_distance(a: &ParamLoop, b: &ParamLoop) -> f64 {
    let (pa, pb) = (a.sample(CAUSAL_SAMPLES), b.sample(CAUSAL_SAMPLES));
    let mut best = f64::INFINITY;
    for p in &pa {
        for q in &pb {
            best = best.min((*p - *q).spatial_norm());
        }
    }
    best
}

/// Every pair of distinct points is spacelike: `|Δt| <= (1 - tol) |Δx|`,
/// and every tangent is spacelike in the same sense.
pub fn is_spatial(l: &ParamLoop, tol: f64) -> bool {
    let n = CAUSAL_SAMPLES;
    let pts = l.sample(n);
    for (i, p) in pts.iter().enumerate() {
        let tan = l.tangent(i as f64 / n as f64);
        if tan.t().abs() > (1.0 - tol) * tan.spatial_norm() {
            return false;
        }
        for q in &pts[i + 1..] {
            let d = *p - *q;
            if d.t().abs() > (1.0 - tol) * d.spatial_norm() {
                return false;
            }
        }
    }
    true
}

/// All points lie on the `t = 0` hyperplane.
pub fn is_time_zero(l: &ParamLoop, tol: f64) -> bool {
    l.sample(CAUSAL_SAMPLES).iter().all(|p| p.t().abs() <= tol)
        && (0..64).all(|j| l.tangent(j as f64 / 64.0).t().abs() <= tol)
}

/// `H(u, (t, x)) = ((1 - u) t, x)`.
pub fn causal_homotopy(u: f64, x: FourVector) -> FourVector {
    FourVector::from_parts((1.0 - u) * x.t(), x.spatial())
}

/// The loop after the causal homotopy at parameter `u`.
pub fn causal_projection(l: &ParamLoop, u: f64) -> ParamLoop {
    let s = 1.0 - u;
    let lin = [
        [s, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ];
    l.clone().affine(lin, FourVector::ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(center: FourVector, e2: [f64; 3]) -> ParamLoop {
        ParamLoop::circle(center, [1.0, 0.0, 0.0], e2, 1.0).unwrap()
    }

    #[test]
    fn tilted_circle_is_spatial_iff_tilt_below_one() {
        let c = circle(FourVector::ZERO, [0.0, 1.0, 0.0]);
        assert!(is_spatial(&c.clone().time_tilted([0.9, 0.0, 0.0]), 1e-3));
        assert!(!is_spatial(&c.time_tilted([1.1, 0.0, 0.0]), 1e-3));
    }

    #[test]
    fn projection_flattens_time_and_keeps_space() {
        let c = circle(FourVector::new(0.5, 0.0, 0.0, 0.0), [0.0, 1.0, 0.0]).time_tilted([0.4, 0.0, 0.0]);
        let p = causal_projection(&c, 1.0);
        assert!(is_time_zero(&p, 1e-15));
        assert!(is_spatial(&causal_projection(&c, 0.5), 1e-3));
        for &u in &[0.1, 0.6] {
            assert_eq!(p.position(u).spatial(), c.position(u).spatial());
        }
    }

    #[test]
    fn separation_of_offset_circles() {
        let a = circle(FourVector::ZERO, [0.0, 1.0, 0.0]);
        let b = circle(FourVector::new(0.0, 0.0, 0.0, 1.0), [0.0, 1.0, 0.0]);
        let m = loop_separation_margin(&a, &b);
        assert!((m - 1.0).abs() < 1e-12);
        let late = circle(FourVector::new(2.0, 0.0, 0.0, 1.0), [0.0, 1.0, 0.0]);
        assert!(!spacelike_separated(&a, &late));
    }
}
