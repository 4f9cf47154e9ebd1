use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::FourVector;
use crate::par::map_range;
use crate::quadrature::{gauss_legendre, Rule};
use crate::smearing::Reach;

/// Product quadrature on momentum space `R^3`: Gauss–Legendre in `|k|` on
/// `[0, k_max]`, Gauss–Legendre in `cos θ`, trapezoid in `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellGrid {
    pub k_max: f64,
    pub n_radial: usize,
    pub n_polar: usize,
    pub n_azimuth: usize,
    /// Number of refinement doublings applied.
    pub level: u32,
}

/// Relative size of `|ŝ1 ŝ2|` at the radial cutoff of automatic grids.
pub const DEFAULT_CUTOFF_TOLERANCE: f64 = 1e-13;

impl ShellGrid {
    pub fn new(k_max: f64, n_radial: usize, n_polar: usize, n_azimuth: usize) -> Result<Self> {
        let g = ShellGrid {
            k_max,
            n_radial,
            n_polar,
            n_azimuth,
            level: 0,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k_max > 0.0 && self.k_max.is_finite()) {
            return Err(Error::InvalidGrid(format!("k_max must be positive, got {}", self.k_max)));
        }
        if self.n_radial < 4 || self.n_polar < 4 || self.n_azimuth < 4 {
            return Err(Error::InvalidGrid("node counts must be at least 4".into()));
        }
        if self.n_azimuth % 2 != 0 {
            return Err(Error::InvalidGrid("azimuthal node count must be even".into()));
        }
        Ok(())
    }

    /// Counts sized for a phase budget `k_max * extent`. The radial rule
    /// gets more nodes so that the coarse comparison level stays resolved.
    pub fn auto(k_max: f64, extent: f64) -> Self {
        let phase = (k_max * extent).max(0.0);
        let base = (0.26 * phase).ceil() as usize;
        ShellGrid {
            k_max,
            n_radial: (0.4 * phase).ceil() as usize + 16,
            n_polar: base + 12,
            n_azimuth: 2 * base + 16,
            level: 0,
        }
    }

    /// Automatic grid for the product of two smearings.
    pub fn for_reaches(a: &Reach, b: &Reach, tolerance: f64) -> Result<Self> {
        let k_max = cutoff(a, b, tolerance)?;
        let mut extent: f64 = 0.0;
        for p in &a.anchors {
            for q in &b.anchors {
                extent = extent.max((*p - *q).euclidean_norm());
            }
        }
        Ok(Self::auto(k_max, extent))
    }

    /// Doubles every node count `levels` times.
    pub fn refined(&self, levels: u32) -> Self {
        let f = 1usize << levels;
        ShellGrid {
            k_max: self.k_max,
            n_radial: self.n_radial * f,
            n_polar: self.n_polar * f,
            n_azimuth: self.n_azimuth * f,
            level: self.level + levels,
        }
    }

    /// Companion grid with three quarters of the nodes per direction.
    pub fn coarse(&self) -> Self {
        let c = |n: usize| (3 * n).div_ceil(4).max(4);
        ShellGrid {
            k_max: self.k_max,
            n_radial: c(self.n_radial),
            n_polar: c(self.n_polar),
            n_azimuth: c(self.n_azimuth).div_ceil(2) * 2,
            level: self.level,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n_radial * self.n_polar * self.n_azimuth
    }

    pub fn describe(&self) -> String {
        format!(
            "shell grid k_max={:.6} radial={} polar={} azimuth={} level={}",
            self.k_max, self.n_radial, self.n_polar, self.n_azimuth, self.level
        )
    }

    fn rules(&self) -> (Rule, Rule, Vec<(f64, f64)>, f64) {
        let radial = gauss_legendre(0.0, self.k_max, self.n_radial);
        let polar = gauss_legendre(-1.0, 1.0, self.n_polar);
        let h = std::f64::consts::TAU / self.n_azimuth as f64;
        let az = (0..self.n_azimuth).map(|j| (j as f64 * h).sin_cos()).collect();
        (radial, polar, az, h)
    }
}

/// Smallest `k` beyond which `|ŝ1 ŝ2| < tolerance` on the light cone.
fn cutoff(a: &Reach, b: &Reach, tolerance: f64) -> Result<f64> {
    let scale = a.profile.envelope_scale() * b.profile.envelope_scale();
    let w = a.profile.min_scale().min(b.profile.min_scale());
    let env = |k: f64| a.profile.shell_envelope(k) * b.profile.shell_envelope(k);
    let step = 0.05 / w;
    let limit = 1e4 / w;
    let mut k = step;
    let mut last_above = 0.0;
    // scan far enough past the last violation to catch oscillating envelopes
    while k < limit {
        if env(k) > tolerance * scale {
            last_above = k;
        } else if k > 1.5 * last_above + 20.0 * step {
            return Ok(last_above + step);
        }
        k += step;
    }
    Err(Error::NonDecaying { tail: env(limit) / scale })
}

/// Raw product-rule sum of `f(ω, k)`, weighted by `d^3k / (2ω)`.
#[derive(Debug, Clone, Copy)]
pub struct ShellSum<const K: usize> {
    pub value: [Complex64; K],
    /// Weighted sum of the magnitudes reported with each contribution.
    pub abs_sum: f64,
    /// Outermost radial shell relative to the largest one.
    pub tail: f64,
}

///
/// With `half` set only `φ < π` is visited; the caller must then return the
/// sum of the contributions at `k` and `-k` (the grid is symmetric under
/// `k -> -k` because the polar rule is symmetric and `n_azimuth` is even).
pub fn shell_sum<const K: usize>(
    grid: &ShellGrid,
    mass: f64,
    half: bool,
    f: impl Fn(f64, [f64; 3]) -> [Complex64; K] + Sync + Send,
) -> ShellSum<K> {
    shell_sum_scaled(grid, mass, half, |omega, k| {
        let v = f(omega, k);
        (v, v[0].norm())
    })
}

/// As [`shell_sum`], with `f` also returning the magnitude of the terms
/// whose difference it reports, so that cancellation is measured against
/// the uncancelled size.
pub fn shell_sum_scaled<const K: usize>(
    grid: &ShellGrid,
    mass: f64,
    half: bool,
    f: impl Fn(f64, [f64; 3]) -> ([Complex64; K], f64) + Sync + Send,
) -> ShellSum<K> {
    let (radial, polar, mut az, h) = grid.rules();
    if half {
        az.truncate(grid.n_azimuth / 2);
    }
    let per_shell = map_range(radial.len(), |i| {
        let (r, wr) = (radial.nodes[i], radial.weights[i]);
        let omega = (r * r + mass * mass).sqrt();
        let mut acc = [Complex64::new(0.0, 0.0); K];
        let mut abs = 0.0;
        if omega == 0.0 {
            return (acc, abs);
        }
        let radial_w = wr * r * r / (2.0 * omega) * h;
        for (c, wc) in polar.iter() {
            let s = (1.0 - c * c).max(0.0).sqrt();
            for &(sp, cp) in &az {
                let k = [r * s * cp, r * s * sp, r * c];
                let (v, size) = f(omega, k);
                let w = radial_w * wc;
                for (a, x) in acc.iter_mut().zip(v.iter()) {
                    *a += *x * w;
                }
                abs += size * w;
            }
        }
        (acc, abs)
    });
    let mut value = [Complex64::new(0.0, 0.0); K];
    let mut abs_sum = 0.0;
    let mut largest: f64 = 0.0;
    for (acc, abs) in &per_shell {
        for (v, a) in value.iter_mut().zip(acc.iter()) {
            *v += *a;
        }
        abs_sum += abs;
        largest = largest.max(*abs);
    }
    // radial Gauss nodes are ordered, so the last shell is the outermost
    let outer = per_shell.last().map(|x| x.1).unwrap_or(0.0);
    ShellSum {
        value,
        abs_sum,
        tail: if largest > 0.0 { outer / largest } else { 0.0 },
    }
}

/// Fine-grid value with the fine/coarse difference as error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Reduced<const K: usize> {
    pub value: [Complex64; K],
    pub error: [f64; K],
    pub abs_sum: f64,
    pub tail: f64,
}

pub fn reduce_two_level<const K: usize>(
    grid: &ShellGrid,
    mass: f64,
    half: bool,
    f: impl Fn(f64, [f64; 3]) -> [Complex64; K] + Sync + Send,
) -> Reduced<K> {
    reduce_two_level_scaled(grid, mass, half, |omega, k| {
        let v = f(omega, k);
        (v, v[0].norm())
    })
}

pub fn reduce_two_level_scaled<const K: usize>(
    grid: &ShellGrid,
    mass: f64,
    half: bool,
    f: impl Fn(f64, [f64; 3]) -> ([Complex64; K], f64) + Sync + Send,
) -> Reduced<K> {
    let fine = shell_sum_scaled(grid, mass, half, &f);
    let coarse = shell_sum_scaled(&grid.coarse(), mass, half, &f);
    Reduced {
        value: fine.value,
        error: std::array::from_fn(|i| (fine.value[i] - coarse.value[i]).norm()),
        abs_sum: fine.abs_sum,
        tail: fine.tail,
    }
}

/// Value of `∫ dp ε(p0) δ(p² - m²) X(p)` with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellReduction {
    pub value: Complex64,
    pub error_estimate: f64,
    pub tail: f64,
}

/// Tail level above which an integrand counts as non-decaying.
pub const TAIL_TOLERANCE: f64 = 1e-6;

/// `∫ d^3k / (2ω) [X(ω, k) - X(-ω, k)]` with `ω = sqrt(k² + m²)`.
pub fn mass_shell_reduce(
    integrand: impl Fn(FourVector) -> Complex64 + Sync + Send,
    m: f64,
    grid: &ShellGrid,
) -> Result<ShellReduction> {
    grid.validate()?;
    if !(m >= 0.0 && m.is_finite()) {
        return Err(Error::Precondition(format!("mass must be nonnegative, got {m}")));
    }
    let r = reduce_two_level(grid, m, false, |omega, k| {
        [integrand(FourVector::from_parts(omega, k)) - integrand(FourVector::from_parts(-omega, k))]
    });
    if r.tail > TAIL_TOLERANCE {
        return Err(Error::NonDecaying { tail: r.tail });
    }
    Ok(ShellReduction {
        value: r.value[0],
        error_estimate: r.error[0],
        tail: r.tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn even_integrands_vanish() {
        let g = ShellGrid::new(8.0, 24, 12, 16).unwrap();
        let r = mass_shell_reduce(|p| Complex64::new((-(p.euclidean_norm().powi(2))).exp(), p.t().powi(2)), 0.7, &g)
            .unwrap();
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn radial_closed_form() {
        // X = p0 exp(-w^2 |p|_E^2 / 2) at m = 0: 4π ∫ k^2/(2k) 2k e^{-w^2 k^2} dk = π^{3/2}/w^3
        let w: f64 = 0.5;
        let g = ShellGrid::new(14.0, 40, 8, 8).unwrap();
        let r = mass_shell_reduce(
            |p| Complex64::new(p.t() * (-0.5 * w * w * p.euclidean_norm().powi(2)).exp(), 0.0),
            0.0,
            &g,
        )
        .unwrap();
        let exact = PI.powf(1.5) / w.powi(3);
        assert!((r.value.re - exact).abs() < 1e-10 * exact, "{} vs {exact}", r.value.re);
        assert!(r.error_estimate < 1e-8 * exact);
    }

    #[test]
    fn truncated_integrand_is_flagged() {
        let g = ShellGrid::new(1.0, 8, 4, 4).unwrap();
        let r = mass_shell_reduce(|p| Complex64::new(p.t(), 0.0), 0.0, &g);
        assert!(matches!(r, Err(Error::NonDecaying { .. })));
    }

    #[test]
    fn half_sweep_matches_full_sweep() {
        let g = ShellGrid::new(6.0, 16, 10, 12).unwrap();
        let f = |om: f64, k: [f64; 3]| {
            let v = Complex64::new(k[0] + 0.3 * k[2] * k[1], om * k[1]) * (-(k[0] * k[0] + k[1] * k[1] + k[2] * k[2])).exp();
            [v]
        };
        let full = shell_sum(&g, 0.5, false, f);
        let half = shell_sum(&g, 0.5, true, |om, k| {
            let m = [-k[0], -k[1], -k[2]];
            [f(om, k)[0] + f(om, m)[0]]
        });
        assert!((full.value[0] - half.value[0]).norm() < 1e-12 * full.abs_sum);
    }

    #[test]
    fn coarse_grid_is_smaller_and_valid() {
        let g = ShellGrid::auto(40.0, 3.0);
        let c = g.coarse();
        assert!(c.node_count() < g.node_count());
        assert_eq!(c.n_azimuth % 2, 0);
        assert!(c.validate().is_ok());
    }
}
