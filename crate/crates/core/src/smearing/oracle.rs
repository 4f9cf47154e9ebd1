use num_complex::Complex64;

use crate::geometry::{minkowski_inner, FourVector};
use crate::par::map_range;

/// Axis-aligned box in R^4 sampled with a uniform spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleBox {
    pub lo: FourVector,
    pub hi: FourVector,
    pub spacing: f64,
}

impl OracleBox {
    /// Smallest box containing `points` padded by `pad` in every direction.
    pub fn around(points: &[FourVector], pad: f64, spacing: f64) -> Self {
        let mut lo = FourVector([f64::INFINITY; 4]);
        let mut hi = FourVector([f64::NEG_INFINITY; 4]);
        for p in points {
            for i in 0..4 {
                lo[i] = lo[i].min(p[i] - pad);
                hi[i] = hi[i].max(p[i] + pad);
            }
        }
        OracleBox { lo, hi, spacing }
    }

    fn counts(&self) -> [usize; 4] {
        std::array::from_fn(|i| ((self.hi[i] - self.lo[i]) / self.spacing).ceil().max(1.0) as usize)
    }

    /// Cell midpoints.
    fn points(&self) -> Vec<FourVector> {
        let n = self.counts();
        let h = self.spacing;
        let mut out = Vec::with_capacity(n.iter().product());
        for a in 0..n[0] {
            for b in 0..n[1] {
                for c in 0..n[2] {
                    for d in 0..n[3] {
                        let idx = [a, b, c, d];
                        out.push(FourVector(std::array::from_fn(|i| {
                            self.lo[i] + (idx[i] as f64 + 0.5) * h
                        })));
                    }
                }
            }
        }
        out
    }

    fn is_boundary(&self, x: FourVector) -> bool {
        (0..4).any(|i| x[i] - self.lo[i] < self.spacing || self.hi[i] - x[i] < self.spacing)
    }
}

/// Field samples on one box.
struct Samples<const N: usize> {
    points: Vec<FourVector>,
    values: Vec<[f64; N]>,
    cell: f64,
    boundary_max: f64,
    peak: f64,
    volume: f64,
}

impl<const N: usize> Samples<N> {
    fn new(field: &(impl Fn(FourVector) -> [f64; N] + Sync), bx: &OracleBox) -> Self {
        let points = bx.points();
        let values = map_range(points.len(), |i| field(points[i]));
        let mut boundary_max: f64 = 0.0;
        let mut peak: f64 = 0.0;
        for (p, v) in points.iter().zip(&values) {
            let m = v.iter().fold(0.0f64, |a, c| a.max(c.abs()));
            peak = peak.max(m);
            if bx.is_boundary(*p) {
                boundary_max = boundary_max.max(m);
            }
        }
        let volume: f64 = (0..4).map(|i| bx.hi[i] - bx.lo[i]).product();
        Samples {
            points,
            values,
            cell: bx.spacing.powi(4),
            boundary_max,
            peak,
            volume,
        }
    }

    fn transform(&self, p: FourVector) -> [Complex64; N] {
        let chunk = 4096;
        let parts = map_range(self.points.len().div_ceil(chunk), |c| {
            let mut acc = [Complex64::new(0.0, 0.0); N];
            let end = ((c + 1) * chunk).min(self.points.len());
            for i in c * chunk..end {
                let e = Complex64::from_polar(1.0, minkowski_inner(p, self.points[i]));
                for (a, v) in acc.iter_mut().zip(&self.values[i]) {
                    *a += e * *v;
                }
            }
            acc
        });
        let mut total = [Complex64::new(0.0, 0.0); N];
        for part in parts {
            for (t, v) in total.iter_mut().zip(part) {
                *t += v;
            }
        }
        total.map(|c| c * self.cell)
    }
}

/// Result of the grid oracle at one momentum.
#[derive(Debug, Clone, Copy)]
pub struct OracleValue<const N: usize> {
    pub value: [Complex64; N],
    /// Difference between two independent grids plus a truncation bound.
    pub error_estimate: f64,
    /// Boundary samples are not negligible relative to the peak.
    pub box_too_small: bool,
}

/// Brute-force Fourier transform `∫ f(x) e^{i p·x} d^4x` by midpoint sums
/// on two unrelated grids (spacings `h` and `0.8 h`).
pub struct FourierGridOracle<const N: usize> {
    base: Samples<N>,
    finer: Samples<N>,
    boundary_tolerance: f64,
}

impl<const N: usize> FourierGridOracle<N> {
    /// `field_alt` samples the same field with an independent position-space
    /// quadrature so that sampler error shows up in the estimate.
    pub fn new(
        field: impl Fn(FourVector) -> [f64; N] + Sync,
        field_alt: impl Fn(FourVector) -> [f64; N] + Sync,
        bx: OracleBox,
    ) -> Self {
        let alt_box = OracleBox {
            spacing: 0.8 * bx.spacing,
            ..bx
        };
        FourierGridOracle {
            base: Samples::new(&field, &bx),
            finer: Samples::new(&field_alt, &alt_box),
            boundary_tolerance: 1e-10,
        }
    }

    pub fn sample_count(&self) -> usize {
        self.base.points.len() + self.finer.points.len()
    }

    /// Value of the finer grid. Twice the grid difference bounds its error
    /// whenever the midpoint error falls at least like `h²`.
    pub fn at(&self, p: FourVector) -> OracleValue<N> {
        let a = self.base.transform(p);
        let b = self.finer.transform(p);
        let diff = a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        let tail = self.base.boundary_max * self.base.volume;
        OracleValue {
            value: b,
            error_estimate: 2.0 * diff + tail,
            box_too_small: self.base.boundary_max > self.boundary_tolerance * self.base.peak,
        }
    }
}

/// Single-momentum convenience wrapper around [`FourierGridOracle`].
pub fn fourier_grid_oracle<const N: usize>(
    field: impl Fn(FourVector) -> [f64; N] + Sync + Clone,
    p: FourVector,
    bx: OracleBox,
) -> OracleValue<N> {
    FourierGridOracle::new(field.clone(), field, bx).at(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smearing::mollifier::Mollifier;

    #[test]
    fn gaussian_transform_is_reproduced() {
        let m = Mollifier::Gaussian { width: 0.4 };
        let bx = OracleBox::around(&[FourVector::ZERO], 3.4, 0.3);
        let f = move |x: FourVector| [m.value(x)];
        let oracle = FourierGridOracle::new(f, f, bx);
        for p in [FourVector::ZERO, FourVector::new(1.0, -2.0, 0.5, 3.0)] {
            let v = oracle.at(p);
            assert!((v.value[0].re - m.fourier(p)).abs() < 1e-9);
            assert!(v.value[0].im.abs() < 1e-9);
            assert!(v.error_estimate < 1e-8);
            assert!(!v.box_too_small);
        }
    }

    #[test]
    fn small_box_is_flagged() {
        let m = Mollifier::Gaussian { width: 0.4 };
        let bx = OracleBox::around(&[FourVector::ZERO], 0.8, 0.2);
        let v = fourier_grid_oracle(move |x: FourVector| [m.value(x)], FourVector::ZERO, bx);
        assert!(v.box_too_small);
    }
}
