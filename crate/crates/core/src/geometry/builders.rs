use std::collections::BTreeMap;

use super::loops::ParamLoop;
use super::vector::FourVector;
use crate::error::{Error, Result};

/// Two unit circles in orthogonal planes, each passing through the other's
/// center; linking number `+1`. The distance between them is 1 everywhere.
pub fn hopf_pair() -> (ParamLoop, ParamLoop) {
    let a = ParamLoop::circle(FourVector::ZERO, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 1.0)
        .expect("valid circle");
    let b = ParamLoop::circle(
        FourVector::new(0.0, 1.0, 0.0, 0.0),
        [1.0, 0.0, 0.0],
        [0.0, 0.0, -1.0],
        1.0,
    )
    .expect("valid circle");
    (a, b)
}

/// Core circle of radius `major` in the `z = 0` plane together with a curve
/// winding `lambda` times around it on the torus tube of radius `minor`.
/// The linking number of the pair is `lambda`; the distance between the two
/// curves is exactly `minor`.
pub fn torus_link_pair(lambda: i32, major: f64, minor: f64) -> Result<(ParamLoop, ParamLoop)> {
    if !(major > minor && minor > 0.0) {
        return Err(Error::DegenerateGeometry(format!(
            "torus pair needs major > minor > 0 (got {major}, {minor})"
        )));
    }
    let core = ParamLoop::circle(FourVector::ZERO, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], major)?;
    let l = lambda;
    let mut f = FourierBuilder::default();
    // x = (R - r sin(2 pi l u)) cos(2 pi u)
    f.cos(1, 1, major);
    f.sin(l + 1, 1, -0.5 * minor);
    f.sin(l - 1, 1, -0.5 * minor);
    // y = (R - r sin(2 pi l u)) sin(2 pi u)
    f.sin(1, 2, major);
    f.cos(l - 1, 2, -0.5 * minor);
    f.cos(l + 1, 2, 0.5 * minor);
    // z = r cos(2 pi l u)
    f.cos(l, 3, minor);
    // the tube curve is oriented so that the pair links positively
    Ok((core.reversed(), f.build()))
}

/// Accumulates trigonometric terms with signed harmonics.
#[derive(Default)]
struct FourierBuilder {
    mean: FourVector,
    terms: BTreeMap<usize, (FourVector, FourVector)>,
}

impl FourierBuilder {
    fn cos(&mut self, n: i32, axis: usize, c: f64) {
        if n == 0 {
            self.mean[axis] += c;
        } else {
            self.terms.entry(n.unsigned_abs() as usize).or_default().0[axis] += c;
        }
    }

    fn sin(&mut self, n: i32, axis: usize, c: f64) {
        if n != 0 {
            self.terms.entry(n.unsigned_abs() as usize).or_default().1[axis] += c * n.signum() as f64;
        }
    }

    fn build(self) -> ParamLoop {
        let top = self.terms.keys().copied().max().unwrap_or(1).max(1);
        let mut cos = vec![FourVector::ZERO; top];
        let mut sin = vec![FourVector::ZERO; top];
        for (n, (c, s)) in self.terms {
            cos[n - 1] = c;
            sin[n - 1] = s;
        }
        ParamLoop::Fourier {
            mean: self.mean,
            cos,
            sin,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::causal::spatial_distance;
    use std::f64::consts::TAU;

    #[test]
    fn torus_curve_matches_closed_form() {
        for lambda in -3..=3 {
            let (_, b) = torus_link_pair(lambda, 1.5, 1.0).unwrap();
            for &u in &[0.0, 0.13, 0.5, 0.77] {
                let s = (TAU * lambda as f64 * u).sin();
                let rho = 1.5 - s;
                let want = [rho * (TAU * u).cos(), rho * (TAU * u).sin(), (TAU * lambda as f64 * u).cos()];
                let got = b.position(u).spatial();
                for i in 0..3 {
                    assert!((got[i] - want[i]).abs() < 1e-12, "lambda {lambda}");
                }
            }
        }
    }

    #[test]
    fn torus_pair_distance_is_minor_radius() {
        let (a, b) = torus_link_pair(2, 1.5, 0.8).unwrap();
        assert!((spatial_distance(&a, &b) - 0.8).abs() < 1e-3);
    }

    #[test]
    fn hopf_circles_stay_at_unit_distance() {
        let (a, b) = hopf_pair();
        assert!((spatial_distance(&a, &b) - 1.0).abs() < 1e-9);
    }
}
