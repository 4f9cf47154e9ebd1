use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

/// Metric diagonal for signature (+,-,-,-).
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Contravariant four-vector `(t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);

    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector([t, x, y, z])
    }

    pub const fn from_parts(t: f64, s: [f64; 3]) -> Self {
        FourVector([t, s[0], s[1], s[2]])
    }

    pub fn t(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    /// Index-lowered components.
    pub fn lower(&self) -> [f64; 4] {
        [self.0[0], -self.0[1], -self.0[2], -self.0[3]]
    }

    pub fn spatial_norm(&self) -> f64 {
        norm3(self.spatial())
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

/// `a·b = a0 b0 - a·b` in signature (+,-,-,-).
pub fn minkowski_inner(a: FourVector, b: FourVector) -> f64 {
    a.0[0] * b.0[0] - a.0[1] * b.0[1] - a.0[2] * b.0[2] - a.0[3] * b.0[3]
}

pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

pub fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    dot3(a, cross3(b, c))
}

/// Real antisymmetric rank-2 tensor with upper indices.
pub type Bivector = [[f64; 4]; 4];

/// `(a ∧ b)^{μν} = a^μ b^ν - a^ν b^μ`.
pub fn wedge(a: FourVector, b: FourVector) -> Bivector {
    std::array::from_fn(|m| std::array::from_fn(|n| a.0[m] * b.0[n] - a.0[n] * b.0[m]))
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for FourVector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl AddAssign for FourVector {
    fn add_assign(&mut self, o: FourVector) {
        for i in 0..4 {
            self.0[i] += o.0[i];
        }
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector(self.0.map(|c| -c))
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: f64) -> FourVector {
        FourVector(self.0.map(|c| c * s))
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, v: FourVector) -> FourVector {
        v * self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_product_signature() {
        let e0 = FourVector::new(1.0, 0.0, 0.0, 0.0);
        let e1 = FourVector::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(minkowski_inner(e0, e0), 1.0);
        assert_eq!(minkowski_inner(e1, e1), -1.0);
        assert_eq!(minkowski_inner(e0, e1), 0.0);
    }

    #[test]
    fn lowering_matches_inner_product() {
        let a = FourVector::new(0.3, -1.2, 2.0, 0.7);
        let b = FourVector::new(-1.1, 0.4, 0.9, -2.5);
        let low = a.lower();
        let direct: f64 = (0..4).map(|i| low[i] * b[i]).sum();
        assert!((direct - minkowski_inner(a, b)).abs() < 1e-15);
    }

    #[test]
    fn cross_product_is_right_handed() {
        assert_eq!(cross3([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]), [0.0, 0.0, 1.0]);
        assert_eq!(det3([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]), 1.0);
    }
}
