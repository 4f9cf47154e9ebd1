//! One-dimensional quadrature rules.
//!
//! Gauss–Legendre nodes come from the `gauss-quad` crate; everything here
//! just maps them onto intervals and glues panels together.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

/// Nodes and weights of a one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }
}

/// Gauss–Legendre rule with `n` nodes on `[a, b]`.
pub fn gauss_legendre(a: f64, b: f64, n: usize) -> Rule {
    let n = NonZeroUsize::new(n.max(1)).expect("nonzero");
    let rule = GaussLegendre::new(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let (nodes, weights) = rule
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (mid + half * x, half * w))
        .unzip();
    Rule { nodes, weights }
}

/// Composite Gauss–Legendre rule: `order` nodes on each interval between
/// consecutive breakpoints.
pub fn composite_gauss_legendre(breaks: &[f64], order: usize) -> Rule {
    let reference = gauss_legendre(-1.0, 1.0, order);
    let mut nodes = Vec::with_capacity(order * breaks.len().saturating_sub(1));
    let mut weights = Vec::with_capacity(nodes.capacity());
    for pair in breaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (x, w) in reference.iter() {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    }
    Rule { nodes, weights }
}

/// Uniform breakpoints `0, 1/n, ..., 1` refined inside every interval of `base`.
pub fn refine_breaks(base: &[f64], per_interval: usize) -> Vec<f64> {
    let per = per_interval.max(1);
    let mut out = Vec::with_capacity((base.len().saturating_sub(1)) * per + 1);
    for pair in base.windows(2) {
        for k in 0..per {
            out.push(pair[0] + (pair[1] - pair[0]) * k as f64 / per as f64);
        }
    }
    if let Some(&last) = base.last() {
        out.push(last);
    }
    out
}

/// Trapezoid rule for 1-periodic integrands on `[0, 1)`: spectrally accurate
/// for smooth periodic functions.
pub fn periodic_trapezoid(n: usize) -> Rule {
    let n = n.max(1);
    let h = 1.0 / n as f64;
    Rule {
        nodes: (0..n).map(|j| j as f64 * h).collect(),
        weights: vec![h; n],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let rule = gauss_legendre(0.0, 2.0, 5);
        // degree 9 is the highest degree integrated exactly by 5 nodes
        let val = rule.integrate(|x| x.powi(9));
        assert!((val - 2f64.powi(10) / 10.0).abs() < 1e-10);
    }

    #[test]
    fn composite_rule_spans_all_panels() {
        let rule = composite_gauss_legendre(&[0.0, 0.5, 1.0, 3.0], 4);
        assert_eq!(rule.len(), 12);
        assert!((rule.weights.iter().sum::<f64>() - 3.0).abs() < 1e-14);
        assert!((rule.integrate(|x| x.exp()) - (3f64.exp() - 1.0)).abs() < 1e-5);
    }

    #[test]
    fn refine_breaks_keeps_original_points() {
        let b = refine_breaks(&[0.0, 1.0, 3.0], 2);
        assert_eq!(b, vec![0.0, 0.5, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn periodic_trapezoid_is_spectral() {
        let rule = periodic_trapezoid(24);
        let exact = 1.2660658777520084; // I0(1)
        let val = rule.integrate(|u| (2.0 * std::f64::consts::PI * u).cos().exp());
        assert!((val - exact).abs() < 1e-14);
    }
}
