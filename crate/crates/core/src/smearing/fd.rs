use super::fields::{OneFormField, TwoFormField};
use crate::geometry::{Bivector, FourVector, METRIC};

fn shifted(x: FourVector, mu: usize, h: f64) -> FourVector {
    let mut y = x;
    y[mu] += h;
    y
}

/// `∂_μ h^ν` for all `μ, ν` by central differences.
fn jacobian(h: &(impl OneFormField + ?Sized), x: FourVector, step: f64) -> [[f64; 4]; 4] {
    let mut d = [[0.0; 4]; 4];
    for mu in 0..4 {
        let (p, m) = (h.eval(shifted(x, mu, step)), h.eval(shifted(x, mu, -step)));
        for nu in 0..4 {
            d[mu][nu] = (p[nu] - m[nu]) / (2.0 * step);
        }
    }
    d
}

/// Divergence `∂_μ h^μ`; vanishes for co-closed one-forms.
pub fn divergence_fd(h: &(impl OneFormField + ?Sized), x: FourVector, step: f64) -> f64 {
    let d = jacobian(h, x, step);
    (0..4).map(|mu| d[mu][mu]).sum()
}

/// Co-derivative `(δf)^μ = -2 ∂_ν f^{νμ}`.
pub fn co_derivative_fd(f: &(impl TwoFormField + ?Sized), x: FourVector, step: f64) -> [f64; 4] {
    let mut out = [0.0; 4];
    for nu in 0..4 {
        let (p, m) = (f.eval(shifted(x, nu, step)), f.eval(shifted(x, nu, -step)));
        for mu in 0..4 {
            out[mu] -= 2.0 * (p[nu][mu] - m[nu][mu]) / (2.0 * step);
        }
    }
    out
}

/// Curl `(dh)^{μν} = ∂^ν h^μ - ∂^μ h^ν`, indices raised with the metric.
pub fn curl_fd(h: &(impl OneFormField + ?Sized), x: FourVector, step: f64) -> Bivector {
    let d = jacobian(h, x, step);
    std::array::from_fn(|mu| std::array::from_fn(|nu| METRIC[nu] * d[nu][mu] - METRIC[mu] * d[mu][nu]))
}

/// D'Alembertian `□h^μ = ∂_ν ∂^ν h^μ`.
pub fn dalembert_fd(h: &(impl OneFormField + ?Sized), x: FourVector, step: f64) -> [f64; 4] {
    let c = h.eval(x);
    let mut out = [0.0; 4];
    for nu in 0..4 {
        let (p, m) = (h.eval(shifted(x, nu, step)), h.eval(shifted(x, nu, -step)));
        for mu in 0..4 {
            out[mu] += METRIC[nu] * (p[mu] - 2.0 * c[mu] + m[mu]) / (step * step);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_fields_have_no_derivatives() {
        let h = |_: FourVector| [1.0, -2.0, 0.5, 3.0];
        let f = |_: FourVector| {
            let mut b = [[0.0; 4]; 4];
            b[0][1] = 1.5;
            b[1][0] = -1.5;
            b
        };
        let x = FourVector::new(0.3, 0.1, -0.2, 0.4);
        assert_eq!(co_derivative_fd(&f, x, 1e-3), [0.0; 4]);
        assert_eq!(curl_fd(&h, x, 1e-3), [[0.0; 4]; 4]);
        assert_eq!(divergence_fd(&h, x, 1e-3), 0.0);
    }

    #[test]
    fn curl_of_gradient_vanishes() {
        // h^μ = ∂^μ φ with φ = sin(t) x^2 + y z
        let h = |x: FourVector| {
            let d = [x[0].cos() * x[1] * x[1], 2.0 * x[0].sin() * x[1], x[3], x[2]];
            std::array::from_fn(|mu| METRIC[mu] * d[mu])
        };
        let c = curl_fd(&h, FourVector::new(0.4, 0.7, -0.3, 0.2), 1e-3);
        assert!(c.iter().flatten().all(|v| v.abs() < 1e-6));
    }

    #[test]
    fn curl_is_antisymmetric() {
        let h = |x: FourVector| [x[1] * x[2], x[0].sin(), x[3] * x[0], x[1] * x[1]];
        let c = curl_fd(&h, FourVector::new(0.1, 0.2, 0.3, 0.4), 1e-3);
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(c[m][n], -c[n][m]);
            }
        }
    }
}
