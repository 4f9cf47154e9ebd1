use num_complex::Complex64;
use proptest::prelude::*;

use linklab::geometry::*;
use linklab::linking::{gauss_linking, GaussOptions};
use linklab::smearing::*;
use linklab::spectral::*;

fn finite() -> impl Strategy<Value = f64> {
    -2.0..2.0f64
}

fn four_vector() -> impl Strategy<Value = FourVector> {
    prop::array::uniform4(finite()).prop_map(FourVector)
}

fn bivector() -> impl Strategy<Value = Bivector> {
    prop::array::uniform6(finite()).prop_map(|v| {
        let mut b = [[0.0; 4]; 4];
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (x, (m, n)) in v.iter().zip(pairs) {
            b[m][n] = *x;
            b[n][m] = -*x;
        }
        b
    })
}

fn complexify(b: &Bivector) -> CBivector {
    b.map(|r| r.map(|x| Complex64::new(x, 0.0)))
}

fn boost_x(rapidity: f64) -> [[f64; 4]; 4] {
    let (c, s) = (rapidity.cosh(), rapidity.sinh());
    [[c, s, 0.0, 0.0], [s, c, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]
}

fn apply(l: &[[f64; 4]; 4], v: FourVector) -> FourVector {
    FourVector(std::array::from_fn(|i| (0..4).map(|j| l[i][j] * v[j]).sum()))
}

fn rotation(axis: [f64; 3], angle: f64) -> [[f64; 4]; 4] {
    let n = norm3(axis).max(1e-9);
    let [x, y, z] = axis.map(|a| a / n);
    let (c, s) = (angle.cos(), angle.sin());
    let t = 1.0 - c;
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, t * x * x + c, t * x * y - s * z, t * x * z + s * y],
        [0.0, t * x * y + s * z, t * y * y + c, t * y * z - s * x],
        [0.0, t * x * z - s * y, t * y * z + s * x, t * z * z + c],
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minkowski_product_is_boost_invariant(a in four_vector(), b in four_vector(), r in -1.5..1.5f64) {
        let l = boost_x(r);
        let before = minkowski_inner(a, b);
        let after = minkowski_inner(apply(&l, a), apply(&l, b));
        prop_assert!((before - after).abs() < 1e-11 * (1.0 + a.euclidean_norm() * b.euclidean_norm()) * r.cosh().powi(2));
    }

    #[test]
    fn kernel_is_antisymmetric_in_each_pair(p in four_vector(), c1 in finite(), c2 in finite()) {
        let q = q_tensor(p, TensorStructure::new(c1, c2));
        for m in 0..4 { for n in 0..4 { for r in 0..4 { for s in 0..4 {
            prop_assert!((q[m][n][r][s] + q[n][m][r][s]).abs() < 1e-12);
            prop_assert!((q[m][n][r][s] + q[m][n][s][r]).abs() < 1e-12);
        }}}}
    }

    #[test]
    fn double_dual_is_minus_identity(f in bivector()) {
        let dd = hodge_dual(&hodge_dual(&f).unwrap()).unwrap();
        for m in 0..4 { for n in 0..4 {
            prop_assert!((dd[m][n] + f[m][n]).abs() < 1e-13);
        }}
    }

    #[test]
    fn second_structure_dualizes_the_second_pair(p in four_vector(), a in bivector(), b in bivector()) {
        let (ca, cb) = (complexify(&a), complexify(&b));
        let cd = complexify(&hodge_dual(&b).unwrap());
        let two = contract_full(&q_tensor(p, TensorStructure::new(0.0, 1.0)), &ca, &cb);
        let one = contract_full(&q_tensor(p, TensorStructure::new(1.0, 0.0)), &ca, &cd);
        prop_assert!((two - 2.0 * one).norm() < 1e-11 * (1.0 + two.norm()));
    }

    #[test]
    fn mollifier_transform_is_normalized_and_even(w in 0.05..1.0f64, p in four_vector(), bump in any::<bool>()) {
        let m = if bump { Mollifier::bump(w).unwrap() } else { Mollifier::gaussian(w).unwrap() };
        prop_assert!((m.fourier(FourVector::ZERO) - 1.0).abs() < 1e-12);
        prop_assert!((m.fourier(p) - m.fourier(-p)).abs() < 1e-14);
        prop_assert!(m.fourier(p).abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn shell_sum_is_linear(a in finite(), b in finite(), mass in 0.0..2.0f64) {
        let grid = ShellGrid::new(6.0, 12, 10, 16).unwrap();
        let f = |omega: f64, k: [f64; 3]| Complex64::new((-omega).exp() * (1.0 + k[0]), k[2] * (-omega).exp());
        let g = |omega: f64, k: [f64; 3]| Complex64::new((-omega * omega).exp(), k[1] * (-omega).exp());
        let sf = shell_sum(&grid, mass, false, |o, k| [f(o, k)]).value[0];
        let sg = shell_sum(&grid, mass, false, |o, k| [g(o, k)]).value[0];
        let sum = shell_sum(&grid, mass, false, |o, k| [a * f(o, k) + b * g(o, k)]).value[0];
        prop_assert!((sum - (a * sf + b * sg)).norm() < 1e-12 * (1.0 + sf.norm() + sg.norm()));
    }

    #[test]
    fn separation_is_symmetric_and_translation_invariant(y in four_vector()) {
        let (a, b) = hopf_pair();
        let a = a.time_tilted([0.1, 0.0, 0.05]);
        let m = loop_separation_margin(&a, &b);
        prop_assert!((m - loop_separation_margin(&b, &a)).abs() < 1e-12);
        let moved = loop_separation_margin(&a.clone().translated(y), &b.clone().translated(y));
        prop_assert!((m - moved).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn gauss_linking_is_rigid_motion_invariant(axis in prop::array::uniform3(finite()), angle in 0.0..6.3f64, y in four_vector()) {
        let (a, b) = hopf_pair();
        let r = rotation(axis, angle);
        let y = FourVector::new(0.0, y[1], y[2], y[3]);
        let (ma, mb) = (a.clone().affine(r, y), b.clone().affine(r, y));
        let opts = GaussOptions::default();
        let v = gauss_linking(&ma, &mb, &opts).unwrap().value;
        prop_assert!((v - 1.0).abs() < 1e-9);
        let swapped = gauss_linking(&mb, &ma, &opts).unwrap().value;
        prop_assert!((v - swapped).abs() < 1e-9);
        let reversed = gauss_linking(&ma.reversed(), &mb, &opts).unwrap().value;
        prop_assert!((v + reversed).abs() < 1e-9);
    }

    #[test]
    fn translating_the_loop_multiplies_its_transform_by_a_phase(y in four_vector(), p in four_vector()) {
        let c = ParamLoop::circle(FourVector::ZERO, [1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 0.8).unwrap();
        let m = Mollifier::gaussian(0.3).unwrap();
        let base = LoopSmearing::new(m, c.clone()).spectrum(6.0).spectrum(p);
        let moved = LoopSmearing::new(m, c.translated(y)).spectrum(6.0).spectrum(p);
        // l(x) = ∫ s(x + γ) γ̇ moves to l(x + y)
        let phase = Complex64::from_polar(1.0, -minkowski_inner(p, y));
        for mu in 0..4 {
            prop_assert!((moved[mu] - phase * base[mu]).norm() < 1e-10 * (1.0 + base[mu].norm()));
        }
    }
}
