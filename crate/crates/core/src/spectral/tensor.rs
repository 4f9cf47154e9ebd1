use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{Bivector, FourVector, METRIC};
use crate::smearing::CBivector;

/// Rank-4 tensor with all indices down.
pub type Rank4 = [[[[f64; 4]; 4]; 4]; 4];

/// Coefficients of the two admissible massless tensor structures.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TensorStructure {
    pub c1: f64,
    pub c2: f64,
}

impl TensorStructure {
    pub const fn new(c1: f64, c2: f64) -> Self {
        TensorStructure { c1, c2 }
    }
}

/// `ε^{μνρσ}` with `ε^{0123} = +1`.
pub fn levi_civita(idx: [usize; 4]) -> f64 {
    if idx.iter().any(|&i| i > 3) {
        return 0.0;
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if idx[i] == idx[j] {
                return 0.0;
            }
        }
    }
    let mut v = idx;
    let mut sign = 1.0;
    for i in 0..4 {
        while v[i] != i {
            let j = v[i];
            v.swap(i, j);
            sign = -sign;
        }
    }
    sign
}

/// `ε^{τυ}_{ρσ} = ε^{τυαβ} g_{αρ} g_{βσ}`.
pub fn levi_civita_mixed(t: usize, u: usize, r: usize, s: usize) -> f64 {
    levi_civita([t, u, r, s]) * METRIC[r] * METRIC[s]
}

/// The kernel `Q_{μνρσ}(p)`; `p` contravariant.
pub fn q_tensor(p: FourVector, ts: TensorStructure) -> Rank4 {
    let pl = p.lower();
    let g = |a: usize, b: usize| if a == b { METRIC[a] } else { 0.0 };
    let line = |m: usize, n: usize, r: usize, s: usize| {
        pl[m] * pl[r] * g(n, s) - pl[n] * pl[r] * g(m, s) - pl[m] * pl[s] * g(n, r)
            + pl[n] * pl[s] * g(m, r)
    };
    let mut q = [[[[0.0; 4]; 4]; 4]; 4];
    for m in 0..4 {
        for n in 0..4 {
            for r in 0..4 {
                for s in 0..4 {
                    let mut v = ts.c1 * line(m, n, r, s);
                    if ts.c2 != 0.0 {
                        let mut dual = 0.0;
                        for t in 0..4 {
                            for u in 0..4 {
                                let e = levi_civita_mixed(t, u, r, s);
                                if e != 0.0 {
                                    dual += line(m, n, t, u) * e;
                                }
                            }
                        }
                        v += ts.c2 * dual;
                    }
                    q[m][n][r][s] = v;
                }
            }
        }
    }
    q
}

/// Full contraction `Q_{μνρσ} a^{μν} b^{ρσ}`.
pub fn contract_full(q: &Rank4, a: &CBivector, b: &CBivector) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..4 {
        for n in 0..4 {
            for r in 0..4 {
                for s in 0..4 {
                    acc += q[m][n][r][s] * a[m][n] * b[r][s];
                }
            }
        }
    }
    acc
}

fn antisymmetry_defect(f: &Bivector) -> f64 {
    let mut d: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for m in 0..4 {
        for n in 0..4 {
            d = d.max((f[m][n] + f[n][m]).abs());
            scale = scale.max(f[m][n].abs());
        }
    }
    d / scale.max(1e-300)
}

/// `(★f)^{ρσ} = ½ ε^{ρσ}_{τυ} f^{τυ}` for contravariant components.
pub fn hodge_dual(f: &Bivector) -> Result<Bivector> {
    let defect = antisymmetry_defect(f);
    if defect > 1e-12 {
        return Err(Error::NotAntisymmetric { defect });
    }
    Ok(std::array::from_fn(|r| {
        std::array::from_fn(|s| {
            let mut acc = 0.0;
            for t in 0..4 {
                for u in 0..4 {
                    acc += 0.5 * levi_civita_mixed(r, s, t, u) * f[t][u];
                }
            }
            acc
        })
    }))
}

/// Complex Hodge dual without the antisymmetry check.
pub fn hodge_dual_complex(f: &CBivector) -> CBivector {
    // only the six ε-pairings survive; spelled out for speed
    let l = |a: usize, b: usize| f[a][b] * (METRIC[a] * METRIC[b]);
    let mut d = [[Complex64::new(0.0, 0.0); 4]; 4];
    // (★f)^{ρσ} = ε^{ρσαβ} f_{αβ}, summed over α < β
    const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    for &(r, s) in &PAIRS {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(a, b) in &PAIRS {
            let e = levi_civita([r, s, a, b]);
            if e != 0.0 {
                acc += e * l(a, b);
            }
        }
        d[r][s] = acc;
        d[s][r] = -acc;
    }
    d
}

/// `(p·a)^ν = p_μ a^{μν}`.
#[inline]
pub fn contract_momentum(pl: &[f64; 4], a: &CBivector) -> [Complex64; 4] {
    std::array::from_fn(|n| a[0][n] * pl[0] + a[1][n] * pl[1] + a[2][n] * pl[2] + a[3][n] * pl[3])
}

#[inline]
pub fn minkowski_dot_c(u: &[Complex64; 4], v: &[Complex64; 4]) -> Complex64 {
    u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3]
}

/// The two structure contractions `(T1, T2)` with
/// `Q a b = c1 T1 + c2 T2`: `T1 = 4 (p·a)·(p·b)`, `T2 = 8 (p·a)·(p·★b)`.
#[inline]
pub fn structure_contractions(p: FourVector, a: &CBivector, b: &CBivector, need_dual: bool) -> (Complex64, Complex64) {
    let pl = p.lower();
    let pa = contract_momentum(&pl, a);
    let pb = contract_momentum(&pl, b);
    let t1 = 4.0 * minkowski_dot_c(&pa, &pb);
    let t2 = if need_dual {
        let pd = contract_momentum(&pl, &hodge_dual_complex(b));
        8.0 * minkowski_dot_c(&pa, &pd)
    } else {
        Complex64::new(0.0, 0.0)
    };
    (t1, t2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_bivector(rng: &mut ChaCha8Rng) -> Bivector {
        let mut b = [[0.0; 4]; 4];
        for m in 0..4 {
            for n in m + 1..4 {
                b[m][n] = rng.gen_range(-1.0..1.0);
                b[n][m] = -b[m][n];
            }
        }
        b
    }

    fn complexify(b: &Bivector, c: &Bivector) -> CBivector {
        std::array::from_fn(|m| std::array::from_fn(|n| Complex64::new(b[m][n], c[m][n])))
    }

    #[test]
    fn levi_civita_signs() {
        assert_eq!(levi_civita([0, 1, 2, 3]), 1.0);
        assert_eq!(levi_civita([1, 0, 2, 3]), -1.0);
        assert_eq!(levi_civita([1, 2, 3, 0]), -1.0);
        assert_eq!(levi_civita([0, 0, 2, 3]), 0.0);
        // lowered: ε_{0123} = -1
        let low = levi_civita([0, 1, 2, 3]) * METRIC.iter().product::<f64>();
        assert_eq!(low, -1.0);
    }

    #[test]
    fn printed_component_example() {
        let q = q_tensor(FourVector::new(1.0, 0.0, 0.0, 1.0), TensorStructure::new(1.0, 0.0));
        // p_0 p_0 g_11 + p_1 p_1 g_00 with p_1 = 0
        assert_eq!(q[0][1][0][1], -1.0);
    }

    #[test]
    fn hodge_of_time_x_plane() {
        let mut f = [[0.0; 4]; 4];
        f[0][1] = 1.0;
        f[1][0] = -1.0;
        let d = hodge_dual(&f).unwrap();
        // ε^{2301} g_00 g_11 = -1
        assert_eq!(d[2][3], -1.0);
        assert_eq!(d[3][2], 1.0);
        assert_eq!(d[0][1], 0.0);
    }

    #[test]
    fn double_dual_is_minus_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = random_bivector(&mut rng);
            let dd = hodge_dual(&hodge_dual(&f).unwrap()).unwrap();
            for m in 0..4 {
                for n in 0..4 {
                    assert!((dd[m][n] + f[m][n]).abs() < 1e-14);
                }
            }
            let c = hodge_dual_complex(&complexify(&f, &f));
            let d = hodge_dual(&f).unwrap();
            assert!((c[1][3].re - d[1][3]).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_symmetric_input() {
        let mut f = [[0.0; 4]; 4];
        f[0][1] = 1.0;
        f[1][0] = 1.0;
        assert!(matches!(hodge_dual(&f), Err(Error::NotAntisymmetric { .. })));
    }

    #[test]
    fn fast_contraction_matches_full_tensor() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let p = FourVector(std::array::from_fn(|_| rng.gen_range(-2.0..2.0)));
            let a = complexify(&random_bivector(&mut rng), &random_bivector(&mut rng));
            let b = complexify(&random_bivector(&mut rng), &random_bivector(&mut rng));
            let ts = TensorStructure::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let full = contract_full(&q_tensor(p, ts), &a, &b);
            let (t1, t2) = structure_contractions(p, &a, &b, true);
            assert!((full - (ts.c1 * t1 + ts.c2 * t2)).norm() < 1e-12 * full.norm().max(1.0));
        }
    }

    #[test]
    fn c2_line_is_c1_line_with_dualized_second_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = FourVector(std::array::from_fn(|_| rng.gen_range(-2.0..2.0)));
        let a = random_bivector(&mut rng);
        let b = random_bivector(&mut rng);
        let z = [[0.0; 4]; 4];
        let (ca, cb) = (complexify(&a, &z), complexify(&b, &z));
        let cd = complexify(&hodge_dual(&b).unwrap(), &z);
        let c2 = contract_full(&q_tensor(p, TensorStructure::new(0.0, 1.0)), &ca, &cb);
        let c1 = contract_full(&q_tensor(p, TensorStructure::new(1.0, 0.0)), &ca, &cd);
        assert!((c2 - 2.0 * c1).norm() < 1e-12);
    }
}
