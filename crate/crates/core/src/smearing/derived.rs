use num_complex::Complex64;

use super::fields::{CBivector, OneFormSpectrum, Reach, TwoFormSpectrum, CZERO_BIVECTOR};
use crate::geometry::{FourVector, METRIC};

/// Multiplier of `∂_μ` in momentum space: `-i p_μ`, or the central
/// difference `-i sin(h p_μ) / h` when a step is given.
fn derivative_symbol(p_low: f64, step: Option<f64>) -> Complex64 {
    match step {
        None => Complex64::new(0.0, -p_low),
        Some(h) => Complex64::new(0.0, -(h * p_low).sin() / h),
    }
}

/// Multiplier of `∂_μ ∂_μ` (no sum): `-p_μ²`, or `-(2 - 2 cos(h p_μ)) / h²`.
fn second_symbol(p_low: f64, step: Option<f64>) -> f64 {
    match step {
        None => -p_low * p_low,
        Some(h) => -(2.0 - 2.0 * (h * p_low).cos()) / (h * h),
    }
}

/// Transform of the curl `dh`, exact or with a finite-difference step.
pub struct CurlSpectrum<'a, H: ?Sized> {
    pub h: &'a H,
    pub step: Option<f64>,
}

impl<H: OneFormSpectrum + ?Sized> CurlSpectrum<'_, H> {
    fn apply(&self, p: FourVector, hh: [Complex64; 4]) -> CBivector {
        let low = p.lower();
        let d: [Complex64; 4] = std::array::from_fn(|mu| derivative_symbol(low[mu], self.step));
        std::array::from_fn(|mu| {
            std::array::from_fn(|nu| METRIC[nu] * d[nu] * hh[mu] - METRIC[mu] * d[mu] * hh[nu])
        })
    }
}

impl<H: OneFormSpectrum + ?Sized> TwoFormSpectrum for CurlSpectrum<'_, H> {
    fn spectrum(&self, p: FourVector) -> CBivector {
        self.apply(p, self.h.spectrum(p))
    }

    fn spectrum_pm(&self, omega: f64, k: [f64; 3]) -> (CBivector, CBivector) {
        let (a, b) = self.h.spectrum_pm(omega, k);
        (
            self.apply(FourVector::from_parts(omega, k), a),
            self.apply(FourVector::from_parts(-omega, k), b),
        )
    }

    fn is_real(&self) -> bool {
        self.h.is_real()
    }

    fn reach(&self) -> Reach {
        self.h.reach()
    }
}

/// Transform of `□h`, exact (`-p² ĥ`) or with a finite-difference step.
pub struct DalembertSpectrum<'a, H: ?Sized> {
    pub h: &'a H,
    pub step: Option<f64>,
}

impl<H: OneFormSpectrum + ?Sized> DalembertSpectrum<'_, H> {
    fn symbol(&self, p: FourVector) -> f64 {
        let low = p.lower();
        (0..4).map(|mu| METRIC[mu] * second_symbol(low[mu], self.step)).sum()
    }
}

impl<H: OneFormSpectrum + ?Sized> OneFormSpectrum for DalembertSpectrum<'_, H> {
    fn spectrum(&self, p: FourVector) -> [Complex64; 4] {
        let s = self.symbol(p);
        self.h.spectrum(p).map(|c| c * s)
    }

    fn spectrum_pm(&self, omega: f64, k: [f64; 3]) -> ([Complex64; 4], [Complex64; 4]) {
        let (a, b) = self.h.spectrum_pm(omega, k);
        let (sa, sb) = (
            self.symbol(FourVector::from_parts(omega, k)),
            self.symbol(FourVector::from_parts(-omega, k)),
        );
        (a.map(|c| c * sa), b.map(|c| c * sb))
    }

    fn is_real(&self) -> bool {
        self.h.is_real()
    }

    fn reach(&self) -> Reach {
        self.h.reach()
    }
}

/// Momentum-space co-primitive `f̂ = (n ∧ ĥ) / (2 i n·p)` with `n = e_0`.
/// Satisfies `2i p_ν f̂^{νμ} = ĥ^μ` wherever `p·ĥ = 0` and `p_0 ≠ 0`.
pub struct AlgebraicCoprimitive<'a, H: ?Sized> {
    pub h: &'a H,
}

fn algebraic(p0: f64, hh: [Complex64; 4]) -> CBivector {
    let mut f = CZERO_BIVECTOR;
    let c = Complex64::new(0.0, -0.5 / p0);
    for nu in 1..4 {
        f[0][nu] = c * hh[nu];
        f[nu][0] = -f[0][nu];
    }
    f
}

impl<H: OneFormSpectrum + ?Sized> TwoFormSpectrum for AlgebraicCoprimitive<'_, H> {
    fn spectrum(&self, p: FourVector) -> CBivector {
        algebraic(p.t(), self.h.spectrum(p))
    }

    fn spectrum_pm(&self, omega: f64, k: [f64; 3]) -> (CBivector, CBivector) {
        let (a, b) = self.h.spectrum_pm(omega, k);
        (algebraic(omega, a), algebraic(-omega, b))
    }

    fn is_real(&self) -> bool {
        self.h.is_real()
    }

    fn reach(&self) -> Reach {
        self.h.reach()
    }
}

/// `2i p_ν f̂^{νμ}`: the transform of `δf`.
pub fn co_derivative_spectrum(p: FourVector, f: &CBivector) -> [Complex64; 4] {
    let low = p.lower();
    std::array::from_fn(|mu| (0..4).map(|nu| Complex64::new(0.0, 2.0 * low[nu]) * f[nu][mu]).sum())
}

/// Scalar multiple of a one-form spectrum.
pub struct ScaledOneForm<'a, H: ?Sized> {
    pub h: &'a H,
    pub factor: Complex64,
}

impl<H: OneFormSpectrum + ?Sized> OneFormSpectrum for ScaledOneForm<'_, H> {
    fn spectrum(&self, p: FourVector) -> [Complex64; 4] {
        self.h.spectrum(p).map(|c| c * self.factor)
    }

    fn spectrum_pm(&self, omega: f64, k: [f64; 3]) -> ([Complex64; 4], [Complex64; 4]) {
        let (a, b) = self.h.spectrum_pm(omega, k);
        (a.map(|c| c * self.factor), b.map(|c| c * self.factor))
    }

    fn is_real(&self) -> bool {
        self.h.is_real() && self.factor.im == 0.0
    }

    fn reach(&self) -> Reach {
        self.h.reach()
    }
}

/// Scalar multiple of a two-form spectrum.
pub struct ScaledTwoForm<'a, F: ?Sized> {
    pub f: &'a F,
    pub factor: Complex64,
}

impl<F: TwoFormSpectrum + ?Sized> TwoFormSpectrum for ScaledTwoForm<'_, F> {
    fn spectrum(&self, p: FourVector) -> CBivector {
        self.f.spectrum(p).map(|r| r.map(|c| c * self.factor))
    }

    fn spectrum_pm(&self, omega: f64, k: [f64; 3]) -> (CBivector, CBivector) {
        let (a, b) = self.f.spectrum_pm(omega, k);
        (
            a.map(|r| r.map(|c| c * self.factor)),
            b.map(|r| r.map(|c| c * self.factor)),
        )
    }

    fn is_real(&self) -> bool {
        self.f.is_real() && self.factor.im == 0.0
    }

    fn reach(&self) -> Reach {
        self.f.reach()
    }
}

/// Transform of the Hodge dual `★f`.
pub struct HodgeDualSpectrum<'a, F: ?Sized> {
    pub f: &'a F,
}

impl<F: TwoFormSpectrum + ?Sized> TwoFormSpectrum for HodgeDualSpectrum<'_, F> {
    fn spectrum(&self, p: FourVector) -> CBivector {
        crate::spectral::hodge_dual_complex(&self.f.spectrum(p))
    }

    fn spectrum_pm(&self, omega: f64, k: [f64; 3]) -> (CBivector, CBivector) {
        let (a, b) = self.f.spectrum_pm(omega, k);
        (
            crate::spectral::hodge_dual_complex(&a),
            crate::spectral::hodge_dual_complex(&b),
        )
    }

    fn is_real(&self) -> bool {
        self.f.is_real()
    }

    fn reach(&self) -> Reach {
        self.f.reach()
    }
}
