use num_complex::Complex64;

use super::profile::Profile;
use crate::geometry::{Bivector, FourVector};

/// Complex antisymmetric rank-2 tensor (upper indices).
pub type CBivector = [[Complex64; 4]; 4];

pub const CZERO_BIVECTOR: CBivector = [[Complex64::new(0.0, 0.0); 4]; 4];

/// Position-space sampler of a one-form `h^μ(x)`.
pub trait OneFormField: Sync {
    fn eval(&self, x: FourVector) -> [f64; 4];
}

/// Position-space sampler of a two-form `f^{μν}(x)`.
pub trait TwoFormField: Sync {
    fn eval(&self, x: FourVector) -> Bivector;
}

impl<F: Fn(FourVector) -> [f64; 4] + Sync> OneFormField for F {
    fn eval(&self, x: FourVector) -> [f64; 4] {
        self(x)
    }
}

impl<F: Fn(FourVector) -> Bivector + Sync> TwoFormField for F {
    fn eval(&self, x: FourVector) -> Bivector {
        self(x)
    }
}

/// Where a smearing lives and how fast its transform decays; used to size
/// momentum grids.
#[derive(Debug, Clone)]
pub struct Reach {
    /// Points whose convex hull contains the support up to the mollifier reach.
    pub anchors: Vec<FourVector>,
    pub profile: Profile,
}

/// Fourier transform `ĥ(p) = ∫ h(x) e^{i p·x} d^4x` of a one-form.
pub trait OneFormSpectrum: Sync {
    fn spectrum(&self, p: FourVector) -> [Complex64; 4];

    /// Transforms at `(ω, k)` and `(-ω, k)`.
    fn spectrum_pm(&self, omega: f64, k: [f64; 3]) -> ([Complex64; 4], [Complex64; 4]) {
        (
            self.spectrum(FourVector::from_parts(omega, k)),
            self.spectrum(FourVector::from_parts(-omega, k)),
        )
    }

    /// Real position-space fields satisfy `ĥ(-p) = conj(ĥ(p))`.
    fn is_real(&self) -> bool {
        true
    }

    fn reach(&self) -> Reach;
}

/// Fourier transform of a two-form.
pub trait TwoFormSpectrum: Sync {
    fn spectrum(&self, p: FourVector) -> CBivector;

    fn spectrum_pm(&self, omega: f64, k: [f64; 3]) -> (CBivector, CBivector) {
        (
            self.spectrum(FourVector::from_parts(omega, k)),
            self.spectrum(FourVector::from_parts(-omega, k)),
        )
    }

    fn is_real(&self) -> bool {
        true
    }

    fn reach(&self) -> Reach;
}

