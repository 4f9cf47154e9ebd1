use num_complex::Complex64;

use crate::spectral::ShellGrid;

/// `value / reference` with a propagated error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratio {
    pub value: Complex64,
    pub error: f64,
}

impl Ratio {
    pub fn of(num: Complex64, num_err: f64, den: Complex64, den_err: f64) -> Self {
        let value = num / den;
        let d = den.norm();
        let error = num_err / d + num.norm() * den_err / (d * d);
        Ratio { value, error }
    }
}

/// One smeared commutator evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorReport {
    pub value: Complex64,
    /// Fine/coarse grid difference summed over mass shells.
    pub error_estimate: f64,
    pub grid: ShellGrid,
    /// Model, smearing and loop descriptors.
    pub inputs: Vec<String>,
    /// Sum of absolute integrand contributions; the scale of cancellations.
    pub abs_sum: f64,
    pub tail: f64,
    /// Values for the alternative co-primitives, when computed.
    pub apex_values: Vec<Complex64>,
    pub ratio: Option<Ratio>,
}

impl CommutatorReport {
    pub fn imag(&self) -> f64 {
        self.value.im
    }

    /// `-i × value`: the central constant when the pair links once.
    pub fn z(&self) -> Complex64 {
        self.value * Complex64::new(0.0, -1.0)
    }

    /// Largest distance between the apex variants and the value.
    pub fn apex_spread(&self) -> f64 {
        self.apex_values
            .iter()
            .map(|v| (v - self.value).norm())
            .fold(0.0, f64::max)
    }

    pub fn with_ratio(mut self, reference: &CommutatorReport) -> Self {
        self.ratio = Some(Ratio::of(
            self.value,
            self.error_estimate,
            reference.value,
            reference.error_estimate,
        ));
        self
    }

    pub fn summary(&self) -> String {
        format!(
            "value = {:+.10e} {:+.10e}i  error = {:.3e}  [{}]",
            self.value.re,
            self.value.im,
            self.error_estimate,
            self.grid.describe()
        )
    }
}
