use num_complex::Complex64;

use super::engine::{smeared_field_commutator, with_grid, CommutatorOptions};
use super::report::CommutatorReport;
use crate::error::Result;
use crate::smearing::{
    AlgebraicCoprimitive, CurlSpectrum, DalembertSpectrum, LoopSmearing, OneFormSpectrum,
    ScaledTwoForm, TwoFormSpectrum,
};
use crate::spectral::{FieldPairModel, ShellGrid};

/// Both sides of `A(□h) = F(½ dh)` and of the same identity in slot two.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub step: Option<f64>,
    /// `[A(□h), B(k)]` and `[F(½dh), B(k)]`.
    pub slot_one: (CommutatorReport, CommutatorReport),
    /// `[A(h), B(□k)]` and `[A(h), G(½dk)]`.
    pub slot_two: (CommutatorReport, CommutatorReport),
}

impl IdentityReport {
    pub fn residuals(&self) -> [f64; 2] {
        [
            (self.slot_one.0.value - self.slot_one.1.value).norm(),
            (self.slot_two.0.value - self.slot_two.1.value).norm(),
        ]
    }

    pub fn scale(&self) -> f64 {
        [&self.slot_one.0, &self.slot_one.1, &self.slot_two.0, &self.slot_two.1]
            .iter()
            .map(|r| r.value.norm())
            .fold(0.0, f64::max)
    }

    pub fn errors(&self) -> [f64; 2] {
        [
            self.slot_one.0.error_estimate + self.slot_one.1.error_estimate,
            self.slot_two.0.error_estimate + self.slot_two.1.error_estimate,
        ]
    }
}

/// Potential-slot smearing `□h` against field-slot smearing `½ dh`, with
/// exact symbols or central differences of the given step.
pub fn dalembert_curl_identity_check(
    model: &FieldPairModel,
    h: &LoopSmearing,
    k: &LoopSmearing,
    step: Option<f64>,
    grid: Option<&ShellGrid>,
    opts: &CommutatorOptions,
) -> Result<IdentityReport> {
    h.validate()?;
    k.validate()?;
    let auto = || {
        let (a, b) = (h.spectrum(1.0), k.spectrum(1.0));
        opts.grid_for(&a.reach(), &b.reach())
    };
    with_grid(grid, opts, auto, |grid| {
        let p_max = (2.0 * grid.k_max * grid.k_max + model.max_mass().powi(2)).sqrt();
        let (hs, ks) = (h.spectrum(p_max), k.spectrum(p_max));
        let half = Complex64::new(0.5, 0.0);
        let (box_h, box_k) = (DalembertSpectrum { h: &hs, step }, DalembertSpectrum { h: &ks, step });
        let (curl_h, curl_k) = (CurlSpectrum { h: &hs, step }, CurlSpectrum { h: &ks, step });
        let c = |a: &dyn TwoFormSpectrum, b: &dyn TwoFormSpectrum| smeared_field_commutator(model, a, b, Some(grid), opts);
        let slot_one = (
            c(&AlgebraicCoprimitive { h: &box_h }, &AlgebraicCoprimitive { h: &ks })?,
            c(&ScaledTwoForm { f: &curl_h, factor: half }, &AlgebraicCoprimitive { h: &ks })?,
        );
        let slot_two = (
            c(&AlgebraicCoprimitive { h: &hs }, &AlgebraicCoprimitive { h: &box_k })?,
            c(&AlgebraicCoprimitive { h: &hs }, &ScaledTwoForm { f: &curl_k, factor: half })?,
        );
        Ok(IdentityReport {
            step,
            slot_one,
            slot_two,
        })
    })
}
