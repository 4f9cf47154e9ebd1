use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::engine::CommutatorOptions;
use crate::error::{Error, Result};
use crate::geometry::FourVector;
use crate::smearing::{BlobTwoForm, TwoFormSpectrum};
use crate::spectral::{reduce_two_level, structure_contractions, FieldPairModel, ShellGrid, TAIL_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointValue {
    pub value: Complex64,
    pub error_estimate: f64,
}

/// `⟨F(f̄) G(g)⟩ = Σ_m ∫ d³k / (2ω) Q(p) conj(f̂(p)) ĝ(p)` on the positive
/// mass shells; sesquilinear in `(f, g)`.
pub fn two_point_function(
    model: &FieldPairModel,
    f: &(impl TwoFormSpectrum + ?Sized),
    g: &(impl TwoFormSpectrum + ?Sized),
    grid: Option<&ShellGrid>,
    opts: &CommutatorOptions,
) -> Result<TwoPointValue> {
    model.validate()?;
    let grid = match grid {
        Some(g) => *g,
        None => opts.grid_for(&f.reach(), &g.reach())?,
    };
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for term in model.shell_terms() {
        if term.c1 == 0.0 && term.c2 == 0.0 {
            continue;
        }
        let r = reduce_two_level(&grid, term.mass, false, |omega, k| {
            let p = FourVector::from_parts(omega, k);
            let a = f.spectrum(p).map(|r| r.map(|c| c.conj()));
            let (t1, t2) = structure_contractions(p, &a, &g.spectrum(p), term.c2 != 0.0);
            [t1 * term.c1 + t2 * term.c2]
        });
        if r.tail > TAIL_TOLERANCE {
            return Err(Error::NonDecaying { tail: r.tail });
        }
        value += r.value[0];
        error += r.error[0];
    }
    Ok(TwoPointValue {
        value,
        error_estimate: error,
    })
}

/// Random complex test functions used by the positivity trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSmearings {
    pub blobs: usize,
    pub spread: f64,
    pub width: f64,
}

impl Default for TrialSmearings {
    fn default() -> Self {
        TrialSmearings {
            blobs: 3,
            spread: 1.0,
            width: 0.4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PositivityReport {
    pub passed: bool,
    /// Smallest `(FF·GG - |FG|²) / (FF·GG)` over the trials.
    pub worst_margin: f64,
    /// Smallest diagonal value `min(FF, GG)` seen.
    pub worst_diagonal: f64,
    pub trials: usize,
}

/// The cross term `⟨F(f̄) G(g)⟩ = c ⟨F⁰(f̄) ★F⁰(g)⟩` as model data, with
/// `⟨F⁰ F⁰⟩` given by `c1 = -1`.
pub fn cross_model(c: f64) -> FieldPairModel {
    FieldPairModel::massless(0.0, -0.5 * c)
}

/// `|⟨F(f̄)G(g)⟩|² <= ⟨F(f̄)F(f)⟩ ⟨G(ḡ)G(g)⟩` on random complex smearings.
pub fn check_wightman_positivity(
    model_f: &FieldPairModel,
    model_g: &FieldPairModel,
    cross_c: f64,
    trials: usize,
    seed: u64,
    smearings: TrialSmearings,
    opts: &CommutatorOptions,
) -> Result<PositivityReport> {
    let cross = cross_model(cross_c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_margin = f64::INFINITY;
    let mut worst_diagonal = f64::INFINITY;
    let mut passed = true;
    let o = FourVector::ZERO;
    for _ in 0..trials {
        let f = BlobTwoForm::random(&mut rng, smearings.blobs, o, smearings.spread, smearings.width, true)?;
        let g = BlobTwoForm::random(&mut rng, smearings.blobs, o, smearings.spread, smearings.width, true)?;
        let grid = opts.grid_for(&f.reach(), &g.reach())?;
        let ff = two_point_function(model_f, &f, &f, Some(&grid), opts)?;
        let gg = two_point_function(model_g, &g, &g, Some(&grid), opts)?;
        let fg = two_point_function(&cross, &f, &g, Some(&grid), opts)?;
        let (a, b) = (ff.value.re, gg.value.re);
        worst_diagonal = worst_diagonal.min(a.min(b));
        let prod = a * b;
        let margin = (prod - fg.value.norm_sqr()) / prod.abs().max(1e-300);
        // the estimates bound how far rounding and quadrature can move the margin
        let slack = 2.0 * (ff.error_estimate / a.abs() + gg.error_estimate / b.abs())
            + 4.0 * fg.error_estimate * fg.value.norm() / prod.abs().max(1e-300)
            + 1e-10;
        if a < -ff.error_estimate || b < -gg.error_estimate || margin < -slack {
            passed = false;
        }
        worst_margin = worst_margin.min(margin);
    }
    Ok(PositivityReport {
        passed,
        worst_margin,
        worst_diagonal,
        trials,
    })
}
