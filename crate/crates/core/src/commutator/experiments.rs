use num_complex::Complex64;

use super::engine::{intrinsic_commutator, CommutatorOptions};
use super::report::{CommutatorReport, Ratio};
use crate::error::{Error, Result};
use crate::geometry::{hopf_pair, loop_separation_margin, torus_link_pair, ParamLoop};
use crate::smearing::{LoopSmearing, Mollifier, Profile};
use crate::spectral::{FieldPairModel, MassComponent, ShellGrid, TensorStructure};

/// Ratio of separation margin to gaussian width used by default.
pub const MARGIN_PER_WIDTH: f64 = 10.0;

/// Gaussian width `min(0.1, margin / 10)` for a loop pair.
pub fn auto_width(a: &ParamLoop, b: &ParamLoop) -> Result<f64> {
    let margin = loop_separation_margin(a, b);
    if margin <= 0.0 {
        return Err(Error::SeparationMargin { margin, reach: 0.0 });
    }
    Ok((margin / MARGIN_PER_WIDTH).min(0.1))
}

pub fn gaussian_pair(a: &ParamLoop, b: &ParamLoop, width: f64) -> Result<(LoopSmearing, LoopSmearing)> {
    let m = Mollifier::gaussian(width)?;
    Ok((LoopSmearing::new(m, a.clone()), LoopSmearing::new(m, b.clone())))
}

/// `Z = -i [A(l_{s,α1}), B(l_{s,α2})]` on the reference Hopf circles.
pub fn extract_z(
    model: &FieldPairModel,
    profile: &Profile,
    grid: Option<&ShellGrid>,
    opts: &CommutatorOptions,
) -> Result<CommutatorReport> {
    model.validate()?;
    let nonzero = model.shell_terms().iter().any(|t| t.c1 != 0.0 || t.c2 != 0.0);
    if nonzero && !model.has_massless() {
        return Err(Error::Precondition("extracting Z needs a massless component".into()));
    }
    let (a, b) = hopf_pair();
    let l1 = LoopSmearing::with_profile(profile.clone(), a);
    let l2 = LoopSmearing::with_profile(profile.clone(), b);
    intrinsic_commutator(model, &l1, &l2, grid, opts)
}

/// Torus family used by the linking sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusGeometry {
    pub major: f64,
    pub minor: f64,
}

impl Default for TorusGeometry {
    fn default() -> Self {
        TorusGeometry { major: 2.0, minor: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkingRow {
    pub lambda: i32,
    /// Commutator with `ratio = value / (i Z)` filled in.
    pub report: CommutatorReport,
}

impl LinkingRow {
    pub fn ratio(&self) -> Ratio {
        self.report.ratio.expect("linking rows carry a ratio")
    }

    /// `|ratio - λ|`, relative to `max(|λ|, 1)`.
    pub fn deviation(&self) -> f64 {
        let l = self.lambda as f64;
        (self.ratio().value - Complex64::new(l, 0.0)).norm() / l.abs().max(1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkingTable {
    pub reference: CommutatorReport,
    pub rows: Vec<LinkingRow>,
}

/// Commutators of the torus pairs with linking numbers `lambdas`, each
/// divided by `i Z` measured on the Hopf reference with the same profile.
pub fn verify_linking_proportionality(
    model: &FieldPairModel,
    lambdas: &[i32],
    geometry: TorusGeometry,
    profile: &Profile,
    grid: Option<&ShellGrid>,
    opts: &CommutatorOptions,
) -> Result<LinkingTable> {
    let reference = extract_z(model, profile, grid, opts)?;
    if reference.value.norm() <= 3.0 * reference.error_estimate {
        return Err(Error::Precondition("reference commutator vanishes; is c2 zero?".into()));
    }
    let mut rows = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let (a, b) = torus_link_pair(lambda, geometry.major, geometry.minor)?;
        let l1 = LoopSmearing::with_profile(profile.clone(), a);
        let l2 = LoopSmearing::with_profile(profile.clone(), b);
        let report = intrinsic_commutator(model, &l1, &l2, grid, opts)?.with_ratio(&reference);
        rows.push(LinkingRow { lambda, report });
    }
    Ok(LinkingTable { reference, rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub kappa: f64,
    /// Normalized slot-one mollifier of the base width.
    pub reference: CommutatorReport,
    /// Slot-one profile with integral `κ` and a different shape.
    pub scaled: CommutatorReport,
    /// For `κ = 1`: the base mollifier at half width.
    pub narrow: Option<CommutatorReport>,
}

impl ScalingReport {
    pub fn expected(&self) -> Complex64 {
        self.reference.value * self.kappa
    }

    /// `|scaled - κ reference| / |reference|`.
    pub fn deviation(&self) -> f64 {
        (self.scaled.value - self.expected()).norm() / self.reference.value.norm()
    }

    pub fn narrow_deviation(&self) -> Option<f64> {
        self.narrow
            .as_ref()
            .map(|n| (n.value - self.reference.value).norm() / self.reference.value.norm())
    }
}

/// Slot-one profile with integral `κ`: `g_w - g_{0.6w}` for `κ = 0`,
/// otherwise `κ g_{0.7w}`.
pub fn kappa_profile(kappa: f64, width: f64) -> Result<Profile> {
    if kappa == 0.0 {
        Profile::combination(vec![
            (1.0, Mollifier::gaussian(width)?),
            (-1.0, Mollifier::gaussian(0.6 * width)?),
        ])
    } else {
        Ok(Profile::from(Mollifier::gaussian(0.7 * width)?).scaled(kappa))
    }
}

/// Only the integral of the slot-one mollifier matters.
pub fn normalization_scaling_check(
    model: &FieldPairModel,
    kappa: f64,
    pair: (&ParamLoop, &ParamLoop),
    width: f64,
    grid: Option<&ShellGrid>,
    opts: &CommutatorOptions,
) -> Result<ScalingReport> {
    if !kappa.is_finite() {
        return Err(Error::Precondition("kappa must be finite".into()));
    }
    let base = Mollifier::gaussian(width)?;
    let l2 = LoopSmearing::new(base, pair.1.clone());
    let reference = intrinsic_commutator(model, &LoopSmearing::new(base, pair.0.clone()), &l2, grid, opts)?;
    let l1 = LoopSmearing::with_profile(kappa_profile(kappa, width)?, pair.0.clone());
    let scaled = intrinsic_commutator(model, &l1, &l2, grid, opts)?;
    let narrow = if kappa == 1.0 {
        let l1 = LoopSmearing::new(Mollifier::gaussian(0.5 * width)?, pair.0.clone());
        Some(intrinsic_commutator(model, &l1, &l2, grid, opts)?)
    } else {
        None
    };
    Ok(ScalingReport {
        kappa,
        reference,
        scaled,
        narrow,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MassRow {
    pub mass: f64,
    pub report: CommutatorReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MassGapTable {
    pub rows: Vec<MassRow>,
    /// Massless plus massive mixture and the massless-only value.
    pub mixture: Option<(CommutatorReport, CommutatorReport)>,
}

impl MassGapTable {
    /// `|value|` is non-increasing over the massive rows (reported only).
    pub fn decreasing(&self) -> bool {
        let v: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.mass > 0.0)
            .map(|r| r.report.value.norm())
            .collect();
        v.windows(2).all(|w| w[1] <= w[0] + 1e-300)
    }

    pub fn mixture_deviation(&self) -> Option<f64> {
        self.mixture
            .as_ref()
            .map(|(mix, pure)| (mix.value - pure.value).norm() / pure.value.norm())
    }
}

/// Massless `c2 = 1` model at `m = 0`, `c1 = 1` atoms at `m > 0`; with a
/// continuum, also the massless atom plus that (c1-type) continuum.
pub fn mass_gap_sweep(
    masses: &[f64],
    l1: &LoopSmearing,
    l2: &LoopSmearing,
    continuum: Option<MassComponent>,
    grid: Option<&ShellGrid>,
    opts: &CommutatorOptions,
) -> Result<MassGapTable> {
    let mut rows = Vec::with_capacity(masses.len());
    let massless = FieldPairModel::massless(0.0, 1.0);
    for &mass in masses {
        if !(mass >= 0.0 && mass.is_finite()) {
            return Err(Error::Precondition(format!("invalid mass {mass}")));
        }
        let model = if mass == 0.0 {
            massless.clone()
        } else {
            FieldPairModel::massive_c1(mass, 1.0)
        };
        rows.push(MassRow {
            mass,
            report: intrinsic_commutator(&model, l1, l2, grid, opts)?,
        });
    }
    let mixture = match continuum {
        Some(c) => {
            let mix = FieldPairModel::new(vec![
                (MassComponent::atom(0.0, 1.0), TensorStructure::new(0.0, 1.0)),
                (c, TensorStructure::new(1.0, 0.0)),
            ])?;
            let pure = match rows.iter().find(|r| r.mass == 0.0) {
                Some(r) => r.report.clone(),
                None => intrinsic_commutator(&massless, l1, l2, grid, opts)?,
            };
            Some((intrinsic_commutator(&mix, l1, l2, grid, opts)?, pure))
        }
        None => None,
    };
    Ok(MassGapTable { rows, mixture })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeformationRow {
    pub name: String,
    pub width: f64,
    pub report: CommutatorReport,
}

/// Replaces the first loop by each deformation; widths follow [`auto_width`].
pub fn homology_invariance(
    model: &FieldPairModel,
    base: (&ParamLoop, &ParamLoop),
    deformations: &[(String, ParamLoop)],
    grid: Option<&ShellGrid>,
    opts: &CommutatorOptions,
) -> Result<(CommutatorReport, Vec<DeformationRow>)> {
    let w = auto_width(base.0, base.1)?;
    let (l1, l2) = gaussian_pair(base.0, base.1, w)?;
    let reference = intrinsic_commutator(model, &l1, &l2, grid, opts)?;
    let mut rows = Vec::new();
    for (name, path) in deformations {
        let width = auto_width(path, base.1)?;
        let (d1, d2) = gaussian_pair(path, base.1, width)?;
        let report = intrinsic_commutator(model, &d1, &d2, grid, opts)?.with_ratio(&reference);
        rows.push(DeformationRow {
            name: name.clone(),
            width,
            report,
        });
    }
    Ok((reference, rows))
}

/// The deformations used by default: larger radius, shifted center and a
/// tilt in time of the first loop.
pub fn standard_deformations(a: &ParamLoop) -> Result<Vec<(String, ParamLoop)>> {
    use crate::geometry::FourVector;
    let c = crate::smearing::centroid(a);
    let grow = [[1.0, 0.0, 0.0, 0.0], [0.0, 1.25, 0.0, 0.0], [0.0, 0.0, 1.25, 0.0], [0.0, 0.0, 0.0, 1.25]];
    let radius = a.clone().translated(-c).affine(grow, c);
    let shift = a.clone().translated(FourVector::new(0.0, -0.15, 0.2, 0.1));
    let tilt = a.clone().time_tilted([0.1, 0.15, 0.0]);
    for l in [&radius, &shift, &tilt] {
        l.validate()?;
    }
    Ok(vec![
        ("radius+25%".to_string(), radius),
        ("center-shift".to_string(), shift),
        ("time-tilt".to_string(), tilt),
    ])
}
