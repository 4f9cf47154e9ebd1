use num_complex::Complex64;

use super::report::CommutatorReport;
use crate::error::{Error, Result};
use crate::geometry::{is_spatial, loop_separation_margin, FourVector, ParamLoop};
use crate::smearing::{
    centroid, CBivector, ConeSpectrum, LoopSmearing, Reach, TwoFormSpectrum,
};
use crate::spectral::{
    reduce_two_level_scaled, structure_contractions, FieldPairModel, ShellGrid, ShellTerm,
    DEFAULT_CUTOFF_TOLERANCE, TAIL_TOLERANCE,
};

/// Numerical settings shared by all commutator evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorOptions {
    /// Relative fine/coarse difference above which the grid is unresolved.
    pub resolve_tolerance: f64,
    /// Relative size of the smearing transforms at the radial cutoff.
    pub cutoff_tolerance: f64,
    /// Relative apex spread tolerated before reporting surface dependence.
    pub surface_tolerance: f64,
    /// Doublings applied to automatically sized grids.
    pub refine: u32,
    /// Further doublings tried when an automatically sized grid turns out
    /// unresolved. Grids passed in explicitly are never refined.
    pub auto_refine: u32,
}

impl Default for CommutatorOptions {
    fn default() -> Self {
        CommutatorOptions {
            resolve_tolerance: 1e-3,
            cutoff_tolerance: DEFAULT_CUTOFF_TOLERANCE,
            surface_tolerance: 1e-3,
            refine: 0,
            auto_refine: 1,
        }
    }
}

impl CommutatorOptions {
    pub fn grid_for(&self, a: &Reach, b: &Reach) -> Result<ShellGrid> {
        Ok(ShellGrid::for_reaches(a, b, self.cutoff_tolerance)?.refined(self.refine))
    }
}

/// Runs `eval` on `grid` when given; otherwise on the automatic grid,
/// doubling it while the result is unresolved, up to `opts.auto_refine` times.
pub(crate) fn with_grid<T>(
    grid: Option<&ShellGrid>,
    opts: &CommutatorOptions,
    auto: impl FnOnce() -> Result<ShellGrid>,
    eval: impl Fn(&ShellGrid) -> Result<T>,
) -> Result<T> {
    let base = match grid {
        Some(g) => return eval(g),
        None => auto()?,
    };
    let mut level = 0;
    loop {
        match eval(&base.refined(level)) {
            Err(Error::UnresolvedGrid { .. }) if level < opts.auto_refine => level += 1,
            r => return r,
        }
    }
}

pub(crate) type Pm = (CBivector, CBivector);

fn conj(b: &CBivector) -> CBivector {
    b.map(|r| r.map(|c| c.conj()))
}

/// `f̂(-p)` at `p = (ω, k)` and `p = (-ω, k)`.
pub(crate) fn reflected_pm(f: &(impl TwoFormSpectrum + ?Sized), omega: f64, k: [f64; 3]) -> Pm {
    if f.is_real() {
        let (a, b) = f.spectrum_pm(omega, k);
        (conj(&a), conj(&b))
    } else {
        let (a, b) = f.spectrum_pm(omega, [-k[0], -k[1], -k[2]]);
        (b, a)
    }
}

fn kernel(t: &ShellTerm, p: FourVector, a: &CBivector, b: &CBivector) -> Complex64 {
    let (t1, t2) = structure_contractions(p, a, b, t.c2 != 0.0);
    t1 * t.c1 + t2 * t.c2
}

fn frobenius(b: &CBivector) -> f64 {
    b.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// `X(ω, k) - X(-ω, k)` with `X(p) = Q(p) f̂(-p) ĝ(p)`, together with a size
/// `Σ± |c| |p|² |f̂| |ĝ|` that bounds both terms up to a fixed factor, so
/// that cancellation is judged against the inputs rather than the kernel.
pub(crate) fn shell_difference(t: &ShellTerm, omega: f64, k: [f64; 3], f: &Pm, g: &Pm) -> (Complex64, f64) {
    let (pp, pm) = (FourVector::from_parts(omega, k), FourVector::from_parts(-omega, k));
    let d = kernel(t, pp, &f.0, &g.0) - kernel(t, pm, &f.1, &g.1);
    let p2 = omega * omega + k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    let c = t.c1.abs() + 2.0 * t.c2.abs();
    let size = c * p2 * (frobenius(&f.0) * frobenius(&g.0) + frobenius(&f.1) * frobenius(&g.1));
    (d, size)
}

pub(crate) struct Evaluation<const K: usize> {
    pub value: [Complex64; K],
    pub error: [f64; K],
    pub abs_sum: f64,
    pub tail: f64,
}

/// Sums the shell reductions of every mass term. `pair` returns the slot-one
/// variants `f̂(-p)` and the slot-two transform `ĝ(p)` at `(±ω, k)`.
/// With `real` set both test functions are real and only half the sphere is
/// visited, using `D(ω, -k) = -conj D(ω, k)`.
pub(crate) fn evaluate<const K: usize>(
    model: &FieldPairModel,
    grid: &ShellGrid,
    real: bool,
    opts: &CommutatorOptions,
    pair: impl Fn(f64, [f64; 3]) -> ([Pm; K], Pm) + Sync + Send,
) -> Result<Evaluation<K>> {
    model.validate()?;
    grid.validate()?;
    let mut out = Evaluation {
        value: [Complex64::new(0.0, 0.0); K],
        error: [0.0; K],
        abs_sum: 0.0,
        tail: 0.0,
    };
    for term in model.shell_terms() {
        if term.c1 == 0.0 && term.c2 == 0.0 {
            continue;
        }
        let r = reduce_two_level_scaled::<K>(grid, term.mass, real, |omega, k| {
            let (fs, g) = pair(omega, k);
            let mut size = 0.0;
            let v = std::array::from_fn(|i| {
                let (d, s) = shell_difference(&term, omega, k, &fs[i], &g);
                if i == 0 {
                    size = if real { 2.0 * s } else { s };
                }
                if real {
                    d - d.conj()
                } else {
                    d
                }
            });
            (v, size)
        });
        for i in 0..K {
            out.value[i] += r.value[i];
            out.error[i] += r.error[i];
        }
        out.abs_sum += r.abs_sum;
        out.tail = out.tail.max(r.tail);
    }
    if out.tail > TAIL_TOLERANCE {
        return Err(Error::NonDecaying { tail: out.tail });
    }
    for i in 0..K {
        let (v, e) = (out.value[i].norm(), out.error[i]);
        if e > opts.resolve_tolerance * v && e > 1e-9 * out.abs_sum {
            return Err(Error::UnresolvedGrid { value: v, estimate: e });
        }
    }
    Ok(out)
}

/// Commutator of `F(f)` and `G(g)` for the spectral data of `model`:
/// `Σ_m ∫ d³k / (2ω) [X(ω, k) - X(-ω, k)]`, `X(p) = Q(p) f̂(-p) ĝ(p)`.
/// An automatic grid is used when `grid` is `None`.
pub fn smeared_field_commutator(
    model: &FieldPairModel,
    f: &(impl TwoFormSpectrum + ?Sized),
    g: &(impl TwoFormSpectrum + ?Sized),
    grid: Option<&ShellGrid>,
    opts: &CommutatorOptions,
) -> Result<CommutatorReport> {
    if !(f.is_real() && g.is_real()) {
        return Err(Error::Precondition("commutator smearings must be real".into()));
    }
    let auto = || opts.grid_for(&f.reach(), &g.reach());
    with_grid(grid, opts, auto, |grid| {
        let e = evaluate::<1>(model, grid, true, opts, |omega, k| {
            ([reflected_pm(f, omega, k)], g.spectrum_pm(omega, k))
        })?;
        Ok(CommutatorReport {
            value: e.value[0],
            error_estimate: e.error[0],
            grid: *grid,
            inputs: vec![model.describe()],
            abs_sum: e.abs_sum,
            tail: e.tail,
            apex_values: Vec::new(),
            ratio: None,
        })
    })
}

/// Second apex for the surface-independence check: the centroid moved by a
/// third of the loop's spatial radius in a fixed generic direction.
pub fn alternate_apex(path: &ParamLoop) -> FourVector {
    let c = centroid(path);
    let radius = path
        .sample(64)
        .iter()
        .map(|p| (*p - c).spatial_norm())
        .fold(0.0, f64::max);
    let d = [0.48, -0.6, 0.64];
    let s = radius / 3.0;
    c + FourVector::new(0.0, s * d[0], s * d[1], s * d[2])
}

/// Checks the preconditions of the intrinsic commutator.
pub fn check_loop_pair(l1: &LoopSmearing, l2: &LoopSmearing) -> Result<f64> {
    l1.validate()?;
    l2.validate()?;
    for (name, l) in [("first", l1), ("second", l2)] {
        if !is_spatial(&l.path, 1e-9) {
            return Err(Error::Precondition(format!("{name} loop is not spatial")));
        }
    }
    let margin = loop_separation_margin(&l1.path, &l2.path);
    let reach = l1.profile.effective_radius().max(l2.profile.effective_radius());
    if margin <= reach {
        return Err(Error::SeparationMargin { margin, reach });
    }
    Ok(margin)
}

/// `[A(l_{s1,γ1}), B(l_{s2,γ2})]` realized as `[F(f1), G(f2)]` with cone
/// surface co-primitives. Slot one is evaluated for two apexes; their
/// spread is the surface-independence check.
pub fn intrinsic_commutator(
    model: &FieldPairModel,
    l1: &LoopSmearing,
    l2: &LoopSmearing,
    grid: Option<&ShellGrid>,
    opts: &CommutatorOptions,
) -> Result<CommutatorReport> {
    check_loop_pair(l1, l2)?;
    let apexes = [centroid(&l1.path), alternate_apex(&l1.path)];
    let apex2 = [centroid(&l2.path)];
    // sized from a provisional transform; the reach only depends on anchors
    let probe1 = ConeSpectrum::with_nodes(l1.profile.clone(), &l1.path, &apexes, 4);
    let probe2 = ConeSpectrum::with_nodes(l2.profile.clone(), &l2.path, &apex2, 4);
    let auto = || opts.grid_for(&probe1.reach(), &probe2.reach());
    with_grid(grid, opts, auto, |grid| {
        let p_max = (2.0 * grid.k_max * grid.k_max + model.max_mass().powi(2)).sqrt();
        let f1 = ConeSpectrum::new(l1.profile.clone(), &l1.path, &apexes, p_max);
        let f2 = ConeSpectrum::new(l2.profile.clone(), &l2.path, &apex2, p_max);
        let e = evaluate::<2>(model, grid, true, opts, |omega, k| {
            let all = f1.spectrum_pm_all(omega, k);
            let fs = [(conj(&all[0].0), conj(&all[0].1)), (conj(&all[1].0), conj(&all[1].1))];
            (fs, f2.spectrum_pm_all(omega, k).pop().expect("one apex"))
        })?;
        let spread = (e.value[0] - e.value[1]).norm();
        let tolerance =
            opts.surface_tolerance * e.value[0].norm() + 3.0 * (e.error[0] + e.error[1]) + 1e-10 * e.abs_sum;
        if spread > tolerance {
            return Err(Error::SurfaceDependence { spread, tolerance });
        }
        Ok(CommutatorReport {
            value: e.value[0],
            error_estimate: e.error[0].max(spread),
            grid: *grid,
            inputs: vec![
                model.describe(),
                format!("loop 1: {} (kappa={})", describe_loop(&l1.path), l1.kappa()),
                format!("loop 2: {} (kappa={})", describe_loop(&l2.path), l2.kappa()),
            ],
            abs_sum: e.abs_sum,
            tail: e.tail,
            apex_values: vec![e.value[1]],
            ratio: None,
        })
    })
}

pub(crate) fn describe_loop(l: &ParamLoop) -> String {
    let c = centroid(l);
    format!(
        "length={:.6} centroid=({:.4}, {:.4}, {:.4}, {:.4})",
        l.length(),
        c[0],
        c[1],
        c[2],
        c[3]
    )
}
