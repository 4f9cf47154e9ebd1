//! Maps a validated scene onto the core experiments.

use num_complex::Complex64;

use linklab::commutator::{
    check_wightman_positivity, dalembert_curl_identity_check, extract_z, homology_invariance,
    intrinsic_commutator, mass_gap_sweep, standard_deformations, verify_linking_proportionality,
    CommutatorOptions, TorusGeometry, TrialSmearings,
};
use linklab::geometry::ParamLoop;
use linklab::linking::{causal_linking_number, CausalLinkingOptions};
use linklab::smearing::{LoopSmearing, Mollifier, Profile};
use linklab::spectral::{FieldPairModel, ShellGrid};
use linklab::{Error, Result};

use crate::scene::{continuum_component, slot_model, Resolved};

/// One pass/fail comparison.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub measured: String,
    pub error: f64,
    pub pass: bool,
}

/// One line of the CSV table.
#[derive(Debug, Clone)]
pub struct Row {
    pub parameter: String,
    pub value: Complex64,
    pub error: f64,
}

#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn row(&mut self, parameter: impl Into<String>, value: Complex64, error: f64) {
        self.rows.push(Row {
            parameter: parameter.into(),
            value,
            error,
        });
    }

    fn check(&mut self, name: impl Into<String>, expected: String, measured: String, error: f64, pass: bool) {
        self.checks.push(Check {
            name: name.into(),
            expected,
            measured,
            error,
            pass,
        });
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub refine: u32,
    pub seed: u64,
}

/// Whether a failure comes from the numerics rather than from the scene.
pub fn is_numeric_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::UnresolvedGrid { .. }
            | Error::NonDecaying { .. }
            | Error::SurfaceDependence { .. }
            | Error::OracleDisagreement { .. }
    )
}

struct Ctx<'a> {
    r: &'a Resolved,
    opts: CommutatorOptions,
    grid: Option<&'a ShellGrid>,
}

impl Ctx<'_> {
    fn pair(&self, names: &[String; 2]) -> (ParamLoop, ParamLoop) {
        (self.r.loops[&names[0]].clone(), self.r.loops[&names[1]].clone())
    }

    fn mollifier(&self, name: &str) -> Mollifier {
        self.r.mollifiers[name]
    }

    fn model(&self) -> &FieldPairModel {
        self.r.model.as_ref().expect("validated model")
    }

    fn smeared(&self, names: &[String; 2], mollifier: &str) -> (LoopSmearing, LoopSmearing) {
        let (a, b) = self.pair(names);
        let m = self.mollifier(mollifier);
        (LoopSmearing::new(m, a), LoopSmearing::new(m, b))
    }
}

fn complex(v: Complex64) -> String {
    format!("{:+.9e}{:+.9e}i", v.re, v.im)
}

pub fn run(r: &Resolved, run: RunOptions) -> Result<Outcome> {
    let opts = CommutatorOptions {
        refine: run.refine,
        ..CommutatorOptions::default()
    };
    let ctx = Ctx {
        r,
        opts,
        grid: r.grid.as_ref(),
    };
    let mut out = Outcome::default();
    match r.experiment.as_str() {
        "link" => link(&ctx, &mut out)?,
        "commute" => commute(&ctx, &mut out)?,
        "sweep-linking" => sweep_linking(&ctx, &mut out)?,
        "sweep-mass" => sweep_mass(&ctx, &mut out)?,
        "invariance" => invariance(&ctx, &mut out)?,
        "positivity" => positivity(&ctx, &mut out, run.seed)?,
        "identities" => identities(&ctx, &mut out)?,
        other => unreachable!("validated experiment {other}"),
    }
    Ok(out)
}

fn link(ctx: &Ctx, out: &mut Outcome) -> Result<()> {
    let s = ctx.r.scene.link.as_ref().expect("validated section");
    let (a, b) = ctx.pair(&s.pair);
    let opts = CausalLinkingOptions {
        agreement: ctx.r.scene.tolerances.gauss,
        ..CausalLinkingOptions::default()
    };
    let l = causal_linking_number(&a, &b, &opts)?;
    out.row("gauss", Complex64::new(l.gauss.value, 0.0), l.gauss.error_estimate);
    out.row("crossing", Complex64::new(l.value as f64, 0.0), 0.0);
    let dev = (l.gauss.value - l.value as f64).abs();
    out.check(
        "gauss-matches-crossing",
        format!("{}", l.value),
        format!("{:.12}", l.gauss.value),
        dev,
        dev < ctx.r.scene.tolerances.gauss,
    );
    out.notes.push(format!("crossings: {}  vertices: {}", l.crossing.crossings, l.vertices));
    if let Some(e) = s.expect {
        out.check(
            "linking-number",
            format!("{e}"),
            format!("{}", l.value),
            (l.value - e).abs() as f64,
            l.value == e,
        );
    }
    Ok(())
}

fn commute(ctx: &Ctx, out: &mut Outcome) -> Result<()> {
    let s = ctx.r.scene.commute.as_ref().expect("validated section");
    let (l1, l2) = ctx.smeared(&s.pair, &s.mollifier);
    let rep = intrinsic_commutator(ctx.model(), &l1, &l2, ctx.grid, &ctx.opts)?;
    out.row("commutator", rep.value, rep.error_estimate);
    out.notes.push(format!("commutator: {}", rep.summary()));
    if let Some(expect) = s.expect_ratio {
        let profile = Profile::from(ctx.mollifier(&s.mollifier));
        let z = extract_z(ctx.model(), &profile, ctx.grid, &ctx.opts)?;
        out.row("reference", z.value, z.error_estimate);
        let ratio = rep.with_ratio(&z).ratio.expect("ratio set");
        out.row("ratio", ratio.value, ratio.error);
        let dev = (ratio.value - expect).norm() / expect.abs().max(1.0);
        out.check(
            "ratio",
            format!("{expect}"),
            complex(ratio.value),
            dev,
            dev < ctx.r.scene.tolerances.ratio,
        );
    }
    Ok(())
}

fn sweep_linking(ctx: &Ctx, out: &mut Outcome) -> Result<()> {
    let s = ctx.r.scene.sweep_linking.as_ref().expect("validated section");
    let profile = Profile::from(ctx.mollifier(&s.mollifier));
    let geometry = TorusGeometry {
        major: s.major,
        minor: s.minor,
    };
    let table = verify_linking_proportionality(ctx.model(), &s.lambdas, geometry, &profile, ctx.grid, &ctx.opts)?;
    out.row("reference", table.reference.value, table.reference.error_estimate);
    out.notes.push(format!("Z = {:.9e}", table.reference.z().re));
    let tol = ctx.r.scene.tolerances;
    for (i, row) in table.rows.iter().enumerate() {
        let ratio = row.ratio();
        out.row(format!("lambda={}", row.lambda), ratio.value, ratio.error);
        let expected = s.expected.as_ref().map_or(row.lambda as f64, |e| e[i]);
        let dev = (ratio.value - expected).norm() / expected.abs().max(1.0);
        out.check(
            format!("ratio lambda={}", row.lambda),
            format!("{expected}"),
            complex(ratio.value),
            dev,
            dev < tol.ratio,
        );
        let re = row.report.value.re.abs() / table.reference.value.norm();
        out.check(
            format!("real-part lambda={}", row.lambda),
            "0".into(),
            format!("{:.3e}", row.report.value.re),
            re,
            re < tol.zero,
        );
    }
    Ok(())
}

fn sweep_mass(ctx: &Ctx, out: &mut Outcome) -> Result<()> {
    let s = ctx.r.scene.sweep_mass.as_ref().expect("validated section");
    let (l1, l2) = ctx.smeared(&s.pair, &s.mollifier);
    let continuum = s.continuum.as_ref().map(continuum_component);
    let table = mass_gap_sweep(&s.masses, &l1, &l2, continuum, ctx.grid, &ctx.opts)?;
    let tol = ctx.r.scene.tolerances;
    let reference = table
        .rows
        .iter()
        .find(|r| r.mass == 0.0)
        .expect("validated massless entry")
        .report
        .clone();
    let scale = reference.value.norm();
    out.check(
        "massless-nonzero",
        "> 3 error".into(),
        format!("{:.6e}", scale),
        reference.error_estimate,
        scale > 3.0 * reference.error_estimate,
    );
    for row in &table.rows {
        out.row(format!("mass={}", row.mass), row.report.value, row.report.error_estimate);
        if row.mass > 0.0 {
            let rel = row.report.value.norm() / scale;
            out.check(
                format!("vanishes mass={}", row.mass),
                "0".into(),
                format!("{:.3e}", row.report.value.norm()),
                rel,
                rel < tol.zero,
            );
        }
    }
    if let Some((mix, _)) = &table.mixture {
        out.row("mixture", mix.value, mix.error_estimate);
        let dev = table.mixture_deviation().expect("mixture");
        out.check(
            "mixture-equals-massless",
            complex(reference.value),
            complex(mix.value),
            dev,
            dev < tol.ratio,
        );
    }
    out.notes.push(format!("massive magnitudes non-increasing: {}", table.decreasing()));
    Ok(())
}

fn invariance(ctx: &Ctx, out: &mut Outcome) -> Result<()> {
    let s = ctx.r.scene.invariance.as_ref().expect("validated section");
    let (a, b) = ctx.pair(&s.pair);
    let deformations = match &s.deformations {
        Some(names) => names.iter().map(|n| (n.clone(), ctx.r.loops[n].clone())).collect(),
        None => standard_deformations(&a)?,
    };
    let (reference, rows) = homology_invariance(ctx.model(), (&a, &b), &deformations, ctx.grid, &ctx.opts)?;
    out.row("reference", reference.value, reference.error_estimate);
    for row in rows {
        let ratio = row.report.ratio.expect("ratio set");
        out.row(row.name.clone(), ratio.value, ratio.error);
        let dev = (ratio.value - 1.0).norm();
        out.check(
            format!("unchanged {}", row.name),
            "1".into(),
            complex(ratio.value),
            dev,
            dev < ctx.r.scene.tolerances.invariance,
        );
    }
    Ok(())
}

fn positivity(ctx: &Ctx, out: &mut Outcome, seed: u64) -> Result<()> {
    let s = ctx.r.scene.positivity.as_ref().expect("validated section");
    let defaults = TrialSmearings::default();
    let smearings = TrialSmearings {
        blobs: s.blobs.unwrap_or(defaults.blobs),
        spread: s.spread.unwrap_or(defaults.spread),
        width: s.width.unwrap_or(defaults.width),
    };
    let f = slot_model("positivity.f", &s.f);
    let g = slot_model("positivity.g", &s.g);
    let rep = check_wightman_positivity(&f, &g, s.c, s.trials, seed, smearings, &ctx.opts)?;
    out.row("worst-margin", Complex64::new(rep.worst_margin, 0.0), 0.0);
    out.row("worst-diagonal", Complex64::new(rep.worst_diagonal, 0.0), 0.0);
    out.check(
        format!("cauchy-schwarz trials={}", rep.trials),
        ">= 0".into(),
        format!("{:.6e}", rep.worst_margin),
        0.0,
        rep.passed,
    );
    Ok(())
}

fn identities(ctx: &Ctx, out: &mut Outcome) -> Result<()> {
    let s = ctx.r.scene.identities.as_ref().expect("validated section");
    let (h, k) = ctx.smeared(&s.pair, &s.mollifier);
    let tol = ctx.r.scene.tolerances;
    let exact = dalembert_curl_identity_check(ctx.model(), &h, &k, None, ctx.grid, &ctx.opts)?;
    let scale = exact.scale().max(f64::MIN_POSITIVE);
    let worst = |r: [f64; 2]| r[0].max(r[1]);
    let rel = worst(exact.residuals()) / scale;
    out.row("exact", Complex64::new(worst(exact.residuals()), 0.0), worst(exact.errors()));
    out.check("exact-identity", "0".into(), format!("{:.3e}", rel), rel, rel < tol.identity);
    let mut previous: Option<(f64, f64)> = None;
    for &step in &s.steps {
        let rep = dalembert_curl_identity_check(ctx.model(), &h, &k, Some(step), ctx.grid, &ctx.opts)?;
        let res = worst(rep.residuals());
        out.row(format!("step={step}"), Complex64::new(res, 0.0), worst(rep.errors()));
        if let Some((h0, r0)) = previous {
            // second order: each halving should cut the residual by about 4
            let required = tol.order.powf((h0 / step).log2());
            let ratio = r0 / res.max(f64::MIN_POSITIVE);
            out.check(
                format!("convergence step={step}"),
                format!(">= {required:.3}"),
                format!("{ratio:.3}"),
                0.0,
                ratio >= required,
            );
        }
        previous = Some((step, res));
    }
    Ok(())
}
