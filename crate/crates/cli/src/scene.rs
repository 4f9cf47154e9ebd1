//! Scene files: a TOML document naming loops, mollifiers, a spectral model
//! and one experiment. See `SCENES.md` for the schema.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use linklab::geometry::{hopf_pair, torus_link_pair, FourVector, ParamLoop};
use linklab::smearing::Mollifier;
use linklab::spectral::{FieldPairModel, MassComponent, ShellGrid, TensorStructure};

pub const EXPERIMENTS: [&str; 7] = [
    "link",
    "commute",
    "sweep-linking",
    "sweep-mass",
    "invariance",
    "positivity",
    "identities",
];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Scene {
    pub experiment: String,
    pub title: Option<String>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub loops: BTreeMap<String, LoopSpec>,
    #[serde(default)]
    pub mollifiers: BTreeMap<String, MollifierSpec>,
    pub model: Option<ModelSpec>,
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputSpec,
    pub link: Option<LinkSection>,
    pub commute: Option<CommuteSection>,
    pub sweep_linking: Option<SweepLinkingSection>,
    pub sweep_mass: Option<SweepMassSection>,
    pub invariance: Option<InvarianceSection>,
    pub positivity: Option<PositivitySection>,
    pub identities: Option<IdentitiesSection>,
}

/// Loop description; which fields apply depends on `kind`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopSpec {
    pub kind: String,
    pub center: Option<[f64; 4]>,
    pub e1: Option<[f64; 3]>,
    pub e2: Option<[f64; 3]>,
    pub radius: Option<f64>,
    pub turns: Option<i32>,
    pub vertices: Option<Vec<[f64; 4]>>,
    pub member: Option<u8>,
    pub lambda: Option<i32>,
    pub major: Option<f64>,
    pub minor: Option<f64>,
    /// Applied after construction: `t += tilt · x`.
    pub tilt: Option<[f64; 3]>,
    /// Applied last.
    pub translate: Option<[f64; 4]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MollifierSpec {
    pub kind: String,
    pub width: Option<f64>,
    pub radius: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub components: Vec<ComponentSpec>,
}

/// An atom (`mass`, `weight`) or a continuum (`continuum`, `density`, `nodes`).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub mass: Option<f64>,
    pub weight: Option<f64>,
    pub continuum: Option<[f64; 2]>,
    pub density: Option<Vec<f64>>,
    pub nodes: Option<usize>,
    #[serde(default)]
    pub c1: f64,
    #[serde(default)]
    pub c2: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct GridSpec {
    pub k_max: f64,
    pub radial: usize,
    pub polar: usize,
    pub azimuth: usize,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", default)]
pub struct Tolerances {
    /// Absolute deviation of a linking ratio, per unit of linking number.
    pub ratio: f64,
    /// `|value| / |reference|` below which a value counts as zero.
    pub zero: f64,
    /// Relative change allowed under deformations.
    pub invariance: f64,
    /// Distance of the Gauss integral from an integer.
    pub gauss: f64,
    /// Relative residual of the exact identity.
    pub identity: f64,
    /// Minimum residual reduction per step halving.
    pub order: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            ratio: 1e-2,
            zero: 1e-3,
            invariance: 5e-3,
            gauss: 1e-3,
            identity: 1e-6,
            order: 3.5,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_report")]
    pub report: String,
    #[serde(default = "default_csv")]
    pub csv: String,
}

fn default_report() -> String {
    "report.txt".into()
}

fn default_csv() -> String {
    "table.csv".into()
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            report: default_report(),
            csv: default_csv(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSection {
    pub pair: [String; 2],
    pub expect: Option<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct CommuteSection {
    pub pair: [String; 2],
    pub mollifier: String,
    pub expect_ratio: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepLinkingSection {
    pub mollifier: String,
    #[serde(default = "default_lambdas")]
    pub lambdas: Vec<i32>,
    #[serde(default = "default_major")]
    pub major: f64,
    #[serde(default = "default_minor")]
    pub minor: f64,
    /// Expected ratios; defaults to the linking numbers themselves.
    pub expected: Option<Vec<f64>>,
}

fn default_lambdas() -> Vec<i32> {
    (-2..=2).collect()
}

fn default_major() -> f64 {
    2.0
}

fn default_minor() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepMassSection {
    pub pair: [String; 2],
    pub mollifier: String,
    pub masses: Vec<f64>,
    pub continuum: Option<ComponentSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvarianceSection {
    pub pair: [String; 2],
    /// Loops replacing the first member; the built-in set when absent.
    pub deformations: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositivitySection {
    /// Cross term `⟨F G⟩ = c ⟨F⁰ ★F⁰⟩`.
    pub c: f64,
    pub f: Vec<ComponentSpec>,
    pub g: Vec<ComponentSpec>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    pub blobs: Option<usize>,
    pub spread: Option<f64>,
    pub width: Option<f64>,
}

fn default_trials() -> usize {
    100
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentitiesSection {
    pub pair: [String; 2],
    pub mollifier: String,
    #[serde(default = "default_steps")]
    pub steps: Vec<f64>,
}

fn default_steps() -> Vec<f64> {
    vec![0.04, 0.02]
}

/// One problem found while validating, tied to a dotted field path.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub field: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Scene with every reference resolved to a core object.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub scene: Scene,
    pub experiment: String,
    pub loops: BTreeMap<String, ParamLoop>,
    pub mollifiers: BTreeMap<String, Mollifier>,
    pub model: Option<FieldPairModel>,
    pub grid: Option<ShellGrid>,
}

#[derive(Default)]
struct Checker {
    out: Vec<Diagnostic>,
}

impl Checker {
    fn push(&mut self, field: impl Into<String>, message: impl Into<String>) {
        self.out.push(Diagnostic {
            field: field.into(),
            message: message.into(),
        });
    }

    fn need<T: Copy>(&mut self, field: String, v: Option<T>) -> Option<T> {
        if v.is_none() {
            self.push(field, "required");
        }
        v
    }
}

pub fn parse(text: &str) -> Result<Scene, String> {
    toml::from_str(text).map_err(|e| e.to_string())
}

fn build_loop(name: &str, spec: &LoopSpec, c: &mut Checker) -> Option<ParamLoop> {
    let f = |k: &str| format!("loops.{name}.{k}");
    let base = match spec.kind.as_str() {
        "circle" => {
            let radius = c.need(f("radius"), spec.radius)?;
            let center = FourVector(spec.center.unwrap_or([0.0; 4]));
            let e1 = spec.e1.unwrap_or([1.0, 0.0, 0.0]);
            let e2 = spec.e2.unwrap_or([0.0, 1.0, 0.0]);
            if !(radius > 0.0 && radius.is_finite()) {
                c.push(f("radius"), format!("must be positive, got {radius}"));
                return None;
            }
            let circle = match ParamLoop::circle(center, e1, e2, radius) {
                Ok(l) => l,
                Err(e) => {
                    c.push(f("e1"), e.to_string());
                    return None;
                }
            };
            match spec.turns {
                None | Some(1) => circle,
                Some(t) => match circle.with_turns(t) {
                    Ok(l) => l,
                    Err(e) => {
                        c.push(f("turns"), e.to_string());
                        return None;
                    }
                },
            }
        }
        "polyline" => {
            let v = match &spec.vertices {
                Some(v) => v,
                None => {
                    c.push(f("vertices"), "required");
                    return None;
                }
            };
            match ParamLoop::polyline(v.iter().map(|p| FourVector(*p)).collect()) {
                Ok(l) => l,
                Err(e) => {
                    c.push(f("vertices"), e.to_string());
                    return None;
                }
            }
        }
        "hopf" | "torus" => {
            let member = c.need(f("member"), spec.member)?;
            if member != 1 && member != 2 {
                c.push(f("member"), format!("must be 1 or 2, got {member}"));
                return None;
            }
            let pair = if spec.kind == "hopf" {
                hopf_pair()
            } else {
                let lambda = c.need(f("lambda"), spec.lambda)?;
                let (major, minor) = (spec.major.unwrap_or(2.0), spec.minor.unwrap_or(1.0));
                match torus_link_pair(lambda, major, minor) {
                    Ok(p) => p,
                    Err(e) => {
                        c.push(f("minor"), e.to_string());
                        return None;
                    }
                }
            };
            if member == 1 {
                pair.0
            } else {
                pair.1
            }
        }
        other => {
            c.push(f("kind"), format!("unknown loop kind '{other}' (circle, polyline, hopf, torus)"));
            return None;
        }
    };
    let mut l = base;
    if let Some(b) = spec.tilt {
        l = l.time_tilted(b);
    }
    if let Some(y) = spec.translate {
        l = l.translated(FourVector(y));
    }
    match l.validate() {
        Ok(()) => Some(l),
        Err(e) => {
            c.push(f("kind"), e.to_string());
            None
        }
    }
}

fn build_mollifier(name: &str, spec: &MollifierSpec, c: &mut Checker) -> Option<Mollifier> {
    let f = |k: &str| format!("mollifiers.{name}.{k}");
    let m = match spec.kind.as_str() {
        "gaussian" => Mollifier::gaussian(c.need(f("width"), spec.width)?),
        "bump" => Mollifier::bump(c.need(f("radius"), spec.radius)?),
        other => {
            c.push(f("kind"), format!("unknown mollifier kind '{other}' (gaussian, bump)"));
            return None;
        }
    };
    match m {
        Ok(m) => Some(m),
        Err(e) => {
            let key = if spec.kind == "gaussian" { "width" } else { "radius" };
            c.push(f(key), e.to_string());
            None
        }
    }
}

fn build_component(field: &str, spec: &ComponentSpec, c: &mut Checker) -> Option<(MassComponent, TensorStructure)> {
    let ts = TensorStructure::new(spec.c1, spec.c2);
    let mc = match (spec.mass, spec.continuum) {
        (Some(mass), None) => MassComponent::atom(mass, spec.weight.unwrap_or(1.0)),
        (None, Some([lo, hi])) => MassComponent::Continuum {
            m_lo: lo,
            m_hi: hi,
            density: spec.density.clone().unwrap_or_else(|| vec![1.0]),
            nodes: spec.nodes.unwrap_or(4),
        },
        _ => {
            c.push(field, "give either 'mass' or 'continuum'");
            return None;
        }
    };
    if let Err(e) = mc.validate() {
        c.push(field, e.to_string());
        return None;
    }
    Some((mc, ts))
}

fn build_model(field: &str, comps: &[ComponentSpec], c: &mut Checker) -> Option<FieldPairModel> {
    let before = c.out.len();
    let parts: Vec<_> = comps
        .iter()
        .enumerate()
        .filter_map(|(i, s)| build_component(&format!("{field}[{i}]"), s, c))
        .collect();
    if c.out.len() > before {
        return None;
    }
    if parts.is_empty() {
        c.push(field, "needs at least one component");
        return None;
    }
    match FieldPairModel::new(parts) {
        Ok(m) => Some(m),
        Err(e) => {
            c.push(field, e.to_string());
            None
        }
    }
}

/// Model of a positivity slot, built after validation succeeded.
pub fn slot_model(field: &str, comps: &[ComponentSpec]) -> FieldPairModel {
    let mut c = Checker::default();
    build_model(field, comps, &mut c).expect("validated model")
}

/// Continuum of the mass sweep, built after validation succeeded.
pub fn continuum_component(spec: &ComponentSpec) -> MassComponent {
    let mut c = Checker::default();
    build_component("continuum", spec, &mut c).expect("validated component").0
}

/// Checks the schema and every reference; never runs numerics.
pub fn validate(scene: Scene, experiment_override: Option<&str>) -> Result<Resolved, Vec<Diagnostic>> {
    let mut c = Checker::default();
    let experiment = experiment_override.unwrap_or(&scene.experiment).to_string();
    if !EXPERIMENTS.contains(&experiment.as_str()) {
        c.push("experiment", format!("unknown experiment '{experiment}' ({})", EXPERIMENTS.join(", ")));
    }
    let loops: BTreeMap<_, _> = scene
        .loops
        .iter()
        .filter_map(|(n, s)| build_loop(n, s, &mut c).map(|l| (n.clone(), l)))
        .collect();
    let mollifiers: BTreeMap<_, _> = scene
        .mollifiers
        .iter()
        .filter_map(|(n, s)| build_mollifier(n, s, &mut c).map(|m| (n.clone(), m)))
        .collect();
    let model = scene.model.as_ref().and_then(|m| build_model("model.components", &m.components, &mut c));
    let grid = scene.grid.and_then(|g| match ShellGrid::new(g.k_max, g.radial, g.polar, g.azimuth) {
        Ok(g) => Some(g),
        Err(e) => {
            c.push("grid", e.to_string());
            None
        }
    });
    let t = scene.tolerances;
    for (name, v) in [
        ("ratio", t.ratio),
        ("zero", t.zero),
        ("invariance", t.invariance),
        ("gauss", t.gauss),
        ("identity", t.identity),
        ("order", t.order),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            c.push(format!("tolerances.{name}"), "must be positive");
        }
    }

    let loop_ref = |c: &mut Checker, field: String, name: &str| {
        if !scene.loops.contains_key(name) {
            c.push(field, format!("unknown loop '{name}'"));
        }
    };
    let moll_ref = |c: &mut Checker, field: String, name: &str| {
        if !scene.mollifiers.contains_key(name) {
            c.push(field, format!("unknown mollifier '{name}'"));
        }
    };
    let pair_ref = |c: &mut Checker, section: &str, pair: &[String; 2]| {
        for (i, n) in pair.iter().enumerate() {
            loop_ref(c, format!("{section}.pair[{i}]"), n);
        }
    };
    let need_model = |c: &mut Checker| {
        if scene.model.is_none() {
            c.push("model", "required by this experiment");
        }
    };
    let missing = |c: &mut Checker, section: &str| c.push(section, "section required by this experiment");

    match experiment.as_str() {
        "link" => match &scene.link {
            Some(s) => pair_ref(&mut c, "link", &s.pair),
            None => missing(&mut c, "link"),
        },
        "commute" => match &scene.commute {
            Some(s) => {
                pair_ref(&mut c, "commute", &s.pair);
                moll_ref(&mut c, "commute.mollifier".into(), &s.mollifier);
                need_model(&mut c);
            }
            None => missing(&mut c, "commute"),
        },
        "sweep-linking" => match &scene.sweep_linking {
            Some(s) => {
                moll_ref(&mut c, "sweep-linking.mollifier".into(), &s.mollifier);
                need_model(&mut c);
                if s.lambdas.is_empty() {
                    c.push("sweep-linking.lambdas", "must not be empty");
                }
                if let Some(e) = &s.expected {
                    if e.len() != s.lambdas.len() {
                        c.push("sweep-linking.expected", "needs one entry per lambda");
                    }
                }
                if !(s.major > s.minor && s.minor > 0.0) {
                    c.push("sweep-linking.minor", "needs major > minor > 0");
                }
            }
            None => missing(&mut c, "sweep-linking"),
        },
        "sweep-mass" => match &scene.sweep_mass {
            Some(s) => {
                pair_ref(&mut c, "sweep-mass", &s.pair);
                moll_ref(&mut c, "sweep-mass.mollifier".into(), &s.mollifier);
                if s.masses.iter().any(|m| !(*m >= 0.0 && m.is_finite())) {
                    c.push("sweep-mass.masses", "masses must be finite and non-negative");
                }
                if !s.masses.contains(&0.0) {
                    c.push("sweep-mass.masses", "must include the massless reference 0");
                }
                if let Some(comp) = &s.continuum {
                    let _ = build_component("sweep-mass.continuum", comp, &mut c);
                }
            }
            None => missing(&mut c, "sweep-mass"),
        },
        "invariance" => match &scene.invariance {
            Some(s) => {
                pair_ref(&mut c, "invariance", &s.pair);
                need_model(&mut c);
                for (i, n) in s.deformations.iter().flatten().enumerate() {
                    loop_ref(&mut c, format!("invariance.deformations[{i}]"), n);
                }
            }
            None => missing(&mut c, "invariance"),
        },
        "positivity" => match &scene.positivity {
            Some(s) => {
                let _ = build_model("positivity.f", &s.f, &mut c);
                let _ = build_model("positivity.g", &s.g, &mut c);
                if s.trials == 0 {
                    c.push("positivity.trials", "must be positive");
                }
                if s.blobs == Some(0) {
                    c.push("positivity.blobs", "must be positive");
                }
                for (k, v) in [("spread", s.spread), ("width", s.width)] {
                    if v.is_some_and(|v| !(v > 0.0 && v.is_finite())) {
                        c.push(format!("positivity.{k}"), "must be positive");
                    }
                }
            }
            None => missing(&mut c, "positivity"),
        },
        "identities" => match &scene.identities {
            Some(s) => {
                pair_ref(&mut c, "identities", &s.pair);
                moll_ref(&mut c, "identities.mollifier".into(), &s.mollifier);
                need_model(&mut c);
                if s.steps.len() < 2 || s.steps.iter().any(|h| h.is_nan() || *h <= 0.0) {
                    c.push("identities.steps", "needs at least two positive steps");
                }
            }
            None => missing(&mut c, "identities"),
        },
        _ => {}
    }

    if c.out.is_empty() {
        Ok(Resolved {
            scene,
            experiment,
            loops,
            mollifiers,
            model,
            grid,
        })
    } else {
        Err(c.out)
    }
}
