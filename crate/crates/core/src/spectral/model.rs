use super::tensor::TensorStructure;
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;

/// Mass measure of one spectral component.
#[derive(Debug, Clone, PartialEq)]
pub enum MassComponent {
    Atom { mass: f64, weight: f64 },
    /// Density sampled at equally spaced masses on `[m_lo, m_hi]`, linearly
    /// interpolated and integrated with `nodes` Gauss–Legendre points.
    Continuum {
        m_lo: f64,
        m_hi: f64,
        density: Vec<f64>,
        nodes: usize,
    },
}

impl MassComponent {
    pub fn atom(mass: f64, weight: f64) -> Self {
        MassComponent::Atom { mass, weight }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MassComponent::Atom { mass, weight } => {
                if !(*mass >= 0.0 && mass.is_finite() && weight.is_finite()) {
                    return Err(Error::InvalidModel(format!("bad atom mass {mass} weight {weight}")));
                }
            }
            MassComponent::Continuum { m_lo, m_hi, density, nodes } => {
                if !(*m_lo > 0.0 && m_hi > m_lo && m_hi.is_finite()) {
                    return Err(Error::InvalidModel(format!(
                        "continuum needs 0 < m_lo < m_hi, got [{m_lo}, {m_hi}]"
                    )));
                }
                if density.is_empty() || density.iter().any(|d| !d.is_finite()) || *nodes == 0 {
                    return Err(Error::InvalidModel("continuum density samples are invalid".into()));
                }
            }
        }
        Ok(())
    }

    /// `(mass, weight)` pairs representing the measure.
    pub fn atoms(&self) -> Vec<(f64, f64)> {
        match self {
            MassComponent::Atom { mass, weight } => vec![(*mass, *weight)],
            MassComponent::Continuum { m_lo, m_hi, density, nodes } => {
                let rule = gauss_legendre(*m_lo, *m_hi, *nodes);
                rule.iter()
                    .map(|(m, w)| (m, w * interpolate(density, (m - m_lo) / (m_hi - m_lo))))
                    .collect()
            }
        }
    }

    pub fn min_mass(&self) -> f64 {
        match self {
            MassComponent::Atom { mass, .. } => *mass,
            MassComponent::Continuum { m_lo, .. } => *m_lo,
        }
    }

    pub fn max_mass(&self) -> f64 {
        match self {
            MassComponent::Atom { mass, .. } => *mass,
            MassComponent::Continuum { m_hi, .. } => *m_hi,
        }
    }

    fn nonnegative(&self) -> bool {
        match self {
            MassComponent::Atom { weight, .. } => *weight >= 0.0,
            MassComponent::Continuum { density, .. } => density.iter().all(|&d| d >= 0.0),
        }
    }
}

fn interpolate(samples: &[f64], t: f64) -> f64 {
    if samples.len() == 1 {
        return samples[0];
    }
    let x = t.clamp(0.0, 1.0) * (samples.len() - 1) as f64;
    let i = (x.floor() as usize).min(samples.len() - 2);
    let f = x - i as f64;
    samples[i] * (1.0 - f) + samples[i + 1] * f
}

/// Spectral data of a pair of fields `(F, G)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldPairModel {
    pub components: Vec<(MassComponent, TensorStructure)>,
}

/// One mass shell with its combined coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellTerm {
    pub mass: f64,
    pub c1: f64,
    pub c2: f64,
}

impl FieldPairModel {
    pub fn new(components: Vec<(MassComponent, TensorStructure)>) -> Result<Self> {
        let m = FieldPairModel { components };
        m.validate()?;
        Ok(m)
    }

    /// Single massless atom with the given structure.
    pub fn massless(c1: f64, c2: f64) -> Self {
        FieldPairModel {
            components: vec![(MassComponent::atom(0.0, 1.0), TensorStructure::new(c1, c2))],
        }
    }

    /// Single massive atom with the electromagnetic structure only.
    pub fn massive_c1(mass: f64, c1: f64) -> Self {
        FieldPairModel {
            components: vec![(MassComponent::atom(mass, 1.0), TensorStructure::new(c1, 0.0))],
        }
    }

    /// The c2 structure is only admissible on the massless shell.
    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::InvalidModel("model has no components".into()));
        }
        for (mc, ts) in &self.components {
            mc.validate()?;
            if !(ts.c1.is_finite() && ts.c2.is_finite()) {
                return Err(Error::InvalidModel("non-finite tensor coefficients".into()));
            }
            if ts.c2 != 0.0 && mc.max_mass() > 0.0 {
                return Err(Error::InvalidModel(
                    "the c2 structure is only defined on the massless shell".into(),
                ));
            }
        }
        Ok(())
    }

    /// Shell terms with weights folded into the coefficients; equal masses merged.
    pub fn shell_terms(&self) -> Vec<ShellTerm> {
        let mut out: Vec<ShellTerm> = Vec::new();
        for (mc, ts) in &self.components {
            for (mass, w) in mc.atoms() {
                if let Some(t) = out.iter_mut().find(|t| t.mass == mass) {
                    t.c1 += w * ts.c1;
                    t.c2 += w * ts.c2;
                } else {
                    out.push(ShellTerm {
                        mass,
                        c1: w * ts.c1,
                        c2: w * ts.c2,
                    });
                }
            }
        }
        out
    }

    pub fn has_massless(&self) -> bool {
        self.components.iter().any(|(mc, _)| mc.min_mass() == 0.0)
    }

    pub fn max_mass(&self) -> f64 {
        self.components.iter().map(|(mc, _)| mc.max_mass()).fold(0.0, f64::max)
    }

    pub fn nonnegative_weights(&self) -> bool {
        self.components.iter().all(|(mc, _)| mc.nonnegative())
    }

    /// Model of the swapped pair `(G, F)`: the c2 structure is odd under the swap.
    pub fn swapped(&self) -> Self {
        FieldPairModel {
            components: self
                .components
                .iter()
                .map(|(mc, ts)| (mc.clone(), TensorStructure::new(ts.c1, -ts.c2)))
                .collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        FieldPairModel {
            components: self
                .components
                .iter()
                .map(|(mc, ts)| (mc.clone(), TensorStructure::new(factor * ts.c1, factor * ts.c2)))
                .collect(),
        }
    }

    pub fn describe(&self) -> String {
        self.components
            .iter()
            .map(|(mc, ts)| {
                let m = match mc {
                    MassComponent::Atom { mass, weight } => format!("atom(m={mass}, w={weight})"),
                    MassComponent::Continuum { m_lo, m_hi, nodes, .. } => {
                        format!("continuum([{m_lo}, {m_hi}], {nodes} nodes)")
                    }
                };
                format!("{m} c1={} c2={}", ts.c1, ts.c2)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
