use super::mollifier::Mollifier;
use crate::error::{Error, Result};
use crate::geometry::FourVector;

/// Finite linear combination of mollifiers. Its integral plays the role of
/// the moment `κ`; a single term with coefficient 1 is a normalized mollifier.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    terms: Vec<(f64, Mollifier)>,
}

impl From<Mollifier> for Profile {
    fn from(m: Mollifier) -> Self {
        Profile { terms: vec![(1.0, m)] }
    }
}

impl Profile {
    pub fn combination(terms: Vec<(f64, Mollifier)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Precondition("profile needs at least one term".into()));
        }
        for (c, m) in &terms {
            m.validate()?;
            if !c.is_finite() {
                return Err(Error::Precondition("profile coefficient is not finite".into()));
            }
        }
        Ok(Profile { terms })
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        for t in &mut self.terms {
            t.0 *= factor;
        }
        self
    }

    pub fn terms(&self) -> &[(f64, Mollifier)] {
        &self.terms
    }

    /// `∫ s d^4x`.
    pub fn integral(&self) -> f64 {
        self.terms.iter().map(|t| t.0).sum()
    }

    /// The single term, if the profile is a multiple of one mollifier.
    pub fn single(&self) -> Option<(f64, Mollifier)> {
        match self.terms.as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    pub fn value(&self, x: FourVector) -> f64 {
        self.terms.iter().map(|(c, m)| c * m.value(x)).sum()
    }

    pub fn fourier(&self, p: FourVector) -> f64 {
        self.terms.iter().map(|(c, m)| c * m.fourier(p)).sum()
    }

    pub fn effective_radius(&self) -> f64 {
        self.terms.iter().map(|t| t.1.effective_radius()).fold(0.0, f64::max)
    }

    /// Smallest width among the terms; sets position-space resolution.
    pub fn min_scale(&self) -> f64 {
        self.terms.iter().map(|t| t.1.scale()).fold(f64::INFINITY, f64::min)
    }

    /// Bound of `|ŝ|` on the light cone at `|p| = k`.
    pub fn shell_envelope(&self, k: f64) -> f64 {
        self.terms.iter().map(|(c, m)| c.abs() * m.shell_envelope(k)).sum()
    }

    pub fn envelope_scale(&self) -> f64 {
        self.terms.iter().map(|t| t.0.abs()).sum()
    }
}
