use num_complex::Complex64;
use rand::Rng;

use super::fields::{CBivector, OneFormSpectrum, Reach, TwoFormSpectrum};
use super::mollifier::Mollifier;
use super::profile::Profile;
use crate::error::{Error, Result};
use crate::geometry::FourVector;

/// Localized bump `s_w(x - center)` with a constant tensor amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct Blob<T> {
    pub center: FourVector,
    pub amplitude: T,
    pub mollifier: Mollifier,
}

impl<T> Blob<T> {
    fn phase(&self, p: FourVector) -> Complex64 {
        let ph = crate::geometry::minkowski_inner(p, self.center);
        Complex64::from_polar(self.mollifier.fourier(p), ph)
    }
}

/// Sum of blobs; general (not co-closed) one-form test function.
#[derive(Debug, Clone, PartialEq)]
pub struct BlobOneForm {
    pub blobs: Vec<Blob<[Complex64; 4]>>,
}

/// Sum of blobs; general two-form test function.
#[derive(Debug, Clone, PartialEq)]
pub struct BlobTwoForm {
    pub blobs: Vec<Blob<CBivector>>,
}

fn blob_reach<T>(blobs: &[Blob<T>]) -> Reach {
    let widest = blobs
        .iter()
        .map(|b| b.mollifier)
        .min_by(|a, b| a.scale().total_cmp(&b.scale()))
        .unwrap_or(Mollifier::Gaussian { width: 1.0 });
    Reach {
        anchors: blobs.iter().map(|b| -b.center).collect(),
        profile: Profile::from(widest),
    }
}

fn random_center(rng: &mut impl Rng, center: FourVector, spread: f64) -> FourVector {
    let mut c = center;
    for mu in 1..4 {
        c[mu] += rng.gen_range(-spread..spread);
    }
    c[0] += rng.gen_range(-spread..spread) * 0.5;
    c
}

fn random_complex(rng: &mut impl Rng, complex: bool) -> Complex64 {
    let re = rng.gen_range(-1.0..1.0);
    let im = if complex { rng.gen_range(-1.0..1.0) } else { 0.0 };
    Complex64::new(re, im)
}

fn check_count(count: usize, width: f64) -> Result<()> {
    if count == 0 {
        return Err(Error::Precondition("at least one blob is required".into()));
    }
    Mollifier::gaussian(width).map(|_| ())
}

impl BlobOneForm {
    /// `count` gaussian blobs of width `width` scattered within `spread` of `center`.
    pub fn random(
        rng: &mut impl Rng,
        count: usize,
        center: FourVector,
        spread: f64,
        width: f64,
        complex: bool,
    ) -> Result<Self> {
        check_count(count, width)?;
        let blobs = (0..count)
            .map(|_| Blob {
                center: random_center(rng, center, spread),
                amplitude: std::array::from_fn(|_| random_complex(rng, complex)),
                mollifier: Mollifier::Gaussian { width },
            })
            .collect();
        Ok(BlobOneForm { blobs })
    }

    pub fn eval_complex(&self, x: FourVector) -> [Complex64; 4] {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for b in &self.blobs {
            let s = b.mollifier.value(x - b.center);
            for (o, a) in out.iter_mut().zip(b.amplitude.iter()) {
                *o += *a * s;
            }
        }
        out
    }
}

impl OneFormSpectrum for BlobOneForm {
    fn spectrum(&self, p: FourVector) -> [Complex64; 4] {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for b in &self.blobs {
            let e = b.phase(p);
            for (o, a) in out.iter_mut().zip(b.amplitude.iter()) {
                *o += *a * e;
            }
        }
        out
    }

    fn is_real(&self) -> bool {
        self.blobs.iter().all(|b| b.amplitude.iter().all(|a| a.im == 0.0))
    }

    fn reach(&self) -> Reach {
        blob_reach(&self.blobs)
    }
}

impl BlobTwoForm {
    pub fn random(
        rng: &mut impl Rng,
        count: usize,
        center: FourVector,
        spread: f64,
        width: f64,
        complex: bool,
    ) -> Result<Self> {
        check_count(count, width)?;
        let blobs = (0..count)
            .map(|_| {
                let mut a = [[Complex64::new(0.0, 0.0); 4]; 4];
                for m in 0..4 {
                    for n in m + 1..4 {
                        a[m][n] = random_complex(rng, complex);
                        a[n][m] = -a[m][n];
                    }
                }
                Blob {
                    center: random_center(rng, center, spread),
                    amplitude: a,
                    mollifier: Mollifier::Gaussian { width },
                }
            })
            .collect();
        Ok(BlobTwoForm { blobs })
    }

    pub fn eval_complex(&self, x: FourVector) -> CBivector {
        let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
        for b in &self.blobs {
            let s = b.mollifier.value(x - b.center);
            for m in 0..4 {
                for n in 0..4 {
                    out[m][n] += b.amplitude[m][n] * s;
                }
            }
        }
        out
    }
}

impl TwoFormSpectrum for BlobTwoForm {
    fn spectrum(&self, p: FourVector) -> CBivector {
        let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
        for b in &self.blobs {
            let e = b.phase(p);
            for m in 0..4 {
                for n in 0..4 {
                    out[m][n] += b.amplitude[m][n] * e;
                }
            }
        }
        out
    }

    fn is_real(&self) -> bool {
        self.blobs.iter().all(|b| b.amplitude.iter().flatten().all(|a| a.im == 0.0))
    }

    fn reach(&self) -> Reach {
        blob_reach(&self.blobs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smearing::{fourier_grid_oracle, OracleBox};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn blob_transform_matches_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = BlobTwoForm::random(&mut rng, 2, FourVector::new(0.0, 0.3, 0.0, 0.0), 0.4, 0.35, false)
            .unwrap();
        let g = f.clone();
        let component = move |x: FourVector| [g.eval_complex(x)[0][1].re];
        let anchors: Vec<FourVector> = f.blobs.iter().map(|b| b.center).collect();
        let bx = OracleBox::around(&anchors, 2.9, 0.2);
        let p = FourVector::new(0.8, 0.5, -1.1, 0.3);
        let got = fourier_grid_oracle(component, p, bx);
        let exact = f.spectrum(p)[0][1];
        assert!(!got.box_too_small);
        assert!((got.value[0] - exact).norm() < 1e-8, "{} vs {exact}", got.value[0]);
    }

    #[test]
    fn real_blobs_report_real() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let o = FourVector::ZERO;
        assert!(BlobOneForm::random(&mut rng, 3, o, 1.0, 0.2, false).unwrap().is_real());
        assert!(!BlobOneForm::random(&mut rng, 3, o, 1.0, 0.2, true).unwrap().is_real());
    }
}
