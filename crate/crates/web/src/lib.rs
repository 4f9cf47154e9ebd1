//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Each function returns a flat `Vec<f64>`; the page documents the layout.

use wasm_bindgen::prelude::*;

use linklab::commutator::{extract_z, intrinsic_commutator, CommutatorOptions};
use linklab::geometry::{hopf_pair, torus_link_pair, FourVector};
use linklab::linking::{causal_linking_number, CausalLinkingOptions};
use linklab::smearing::{LoopSmearing, Mollifier, OneFormField, Profile};
use linklab::spectral::FieldPairModel;

fn js(e: linklab::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Torus link pair: `[gauss, gauss_error, crossing_count, crossings]`.
#[wasm_bindgen]
pub fn torus_linking(lambda: i32, major: f64, minor: f64) -> Result<Vec<f64>, JsError> {
    let (a, b) = torus_link_pair(lambda, major, minor).map_err(js)?;
    let l = causal_linking_number(&a, &b, &CausalLinkingOptions::default()).map_err(js)?;
    Ok(vec![
        l.gauss.value,
        l.gauss.error_estimate,
        l.value as f64,
        l.crossing.crossings as f64,
    ])
}

/// Euclidean norm of the smeared loop function of the first Hopf circle on
/// an `n × n` grid of the plane `t = 0, z = z`, spanning `[-extent, extent]²`.
/// Row-major, `y` outer.
#[wasm_bindgen]
pub fn loop_function_slice(width: f64, z: f64, extent: f64, n: usize) -> Result<Vec<f64>, JsError> {
    if !(2..=256).contains(&n) || extent.is_nan() || extent <= 0.0 {
        return Err(JsError::new("need 2 <= n <= 256 and extent > 0"));
    }
    let m = Mollifier::gaussian(width).map_err(js)?;
    let l = LoopSmearing::new(m, hopf_pair().0);
    let s = l.sampler();
    let step = 2.0 * extent / (n - 1) as f64;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let x = FourVector::new(0.0, -extent + j as f64 * step, -extent + i as f64 * step, z);
            out.push(s.eval(x).iter().map(|c| c * c).sum::<f64>().sqrt());
        }
    }
    Ok(out)
}

/// Commutator of the torus pair with linking number `lambda` divided by the
/// Hopf reference, massless `c2 = 1`: `[ratio, ratio_error, z, z_error]`.
#[wasm_bindgen]
pub fn linking_ratio(lambda: i32, width: f64) -> Result<Vec<f64>, JsError> {
    let model = FieldPairModel::massless(0.0, 1.0);
    let m = Mollifier::gaussian(width).map_err(js)?;
    let opts = CommutatorOptions::default();
    let z = extract_z(&model, &Profile::from(m), None, &opts).map_err(js)?;
    let (a, b) = torus_link_pair(lambda, 2.0, 1.0).map_err(js)?;
    let rep = intrinsic_commutator(&model, &LoopSmearing::new(m, a), &LoopSmearing::new(m, b), None, &opts)
        .map_err(js)?
        .with_ratio(&z);
    let ratio = rep.ratio.expect("ratio set");
    Ok(vec![ratio.value.re, ratio.error, z.z().re, z.error_estimate])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_linking_reports_lambda() {
        let v = torus_linking(-2, 2.0, 1.0).unwrap();
        assert_eq!(v[2], -2.0);
        assert!((v[0] + 2.0).abs() < 1e-6);
    }

    #[test]
    fn slice_peaks_near_the_loop() {
        let v = loop_function_slice(0.1, 0.0, 1.5, 31).unwrap();
        let max = v.iter().cloned().fold(0.0, f64::max);
        // the grid centre is a full radius from the circle
        assert!(max > 0.0 && v[15 * 31 + 15] < 1e-6 * max);
    }
}
