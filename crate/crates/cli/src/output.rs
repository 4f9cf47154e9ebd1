//! Plain-text report and CSV table.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::runner::{Outcome, RunOptions};
use crate::scene::Resolved;

pub fn scene_hash(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Header shared by successful and failed runs.
pub fn header(path: &str, hash: &str, r: &Resolved, run: RunOptions) -> String {
    let t = r.scene.tolerances;
    let mut s = String::new();
    let _ = writeln!(s, "linklab report");
    let _ = writeln!(s, "scene: {path}");
    let _ = writeln!(s, "sha256: {hash}");
    if let Some(title) = &r.scene.title {
        let _ = writeln!(s, "title: {title}");
    }
    let _ = writeln!(s, "experiment: {}", r.experiment);
    let _ = writeln!(s, "seed: {}  refine: {}", run.seed, run.refine);
    let _ = writeln!(
        s,
        "grid: {}",
        r.grid.map_or("automatic".to_string(), |g| g.describe())
    );
    if let Some(m) = &r.model {
        let _ = writeln!(s, "model: {}", m.describe());
    }
    let _ = writeln!(
        s,
        "tolerances: ratio={} zero={} invariance={} gauss={} identity={} order={}",
        t.ratio, t.zero, t.invariance, t.gauss, t.identity, t.order
    );
    s
}

pub fn report(header: &str, outcome: &Outcome) -> String {
    let mut s = header.to_string();
    for n in &outcome.notes {
        let _ = writeln!(s, "note: {n}");
    }
    for c in &outcome.checks {
        let _ = writeln!(
            s,
            "check {}: expected {} measured {} error {:.3e} {}",
            c.name,
            c.expected,
            c.measured,
            c.error,
            if c.pass { "PASS" } else { "FAIL" }
        );
    }
    let failed = outcome.checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(
        s,
        "summary: {} checks, {} failed: {}",
        outcome.checks.len(),
        failed,
        if failed == 0 { "PASS" } else { "FAIL" }
    );
    s
}

pub fn failure_report(header: &str, error: &str) -> String {
    format!("{header}error: {error}\nsummary: FAIL\n")
}

pub fn csv(outcome: &Outcome) -> String {
    let mut s = String::from("parameter,value_re,value_im,error\n");
    for r in &outcome.rows {
        let _ = writeln!(s, "{},{:.16e},{:.16e},{:.16e}", r.parameter, r.value.re, r.value.im, r.error);
    }
    s
}
